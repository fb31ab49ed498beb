"""Labelled-diagram data structure and canonical forms.

A diagram has a vertex label (a root of unity, usually written q_ii) on each
of its n vertices and a symmetric edge label != 1 on each edge.  Vertices are
0-indexed internally; the text format and renderings are 1-indexed.

Two diagrams related by a vertex relabelling are regarded as the same; the
canonical key realizes that identification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import lcm

from .roots import Parameter, UnityRoot

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class GDD:
    """Immutable labelled diagram over mu_M.

    diag[i] is the label of vertex i; edges maps (u, v) with u < v to the
    edge label, which is never 1.
    """

    modulus: int
    diag: tuple[UnityRoot, ...]
    edges: dict[Edge, UnityRoot] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.diag)
        if n < 1:
            raise ValueError("a diagram needs at least one vertex")
        for d in self.diag:
            if d.modulus != self.modulus:
                raise ValueError("vertex label has wrong modulus")
        fixed = {}
        for (u, v), lab in self.edges.items():
            if not (0 <= u < n and 0 <= v < n and u != v):
                raise ValueError(f"bad edge ({u}, {v})")
            if lab.modulus != self.modulus:
                raise ValueError("edge label has wrong modulus")
            if lab.is_one:
                raise ValueError(f"edge ({u}, {v}) labelled 1 is no edge")
            fixed[_edge(u, v)] = lab
        object.__setattr__(self, "edges", fixed)

    def __hash__(self):
        return hash(
            (
                self.modulus,
                self.diag,
                tuple(sorted((e, lab.exponent) for e, lab in self.edges.items())),
            )
        )

    # -- basic structure ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.diag)

    def edge_label(self, u: int, v: int) -> UnityRoot | None:
        return self.edges.get(_edge(u, v))

    def neighbors(self, v: int) -> list[int]:
        return sorted(
            u if w == v else w for (u, w) in self.edges if v in (u, w)
        )

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_degenerate_diag(self) -> bool:
        """True when some vertex is labelled 1 (no arithmetic diagram has it)."""
        return any(d.is_one for d in self.diag)

    # -- derived diagrams --------------------------------------------------

    def induced(self, vertices: list[int]) -> "GDD":
        """Sub-diagram on the given vertices, renumbered in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        return GDD(
            self.modulus,
            tuple(self.diag[v] for v in vertices),
            {
                (_edge(pos[u], pos[v])): lab
                for (u, v), lab in self.edges.items()
                if u in pos and v in pos
            },
        )

    def delete_vertex(self, v: int) -> "GDD":
        if self.rank < 2:
            raise ValueError("cannot delete the only vertex")
        if not 0 <= v < self.rank:
            raise ValueError(f"vertex {v} out of range")
        return self.induced([u for u in range(self.rank) if u != v])

    def permute(self, sigma: list[int]) -> "GDD":
        """Relabel vertices; sigma[i] is the new index of old vertex i."""
        inv = [0] * len(sigma)
        for old, new in enumerate(sigma):
            inv[new] = old
        return GDD(
            self.modulus,
            tuple(self.diag[inv[i]] for i in range(self.rank)),
            {
                _edge(sigma[u], sigma[v]): lab
                for (u, v), lab in self.edges.items()
            },
        )

    def power_twist(self, t: int) -> "GDD":
        """Raise every label to the t-th power (t coprime to M), giving the
        diagram at the conjugate parameter."""
        from math import gcd

        if gcd(t, self.modulus) != 1:
            raise ValueError("twist exponent must be coprime to the modulus")
        return GDD(
            self.modulus,
            tuple(d ** t for d in self.diag),
            {e: lab ** t for e, lab in self.edges.items()},
        )

    def components(self) -> list["GDD"]:
        """Maximal connected induced sub-diagrams, in vertex order."""
        seen = [False] * self.rank
        out = []
        for s in range(self.rank):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbors(v):
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            out.append(self.induced(sorted(comp)))
        return out

    def component_vertex_sets(self) -> list[list[int]]:
        seen = [False] * self.rank
        out = []
        for s in range(self.rank):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbors(v):
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            out.append(sorted(comp))
        return out

    # -- shape predicates ----------------------------------------------------

    def is_connected(self) -> bool:
        return len(self.component_vertex_sets()) == 1

    def is_chain(self) -> bool:
        """True when the underlying graph is a path (rank 1 counts)."""
        return self.chain_order() is not None

    def chain_order(self) -> list[int] | None:
        """Vertices in path order when the graph is a path, else None."""
        if self.rank == 1:
            return [0]
        degs = [self.degree(v) for v in range(self.rank)]
        ends = [v for v, d in enumerate(degs) if d == 1]
        if len(ends) != 2 or any(d > 2 for d in degs) or not self.is_connected():
            return None
        order = [ends[0]]
        prev = -1
        while len(order) < self.rank:
            nxt = [u for u in self.neighbors(order[-1]) if u != prev]
            if len(nxt) != 1:
                return None
            prev = order[-1]
            order.append(nxt[0])
        return order

    def is_cycle(self) -> bool:
        return (
            self.rank >= 3
            and self.is_connected()
            and all(self.degree(v) == 2 for v in range(self.rank))
        )

    def reversed_chain(self) -> "GDD":
        order = self.chain_order()
        if order is None:
            raise ValueError("not a chain")
        return self.induced(order[::-1])

    # -- canonical form ------------------------------------------------------

    def _refined_cells(self) -> list[list[int]]:
        """Stable label-refinement partition, cells in a canonical order."""
        n = self.rank
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for (u, v), lab in self.edges.items():
            adj[u].append((lab.exponent, v))
            adj[v].append((lab.exponent, u))
        color = [(self.diag[v].exponent,) for v in range(n)]
        ncolors = len(set(color))
        while True:
            sig = [
                (color[v], tuple(sorted((e, color[u]) for e, u in adj[v])))
                for v in range(n)
            ]
            distinct = sorted(set(sig))
            if len(distinct) == ncolors:
                cells: dict[tuple, list[int]] = {}
                for v in range(n):
                    cells.setdefault(sig[v], []).append(v)
                return [cells[k] for k in sorted(cells)]
            index = {s: (i,) for i, s in enumerate(distinct)}
            color = [index[s] for s in sig]
            ncolors = len(distinct)

    def _encode(self, order: list[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        n = self.rank
        adj = [0] * (n * (n - 1) // 2)
        for (u, v), lab in self.edges.items():
            i, j = sorted((pos[u], pos[v]))
            adj[i * (2 * n - i - 1) // 2 + (j - i - 1)] = lab.exponent
        return (
            tuple(self.diag[v].exponent for v in order),
            tuple(adj),
        )

    def _canonical(self) -> tuple[tuple, list[int]]:
        cells = self._refined_cells()
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            return self._encode(order), order
        best_enc, best_order = None, None
        for order in _cell_orders(cells):
            enc = self._encode(order)
            if best_enc is None or enc < best_enc:
                best_enc, best_order = enc, order
        return best_enc, best_order

    def canonical_order(self) -> list[int]:
        """A vertex order realizing the canonical key."""
        return self._canonical()[1]

    def canonical_key(self) -> bytes:
        """Byte string equal exactly for diagrams that differ by a vertex
        relabelling.  Refinement first, then exhaustive permutation of the
        refined cells, taking the lexicographically least encoding."""
        (diag_enc, adj_enc), _ = self._canonical()
        payload = (self.rank, self.modulus) + diag_enc + adj_enc
        return b"k" + b",".join(str(x).encode() for x in payload)

    # -- formatting ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"gdd M={self.modulus} n={self.rank}"]
        lines.append("diag " + " ".join(str(d.exponent) for d in self.diag))
        for (u, v) in sorted(self.edges):
            lines.append(f"edge {u + 1} {v + 1} {self.edges[(u, v)].exponent}")
        return "\n".join(lines)

    def to_dot(self, parameter: Parameter | None = None) -> str:
        def show(x: UnityRoot) -> str:
            return parameter.render(x) if parameter is not None else f"z^{x.exponent}"

        lines = ["graph gdd {"]
        for v in range(self.rank):
            lines.append(f'  v{v + 1} [label="{show(self.diag[v])}"];')
        for (u, v) in sorted(self.edges):
            lines.append(
                f'  v{u + 1} -- v{v + 1} [label="{show(self.edges[(u, v)])}"];'
            )
        lines.append("}")
        return "\n".join(lines)


def _cell_orders(cells: list[list[int]]):
    """All vertex orders that keep each refinement cell contiguous."""

    def rec(i: int, prefix: list[int]):
        if i == len(cells):
            yield prefix
            return
        for perm in permutations(cells[i]):
            yield from rec(i + 1, prefix + list(perm))

    yield from rec(0, [])


def from_braiding_matrix(matrix: list[list[UnityRoot]]) -> GDD:
    """Collapse a braiding matrix to its diagram: the vertex labels are the
    diagonal entries and the edge label on {i, j} is Q[i][j] * Q[j][i] when
    that product differs from 1."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    modulus = matrix[0][0].modulus
    diag = tuple(matrix[i][i] for i in range(n))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            prod = matrix[i][j] * matrix[j][i]
            if not prod.is_one:
                edges[(i, j)] = prod
    return GDD(modulus, diag, edges)


def minimal_modulus(g: GDD) -> int:
    """Smallest even modulus containing all labels of g."""
    m = 2
    for d in g.diag:
        m = lcm(m, d.order())
    for lab in g.edges.values():
        m = lcm(m, lab.order())
    return m


def with_modulus(g: GDD, modulus: int) -> GDD:
    """Re-express g inside mu_modulus; the new modulus must be a multiple of
    every label order (and even)."""
    if modulus % 2 != 0 or modulus % minimal_modulus(g) != 0:
        raise ValueError(f"labels of g do not fit inside mu_{modulus}")

    def conv(x: UnityRoot) -> UnityRoot:
        return UnityRoot(x.exponent * modulus // x.modulus, modulus)

    return GDD(
        modulus,
        tuple(conv(d) for d in g.diag),
        {e: conv(lab) for e, lab in g.edges.items()},
    )


def normalized_key(g: GDD) -> bytes:
    """Canonical key at the minimal even modulus, so the same abstract
    diagram stored over different ambient groups compares equal."""
    m = minimal_modulus(g)
    if m == g.modulus:
        return g.canonical_key()
    return with_modulus(g, m).canonical_key()


# -- text format -------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_blocks(text: str) -> list[tuple[GDD, dict, int]]:
    """Parse a sequence of diagram blocks.

    Returns (diagram, metadata, first_line) triples; metadata holds key=value
    pairs from the '#' comment line, if any, directly above the block.
    """
    out = []
    meta: dict = {}
    cur: list[tuple[int, str]] = []

    def flush():
        nonlocal meta, cur
        if cur:
            out.append((_parse_one(cur), dict(meta), cur[0][0]))
        meta = {}
        cur = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            flush()
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, _, v = tok.partition("=")
                    meta[k] = v
            continue
        cur.append((lineno, line))
    flush()
    return out


def _parse_one(lines: list[tuple[int, str]]) -> GDD:
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "gdd":
        raise ParseError(f"expected 'gdd M=.. n=..', got {head!r}", lineno)
    try:
        modulus = int(parts[1].removeprefix("M="))
        n = int(parts[2].removeprefix("n="))
    except ValueError:
        raise ParseError(f"bad header {head!r}", lineno) from None
    if len(lines) < 2:
        raise ParseError("missing diag line", lineno)
    lineno2, diag_line = lines[1]
    toks = diag_line.split()
    if toks[0] != "diag" or len(toks) != n + 1:
        raise ParseError(f"expected 'diag' with {n} exponents", lineno2)
    try:
        diag = tuple(UnityRoot(int(t), modulus) for t in toks[1:])
    except ValueError as exc:
        raise ParseError(str(exc), lineno2) from None
    edges = {}
    for lineno3, line in lines[2:]:
        toks = line.split()
        if toks[0] != "edge" or len(toks) != 4:
            raise ParseError(f"expected 'edge i j e', got {line!r}", lineno3)
        u, v, e = (int(t) for t in toks[1:])
        if not (1 <= u < v <= n):
            raise ParseError(f"edge endpoints {u} {v} out of order/range", lineno3)
        if e % modulus == 0:
            raise ParseError("edge label exponent 0 means no edge", lineno3)
        if (u - 1, v - 1) in edges:
            raise ParseError(f"duplicate edge {u} {v}", lineno3)
        edges[(u - 1, v - 1)] = UnityRoot(e, modulus)
    try:
        return GDD(modulus, diag, edges)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_gdd(text: str) -> GDD:
    blocks = parse_blocks(text)
    if len(blocks) != 1:
        raise ValueError(f"expected exactly one diagram, found {len(blocks)}")
    return blocks[0][0]
