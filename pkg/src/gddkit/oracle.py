"""The arithmetic oracle and the quasi-affine predicate.

A connected diagram of rank >= 5 is arithmetic exactly when it is classical,
a stored exceptional row, or of Cartan type with finite matrix.  Below rank 5
the oracle can certify positives (classical / Cartan / stored) but refuses to
certify a negative unless the database covers that rank: it raises OracleGap
instead of guessing.

Quasi-affine testing only ever consults connected single-vertex deletions:
every component of a disconnected deletion embeds into a connected deletion
(each side of a cut vertex contains a non-cut vertex of the whole diagram),
and connected subdiagrams of arithmetic diagrams are arithmetic, so the
connected deletions decide the full condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import cartan, classify
from .core import GDD, minimal_modulus, normalized_key
from .roots import minus_one
from .tables import ArithmeticDatabase, classical_keys


class OracleGap(Exception):
    """The query needs arithmetic decisions below the oracle's coverage."""


class InternalInconsistency(Exception):
    """The Cartan shortcut and the classification branches disagree."""


@dataclass(frozen=True)
class OracleVerdict:
    arithmetic: bool
    witness: tuple

    def __bool__(self):
        return self.arithmetic


class Oracle:
    """Arithmetic decisions backed by generated classical families, the
    exceptional-row database, and the Cartan-type shortcut.  Read-only and
    memoized; safe for concurrent queries."""

    def __init__(self, db: ArithmeticDatabase | None = None, max_modulus: int = 64):
        self.db = db if db is not None else ArithmeticDatabase()
        self.max_modulus = max_modulus
        self._classical: dict[tuple[int, int], set[bytes]] = {}
        self._memo: dict[bytes, OracleVerdict] = {}
        self._exact: dict[GDD, OracleVerdict] = {}

    # -- key sets -----------------------------------------------------------

    def classical_key_set(self, rank: int, modulus: int) -> set[bytes]:
        key = (rank, modulus)
        if key not in self._classical:
            self._classical[key] = classical_keys(rank, modulus)
        return self._classical[key]

    def arithmetic_key_set(self, rank: int, modulus: int) -> set[bytes]:
        """Classical plus stored exceptional keys at the given rank, for every
        modulus dividing the given one (keys are modulus-normalized)."""
        keys = set(self.classical_key_set(rank, modulus))
        keys |= self.db.keys_at_rank(rank)
        return keys

    # -- the oracle ----------------------------------------------------------

    def is_arithmetic(self, g: GDD) -> OracleVerdict:
        """Componentwise arithmetic decision (a disconnected diagram is
        arithmetic exactly when all its components are)."""
        comps = g.components()
        if len(comps) == 1:
            return self._connected(g)
        for comp in comps:
            v = self._connected(comp)
            if not v.arithmetic:
                return OracleVerdict(False, ("component",) + v.witness)
        return OracleVerdict(True, ("all-components",))

    def _connected(self, g: GDD) -> OracleVerdict:
        hit = self._exact.get(g)
        if hit is not None:
            return hit
        verdict = self._connected_uncached(g)
        if len(self._exact) < 2_000_000:
            self._exact[g] = verdict
        return verdict

    def _connected_uncached(self, g: GDD) -> OracleVerdict:
        if g.rank == 1:
            return OracleVerdict(not g.diag[0].is_one, ("rank-1",))
        if g.has_degenerate_diag():
            return OracleVerdict(False, ("degenerate-diag",))
        key = normalized_key(g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        modulus = minimal_modulus(g)
        positive = None
        if key in self.classical_key_set(g.rank, modulus):
            positive = OracleVerdict(True, ("classical",))
        else:
            meta = self.db.contains(g)
            if meta is not None:
                positive = OracleVerdict(True, ("table", meta.row, meta.gdd_index))
        shortcut = cartan.arithmetic_via_cartan(g)
        if shortcut is False and positive is not None:
            raise InternalInconsistency(
                f"Cartan shortcut denies a {positive.witness[0]} match:\n{g.to_text()}"
            )
        if positive is not None:
            verdict = positive
        elif shortcut is True:
            verdict = OracleVerdict(True, ("cartan-finite",))
        elif shortcut is False:
            verdict = OracleVerdict(False, ("cartan-not-finite",))
        elif g.rank < 5 and not self.db.keys_at_rank(g.rank):
            raise OracleGap(
                f"cannot certify non-arithmetic at rank {g.rank}: no coverage"
            )
        else:
            verdict = OracleVerdict(False, ("no-match",))
        self._memo[key] = verdict
        return verdict

    # -- quasi-affine ---------------------------------------------------------

    def connected_deletions_arithmetic(self, g: GDD) -> bool:
        for v in range(g.rank):
            sub = g.delete_vertex(v)
            if sub.is_connected() and not self._connected(sub).arithmetic:
                return False
        return True

    def all_deletions_arithmetic(self, g: GDD) -> bool:
        """Strict reading: every single-vertex deletion, componentwise."""
        for v in range(g.rank):
            if not self.is_arithmetic(g.delete_vertex(v)).arithmetic:
                return False
        return True

    def is_quasi_affine(self, g: GDD) -> bool:
        """Connected, not arithmetic, every vertex deletion arithmetic.

        Decided through connected deletions only (see the module docstring);
        at rank >= 6 those have rank >= 5 and stay inside the oracle domain.
        """
        if not g.is_connected():
            raise ValueError("quasi-affine is defined for connected diagrams")
        if g.rank < 2:
            return False
        if self._connected(g).arithmetic:
            return False
        return self.connected_deletions_arithmetic(g)

    # -- continual extensions ---------------------------------------------------

    def tail_extensions(self, g: GDD, v: int, head: str) -> list[GDD]:
        """The diagrams obtained by adding the one-vertex end form (``"T5"``
        with label the inverse of the new edge, ``"T6"`` with label -1) on
        vertex v, continuing the chain there."""
        out = []
        for t_out in classify.continuation_patterns(g, v):
            diag = t_out ** -1 if head == "T5" else minus_one(g.modulus)
            edges = dict(g.edges)
            edges[(v, g.rank)] = t_out
            out.append(GDD(g.modulus, g.diag + (diag,), edges))
        return out

    def is_continual_on_tail(self, g: GDD, v: int, head: str) -> bool:
        """Whether the head-form extension on tail v is arithmetic."""
        exts = self.tail_extensions(g, v, head)
        if not exts:
            return False
        return any(self._connected(e).arithmetic for e in exts)

    # -- wiring for the glued-shape recognizers --------------------------------

    def continual_callable(self):
        def cont(trunk: GDD, tau: int, kind: str) -> bool:
            return self.is_continual_on_tail(trunk, tau, kind)

        return cont

    def shape_tag(self, g: GDD) -> str:
        return classify.shape_tag(
            g,
            continual=self.continual_callable(),
            all_deletions_arithmetic=self.connected_deletions_arithmetic,
        )


# -- negative filters ----------------------------------------------------------


def chain_condition_failures(g: GDD) -> list[int]:
    """Positions along a chain where the simple-chain conditions fail."""
    order = g.chain_order()
    if order is None:
        raise ValueError("not a chain")
    n = len(order)
    if n == 1:
        return []
    d = [g.diag[v] for v in order]
    t = [g.edges[tuple(sorted((order[i], order[i + 1])))] for i in range(n - 1)]
    bad = []
    if not ((d[0] * t[0]).is_one or d[0].is_minus_one):
        bad.append(0)
    for i in range(1, n - 1):
        branch_minus_one = d[i].is_minus_one and (t[i - 1] * t[i]).is_one
        branch_inverse = (d[i] * t[i - 1]).is_one and (d[i] * t[i]).is_one
        if not (branch_minus_one or branch_inverse):
            bad.append(i)
    if not ((d[-1] * t[-1]).is_one or d[-1].is_minus_one):
        bad.append(n - 1)
    return bad


def _pattern_shapes(g: GDD):
    """Induced five-vertex patterns: a path a-b-c-e with d hanging on c,
    optionally with the closing edge d-e, where diag d = diag e."""
    n = g.rank
    for c in range(n):
        nbs = g.neighbors(c)
        if len(nbs) < 3:
            continue
        for d, e in combinations(nbs, 2):
            for b in nbs:
                if b in (d, e):
                    continue
                for a in g.neighbors(b):
                    if a in (c, d, e):
                        continue
                    yield (a, b, c, d, e)


def forbidden_branch_pattern(g: GDD, exception_keys: set[bytes]) -> tuple | None:
    """The branched forbidden pattern: vertices a-b-c with both d and e on c,
    d-e possibly joined, diag d = diag e, no other adjacency among the five.
    Applies at rank > 4; classical diagrams and the listed exceptional rows
    are exempt."""
    if g.rank <= 4:
        return None
    for (a, b, c, d, e) in _pattern_shapes(g):
        five = sorted((a, b, c, d, e))
        sub = g.induced(five)
        pos = {v: i for i, v in enumerate(five)}
        deg = {v: sub.degree(pos[v]) for v in (a, b, c, d, e)}
        if deg[a] != 1 or deg[b] != 2 or deg[c] != 3:
            continue
        link = sub.edge_label(pos[d], pos[e])
        if link is None and not (deg[d] == 1 and deg[e] == 1):
            continue
        if link is not None and not (deg[d] == 2 and deg[e] == 2):
            continue
        for x, y in ((d, e), (e, d)):
            if g.diag[x] == g.diag[y]:
                if normalized_key(g) in exception_keys or classify.classical_type(g):
                    return None
                return ("branch-pattern", (a, b, c, x, y))
    return None


def forbidden_by_chain_failures(g: GDD, exception_keys: set[bytes]) -> tuple | None:
    """Chains failing the simple-chain conditions in two or more places are
    not arithmetic, a short list of exceptional rows aside.  Rank > 4."""
    if g.rank <= 4 or not g.is_chain():
        return None
    bad = chain_condition_failures(g)
    if len(bad) < 2:
        return None
    if normalized_key(g) in exception_keys:
        return None
    return ("chain-failures", tuple(bad))
