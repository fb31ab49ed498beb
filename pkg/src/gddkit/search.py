"""Exhaustive search for quasi-affine connected diagrams of a given rank.

Every connected diagram has at least two vertices whose deletion leaves it
connected, so every quasi-affine diagram of rank n arises by adding one
vertex to a connected arithmetic diagram of rank n-1 (a "base").  The search
walks all bases, all attachments of one new vertex, and keeps the candidates
whose deletions are all arithmetic while the candidate itself is not.

To avoid visiting the full attachment space blindly, candidates are built in
two stages: for a base A and a non-cut vertex v of A, the deletion of v from
a viable candidate must be an arithmetic extension of A - v, so attachment
patterns are pre-screened on A - v and only then combined with an optional
edge back to v.  Every candidate still gets the full deletion check; the
staging only prunes attachments that could never survive it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .core import GDD, normalized_key, parse_blocks
from .oracle import (
    Oracle,
    forbidden_by_chain_failures,
    forbidden_branch_pattern,
)
from .roots import Parameter, UnityRoot
from .tables import ArithmeticDatabase, generate_classical


@dataclass
class EnumerationReport:
    rank: int
    order_of_q: int
    modulus: int
    found: dict[bytes, GDD] = field(default_factory=dict)
    shape_tags: dict[bytes, str] = field(default_factory=dict)
    bases_tried: int = 0
    candidates_examined: int = 0
    pruned_by_filters: int = 0
    elapsed: float = 0.0
    comparison: "Comparison | None" = None

    def sorted_found(self) -> list[tuple[bytes, GDD]]:
        return sorted(self.found.items())

    def to_text(self) -> str:
        lines = [
            f"# quasi-affine enumeration rank={self.rank} order-of-q={self.order_of_q} "
            f"modulus={self.modulus}",
            f"# bases={self.bases_tried} candidates={self.candidates_examined} "
            f"pruned-by-filters={self.pruned_by_filters} found={len(self.found)}",
        ]
        for i, (key, g) in enumerate(self.sorted_found(), start=1):
            tag = self.shape_tags.get(key, "")
            lines.append("")
            lines.append(f"# item={i} shape={tag}")
            lines.append(g.to_text())
        if self.comparison is not None:
            lines.append("")
            lines.append(self.comparison.to_text())
        return "\n".join(lines) + "\n"


@dataclass
class Comparison:
    matched: list[bytes]
    missing: list[tuple[bytes, str]]
    extra: list[bytes]

    @property
    def ok(self) -> bool:
        return not self.missing

    def to_text(self) -> str:
        return (
            f"# comparison matched={len(self.matched)} missing={len(self.missing)} "
            f"extra={len(self.extra)}"
            + "".join(f"\n# missing: {note}" for _, note in self.missing)
        )


def extensions(base: GDD, modulus: int):
    """All diagrams adding one vertex to base: every label != 1 on the new
    vertex, every nonempty attachment set, every labelling of the new edges.
    Deterministic order."""
    n = base.rank
    labels = [UnityRoot(e, modulus) for e in range(1, modulus)]
    for diag_e in range(1, modulus):
        diag = UnityRoot(diag_e, modulus)
        for k in range(1, n + 1):
            for subset in combinations(range(n), k):
                for assignment in _label_tuples(labels, k):
                    edges = dict(base.edges)
                    for v, lab in zip(subset, assignment):
                        edges[(v, n)] = lab
                    yield GDD(modulus, base.diag + (diag,), edges)


def _label_tuples(labels, k):
    if k == 0:
        yield ()
        return
    for rest in _label_tuples(labels, k - 1):
        for lab in labels:
            yield rest + (lab,)


def _attachment_patterns(rank: int, modulus: int):
    labels = [UnityRoot(e, modulus) for e in range(1, modulus)]
    for diag_e in range(1, modulus):
        diag = UnityRoot(diag_e, modulus)
        for k in range(1, rank + 1):
            for subset in combinations(range(rank), k):
                for assignment in _label_tuples(labels, k):
                    yield diag, tuple(zip(subset, assignment))


def _attach(base: GDD, diag: UnityRoot, pairs) -> GDD:
    edges = dict(base.edges)
    for v, lab in pairs:
        edges[(v, base.rank)] = lab
    return GDD(base.modulus, base.diag + (diag,), edges)


def collect_bases(rank: int, modulus: int, db: ArithmeticDatabase) -> list[GDD]:
    """Connected arithmetic diagrams of the given rank over mu_modulus:
    generated classical families plus stored exceptional rows, one
    representative per relabelling class."""
    seen: dict[bytes, GDD] = {}
    for g in generate_classical(rank, modulus):
        seen.setdefault(normalized_key(g), g)
    from .core import minimal_modulus, with_modulus

    for g, _meta in db.entries(rank):
        if modulus % minimal_modulus(g) == 0:
            lifted = with_modulus(g, modulus)
            seen.setdefault(normalized_key(lifted), lifted)
    return [seen[k] for k in sorted(seen)]


def enumerate_quasi_affine(
    rank: int,
    parameter: Parameter,
    db: ArithmeticDatabase,
    cap: int = 100_000_000,
    use_filters: bool = True,
    collect_shapes: bool = True,
    bases: list[GDD] | None = None,
) -> EnumerationReport:
    """Exhaustive, deduplicated search at the given rank and parameter.

    ``bases`` restricts the search to extensions of the given diagrams
    (default: every connected arithmetic diagram of rank - 1)."""
    if rank < 6:
        raise ValueError("enumeration is defined for rank >= 6")
    modulus = parameter.modulus
    oracle = Oracle(db)
    report = EnumerationReport(rank, parameter.order_of_q, modulus)
    start = time.monotonic()

    exception_keys = {
        normalized_key(g) for g, _ in db.entries()
    }

    # Shape bounds over the known arithmetic diagrams at rank n-1: an
    # attachment that overshoots the maximal edge count or vertex degree can
    # never be arithmetic, so the screen skips it before canonicalizing.
    # (Cartan-type arithmetic diagrams beyond those sets are finite-type
    # trees, well inside the bounds.)
    shape_pool = list(generate_classical(rank - 1, modulus))
    shape_pool += [
        g for g, _ in db.entries(rank - 1) if g.modulus in (2, modulus)
    ]
    max_edges = max(max(len(g.edges) for g in shape_pool), rank - 2)
    max_degree = max(
        max(g.degree(v) for g in shape_pool for v in range(g.rank)), 2
    )

    def deletion_ok(sub: GDD) -> bool:
        if len(sub.edges) > max_edges:
            return False
        if use_filters:
            if forbidden_by_chain_failures(sub, exception_keys) is not None:
                report.pruned_by_filters += 1
                return False
            if forbidden_branch_pattern(sub, exception_keys) is not None:
                report.pruned_by_filters += 1
                return False
        return oracle._connected(sub).arithmetic

    if bases is None:
        bases = collect_bases(rank - 1, modulus, db)
    found: dict[bytes, GDD] = {}

    for base in bases:
        report.bases_tried += 1
        for v in range(base.rank):
            trimmed = base.delete_vertex(v)
            if not trimmed.is_connected():
                continue
            # Patterns on base - v whose one-vertex extension is arithmetic;
            # the candidate's deletion at v is exactly that extension.
            trimmed_edges = len(trimmed.edges)
            trimmed_deg = [trimmed.degree(u) for u in range(trimmed.rank)]
            viable = []
            for diag, pairs in _attachment_patterns(trimmed.rank, modulus):
                if trimmed_edges + len(pairs) > max_edges or len(pairs) > max_degree:
                    continue
                if any(trimmed_deg[u] + 1 > max_degree for u, _ in pairs):
                    continue
                ext = _attach(trimmed, diag, pairs)
                if deletion_ok(ext):
                    viable.append((diag, pairs))
            back = [None] + [UnityRoot(e, modulus) for e in range(1, modulus)]
            for diag, pairs in viable:
                # Transport the pattern from base - v coordinates to base
                # coordinates (vertex v sits in the middle of the numbering).
                lift = [u for u in range(base.rank) if u != v]
                base_pairs = [(lift[u], lab) for u, lab in pairs]
                for v_edge in back:
                    report.candidates_examined += 1
                    if report.candidates_examined > cap:
                        raise RuntimeError(f"candidate cap {cap} exceeded")
                    full_pairs = base_pairs + ([(v, v_edge)] if v_edge else [])
                    g = _attach(base, diag, full_pairs)
                    ok = True
                    for u in range(g.rank):
                        sub = g.delete_vertex(u)
                        if sub.is_connected() and not deletion_ok(sub):
                            ok = False
                            break
                    if not ok:
                        continue
                    if oracle._connected(g).arithmetic:
                        continue
                    key = normalized_key(g)
                    if key not in found:
                        found[key] = g

    report.found = dict(sorted(found.items()))
    if collect_shapes:
        for key, g in report.found.items():
            report.shape_tags[key] = oracle.shape_tag(g)
    report.elapsed = time.monotonic() - start
    return report


def verify_against(report: EnumerationReport, expected_text: str) -> Comparison:
    """Canonical-key diff of the found set against expected diagram blocks."""
    expected: dict[bytes, tuple[GDD, str]] = {}
    for g, meta, lineno in parse_blocks(expected_text):
        name = meta.get("item", meta.get("row", f"line{lineno}"))
        expected[normalized_key(g)] = (g, str(name))
    found_keys = set(report.found)
    matched = sorted(k for k in expected if k in found_keys)
    missing = [(k, name) for k, (g, name) in sorted(expected.items()) if k not in found_keys]
    extra = sorted(found_keys - set(expected))
    comparison = Comparison(matched, missing, extra)
    report.comparison = comparison
    return comparison
