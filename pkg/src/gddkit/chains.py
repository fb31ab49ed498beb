"""Simple chains: recognition, fixed-parameter extraction, construction.

A chain of rank n is read in an orientation v_1 .. v_n.  Writing d_i for the
vertex label and t_i for the edge label between v_{i-1} and v_i, the chain is
simple when

  ends:      (d_1 * t_2 - 1)(d_1 + 1) = 0   and   (d_n * t_n - 1)(d_n + 1) = 0
  interior:  d_i = -1 and t_i * t_{i+1} = 1,   or   d_i * t_i = d_i * t_{i+1} = 1.

The fixed parameter of the orientation is q = d_n^2 * t_n, and the index set
records where t_i = q (with t_1 read as (d_1^2 * t_2)^{-1}).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GDD
from .roots import UnityRoot, minus_one, one


@dataclass(frozen=True)
class ChainProfile:
    """Fixed parameter and index set of a simple chain, as seen from one end.

    ``end`` records which vertex of the source diagram played v_n; it does not
    take part in equality, so profiles from differently-labelled copies of the
    same chain compare equal.  A rank-1 chain with vertex label -1 matches any
    parameter; that is the ``wildcard`` profile.
    """

    q: UnityRoot | None
    index_set: frozenset[int] = frozenset()
    wildcard: bool = False
    end: int | None = field(default=None, compare=False)

    def matches_parameter(self, p: UnityRoot) -> bool:
        return self.wildcard or self.q == p


def _labels(g: GDD, order: list[int]) -> tuple[list[UnityRoot], list[UnityRoot]]:
    diag = [g.diag[v] for v in order]
    ties = [g.edges[tuple(sorted((order[i - 1], order[i])))] for i in range(1, len(order))]
    return diag, ties


def is_simple_chain(g: GDD) -> bool:
    """Check the simple-chain conditions; rank 1 always qualifies."""
    order = g.chain_order()
    if order is None:
        raise ValueError("not a chain")
    n = len(order)
    if n == 1:
        return True
    d, t = _labels(g, order)
    for end, adj in ((0, t[0]), (n - 1, t[-1])):
        if not ((d[end] * adj).is_one or d[end].is_minus_one):
            return False
    for i in range(1, n - 1):
        left, right = t[i - 1], t[i]
        branch_minus_one = d[i].is_minus_one and (left * right).is_one
        branch_inverse = (d[i] * left).is_one and (d[i] * right).is_one
        if not (branch_minus_one or branch_inverse):
            return False
    return True


def chain_profile(g: GDD) -> set[ChainProfile]:
    """Profiles of a simple chain, one per orientation (they can coincide)."""
    order = g.chain_order()
    if order is None or not is_simple_chain(g):
        raise ValueError("not a simple chain")
    if len(order) == 1:
        d = g.diag[0]
        if d.is_minus_one:
            return {ChainProfile(None, frozenset(), wildcard=True, end=0)}
        if d.is_one:
            return set()
        return {ChainProfile(d, frozenset(), end=0)}
    out = set()
    for o in (order, order[::-1]):
        p = oriented_profile(g, o)
        if p is not None:
            out.add(p)
    return out


def oriented_profile(g: GDD, order: list[int]) -> ChainProfile | None:
    """Profile for one explicit orientation (last element of order is v_n)."""
    d, t = _labels(g, order)
    n = len(order)
    if n == 1:
        if d[0].is_minus_one:
            return ChainProfile(None, frozenset(), wildcard=True, end=order[0])
        return None if d[0].is_one else ChainProfile(d[0], frozenset(), end=order[0])
    q = d[-1] ** 2 * t[-1]
    if q.is_one:
        return None
    index = {i for i in range(2, n + 1) if t[i - 2] == q}
    virtual = (d[0] ** 2 * t[0]) ** -1
    if virtual == q:
        index.add(1)
    return ChainProfile(q, frozenset(index), end=order[-1])


def _end_options(q: UnityRoot, in_index: bool):
    """(d_n, t_n) choices at the oriented end for the given membership of n."""
    opts = set()
    if in_index:
        opts.add((minus_one(q.modulus), q))
        if q.is_minus_one:
            opts.add((q, q ** -1))
    elif not q.is_minus_one:
        opts.add((q, q ** -1))
    return opts


def _interior_options(q: UnityRoot, t_next: UnityRoot, in_index: bool | None):
    """(d_i, t_i) choices given the edge on the far side; in_index None means
    both memberships are acceptable (used by the unconstrained generator)."""
    opts = set()
    for d, t in (
        (t_next ** -1, t_next),          # d*t = d*t_next = 1
        (minus_one(q.modulus), t_next ** -1),  # d = -1, t*t_next = 1
    ):
        if t.is_one:
            continue
        if in_index is None or (t == q) == in_index:
            opts.add((d, t))
    return opts


def _start_options(q: UnityRoot, t2: UnityRoot, in_index: bool | None):
    """d_1 choices; membership of 1 reads the virtual label (d_1^2 t_2)^{-1}."""
    opts = set()
    for d in (t2 ** -1, minus_one(q.modulus)):
        virtual = (d ** 2 * t2) ** -1
        if in_index is None or (virtual == q) == in_index:
            opts.add(d)
    return opts


def _assemble(modulus: int, d: list[UnityRoot], t: list[UnityRoot]) -> GDD:
    return GDD(
        modulus,
        tuple(d),
        {(i, i + 1): t[i] for i in range(len(t))},
    )


def build_simple_chain(n: int, profile: ChainProfile, modulus: int) -> set[GDD]:
    """All rank-n simple chains whose profile (in the orientation ending at
    vertex n-1) is the given one.  Branches of the defining conditions can
    fork or coincide, hence a set."""
    if profile.wildcard or profile.q is None:
        if n == 1:
            return {GDD(modulus, (minus_one(modulus),))}
        raise ValueError("wildcard profiles only make sense at rank 1")
    q = profile.q
    if q.modulus != modulus:
        raise ValueError("profile modulus mismatch")
    if q.is_one:
        raise ValueError("fixed parameter 1 is not allowed")
    if n == 1:
        out = {GDD(modulus, (minus_one(modulus),))}
        if not q.is_minus_one and profile.index_set == frozenset():
            out.add(GDD(modulus, (q,)))
        return out
    want = profile.index_set
    results: set[GDD] = set()

    def extend(i: int, d_suffix: list[UnityRoot], t_suffix: list[UnityRoot]):
        # d_suffix / t_suffix hold labels for positions i+1 .. n (1-indexed).
        if i == 1:
            for d1 in _start_options(q, t_suffix[0], 1 in want):
                results.add(_assemble(modulus, [d1] + d_suffix, t_suffix))
            return
        for d, t in _interior_options(q, t_suffix[0], i in want):
            extend(i - 1, [d] + d_suffix, [t] + t_suffix)

    for d_n, t_n in _end_options(q, n in want):
        extend(n - 1, [d_n], [t_n])
    return results


def chains_with_parameter(n: int, q: UnityRoot, modulus: int) -> set[GDD]:
    """All rank-n simple chains whose oriented profile at vertex n-1 has fixed
    parameter q, regardless of index set."""
    if q.is_one:
        return set()
    if n == 1:
        out = {GDD(modulus, (minus_one(modulus),))}
        if not q.is_minus_one:
            out.add(GDD(modulus, (q,)))
        return out
    results: set[GDD] = set()

    def extend(i: int, d_suffix, t_suffix):
        if i == 1:
            for d1 in _start_options(q, t_suffix[0], None):
                results.add(_assemble(modulus, [d1] + d_suffix, t_suffix))
            return
        for d, t in _interior_options(q, t_suffix[0], None):
            extend(i - 1, [d] + d_suffix, [t] + t_suffix)

    for d_n, t_n in _end_options(q, True) | _end_options(q, False):
        extend(n - 1, [d_n], [t_n])
    return results
