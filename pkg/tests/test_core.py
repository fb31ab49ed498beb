import random
from itertools import permutations

import pytest

from gddkit.core import (
    GDD,
    ParseError,
    from_braiding_matrix,
    minimal_modulus,
    normalized_key,
    parse_blocks,
    parse_gdd,
    with_modulus,
)
from gddkit.roots import Parameter, UnityRoot, minus_one, one


def u(e, m=6):
    return UnityRoot(e, m)


def path(diag, edges, m=6):
    return GDD(
        m,
        tuple(u(e, m) for e in diag),
        {(i, i + 1): u(t, m) for i, t in enumerate(edges)},
    )


def random_gdd(rng, n, m):
    while True:
        diag = tuple(u(rng.randrange(m), m) for _ in range(n))
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    e = rng.randrange(1, m)
                    edges[(i, j)] = u(e, m)
        g = GDD(m, diag, edges)
        return g


def test_edge_label_one_rejected():
    with pytest.raises(ValueError):
        GDD(6, (u(2), u(2)), {(0, 1): u(0)})


def test_from_braiding_matrix():
    q = u(2)
    m = [[q, q ** -2], [one(6), q]]
    g = from_braiding_matrix(m)
    assert g.diag == (q, q)
    assert g.edges == {(0, 1): q ** -2}

    a = u(1)
    m2 = [[q, a], [a ** -1, q]]
    g2 = from_braiding_matrix(m2)
    assert g2.edges == {}

    m3 = [[q, one(6)], [one(6), q ** 2]]
    assert from_braiding_matrix(m3).edges == {}


def test_from_braiding_matrix_off_diagonal_swap():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(2, 5)
        mat = [[u(rng.randrange(6)) for _ in range(n)] for _ in range(n)]
        swapped = [[mat[j][i] if i != j else mat[i][i] for j in range(n)] for i in range(n)]
        assert from_braiding_matrix(mat) == from_braiding_matrix(swapped)


def test_delete_vertex_and_components():
    g = path([2, 4, 2, 4, 2], [4, 2, 4, 2])
    mid = g.delete_vertex(2)
    comps = g.delete_vertex(2).components()
    assert len(comps) == 2
    assert sorted(c.rank for c in comps) == [2, 2]
    assert sum(c.rank for c in comps) == mid.rank

    end = g.delete_vertex(0)
    assert end.is_chain() and end.rank == 4

    edgeless = GDD(6, (u(2), u(3), u(4)))
    assert [c.rank for c in edgeless.components()] == [1, 1, 1]

    with pytest.raises(ValueError):
        GDD(6, (u(2),)).delete_vertex(0)
    with pytest.raises(ValueError):
        g.delete_vertex(7)


def test_shape_predicates():
    assert GDD(6, (u(2),)).is_chain()
    assert not GDD(6, (u(2),)).is_cycle()
    cyc = GDD(
        6,
        tuple(u(2) for _ in range(6)),
        {(i, (i + 1) % 6): u(4) for i in range(6)},
    )
    assert cyc.is_cycle() and not cyc.is_chain()
    star = GDD(6, (u(2), u(2), u(2), u(2)), {(0, 1): u(4), (0, 2): u(4), (0, 3): u(4)})
    assert not star.is_chain() and not star.is_cycle()


def test_canonical_key_permutation_invariance():
    rng = random.Random(20240901)
    for trial in range(1000):
        n = rng.randrange(2, 9)
        m = rng.choice([2, 4, 6, 8, 10, 12])
        g = random_gdd(rng, n, m)
        sigma = list(range(n))
        rng.shuffle(sigma)
        assert g.canonical_key() == g.permute(sigma).canonical_key(), (g, sigma)


def brute_force_isomorphic(a: GDD, b: GDD) -> bool:
    if a.rank != b.rank or a.modulus != b.modulus:
        return False
    for sigma in permutations(range(a.rank)):
        if a.permute(list(sigma)) == b:
            return True
    return False


def test_canonical_key_complete_on_random_pairs():
    rng = random.Random(99)
    pairs = 0
    while pairs < 200:
        n = rng.randrange(2, 7)
        m = rng.choice([4, 6, 8])
        a, b = random_gdd(rng, n, m), random_gdd(rng, n, m)
        same_key = a.canonical_key() == b.canonical_key()
        assert same_key == brute_force_isomorphic(a, b)
        pairs += 1


def test_canonical_key_examples():
    q = u(2)
    a = path([2, 2, 3], [4, 4])  # (q, q, -1)
    b = path([2, 3, 2], [4, 4])  # (q, -1, q)
    assert a.canonical_key() != b.canonical_key()

    # The two rank-3 chains (q, q, q^-3) and (q^-3, q, q) with edges q^-1
    # inside mu_18 (q of order 9) are the same diagram written backwards.
    m = 18
    qq = UnityRoot(2, m)
    c = GDD(m, (qq, qq, qq ** -3), {(0, 1): qq ** -1, (1, 2): qq ** -1})
    d = GDD(m, (qq ** -3, qq, qq), {(0, 1): qq ** -1, (1, 2): qq ** -1})
    assert c.canonical_key() == d.canonical_key()


def test_power_twist():
    g = path([2, 3, 4], [4, 2])
    t = g.power_twist(5)
    assert t.diag == (u(10 % 6), u(15 % 6), u(20 % 6))
    with pytest.raises(ValueError):
        g.power_twist(2)


def test_modulus_normalization():
    g = path([3, 3], [3], m=6)  # all labels are -1
    assert minimal_modulus(g) == 2
    small = with_modulus(g, 2)
    assert small.modulus == 2
    assert normalized_key(g) == small.canonical_key()
    lifted = with_modulus(small, 12)
    assert normalized_key(lifted) == normalized_key(g)


def test_text_round_trip():
    g = path([2, 3, 2, 4], [4, 1, 5])
    text = g.to_text()
    assert parse_gdd(text) == g

    blocks = parse_blocks("# row=11 gdd=1 N=3\n" + text + "\n\n" + g.to_text())
    assert len(blocks) == 2
    assert blocks[0][1] == {"row": "11", "gdd": "1", "N": "3"}


def test_parse_errors_carry_line_numbers():
    bad = "gdd M=6 n=2\ndiag 2 2\nedge 1 2 0"
    with pytest.raises(ParseError) as exc:
        parse_gdd(bad)
    assert exc.value.line == 3


def test_dot_export():
    g = path([2, 3], [4])
    dot = g.to_dot(Parameter(3))
    assert 'label="q"' in dot and 'label="-1"' in dot and "v1 -- v2" in dot
