import itertools

import pytest

from schubmc.roots import RootSystemError, cartan_matrix, parse_type, root_system


@pytest.mark.parametrize(
    "lie_type,rank,npos,order",
    [
        ("A", 2, 3, 6),
        ("A", 3, 6, 24),
        ("B", 2, 4, 8),
        ("C", 2, 4, 8),
        ("B", 3, 9, 48),
        ("D", 3, 6, 24),
        ("G", 2, 6, 12),
    ],
)
def test_counts(lie_type, rank, npos, order):
    rs = root_system(lie_type, rank)
    assert rs.num_positive_roots == npos
    assert len(rs.weyl_group()) == order
    assert rs.longest_element().length == npos


@pytest.mark.parametrize("lie_type,rank,npos", [("F", 4, 24), ("E", 6, 36), ("E", 7, 63), ("E", 8, 120)])
def test_root_closure_large_types(lie_type, rank, npos):
    # root closure only; the Weyl group is not enumerated here
    rs = root_system(lie_type, rank)
    assert rs.num_positive_roots == npos


def test_invalid_types():
    for lie_type, rank in [("A", 0), ("B", 1), ("E", 9), ("F", 3), ("G", 3), ("Z", 2)]:
        with pytest.raises(RootSystemError):
            cartan_matrix(lie_type, rank)
    with pytest.raises(RootSystemError):
        parse_type("XY")


def test_cartan_invariants():
    for t, r in [("A", 3), ("B", 2), ("G", 2), ("F", 4)]:
        c = cartan_matrix(t, r)
        assert all(c[i][i] == 2 for i in range(r))
        assert all(c[i][j] <= 0 for i in range(r) for j in range(r) if i != j)


def test_weyl_action_basics():
    rs = root_system("A", 2)
    s1, s2 = rs.simple_reflection(1), rs.simple_reflection(2)
    a1, a2 = rs.simple_root(1), rs.simple_root(2)
    lam = (3, -1)
    assert rs.identity.act(lam) == lam
    assert s1.act(a1) == tuple(-x for x in a1)
    # in rank 2 type A the rotation s1 s2 carries the first simple root to the second
    assert (s1 * s2).act(a1) == a2


def test_weyl_action_rank_mismatch():
    rs = root_system("A", 2)
    with pytest.raises(RootSystemError):
        rs.identity.act((1, 2, 3))


def test_reduced_words_and_length():
    for t, r in [("A", 3), ("B", 2), ("G", 2)]:
        rs = root_system(t, r)
        for w in rs.weyl_group():
            word = w.word
            assert len(word) == w.length
            assert rs.from_word(word) is w
            # length compatibility with descents
            for i in range(1, r + 1):
                ws = w * rs.simple_reflection(i)
                assert abs(ws.length - w.length) == 1
                assert (ws.length < w.length) == (
                    not rs.is_positive_root(w.act(rs.simple_root(i)))
                )


def test_length_complement():
    rs = root_system("B", 2)
    w0 = rs.longest_element()
    for w in rs.weyl_group():
        assert (w0 * w).length == w0.length - w.length


def test_inverse_via_word():
    rs = root_system("A", 3)
    for w in rs.weyl_group():
        assert (w * w.inverse()).is_identity()


def _bruhat_by_subwords(rs, u, w):
    word = w.word
    target = u.mat
    k = u.length
    for positions in itertools.combinations(range(len(word)), k):
        v = rs.from_word([word[i] for i in positions])
        if v.mat == target and v.length == k:
            return True
    return k == 0


@pytest.mark.parametrize("t,r", [("B", 2), ("G", 2), ("A", 3)])
def test_bruhat_matches_subword_criterion(t, r):
    rs = root_system(t, r)
    small = [w for w in rs.weyl_group() if w.length <= 4]
    for w in small:
        for u in rs.weyl_group():
            assert rs.bruhat_leq(u, w) == _bruhat_by_subwords(rs, u, w)


def test_bruhat_basics():
    rs = root_system("A", 2)
    s1, s2 = rs.simple_reflection(1), rs.simple_reflection(2)
    for w in rs.weyl_group():
        assert rs.bruhat_leq(rs.identity, w)
        assert rs.bruhat_leq(w, w)
    assert rs.bruhat_leq(s1, s2 * s1)
    assert not rs.bruhat_leq(s1, s2)


def test_bruhat_antiautomorphism():
    for t, r in [("A", 2), ("B", 2), ("A", 3)]:
        rs = root_system(t, r)
        w0 = rs.longest_element()
        W = rs.weyl_group()
        for u in W:
            for w in W:
                assert rs.bruhat_leq(u, w) == rs.bruhat_leq(w0 * w, w0 * u)


def test_parabolic_data():
    rs = root_system("A", 3)
    full = rs.parabolic([1, 2, 3])
    assert len(full.min_reps) == 1
    empty = rs.parabolic([])
    assert len(empty.min_reps) == len(rs.weyl_group())
    gr24 = rs.parabolic([1, 3])
    assert len(gr24.min_reps) == 6
    assert len(gr24.subgroup) * len(gr24.min_reps) == len(rs.weyl_group())
    for w in rs.weyl_group():
        rep, inner = gr24.factorize(w)
        assert rep * inner is w
        assert rep.length + inner.length == w.length
        assert rep in set(gr24.min_reps)


def test_enumeration_order_deterministic():
    rs = root_system("B", 2)
    names = [w.name() for w in rs.weyl_group()]
    assert names[0] == "id"
    lengths = [w.length for w in rs.weyl_group()]
    assert lengths == sorted(lengths)


def test_parse_element_aliases():
    rs = root_system("A", 2)
    assert rs.parse_element("id").is_identity()
    assert rs.parse_element("w0") is rs.longest_element()
    assert rs.parse_element("s1s2s1") is rs.parse_element("s2s1s2")
    with pytest.raises(RootSystemError):
        rs.parse_element("s9")
    with pytest.raises(RootSystemError):
        rs.parse_element("garbage")
