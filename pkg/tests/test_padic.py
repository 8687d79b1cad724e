import random

import pytest

from dlspringer.flags import VarietySpec, count_points, dl_membership, enumerate_flags, springer_membership
from dlspringer.gf import make_field
from dlspringer.linalg import Mat
from dlspringer.normal_forms import weyr_matrix
from dlspringer.padic import (
    NotRectangularError,
    TruncatedSeriesMat,
    act_on_flag,
    centralizer_check,
    embed,
    lefschetz_count,
    multiplicative_order,
    parse_series,
    rectangular_shape,
)

F2 = make_field(2)
SWAP = TruncatedSeriesMat((Mat([[0, 1], [1, 0]], F2), Mat.zeros(2, 2, F2)))


def random_series(rng, d, r, F, unit=False):
    while True:
        a = TruncatedSeriesMat(tuple(Mat([[rng.randrange(F.order) for _ in range(d)] for _ in range(d)], F)
                                     for _ in range(r)))
        if not unit or a.is_unit():
            return a


def test_embed_is_a_ring_homomorphism():
    rng = random.Random(2024)
    for i in range(200):
        F = make_field(rng.choice([2, 3]))
        d, r = rng.randint(1, 3), rng.randint(1, 3)
        a, b = random_series(rng, d, r, F), random_series(rng, d, r, F)
        assert embed(a * b) == embed(a) @ embed(b)
        assert embed(a + b) == embed(a) + embed(b)
    assert embed(TruncatedSeriesMat.identity(2, 3, F2)) == Mat.identity(6, F2)


def test_embed_of_pi_is_the_weyr_nilpotent():
    for d, r in ((2, 2), (1, 3), (3, 2)):
        pi = TruncatedSeriesMat((Mat.zeros(d, d, F2), Mat.identity(d, F2)) + tuple(Mat.zeros(d, d, F2) for _ in range(r - 2)))
        assert embed(TruncatedSeriesMat.identity(d, r, F2) + pi) == weyr_matrix((r,) * d, F2)


def test_embed_commutes_with_weyr():
    rng = random.Random(5)
    for d in range(1, 4):
        for r in range(1, 4):
            for _ in range(5):
                assert centralizer_check((r,) * d, random_series(rng, d, r, make_field(3)))


def test_rectangular_shape():
    assert rectangular_shape((3, 3)) == (2, 3)
    with pytest.raises(NotRectangularError):
        rectangular_shape((2, 1))


def test_action_preserves_intersection():
    rng = random.Random(9)
    W = weyr_matrix((2, 2), F2)
    for k in (1, 2, 3):
        F = make_field(2, 1, k)
        pts = set(VarietySpec("intersection", 4, 2, u=W, w=(2, 1, 4, 3)).points(k))
        for _ in range(3):
            g = random_series(rng, 2, 2, F2, unit=True)
            assert {act_on_flag(g, f) for f in pts} == pts


def test_parse_series():
    text = "0 1\n1 0\n\n1 0\n0 0\n"
    g = parse_series(text, F2)
    assert (g.d, g.r) == (2, 2)
    assert parse_series(g.format(), F2) == g


def test_lefschetz_identity_equals_intersection_count():
    W = weyr_matrix((2, 2), F2)
    one = TruncatedSeriesMat.identity(2, 2, F2)
    for k in (1, 2):
        assert lefschetz_count((2, 2), (2, 1, 4, 3), one, k) == count_points(
            VarietySpec("intersection", 4, 2, u=W, w=(2, 1, 4, 3)), k)


def test_lefschetz_scalar_acts_trivially():
    F3 = make_field(3)
    two = TruncatedSeriesMat((Mat([[2, 0], [0, 2]], F3),))
    assert multiplicative_order(embed(two)) == 2
    for w in ((1, 2), (2, 1)):
        for k in (1, 2):
            assert lefschetz_count((1, 1), w, two, k) == count_points(
                VarietySpec("intersection", 2, 3, u=Mat.identity(2, F3), w=w), k)


def test_swap_regression_by_brute_force():
    # fixed points of swap o F on B_{W,2143}, computed by filtering all flags over GF(4)
    F = make_field(2, 1, 2)
    W = weyr_matrix((2, 2), F)
    G = embed(SWAP).to_field(F)
    brute = sum(
        1 for f in enumerate_flags(4, F)
        if springer_membership(W, f) and dl_membership((2, 1, 4, 3), f) and f.frobenius().apply(G) == f
    )
    assert brute == 4
    assert lefschetz_count((2, 2), (2, 1, 4, 3), SWAP, 1) == 4


def test_lefschetz_conjugacy_invariance():
    rng = random.Random(11)
    h = random_series(rng, 2, 2, F2, unit=True)
    hinv = TruncatedSeriesMat((h.coeffs[0].inverse(),
                               (h.coeffs[0].inverse() @ h.coeffs[1] @ h.coeffs[0].inverse()).scale(F2.neg(1))))
    assert h * hinv == TruncatedSeriesMat.identity(2, 2, F2)
    conj = h * SWAP * hinv
    assert lefschetz_count((2, 2), (2, 1, 4, 3), conj, 1) == lefschetz_count((2, 2), (2, 1, 4, 3), SWAP, 1)


def test_lefschetz_rejects_bad_input():
    with pytest.raises(ValueError):
        lefschetz_count((2, 2), (2, 1, 3), SWAP, 1)
    F4 = make_field(2, 1, 2)
    with pytest.raises(ValueError):
        act_on_flag(TruncatedSeriesMat((Mat([[2, 0], [0, 1]], F4),)), VarietySpec("full", 2, 2).points(2).__next__())
