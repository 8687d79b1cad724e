import itertools
import pickle

import pytest

from dlspringer.gf import (
    FieldError,
    Scalar,
    field_embedding,
    frobenius_q,
    in_base_field,
    make_field,
    prime_power,
    scalar_arith,
    smallest_irreducible,
)

SMALL = [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 2), (2, 1, 3), (5, 1, 1), (2, 3, 2), (3, 2, 2), (7, 1, 2)]


def brute_irreducible(poly, p):
    # no roots and, for degree 4, no monic quadratic factor; enough for degrees <= 4
    deg = len(poly) - 1
    for x in range(p):
        if sum(c * x**i for i, c in enumerate(poly)) % p == 0:
            return False
    if deg == 4:
        for a, b in itertools.product(range(p), repeat=2):
            # divide by x^2 + b x + a
            r = list(poly)
            for top in range(4, 1, -1):
                c = r[top]
                r[top] -= c
                r[top - 1] = (r[top - 1] - c * b) % p
                r[top - 2] = (r[top - 2] - c * a) % p
            if r[0] % p == 0 and r[1] % p == 0:
                return False
    return True


@pytest.mark.parametrize("p,deg", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_smallest_irreducible_is_first_in_order(p, deg):
    f = smallest_irreducible(p, deg)
    assert f[-1] == 1 and len(f) == deg + 1
    assert brute_irreducible(f, p)
    # every monic polynomial earlier in the constant-term-first order is reducible
    for lower in itertools.product(range(p), repeat=deg):
        cand = lower + (1,)
        if lower < f[:-1]:
            assert not brute_irreducible(cand, p)


def test_known_moduli():
    assert make_field(2, 1, 2).modulus == (1, 1, 1)
    assert make_field(3, 1, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,m,k", SMALL)
def test_field_axioms_exhaustive(p, m, k):
    F = make_field(p, m, k)
    els = list(F.elements())
    assert len(els) == F.order == p ** (m * k)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    sample = els if F.order <= 16 else els[:: max(1, F.order // 12)]
    for a, b, c in itertools.product(sample, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("p,m,k", SMALL)
def test_multiplicative_group_cyclic(p, m, k):
    F = make_field(p, m, k)
    g = F.generator
    seen = {F.pow(g, e) for e in range(F.order - 1)}
    assert len(seen) == F.order - 1 and 0 not in seen


@pytest.mark.parametrize("p,m,k", SMALL)
def test_frobenius_automorphism_and_fixed_set(p, m, k):
    F = make_field(p, m, k)
    for a in F.elements():
        assert F.frob(a) == F.pow(a, F.q)
    for a, b in itertools.product(list(F.elements())[:20], repeat=2):
        assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    fixed = [a for a in F.elements() if F.frob(a) == a]
    assert len(fixed) == F.q
    assert sorted(fixed) == sorted(F.base_elements())
    # F^k is the identity
    for a in F.elements():
        x = a
        for _ in range(k):
            x = F.frob(x)
        assert x == a


def test_gf4_examples():
    F = make_field(2, 1, 2)
    x = Scalar.from_coeffs((0, 1), F)
    one = Scalar(1, F)
    assert x * x == x + one
    assert frobenius_q(x) == x * x
    assert not in_base_field(x)
    assert in_base_field(one)
    assert scalar_arith("inv", x) * x == one
    assert (x**3) == one


def test_parse_and_format_roundtrip():
    F = make_field(3, 1, 2)
    for a in F.elements():
        assert F.parse(F.format(a)) == a
        assert Scalar.parse(str(Scalar(a, F)), F).value == a


def test_embedding_is_a_homomorphism():
    src, dst = make_field(2, 1, 2), make_field(2, 1, 4)
    e = field_embedding(src, dst)
    for a, b in itertools.product(src.elements(), repeat=2):
        assert e[src.mul(a, b)] == dst.mul(e[a], e[b])
        assert e[src.add(a, b)] == dst.add(e[a], e[b])


def test_errors():
    with pytest.raises(FieldError):
        prime_power(12)
    with pytest.raises(FieldError):
        make_field(2, 1, 21)
    F = make_field(2, 1, 2)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises((FieldError, ValueError)):
        Scalar(1, F) + Scalar(1, make_field(3))


def test_field_pickles_to_same_instance():
    F = make_field(2, 1, 3)
    assert pickle.loads(pickle.dumps(F)) is F
