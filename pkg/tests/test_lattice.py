import math
import random
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from arakelov.divisors import divisor_d
from arakelov.ideals import (
    PlainLattice,
    enumerate_integral_ideals,
    ideal_from_generators,
    unit_ideal,
)
from arakelov.lattice import (
    GramMatrix,
    covolume_check,
    enumerate_box,
    gram_of,
    is_minimal,
    lll_reduce,
    minimal_element_bounded,
    shortest_vector,
)
from arakelov.numfield import ArchVector, create_field
from conftest import random_degree_zero_divisor, random_fractional_ideal
from oracles import brute_shortest_sq


def plain_alpha_lattice(f7):
    alpha = f7.element([Fraction(1, 4), Fraction(1, 4)])
    return PlainLattice(f7, (f7.one(), alpha)), alpha


def test_gram_examples(f7, fi):
    g = gram_of(fi, unit_ideal(fi))
    assert g.entries == ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(2)))
    g7 = gram_of(f7, unit_ideal(f7))
    assert g7.entries == ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(14)))
    lat, _ = plain_alpha_lattice(f7)
    gl = gram_of(f7, lat)
    assert gl.entries[1][1] == 1  # the alpha direction has length one
    assert gl.err == 0


def test_lll_identity(fi):
    u, red = lll_reduce(gram_of(fi, unit_ideal(fi)))
    assert u == [[1, 0], [0, 1]]


def test_lll_alpha_lattice(f7):
    lat, _ = plain_alpha_lattice(f7)
    _, red = lll_reduce(gram_of(f7, lat))
    assert red.entries[0][0] == 1  # first reduced vector has length 1


def _det2(u):
    return u[0][0] * u[1][1] - u[0][1] * u[1][0]


def test_lll_random_integer_grams_against_bruteforce():
    rng = random.Random(23)
    for _ in range(40):
        while True:
            a = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
            if _det2(a) != 0:
                break
        g = [[sum(a[k][i] * a[k][j] for k in range(2)) for j in range(2)]
             for i in range(2)]
        gram = GramMatrix.from_entries(g)
        u, red = lll_reduce(gram)
        assert abs(_det2(u)) == 1  # transform stays unimodular
        lam = brute_shortest_sq(g)
        assert red.entries[0][0] <= 2 * lam  # within the LLL factor for n=2


def test_shortest_vector_examples(f7, fi):
    sv = shortest_vector(gram_of(fi, unit_ideal(fi)))
    assert sv.length_sq == 2  # |1| (or |i|) in the weighted metric
    lat, alpha = plain_alpha_lattice(f7)
    sv2 = shortest_vector(gram_of(f7, lat))
    assert sv2.length_sq == 1
    assert sv2.element in (alpha, -alpha)


def test_shortest_vector_oracle_rank2_rank3():
    rng = random.Random(99)
    fields = [create_field([-7, 0, 1]), create_field([-2, 0, 0, 1])]
    for f in fields:
        pool = enumerate_integral_ideals(f, 12)
        for _ in range(10):
            ideal = rng.choice(pool)
            gram = gram_of(f, ideal)
            sv = shortest_vector(gram)
            lam = brute_shortest_sq([list(r) for r in gram.entries])
            if gram.err == 0:
                assert sv.length_sq == lam
            else:
                assert abs(float(sv.length_sq - lam)) < 1e-20


def test_shortest_canonical_tie_break(fi):
    sv = shortest_vector(gram_of(fi, unit_ideal(fi)))
    assert sv.coeffs == (0, 1)  # lexicographically smallest positive-leading


def test_enumerate_box_norm_argument(f7):
    out = enumerate_box(f7, unit_ideal(f7), None,
                        [Fraction(1, 2), Fraction(1, 2)], strict=True)
    assert out == []  # |N(g)| >= 1 forces some embedding >= 1


def test_enumerate_box_unit_box(f7):
    out = enumerate_box(f7, unit_ideal(f7), None,
                        [Fraction(3, 2), Fraction(3, 2)], strict=True)
    assert sorted(tuple(g.coords) for g in out) == [(-1, 0), (1, 0)]


def test_enumerate_box_alpha(f7):
    lat, alpha = plain_alpha_lattice(f7)
    out = enumerate_box(f7, lat, None, [Fraction(1), Fraction(1)], strict=True)
    assert len(out) == 2 and all(g in (alpha, -alpha) for g in out)
    closed = enumerate_box(f7, lat, None, [Fraction(1), Fraction(1)], strict=False)
    assert f7.one() in closed  # boundary point admitted without strictness


def test_is_minimal_examples(f7):
    assert is_minimal(f7, unit_ideal(f7), f7.one())
    lat, alpha = plain_alpha_lattice(f7)
    assert is_minimal(f7, lat, alpha)
    assert not is_minimal(f7, unit_ideal(f7), f7.rational(2))
    with pytest.raises(ValueError):
        is_minimal(f7, unit_ideal(f7), alpha)  # not a lattice member
    with pytest.raises(ValueError):
        is_minimal(f7, unit_ideal(f7), f7.zero())


def test_minimal_element_bounded_trivial(f7):
    u = ArchVector.ones(f7.degs, f7.prec)
    assert minimal_element_bounded(f7, unit_ideal(f7), u) == f7.one()


def test_minimal_element_bounded_twisted(f73):
    with mp.workprec(f73.prec):
        u = ArchVector((mp.exp(-2), mp.exp(2)), f73.degs, f73.prec)
    g = minimal_element_bounded(f73, unit_ideal(f73), u)
    assert is_minimal(f73, unit_ideal(f73), g)
    bound = float(f73.partial_constant()) ** 0.5
    v = f73.embed(g).abs()
    assert float(u.values[0] * v.values[0]) <= bound * (1 + 1e-12)
    assert float(u.values[1] * v.values[1]) <= bound * (1 + 1e-12)


def test_minimal_element_bounded_fractional(f7):
    third = ideal_from_generators(f7, [f7.rational(Fraction(1, 3))])
    with mp.workprec(f7.prec):
        u = ArchVector((mpf(3), mpf(3)), f7.degs, f7.prec)  # degree-zero pair
    g = minimal_element_bounded(f7, third, u)
    assert is_minimal(f7, third, g)
    bound = float(f7.partial_constant()) ** 0.5
    v = f7.embed(g).abs()
    assert all(3 * float(x) <= bound * (1 + 1e-12) for x in v.values)


def test_minimal_element_bounded_rejects_bad_degree(f7):
    with mp.workprec(f7.prec):
        u = ArchVector((mpf(2), mpf(2)), f7.degs, f7.prec)
    with pytest.raises(ValueError):
        minimal_element_bounded(f7, unit_ideal(f7), u)


def test_covolume_examples(f7, fi):
    d0 = divisor_d(unit_ideal(f7))
    a, b = covolume_check(f7, d0)
    assert abs(float(a) - math.sqrt(28)) < 1e-12
    assert abs(float(a) - float(b)) < 1e-25
    alpha = f7.element([Fraction(1, 4), Fraction(1, 4)])
    di = divisor_d(ideal_from_generators(f7, [f7.one(), alpha]))
    a2, b2 = covolume_check(f7, di)
    assert abs(float(a2) - math.sqrt(28)) < 1e-10
    from arakelov.divisors import ArakelovDivisor

    with mp.workprec(fi.prec):
        u = ArchVector((mp.e,), fi.degs, fi.prec)
    dv = ArakelovDivisor(unit_ideal(fi), u)
    a3, b3 = covolume_check(fi, dv)
    assert abs(float(dv.degree()) + 2) < 1e-12  # deg = -2 log e
    assert abs(float(a3) - 2 * math.exp(2)) < 1e-9
    assert abs(float(a3) - float(b3)) < 1e-9


def test_covolume_random_divisors(f7, f73):
    rng = random.Random(41)
    for field in (f7, f73):
        for _ in range(50):
            d = random_degree_zero_divisor(field, rng)
            a, b = covolume_check(field, d)
            assert abs(float(a) - float(b)) <= 1e-9 * abs(float(b))


def test_lll_first_vector_vs_lambda1(f73):
    rng = random.Random(29)
    for _ in range(25):
        ideal = random_fractional_ideal(f73, rng)
        gram = gram_of(f73, ideal)
        _, red = lll_reduce(gram)
        lam = shortest_vector(gram).length_sq
        assert red.entries[0][0] <= 2 * lam  # 2^(n-1) factor at n = 2


def test_lll_output_satisfies_reduction_conditions(f73, f_cubic):
    from arakelov.lattice import _gso

    rng = random.Random(61)
    delta = Fraction(99, 100)
    for field in (f73, f_cubic):
        pool = enumerate_integral_ideals(field, 10)
        for _ in range(8):
            gram = gram_of(field, rng.choice(pool))
            _, red = lll_reduce(gram)
            mu, b = _gso([list(r) for r in red.entries])
            n = len(b)
            for i in range(n):
                for j in range(i):
                    assert abs(mu[i][j]) <= Fraction(1, 2)
            for k in range(1, n):
                assert b[k] >= (delta - mu[k][k - 1] ** 2) * b[k - 1]


def test_rank2_hermite_bound(f7, f73):
    rng = random.Random(31)
    for field in (f7, f73):
        for _ in range(25):
            ideal = random_fractional_ideal(field, rng)
            gram = gram_of(field, ideal)
            lam = shortest_vector(gram).length_sq
            covol = math.sqrt(float(gram.det()))
            assert float(lam) <= math.sqrt(4.0 / 3.0) * covol * (1 + 1e-12)
