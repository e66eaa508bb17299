import math
import random
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from arakelov.divisors import (
    ArakelovDivisor,
    CSquared,
    add,
    as_c_squared,
    degree,
    divisor_d,
    is_reduced_usual,
    is_strongly_c_reduced,
    lll_jump,
    negate,
    oriented_distance,
    pic_distance,
    principal_divisor,
    principal_generator,
    quadratic_units,
    reduce,
    reduction_distance_bound,
)
from arakelov.divisors import _jump_assemble, _principal_cycle
from arakelov.ideals import (
    PlainLattice,
    enumerate_integral_ideals,
    ideal_from_generators,
    ideal_norm,
    invert,
    multiply,
    scale_ideal,
    unit_ideal,
)
from arakelov.numfield import ArchVector, create_field
from arakelov.survey import enumerate_sred
from arakelov.units import min_log_norm_modulo
from conftest import random_degree_zero_divisor, random_fractional_ideal
from oracles import fundamental_unit_is_minimal


def test_as_c_squared_parsing():
    assert as_c_squared("sqrt2") == 2
    assert as_c_squared("sqrt(3)") == 3
    assert as_c_squared("3/2") == Fraction(9, 4)
    assert as_c_squared(2) == 4
    assert as_c_squared(Fraction(5, 4)) == Fraction(25, 16)
    assert as_c_squared(CSquared(Fraction(2))) == 2
    with pytest.raises(ValueError):
        as_c_squared("0.5")


def test_divisor_d_examples(f7):
    d0 = divisor_d(unit_ideal(f7))
    assert float(d0.degree()) == 0.0
    alpha = f7.element([Fraction(1, 4), Fraction(1, 4)])
    i = ideal_from_generators(f7, [f7.one(), alpha])
    di = divisor_d(i)
    assert abs(float(di.u.values[0]) - math.sqrt(8)) < 1e-12


def test_divisor_d_degree_zero_random(f73):
    rng = random.Random(2)
    for _ in range(20):
        i = random_fractional_ideal(f73, rng)
        assert abs(float(divisor_d(i).degree())) < 1e-30


def test_principal_divisor_examples(f7, fi):
    p = principal_divisor(f7.one())
    assert p.ideal == unit_ideal(f7)
    p2 = principal_divisor(f7.rational(2))
    assert p2.ideal == ideal_from_generators(f7, [f7.rational(Fraction(1, 2))])
    assert abs(float(p2.degree())) < 1e-30
    p3 = principal_divisor(fi.element([1, 1]))
    assert ideal_norm(p3.ideal) == Fraction(1, 2)
    assert abs(float(p3.degree())) < 1e-30
    with pytest.raises(ValueError):
        principal_divisor(f7.zero())


def test_divisor_group_ops(f7):
    rng = random.Random(9)
    for _ in range(15):
        d1 = random_degree_zero_divisor(f7, rng)
        d2 = random_degree_zero_divisor(f7, rng)
        s = add(d1, d2)
        assert abs(float(degree(s)) - float(degree(d1)) - float(degree(d2))) < 1e-20
        z = add(d1, negate(d1))
        assert z.ideal == unit_ideal(f7)
        assert abs(float(degree(z))) < 1e-20
    alpha = f7.element([Fraction(1, 4), Fraction(1, 4)])
    i = ideal_from_generators(f7, [f7.one(), alpha])
    f_elt = f7.element([1, 1])
    assert add(divisor_d(i), principal_divisor(f_elt)).ideal == \
        scale_ideal(i, f_elt.inverse())


def test_strongly_reduced_plain_lattice_q7(f7):
    alpha = f7.element([Fraction(1, 4), Fraction(1, 4)])
    lat = PlainLattice(f7, (f7.one(), alpha))
    assert not is_strongly_c_reduced(f7, lat, 1)
    assert is_strongly_c_reduced(f7, lat, 2)
    boundary = is_strongly_c_reduced(f7, lat, "sqrt2")
    assert boundary.ok and boundary.lambda1_sq == 1  # exact tie, inclusive


def test_strongly_reduced_unit_ideal_totally_real(f7):
    for c in (1, "sqrt2", 2, 10):
        assert is_strongly_c_reduced(f7, unit_ideal(f7), c).ok


def test_strongly_reduced_primitivity_gate(f7):
    alpha = f7.element([Fraction(1, 4), Fraction(1, 4)])
    module = ideal_from_generators(f7, [f7.one(), alpha])
    res = is_strongly_c_reduced(f7, module, 100)
    assert not res.ok and not res.primitive
    assert res.rational_intersection == Fraction(1, 2)


def test_strongly_reduced_monotone_in_c(f73):
    rng = random.Random(13)
    grid = [1, Fraction(6, 5), "sqrt2", Fraction(8, 5), 2, 3]
    for _ in range(20):
        i = random_fractional_ideal(f73, rng)
        flags = [bool(is_strongly_c_reduced(f73, i, c)) for c in grid]
        # once true, stays true for larger C
        assert flags == sorted(flags)


def test_reduced_usual_examples(f7):
    assert is_reduced_usual(f7, unit_ideal(f7))
    half = ideal_from_generators(f7, [f7.rational(Fraction(1, 2))])
    assert not is_reduced_usual(f7, half)


def test_reduced_iff_strongly_bridges(f73):
    census = enumerate_sred(f73, 2)
    for e in census.entries:
        usual = is_reduced_usual(f73, e.ideal)
        strongly_1 = is_strongly_c_reduced(f73, e.ideal, 1).ok
        strongly_sqrt_n = is_strongly_c_reduced(f73, e.ideal, "sqrt2").ok
        if strongly_1:
            assert usual  # strongly 1-reduced implies reduced
        if usual:
            assert strongly_sqrt_n  # reduced implies strongly sqrt(n)-reduced


def test_lll_jump_unit_ideal(f7):
    d = lll_jump(f7, unit_ideal(f7))
    assert d is not None and d.ideal == unit_ideal(f7)


def test_lll_jump_random_quadratic_fields():
    rng = random.Random(37)
    for d0 in (7, 10, 23, 55, 73, 89):
        f = create_field([-d0, 0, 1])
        pool = enumerate_integral_ideals(f, 15)
        for _ in range(6):
            ideal = rng.choice(pool)
            jumped = lll_jump(f, ideal)
            assert jumped is not None
            # n = 2: C = 2^((n-1)/2) sqrt(n) = 2, exactly C^2 = 4
            assert is_strongly_c_reduced(f, jumped.ideal, CSquared(Fraction(4))).ok


def test_lll_jump_guard_never_false_certificate(f7):
    # a deliberately non-basis vector: J = (1/2) O_F has 1/2, guard refuses
    res, diag = _jump_assemble(f7, unit_ideal(f7), f7.rational(2))
    assert res is None
    assert "not primitive" in diag["reason"]


def test_reduce_identity(f7):
    from arakelov.divisors import zero_divisor

    d0 = zero_divisor(f7)
    for c in (1, "sqrt2", 2):
        out, trace = reduce(d0, c)
        assert trace.k == 0
        assert out.ideal == unit_ideal(f7)


def test_reduce_rejects_nonzero_degree(f7):
    with mp.workprec(f7.prec):
        u = ArchVector((mpf(2), mpf(2)), f7.degs, f7.prec)
    with pytest.raises(ValueError):
        reduce(ArakelovDivisor(unit_ideal(f7), u), 2)
    with pytest.raises(ValueError):
        reduce(divisor_d(unit_ideal(f7)), "0.9")


def test_reduce_output_always_certified(f73):
    rng = random.Random(19)
    for c in (1, "sqrt2", 2):
        for _ in range(10):
            d = random_degree_zero_divisor(f73, rng)
            out, trace = reduce(d, c)
            assert is_strongly_c_reduced(f73, out.ideal, c).ok
            if trace.c_squared > 1:
                k_cap = math.log(float(f73.partial_constant())) / \
                    (f73.n / 2 * math.log(float(trace.c_squared)))
                assert trace.k < k_cap
            else:
                assert trace.distance_bound is None


def test_reduce_case1_sum_zero_bound(f73):
    # when no shortest-vector steps happen, || log v ||^2 <= n(n-1) max^2
    rng = random.Random(23)
    seen = 0
    for _ in range(30):
        d = random_degree_zero_divisor(f73, rng, spread=2.0)
        out, trace = reduce(d, "sqrt2")
        if trace.k == 0:
            seen += 1
            lv = trace.v.log()
            vals = [float(x) for x in lv.values]
            assert sum(x * x for x in vals) <= 2 * max(x * x for x in vals) + 1e-18
    assert seen > 0


def test_reduce_lands_in_census_q73(f73):
    census = enumerate_sred(f73, "sqrt2")
    keys = {e.ideal.key() for e in census.entries}
    units = quadratic_units(f73)
    rng = random.Random(29)
    bound = math.log(math.sqrt(73))
    for i in range(50):
        t = rng.uniform(-8.0, 8.0)
        with mp.workprec(f73.prec):
            u = ArchVector((mp.exp(t), mp.exp(-t)), f73.degs, f73.prec)
        d = ArakelovDivisor(unit_ideal(f73), u)
        out, trace = reduce(d, "sqrt2")
        assert out.ideal.key() in keys
        dist = float(min_log_norm_modulo(trace.v.log(), units.log_embeddings()))
        assert dist < bound  # log n / (2 log C) * log dF = log sqrt(73) here


def test_reduce_distance_q7_fractional(f7):
    third = ideal_from_generators(f7, [f7.rational(Fraction(1, 3))])
    d = divisor_d(third)
    out, trace = reduce(d, 2)
    units = quadratic_units(f7)
    dist = float(min_log_norm_modulo(trace.v.log(), units.log_embeddings()))
    assert dist < math.log(math.sqrt(28))
    assert is_strongly_c_reduced(f7, out.ideal, 2).ok


def test_reduction_distance_bound_regimes(f7):
    assert reduction_distance_bound(f7, Fraction(1)) is None
    log_pf = math.log(math.sqrt(28))
    assert abs(float(reduction_distance_bound(f7, Fraction(4))) - log_pf) < 1e-12
    # C = sqrt2 boundary: both regimes agree at log n / log c2 = 1
    assert abs(float(reduction_distance_bound(f7, Fraction(2))) - log_pf) < 1e-12
    val = float(reduction_distance_bound(f7, Fraction(25, 16)))
    assert abs(val - math.log(2) / math.log(25 / 16) * log_pf) < 1e-12


def test_quadratic_units_examples(f7, f73, fi):
    u7 = quadratic_units(f7)
    assert u7.generators[0].coords == (8, 3)
    assert u7.generators[0].norm() == 1
    assert abs(float(u7.regulator()) - math.log(8 + 3 * math.sqrt(7))) < 1e-12
    u73 = quadratic_units(f73)
    assert u73.generators[0].norm() == -1
    assert u73.totally_positive[0] == u73.generators[0] * u73.generators[0]
    assert quadratic_units(fi).rank() == 0
    assert fundamental_unit_is_minimal(7, 8, 3)
    assert fundamental_unit_is_minimal(
        73, int(u73.generators[0].coords[0]), int(u73.generators[0].coords[1])
    )


def test_quadratic_units_rejects_other_degrees(f_cubic):
    from arakelov.units import UnitsUnavailable

    with pytest.raises(UnitsUnavailable):
        quadratic_units(f_cubic)


def test_principal_cycle_lengths(f7, f73):
    assert len(_principal_cycle(f7)) == 4
    assert len(_principal_cycle(f73)) == 9  # the usual-reduced principal count


def test_principal_generator_roundtrip(f7, f73):
    rng = random.Random(43)
    for field in (f7, f73):
        for _ in range(10):
            num = rng.randint(1, 9)
            den = rng.randint(1, 9)
            g0 = field.element([Fraction(num, den), Fraction(rng.randint(-3, 3))])
            if g0.is_zero():
                continue
            q = ideal_from_generators(field, [g0])
            g = principal_generator(field, q)
            assert g is not None
            assert ideal_from_generators(field, [g]) == q


def test_principal_generator_detects_nonprincipal(f79):
    # class number three: the norm-3 prime above 3 is not principal
    p3 = next(
        i for i in enumerate_integral_ideals(f79, 3) if int(ideal_norm(i)) == 3
    )
    assert principal_generator(f79, p3) is None


def test_pic_distance_examples(f7):
    units = quadratic_units(f7)
    base = divisor_d(unit_ideal(f7))
    with mp.workprec(f7.prec):
        u = ArchVector((mp.exp(mpf("0.3")), mp.exp(-mpf("0.3"))), f7.degs, f7.prec)
    d1 = ArakelovDivisor(unit_ideal(f7), u)
    assert abs(float(pic_distance(d1, base, units)) - 0.3 * math.sqrt(2)) < 1e-12
    assert float(pic_distance(d1, d1, units)) < 1e-25
    r = units.regulator()
    with mp.workprec(f7.prec):
        ur = ArchVector((mp.exp(r), mp.exp(-r)), f7.degs, f7.prec)
    assert float(pic_distance(ArakelovDivisor(unit_ideal(f7), ur), base, units)) < 1e-25


def test_pic_distance_none_across_classes(f79):
    from arakelov.units import unit_lattice_from_elements

    units = quadratic_units(f79)
    p3 = next(
        i for i in enumerate_integral_ideals(f79, 3) if int(ideal_norm(i)) == 3
    )
    assert pic_distance(divisor_d(p3), divisor_d(unit_ideal(f79)), units) is None


def test_pic_distance_pseudometric(f73):
    units = quadratic_units(f73)
    rng = random.Random(47)
    divisors = []
    for _ in range(6):
        t = rng.uniform(-3, 3)
        with mp.workprec(f73.prec):
            u = ArchVector((mp.exp(t), mp.exp(-t)), f73.degs, f73.prec)
        divisors.append(ArakelovDivisor(unit_ideal(f73), u))
    dist = {}
    for a in range(len(divisors)):
        for b in range(len(divisors)):
            dist[a, b] = float(pic_distance(divisors[a], divisors[b], units))
    for a in range(len(divisors)):
        assert dist[a, a] < 1e-25
        for b in range(len(divisors)):
            assert abs(dist[a, b] - dist[b, a]) < 1e-9
            for c in range(len(divisors)):
                assert dist[a, c] <= dist[a, b] + dist[b, c] + 1e-9


def test_oriented_distance_dominates_pic(f73):
    units = quadratic_units(f73)
    rng = random.Random(53)
    for _ in range(10):
        t1, t2 = rng.uniform(-3, 3), rng.uniform(-3, 3)
        with mp.workprec(f73.prec):
            u1 = ArchVector((mp.exp(t1), mp.exp(-t1)), f73.degs, f73.prec)
            u2 = ArchVector((mp.exp(t2), mp.exp(-t2)), f73.degs, f73.prec)
        d1 = ArakelovDivisor(unit_ideal(f73), u1)
        d2 = ArakelovDivisor(unit_ideal(f73), u2)
        p = pic_distance(d1, d2, units)
        o = oriented_distance(d1, d2, units)
        assert o is not None
        assert float(o) >= float(p) - 1e-12  # minimising over fewer units


def test_oriented_distance_narrow_gate(f7):
    units = quadratic_units(f7)
    # sqrt7 * O_F and O_F: generator sqrt7 has signs (+,-), not adjustable
    root = f7.element([0, 1])
    q = ideal_from_generators(f7, [root])
    d1, d2 = divisor_d(q), divisor_d(unit_ideal(f7))
    assert pic_distance(d1, d2, units) is not None
    assert oriented_distance(d1, d2, units) is None


def test_pic_distance_imaginary_quadratic(fi):
    units = quadratic_units(fi)
    d1 = divisor_d(unit_ideal(fi))
    g = fi.element([2, 1])
    d2 = divisor_d(ideal_from_generators(fi, [g]))
    dist = pic_distance(d1, d2, units)
    assert dist is not None and float(dist) < 1e-25  # rank-zero torus
