"""Arakelov divisors and their reduction theory: degree arithmetic, the
strongly C-reduced test with certificates, the LLL jump, reduction to a
nearby strongly C-reduced divisor, and distances on the class group and its
oriented refinement.

The reduction quality C is carried as an exact squared rational so that
boundary cases (lambda_1 exactly sqrt(n)/C) are decided exactly; pass
strings like "sqrt2" or Fractions to keep that sharpness.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .ideals import (
    FractionalIdeal,
    PlainLattice,
    ideal_from_generators,
    invert,
    multiply,
    one_is_primitive,
    scale_ideal,
    unit_ideal,
)
from .lattice import (
    enumerate_quadratic_form,
    gram_of,
    lll_first_vector,
    minimal_element_bounded,
    shortest_vector,
)
from .numfield import (
    ArchVector,
    FieldElement,
    NumberField,
    fraction_to_mpf,
    mpf_to_fraction,
)
from .units import (
    UnitLattice,
    UnitsUnavailable,
    min_log_norm_modulo,
    quadratic_units,
    totally_positive_adjust,
    unit_lattice_from_elements,
)

__all__ = [
    "ArakelovDivisor", "CheckResult", "ReductionTrace", "UndecidedPrincipality",
    "add", "as_c_squared", "degree", "divisor_d", "is_reduced_usual",
    "is_strongly_c_reduced", "lll_jump", "negate", "oriented_distance",
    "pic_distance", "principal_divisor", "principal_generator",
    "quadratic_units", "reduce", "reduced_cycle", "reduction_distance_bound",
    "unit_lattice_from_elements", "UnitLattice", "UnitsUnavailable",
]

DEGREE_TOL = 1e-9


class UndecidedPrincipality(RuntimeError):
    """Generator search hit its declared bound without a decision."""


class CSquared:
    """An already-squared reduction parameter (kept exact as a Fraction)."""

    __slots__ = ("c2",)

    def __init__(self, c2: Fraction):
        self.c2 = Fraction(c2)


def as_c_squared(c) -> Fraction:
    """Exact square of the reduction parameter C.

    Accepts ints, Fractions, floats (squared at their exact binary value),
    CSquared markers, and strings: either a rational literal like "2" or
    "1.5", or "sqrtR" / "sqrt(R)" for the square root of a rational R.
    """
    if isinstance(c, CSquared):
        c2 = c.c2
        if c2 < 1:
            raise ValueError("reduction parameter C must be at least 1")
        return c2
    if isinstance(c, str):
        s = c.strip().lower().replace(" ", "")
        if s.startswith("sqrt"):
            inner = s[4:]
            if inner.startswith("(") and inner.endswith(")"):
                inner = inner[1:-1]
            c2 = Fraction(inner)
        else:
            c2 = Fraction(s) ** 2
    elif isinstance(c, Fraction) or isinstance(c, int):
        c2 = Fraction(c) ** 2
    elif isinstance(c, float):
        c2 = Fraction(c) ** 2
    else:
        c2 = mpf_to_fraction(c) ** 2
    if c2 < 1:
        raise ValueError("reduction parameter C must be at least 1")
    return c2


# ---------------------------------------------------------------------------
# Divisors

@dataclass(frozen=True)
class ArakelovDivisor:
    """Pair (I, u) of a fractional ideal and positive archimedean weights."""

    ideal: FractionalIdeal
    u: ArchVector
    d_form: bool = False

    @property
    def field(self) -> NumberField:
        return self.ideal.field

    def degree(self):
        if self.d_form:
            return mpf(0)
        f = self.field
        n_ideal = self.ideal.norm()
        with mp.workprec(self.u.prec):
            log_n = mp.log(mpf(n_ideal.numerator)) - mp.log(mpf(n_ideal.denominator))
            log_u = sum(d * mp.log(abs(v)) for v, d in zip(self.u.values, self.u.degs))
            return -log_n - log_u

    def __repr__(self) -> str:
        return f"ArakelovDivisor({self.ideal!r}, u~{[float(v) for v in self.u.values]})"


def divisor_d(ideal: FractionalIdeal) -> ArakelovDivisor:
    """The degree-zero divisor on I with equal weights N(I)^(-1/n)."""
    f = ideal.field
    n_ideal = ideal.norm()
    with mp.workprec(f.prec):
        val = (mpf(n_ideal.numerator) / n_ideal.denominator) ** (-mpf(1) / f.n)
    return ArakelovDivisor(ideal, ArchVector.constant(val, f.degs, f.prec), d_form=True)


def principal_divisor(x: FieldElement) -> ArakelovDivisor:
    """(x^{-1} O_F, |x|): degree zero by the product formula."""
    if x.is_zero():
        raise ValueError("principal divisor of zero")
    f = x.field
    ideal = ideal_from_generators(f, [x.inverse()])
    return ArakelovDivisor(ideal, f.embed(x).abs())


def zero_divisor(f: NumberField) -> ArakelovDivisor:
    return ArakelovDivisor(unit_ideal(f), ArchVector.ones(f.degs, f.prec), d_form=True)


def add(d1: ArakelovDivisor, d2: ArakelovDivisor) -> ArakelovDivisor:
    return ArakelovDivisor(multiply(d1.ideal, d2.ideal), d1.u.mul(d2.u))


def negate(d: ArakelovDivisor) -> ArakelovDivisor:
    return ArakelovDivisor(invert(d.ideal), d.u.inv())


def degree(d: ArakelovDivisor):
    return d.degree()


# ---------------------------------------------------------------------------
# Strongly C-reduced testing

@dataclass(frozen=True)
class CheckResult:
    """Outcome of the strongly C-reduced test with its evidence."""

    ok: bool
    primitive: bool
    rational_intersection: Fraction
    lambda1_sq: Fraction | None
    witness: tuple[int, ...] | None
    witness_element: FieldElement | None
    threshold: Fraction

    def __bool__(self) -> bool:
        return self.ok


def _lambda_decision(f: NumberField, lattice, threshold: Fraction):
    """(lambda_1^2 >= threshold, witness) with certified margins."""
    gram = gram_of(f, lattice)
    while True:
        sv = shortest_vector(gram)
        diff = sv.length_sq - threshold
        if sv.length_sq_err == 0 or abs(diff) > sv.length_sq_err:
            return diff >= 0, sv
        gram = gram.refine()


def is_strongly_c_reduced(f: NumberField, lattice: FractionalIdeal | PlainLattice,
                          c) -> CheckResult:
    """Test: 1 is primitive in the lattice and its shortest vector has
    length at least sqrt(n)/C (equality counts)."""
    c2 = as_c_squared(c)
    primitive = one_is_primitive(lattice)
    threshold = Fraction(f.n) / c2
    if not primitive:
        return CheckResult(False, False, lattice.rational_intersection(),
                           None, None, None, threshold)
    ok, sv = _lambda_decision(f, lattice, threshold)
    return CheckResult(ok, True, lattice.rational_intersection(),
                       sv.length_sq, sv.coeffs, sv.element, threshold)


def is_reduced_usual(f: NumberField, ideal: FractionalIdeal | PlainLattice) -> bool:
    """Reduced in the usual sense: 1 lies in the lattice and is minimal."""
    from .lattice import is_minimal

    if not ideal.contains(f.one()):
        return False
    return is_minimal(f, ideal, f.one())


# ---------------------------------------------------------------------------
# LLL jump

def lll_jump(f: NumberField, ideal: FractionalIdeal):
    """Divide the ideal by the first vector of an LLL-reduced basis.

    Returns d(J) for J = b_1^{-1} I when 1 is primitive in J, else None.
    (For a true basis vector b_1 primitivity always holds: b_1/d is never a
    lattice point; the guard stays for contract safety.)
    """
    div, _ = _lll_jump_detailed(f, ideal)
    return div


def _lll_jump_detailed(f: NumberField, ideal: FractionalIdeal):
    b1 = lll_first_vector(gram_of(f, ideal)).element
    return _jump_assemble(f, ideal, b1)


def _jump_assemble(f: NumberField, ideal: FractionalIdeal, b1: FieldElement):
    j = scale_ideal(ideal, b1.inverse())
    diag = {"first_vector": b1, "jump_ideal": j}
    if not one_is_primitive(j):
        diag["reason"] = "1 is not primitive in the jumped ideal"
        return None, diag
    return divisor_d(j), diag


# ---------------------------------------------------------------------------
# Reduction (nearest strongly C-reduced divisor)

@dataclass(frozen=True)
class ReductionTrace:
    """Record of a reduction run: the initial minimal element, each division
    step with the shortest-vector length it fixed, the accumulated weight
    vector v with D - D' + (g) = (O_F, v), and the step count."""

    initial_minimal: FieldElement
    steps: tuple[tuple[FieldElement, FractionalIdeal, Fraction], ...]
    final: ArakelovDivisor
    v: ArchVector
    k: int
    c_squared: Fraction
    distance_bound: object  # mpf or None when C = 1 (no guarantee)
    generator: FieldElement


def reduction_distance_bound(f: NumberField, c2: Fraction):
    """Distance guarantee for reduce() at parameter C^2 = c2; None at C = 1."""
    if c2 == 1:
        return None
    with mp.workprec(f.prec):
        log_pf = mp.log(f.partial_constant())
        if c2 >= f.n:
            return log_pf
        factor = mp.log(f.n) / mp.log(fraction_to_mpf(c2, f.prec))
        return factor * log_pf


def reduce(d: ArakelovDivisor, c) -> tuple[ArakelovDivisor, ReductionTrace]:
    """Reduce a degree-zero divisor to a strongly C-reduced one on the same
    class-group component.

    First divides by a minimal element inside the box bound, then repeatedly
    divides by shortest vectors while the lattice is still too dense; the
    inverse-ideal norms are strictly decreasing positive integers, so the
    loop terminates.
    """
    c2 = as_c_squared(c)
    f = d.field
    deg = d.degree()
    if abs(deg) > DEGREE_TOL:
        raise ValueError(f"divisor degree {float(deg)} is not zero")
    with mp.workprec(d.u.prec):
        u = d.u.scale(mp.exp(-deg / f.n))  # exact-zero degree normalisation

    f_min = minimal_element_bounded(f, d.ideal, u)
    j = scale_ideal(d.ideal, f_min.inverse())
    g_acc = f_min
    threshold = Fraction(f.n) / c2
    steps: list[tuple[FieldElement, FractionalIdeal, Fraction]] = []
    with mp.workprec(f.prec):
        cap = int(10 * f.partial_constant()) + 10
    while True:
        ok, sv = _lambda_decision(f, j, threshold)
        if ok:
            break
        if len(steps) >= cap:
            raise RuntimeError("reduction exceeded its iteration cap (bug)")
        fj = sv.element
        j = scale_ideal(j, fj.inverse())
        g_acc = g_acc * fj
        steps.append((fj, j, sv.length_sq))

    final = divisor_d(j)
    nj = j.norm()
    with mp.workprec(u.prec):
        scale = (mpf(nj.numerator) / nj.denominator) ** (mpf(1) / f.n)
        v = u.mul(f.embed(g_acc).abs()).scale(scale)
    return final, ReductionTrace(
        initial_minimal=f_min,
        steps=tuple(steps),
        final=final,
        v=v,
        k=len(steps),
        c_squared=c2,
        distance_bound=reduction_distance_bound(f, c2),
        generator=g_acc,
    )


# ---------------------------------------------------------------------------
# Reduced-ideal cycles (real quadratic infrastructure)

def _reduced_neighbor(f: NumberField, j: FractionalIdeal) -> FieldElement:
    """The minimal element of a reduced ideal with smallest first embedding
    above 1 (the forward infrastructure step)."""
    from .lattice import enumerate_box

    with mp.workprec(f.prec):
        b0 = mpf_to_fraction(mp.sqrt(abs(f.disc)) + 2)
    attempts = 0
    while True:
        cands = enumerate_box(f, j, None, [b0, Fraction(1)], strict=True)
        fwd = [
            g for g in cands
            if f.sign_at_place(g, 0) > 0 and f.cmp_abs_sq(g, 0, Fraction(1)) > 0
        ]
        if fwd:
            best = fwd[0]
            for g in fwd[1:]:
                if f.cmp_abs_pair(g, best, 0) < 0:
                    best = g
            return best
        attempts += 1
        if attempts > 8:
            raise RuntimeError("no forward neighbor found; ideal not reduced?")
        b0 *= 2


def reduced_cycle(f: NumberField, start: FractionalIdeal):
    """The cycle of reduced ideals through `start` (which must be reduced),
    as a list of (ideal, gamma) with ideal = gamma^{-1} * start."""
    if f.n != 2 or f.r1 != 2:
        raise ValueError("reduced cycles exist for real quadratic fields only")
    out = [(start, f.one())]
    j, gam = start, f.one()
    for _ in range(100000):
        mu = _reduced_neighbor(f, j)
        j = scale_ideal(j, mu.inverse())
        gam = gam * mu
        if j == start:
            return out
        out.append((j, gam))
    raise RuntimeError("reduced cycle failed to close")


def _principal_cycle(f: NumberField):
    if "principal_cycle" not in f._cache:
        f._cache["principal_cycle"] = reduced_cycle(f, unit_ideal(f))
    return f._cache["principal_cycle"]


def to_reduced(f: NumberField, q: FractionalIdeal) -> tuple[FractionalIdeal, FieldElement]:
    """(J, g) with Q = g·J and 1 minimal in J."""
    d = divisor_d(q)
    g = minimal_element_bounded(f, q, d.u)
    return scale_ideal(q, g.inverse()), g


def principal_generator(f: NumberField, q: FractionalIdeal,
                        search_factor: int = 64) -> FieldElement | None:
    """A generator of Q when Q is principal, else None.

    Real quadratic fields walk the principal reduced-ideal cycle (complete).
    Imaginary quadratic fields use exact norm matching (complete). Other
    fields search short vectors up to a declared radius and raise
    UndecidedPrincipality when nothing is found inside it.
    """
    if f.n == 2 and f.r1 == 2:
        j, g = to_reduced(f, q)
        for jk, gam in _principal_cycle(f):
            if jk == j:
                return g * gam.inverse()
        return None
    # scale to an integral ideal first
    qi = scale_ideal(q, f.rational(q.den)) if q.den != 1 else q
    m = qi.norm()
    assert m.denominator == 1
    gram = gram_of(f, qi)
    if f.n == 2 and f.r2 == 1:
        radius = 2 * Fraction(m) * (1 + Fraction(1, 1 << 20))
        for _, coeffs in enumerate_quadratic_form(gram.entries, radius):
            g = _combine(qi, coeffs)
            if abs(g.norm()) == m:
                return g / q.den
        return None
    radius = Fraction(f.n) * Fraction(m.numerator) ** 2 * search_factor
    found = False
    for _, coeffs in enumerate_quadratic_form(gram.entries, radius):
        g = _combine(qi, coeffs)
        if abs(g.norm()) == m:
            return g / q.den
        found = True
    raise UndecidedPrincipality(
        "no generator inside the declared search radius; "
        "raise search_factor to keep looking"
    )


def _combine(ideal: FractionalIdeal, coeffs) -> FieldElement:
    acc = ideal.field.zero()
    for c, b in zip(coeffs, ideal.basis_elements()):
        if c:
            acc = acc + c * b
    return acc


# ---------------------------------------------------------------------------
# Distances

def _require_degree_zero(d: ArakelovDivisor):
    if abs(d.degree()) > DEGREE_TOL:
        raise ValueError("distance requires degree-zero divisors")


def _difference_weight(d1: ArakelovDivisor, d2: ArakelovDivisor,
                       g: FieldElement) -> ArchVector:
    """v with D1 - D2 + (g) = (O_F, v), as positive magnitudes."""
    f = d1.field
    prec = max(d1.u.prec, d2.u.prec)
    gv = f.embed(g, prec).abs()
    with mp.workprec(prec):
        vals = tuple(
            a / b * c for a, b, c in zip(d1.u.values, d2.u.values, gv.values)
        )
    return ArchVector(vals, f.degs, prec)


def pic_distance(d1: ArakelovDivisor, d2: ArakelovDivisor,
                 units: UnitLattice):
    """Distance between the classes of two degree-zero divisors on the same
    component of the class group; None when the ideal classes differ."""
    _require_degree_zero(d1)
    _require_degree_zero(d2)
    f = d1.field
    if f.r1 + f.r2 - 1 > 0 and units is None:
        raise UnitsUnavailable("unit lattice required for fields of unit rank > 0")
    q = multiply(d1.ideal, invert(d2.ideal))
    g = principal_generator(f, q)
    if g is None:
        return None
    v = _difference_weight(d1, d2, g)
    gens = units.log_embeddings() if units is not None else []
    return min_log_norm_modulo(v.log(), gens)


def oriented_distance(d1: ArakelovDivisor, d2: ArakelovDivisor,
                      units: UnitLattice):
    """Distance in the oriented class group: the generator must be totally
    positive and only totally positive units are minimised over; None when
    the divisors sit on different narrow components."""
    _require_degree_zero(d1)
    _require_degree_zero(d2)
    f = d1.field
    if f.r1 + f.r2 - 1 > 0 and units is None:
        raise UnitsUnavailable("unit lattice required for fields of unit rank > 0")
    q = multiply(d1.ideal, invert(d2.ideal))
    g = principal_generator(f, q)
    if g is None:
        return None
    gp = totally_positive_adjust(f, g, units) if units is not None else g
    if gp is None:
        return None
    v = _difference_weight(d1, d2, gp)
    gens = units.log_embeddings(tp_only=True) if units is not None else []
    return min_log_norm_modulo(v.log(), gens)
