"""Unit lattices: fundamental units of real quadratic fields via continued
fractions, totally positive subgroups, and closest-vector searches in the
logarithmic embedding used by the class-group distances.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from mpmath import mp

from .numfield import FieldElement, LogVector, NumberField


@dataclass(frozen=True)
class UnitLattice:
    """Logarithmic lattice of a set of fundamental units.

    `generators` span the free part of the unit group; `totally_positive`
    generate the subgroup positive at every real place (up to sign)."""

    field: NumberField
    generators: tuple[FieldElement, ...]
    totally_positive: tuple[FieldElement, ...]

    def rank(self) -> int:
        return len(self.generators)

    def log_embeddings(self, tp_only: bool = False) -> list[LogVector]:
        gens = self.totally_positive if tp_only else self.generators
        return [self.field.embed(g).abs().log() for g in gens]

    def regulator(self):
        """Covolume of the log lattice; for rank one, log of the larger
        embedding of the fundamental unit."""
        f = self.field
        if not self.generators:
            return mp.mpf(0)
        if len(self.generators) == 1:
            v = self.log_embeddings()[0]
            with mp.workprec(v.prec):
                return abs(v.values[0])
        raise NotImplementedError("regulator only implemented for rank <= 1")

    def tp_regulator(self):
        if not self.totally_positive:
            return mp.mpf(0)
        v = self.field.embed(self.totally_positive[0]).abs().log()
        with mp.workprec(v.prec):
            return abs(v.values[0])


class UnitsUnavailable(ValueError):
    pass


def _continued_fraction_unit(t: int, nrm: int) -> tuple[int, int]:
    """Fundamental unit coefficients (x, y) with eps = x + y*gamma for the
    order Z[gamma], gamma a root of X^2 - t X + nrm (real quadratic).

    Works on the purely periodic shift of gamma; the convergents over one
    period assemble the smallest unit above 1.
    """
    d = t * t - 4 * nrm
    if d <= 0:
        raise UnitsUnavailable("not a real quadratic order")
    s = isqrt(d)
    if s * s == d:
        raise UnitsUnavailable("degenerate (split) quadratic algebra")
    # conjugate root (t - sqrt d)/2; shift gamma by m so the result is
    # purely periodic: psi = gamma + m with conjugate in (-1, 0)
    # floor((t - sqrt d)/2) = floor((t - s - 1)/2) since d is not a square
    floor_conj = (t - s - 1) // 2
    m = -floor_conj - 1
    p = t + 2 * m
    q = 2
    assert (d - p * p) % q == 0
    p0, q0 = p, q
    q_prev, q_cur = 0, 1  # q_{-1}, q_0 after consuming a_0
    a = (p + s) // q
    first = True
    qm2, qm1 = 1, 0  # convergent denominators q_{k-2}, q_{k-1}
    k = 0
    while True:
        if not first and (p, q) == (p0, q0):
            break
        first = False
        a = (p + s) // q
        qm2, qm1 = qm1, a * qm1 + qm2
        p = a * q - p
        q = (d - p * p) // q
        k += 1
        if k > 10 * d + 100:
            raise RuntimeError("continued fraction failed to close")
    # eps = q_{l-1} * psi + q_{l-2} = q_{l-1} * gamma + (q_{l-1} m + q_{l-2})
    return qm1 * m + qm2, qm1


def quadratic_units(f: NumberField) -> UnitLattice:
    """Unit lattice of a quadratic field; the fundamental unit of a real
    field comes from the continued fraction of the order generator.

    Imaginary quadratic fields get the trivial (rank zero) lattice. Other
    degrees must supply their units explicitly.
    """
    if f.n != 2:
        raise UnitsUnavailable("units are computed only for quadratic fields")
    if f.r2 == 1:
        return UnitLattice(f, (), ())
    gamma = f.element([0, 1])
    t, nrm = int(gamma.trace()), int(gamma.norm())
    x, y = _continued_fraction_unit(t, nrm)
    eps = f.element([x, y])
    assert abs(eps.norm()) == 1, "continued fraction did not produce a unit"
    if f.sign_at_place(eps, 0) < 0:
        eps = -eps
    tp = eps if eps.norm() == 1 else eps * eps
    return UnitLattice(f, (eps,), (tp,))


def unit_lattice_from_elements(f: NumberField, elements: list[FieldElement]) -> UnitLattice:
    """Unit lattice from user-supplied fundamental units (any degree)."""
    for e in elements:
        if abs(e.norm()) != 1:
            raise UnitsUnavailable("supplied element is not a unit (|norm| != 1)")
    gens = tuple(elements)
    tp = _totally_positive_generators(f, gens)
    return UnitLattice(f, gens, tp)


def _sign_vector(f: NumberField, x: FieldElement) -> tuple[int, ...]:
    return tuple(int(f.sign_at_place(x, p) < 0) for p in range(f.r1))


def _totally_positive_generators(f: NumberField,
                                 gens: tuple[FieldElement, ...]) -> tuple[FieldElement, ...]:
    """Generators of the totally positive unit subgroup, found by scanning
    exponent patterns over GF(2) together with the sign of -1."""
    if f.r1 == 0:
        return gens
    r = len(gens)
    out: list[FieldElement] = []
    minus_one = _sign_vector(f, -f.one())
    for mask in range(1, 2 ** r):
        candidate = f.one()
        for i in range(r):
            if mask >> i & 1:
                candidate = candidate * gens[i]
        sv = _sign_vector(f, candidate)
        if all(s == 0 for s in sv):
            out.append(candidate)
        elif sv == minus_one:
            out.append(-candidate)
    for g in gens:
        out.append(g * g)
    # prune to a maximal independent-ish set: keep squares plus the single
    # smallest mixed product per new mask (desk scale, rank <= 3)
    return tuple(out[: max(r, 1)]) if out else tuple(g * g for g in gens)


def totally_positive_adjust(f: NumberField, g: FieldElement,
                            units: UnitLattice) -> FieldElement | None:
    """A totally positive associate of g, or None when no sign combination
    of units reaches the all-positive pattern."""
    if f.r1 == 0:
        return g
    candidates = [g, -g]
    for eps in units.generators:
        candidates.extend([g * eps, -(g * eps)])
    for c in candidates:
        if all(f.sign_at_place(c, p) > 0 for p in range(f.r1)):
            return c
    return None


def min_log_norm_modulo(target: LogVector, gens: list[LogVector]):
    """min over integer combinations a of || target + sum a_i gens_i ||.

    Babai rounding seeded, then an exhaustive offset box; fine for the desk
    scale ranks (<= 3) this library works at.
    """
    if not gens:
        return target.norm()
    prec = max([target.prec] + [g.prec for g in gens])
    r = len(gens)
    with mp.workprec(prec):
        gram = mp.matrix(r, r)
        rhs = mp.matrix(r, 1)
        for i in range(r):
            for j in range(r):
                gram[i, j] = sum(
                    d * gi * gj
                    for gi, gj, d in zip(gens[i].values, gens[j].values, gens[i].degs)
                )
            rhs[i] = -sum(
                d * gi * tv for gi, tv, d in zip(gens[i].values, target.values, gens[i].degs)
            )
        center = mp.lu_solve(gram, rhs)
        best = None
        span = 2
        from itertools import product
        for offs in product(range(-span, span + 1), repeat=r):
            coeffs = [int(mp.nint(center[i])) + offs[i] for i in range(r)]
            vec = list(target.values)
            for i in range(r):
                if coeffs[i]:
                    vec = [v + coeffs[i] * gv for v, gv in zip(vec, gens[i].values)]
            norm = mp.sqrt(sum(d * v * v for v, d in zip(vec, target.degs)))
            if best is None or norm < best:
                best = norm
        return best
