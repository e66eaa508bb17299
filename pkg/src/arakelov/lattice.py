"""Ideal lattices under the degree-weighted archimedean metric: Gram
matrices, LLL reduction, exact shortest-vector and box enumeration,
minimality tests and the covolume identity.

Gram matrices are stored with exact rational entries plus a certified
entrywise error bound. Quadratic fields and scalar scales produce error
zero, so every comparison there is exact; other inputs carry a tiny bound
from the interval embeddings and refine themselves when a decision falls
inside it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .exact import (
    ceil_minus_c_minus_sqrt,
    floor_minus_c_plus_sqrt,
    mat_det,
)
from .ideals import FractionalIdeal, PlainLattice
from .numfield import (
    MAX_PREC,
    ArchVector,
    FieldElement,
    NumberField,
    PrecisionExhausted,
    fraction_to_mpf,
    mpf_to_fraction,
)

LLL_DELTA = Fraction(99, 100)
_ENUM_SLACK = Fraction(1, 2 ** 20)


class _NeedsRefinement(Exception):
    pass


def _sqrt_approx(d: int, prec: int) -> tuple[Fraction, Fraction]:
    """(r, eps) with |r - sqrt(d)| <= eps, exact rationals."""
    scaled = math.isqrt(d * (1 << (2 * prec)))
    r = Fraction(scaled, 1 << prec)
    return r, Fraction(1, 1 << prec)


@dataclass(frozen=True)
class GramMatrix:
    """Positive-definite Gram matrix of a scaled lattice basis."""

    field: NumberField | None
    source: tuple[FieldElement, ...]
    u: ArchVector | None
    entries: tuple[tuple[Fraction, ...], ...]
    err: Fraction
    prec: int

    @classmethod
    def from_entries(cls, entries) -> "GramMatrix":
        """Bare exact Gram matrix without a field lattice behind it."""
        frozen = tuple(tuple(Fraction(x) for x in row) for row in entries)
        return cls(None, (), None, frozen, Fraction(0), 53)

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> Fraction:
        return mat_det([list(r) for r in self.entries])

    def value(self, coeffs) -> Fraction:
        n = self.size
        acc = Fraction(0)
        for i in range(n):
            if coeffs[i]:
                for j in range(n):
                    if coeffs[j]:
                        acc += self.entries[i][j] * coeffs[i] * coeffs[j]
        return acc

    def value_error(self, coeffs) -> Fraction:
        if self.err == 0:
            return Fraction(0)
        s = sum(abs(c) for c in coeffs)
        return self.err * s * s

    def refine(self) -> "GramMatrix":
        new_prec = self.prec * 2
        if new_prec > MAX_PREC:
            raise PrecisionExhausted("gram matrix refinement exceeded precision cap")
        return _gram_from_basis(self.field, self.source, self.u, new_prec)

    def is_exact(self) -> bool:
        return self.err == 0


@dataclass(frozen=True)
class ShortVector:
    """Nonzero lattice vector with exact squared length bookkeeping."""

    coeffs: tuple[int, ...]
    element: FieldElement
    length_sq: Fraction
    length_sq_err: Fraction

    @property
    def length(self):
        with mp.workprec(64):
            return mp.sqrt(fraction_to_mpf(self.length_sq, 64))


def _u_weights(f: NumberField, u: ArchVector | None) -> list[Fraction]:
    """Per-place exact weights: u_sigma^2 at real places, |u_sigma|^2 at
    complex ones (the mpf entries are taken at their exact binary value)."""
    if u is None:
        return [Fraction(1)] * f.num_places
    out = []
    for v, d in zip(u.values, u.degs):
        if d == 1:
            out.append(mpf_to_fraction(v) ** 2)
        else:
            re = mpf_to_fraction(v.real) if hasattr(v, "real") else mpf_to_fraction(v)
            im = mpf_to_fraction(v.imag) if hasattr(v, "imag") else Fraction(0)
            out.append(re * re + im * im)
    return out


def _gram_from_basis(f: NumberField, basis: tuple[FieldElement, ...],
                     u: ArchVector | None, prec: int) -> GramMatrix:
    n = len(basis)
    w = _u_weights(f, u)
    scalar = all(x == w[0] for x in w)

    if f.r2 == 0 and scalar:
        entries = [
            [w[0] * (basis[i] * basis[j]).trace() for j in range(n)] for i in range(n)
        ]
        return GramMatrix(f, basis, u, _freeze(entries), Fraction(0), prec)

    if f.n == 2 and f.r2 == 1:
        # single complex place: 2|u|^2 (a_i a_j + b_i b_j |D|), exact
        d = -f._surd_disc()
        coords = [f.surd_embed(x, 0) for x in basis]
        entries = [
            [2 * w[0] * (coords[i].a * coords[j].a + coords[i].b * coords[j].b * d)
             for j in range(n)]
            for i in range(n)
        ]
        return GramMatrix(f, basis, u, _freeze(entries), Fraction(0), prec)

    if f.n == 2 and f.r2 == 0:
        # real quadratic, per-place weights: entries live in Q(sqrt disc)
        disc = f._surd_disc()
        r, eps = _sqrt_approx(disc, prec)
        entries = []
        err = Fraction(0)
        for i in range(n):
            row = []
            for j in range(n):
                s = f.surd_embed(basis[i] * basis[j], 0)
                a_part = (w[0] + w[1]) * s.a
                b_part = (w[0] - w[1]) * s.b
                row.append(a_part + b_part * r)
                err = max(err, abs(b_part) * eps)
            entries.append(row)
        return GramMatrix(f, basis, u, _freeze(entries), err, prec)

    # general field: certified interval embeddings
    entries = []
    err = Fraction(0)
    for i in range(n):
        row = []
        for j in range(n):
            lo = Fraction(0)
            hi = Fraction(0)
            for place in range(f.num_places):
                deg = f.degs[place]
                ri, ii = f.embed_interval(basis[i], place, prec)
                rj, ij = f.embed_interval(basis[j], place, prec)
                if ii is None:
                    plo, phi = _iv_mul_pair(ri, rj)
                else:
                    alo, ahi = _iv_mul_pair(ri, rj)
                    blo, bhi = _iv_mul_pair(ii, ij)
                    plo, phi = alo + blo, ahi + bhi
                weight = w[place] * (2 if deg == 2 else 1)
                if weight >= 0:
                    lo += weight * plo
                    hi += weight * phi
            row.append((lo + hi) / 2)
            err = max(err, (hi - lo) / 2)
        entries.append(row)
    return GramMatrix(f, basis, u, _freeze(entries), err, prec)


def _iv_mul_pair(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _freeze(m) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in m)


def gram_of(f: NumberField, lattice: FractionalIdeal | PlainLattice | list[FieldElement],
            u: ArchVector | None = None, prec: int | None = None) -> GramMatrix:
    """Gram matrix of the lattice scaled per place by u (u = None means 1)."""
    if isinstance(lattice, (FractionalIdeal, PlainLattice)):
        basis = tuple(lattice.basis_elements())
    else:
        basis = tuple(lattice)
    return _gram_from_basis(f, basis, u, prec or f.prec)


# ---------------------------------------------------------------------------
# LLL over exact rationals (Gram only)

def _gso(g: list[list[Fraction]]):
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        b[i] = g[i][i]
        for j in range(i):
            mu[i][j] = g[i][j] - sum(
                (mu[i][k] * mu[j][k] * b[k] for k in range(j)), Fraction(0)
            )
            if b[j] == 0:
                raise ValueError("gram matrix is singular")
            mu[i][j] /= b[j]
            b[i] -= mu[i][j] * mu[i][j] * b[j]
    return mu, b


def lll_reduce(g: GramMatrix, delta: Fraction = LLL_DELTA):
    """LLL on the Gram matrix; returns (transform, reduced GramMatrix).

    The transform rows express the reduced basis on the source basis.
    """
    n = g.size
    cur = [list(r) for r in g.entries]
    umat = [[int(i == j) for j in range(n)] for i in range(n)]

    def apply_row_op(dst: int, src: int, q: int):
        # row_dst -= q * row_src on both the transform and the gram
        for j in range(n):
            umat[dst][j] -= q * umat[src][j]
        for j in range(n):
            cur[dst][j] -= q * cur[src][j]
        for i in range(n):
            cur[i][dst] -= q * cur[i][src]

    def swap_rows(a: int, b: int):
        umat[a], umat[b] = umat[b], umat[a]
        cur[a], cur[b] = cur[b], cur[a]
        for i in range(n):
            cur[i][a], cur[i][b] = cur[i][b], cur[i][a]

    mu, bb = _gso(cur)
    if any(x <= 0 for x in bb):
        raise ValueError("gram matrix is not positive definite")
    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 10000 * n * n:
            raise RuntimeError("LLL failed to terminate")
        for j in range(k - 1, -1, -1):
            q = _nearest_int(mu[k][j])
            if q:
                apply_row_op(k, j, q)
                mu, bb = _gso(cur)
        if bb[k] >= (delta - mu[k][k - 1] ** 2) * bb[k - 1]:
            k += 1
        else:
            swap_rows(k, k - 1)
            mu, bb = _gso(cur)
            k = max(k - 1, 1)
    reduced = GramMatrix(g.field, g.source, g.u, _freeze(cur), g.err, g.prec)
    return [row[:] for row in umat], reduced


def _nearest_int(x: Fraction) -> int:
    return int(math.floor(x + Fraction(1, 2)))


# ---------------------------------------------------------------------------
# Fincke-Pohst enumeration

def _ldl(g: list[list[Fraction]]):
    n = len(g)
    l = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        l[i][i] = Fraction(1)
        acc = g[i][i] - sum((l[i][k] * l[i][k] * d[k] for k in range(i)), Fraction(0))
        d[i] = acc
        if d[i] <= 0:
            raise ValueError("matrix not positive definite")
        for j in range(i + 1, n):
            v = g[j][i] - sum((l[j][k] * l[i][k] * d[k] for k in range(i)), Fraction(0))
            l[j][i] = v / d[i]
    return d, l


def enumerate_quadratic_form(entries: tuple[tuple[Fraction, ...], ...],
                             radius: Fraction):
    """All nonzero integer vectors x with x^T G x <= radius.

    Yields (value, coeffs) pairs; both signs of each vector are produced.
    """
    g = [list(r) for r in entries]
    n = len(g)
    d, l = _ldl(g)
    coeffs = [0] * n
    out: list[tuple[Fraction, tuple[int, ...]]] = []

    def rec(i: int, used: Fraction):
        if i < 0:
            if any(coeffs):
                out.append((used, tuple(coeffs)))
            return
        c = sum((l[j][i] * coeffs[j] for j in range(i + 1, n)), Fraction(0))
        s = (radius - used) / d[i]
        if s < 0:
            return
        lo = ceil_minus_c_minus_sqrt(c, s)
        hi = floor_minus_c_plus_sqrt(c, s)
        for x in range(lo, hi + 1):
            coeffs[i] = x
            y = x + c
            rec(i - 1, used + d[i] * y * y)
        coeffs[i] = 0

    rec(n - 1, Fraction(0))
    return out


def _canonical_sign(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    for c in coeffs:
        if c > 0:
            return coeffs
        if c < 0:
            return tuple(-x for x in coeffs)
    return coeffs


def _element_of(g: GramMatrix, coeffs) -> FieldElement | None:
    if not g.source:
        return None
    acc = g.field.zero()
    for c, b in zip(coeffs, g.source):
        if c:
            acc = acc + c * b
    return acc


def shortest_vector(g: GramMatrix) -> ShortVector:
    """A shortest nonzero vector, exact for exact Gram matrices; ties are
    broken toward the lexicographically smallest positive-leading coeffs."""
    cur = g
    while True:
        try:
            return _shortest_attempt(cur)
        except _NeedsRefinement:
            cur = cur.refine()
        except ValueError:
            if cur.err == 0:
                raise
            cur = cur.refine()  # midpoint matrix fell over its error margin


def _shortest_attempt(g: GramMatrix) -> ShortVector:
    umat, red = lll_reduce(g)
    n = g.size
    radius = min(red.entries[i][i] for i in range(n))
    if g.err:
        radius = radius * (1 + _ENUM_SLACK) + g.err * (4 * n * n)
    cands = enumerate_quadratic_form(red.entries, radius)
    if not cands:
        raise RuntimeError("enumeration found no vectors inside the LLL radius")
    # map back to source-basis coefficients
    mapped = []
    for val, x in cands:
        orig = tuple(
            sum(x[i] * umat[i][j] for i in range(n)) for j in range(n)
        )
        mapped.append((val, _canonical_sign(orig)))
    best = min(v for v, _ in mapped)
    if g.err == 0:
        winners = sorted({x for v, x in mapped if v == best})
        coeffs = winners[0]
        return ShortVector(coeffs, _element_of(g, coeffs), best, Fraction(0))
    # inexact entries: any candidate within the certified margin may be the
    # true minimiser; report the canonical one with the spread folded into
    # the error so threshold decisions stay honest
    margin = max(g.value_error(x) for _, x in mapped)
    close = sorted((v, x) for v, x in mapped if v <= best + 2 * margin)
    val, coeffs = min(close, key=lambda t: (t[1], t[0]))
    spread = close[-1][0] - best
    return ShortVector(coeffs, _element_of(g, coeffs), val,
                       3 * margin + spread)


def lll_first_vector(g: GramMatrix) -> ShortVector:
    umat, red = lll_reduce(g)
    coeffs = _canonical_sign(tuple(umat[0]))
    return ShortVector(coeffs, _element_of(g, coeffs), red.entries[0][0],
                       g.value_error(coeffs))


# ---------------------------------------------------------------------------
# Box enumeration and minimality

def _bounds_fractions(bounds, num_places: int) -> list[Fraction]:
    if isinstance(bounds, ArchVector):
        vals = [mpf_to_fraction(v) for v in bounds.values]
    else:
        vals = [Fraction(mpf_to_fraction(b)) if not isinstance(b, (int, Fraction))
                else Fraction(b) for b in bounds]
    if len(vals) != num_places:
        raise ValueError("one bound per infinite place required")
    if any(b <= 0 for b in vals):
        raise ValueError("bounds must be positive")
    return vals


def enumerate_box(f: NumberField, lattice, u: ArchVector | None, bounds,
                  strict: bool = True) -> list[FieldElement]:
    """All nonzero lattice elements g with u_sigma |sigma(g)| < bound_sigma
    at every place (<= when strict is False).

    The candidates come from the degree-weighted ellipsoid relaxation; each
    is then checked per place with certified comparisons, so the returned
    set is exact with respect to the given rational bounds.
    """
    b = _bounds_fractions(bounds, f.num_places)
    w = _u_weights(f, u)
    prec = f.prec
    while True:
        gram = _ellipsoid_gram(f, lattice, w, b, prec)
        radius = Fraction(f.n) * (1 + _ENUM_SLACK)
        if gram.err and gram.err * (4 * f.n * f.n) > Fraction(f.n) * _ENUM_SLACK:
            prec *= 2
            if prec > MAX_PREC:
                raise PrecisionExhausted("box enumeration gram too coarse")
            continue
        cands = enumerate_quadratic_form(gram.entries, radius)
        break
    out = []
    for _, coeffs in cands:
        g = _element_of(gram, coeffs)
        ok = True
        for place in range(f.num_places):
            sgn = f.cmp_abs_sq(g, place, b[place] ** 2, w[place])
            if sgn > 0 or (strict and sgn == 0):
                ok = False
                break
        if ok:
            out.append((coeffs, g))
    out.sort(key=lambda t: t[0])
    return [g for _, g in out]


def _ellipsoid_gram(f: NumberField, lattice, w: list[Fraction],
                    b: list[Fraction], prec: int) -> GramMatrix:
    """Gram of the lattice scaled per place by u_sigma / bound_sigma."""
    if isinstance(lattice, (FractionalIdeal, PlainLattice)):
        basis = tuple(lattice.basis_elements())
    else:
        basis = tuple(lattice)
    scaled = [wp / (bp * bp) for wp, bp in zip(w, b)]
    return _gram_scaled_weights(f, basis, scaled, prec)


def _gram_scaled_weights(f: NumberField, basis, weights: list[Fraction],
                         prec: int) -> GramMatrix:
    """Gram with explicit per-place squared weights (exact rationals)."""
    n = len(basis)
    if f.r2 == 0 and all(x == weights[0] for x in weights):
        entries = [[weights[0] * (basis[i] * basis[j]).trace() for j in range(n)]
                   for i in range(n)]
        return GramMatrix(f, tuple(basis), None, _freeze(entries), Fraction(0), prec)
    if f.n == 2 and f.r2 == 1:
        d = -f._surd_disc()
        coords = [f.surd_embed(x, 0) for x in basis]
        entries = [
            [2 * weights[0] * (coords[i].a * coords[j].a + coords[i].b * coords[j].b * d)
             for j in range(n)]
            for i in range(n)
        ]
        return GramMatrix(f, tuple(basis), None, _freeze(entries), Fraction(0), prec)
    if f.n == 2 and f.r2 == 0:
        disc = f._surd_disc()
        r, eps = _sqrt_approx(disc, prec)
        entries = []
        err = Fraction(0)
        for i in range(n):
            row = []
            for j in range(n):
                s = f.surd_embed(basis[i] * basis[j], 0)
                a_part = (weights[0] + weights[1]) * s.a
                b_part = (weights[0] - weights[1]) * s.b
                row.append(a_part + b_part * r)
                err = max(err, abs(b_part) * eps)
            entries.append(row)
        return GramMatrix(f, tuple(basis), None, _freeze(entries), err, prec)
    entries = []
    err = Fraction(0)
    for i in range(n):
        row = []
        for j in range(n):
            lo = Fraction(0)
            hi = Fraction(0)
            for place in range(f.num_places):
                deg = f.degs[place]
                ri, ii = f.embed_interval(basis[i], place, prec)
                rj, ij = f.embed_interval(basis[j], place, prec)
                if ii is None:
                    plo, phi = _iv_mul_pair(ri, rj)
                else:
                    alo, ahi = _iv_mul_pair(ri, rj)
                    blo, bhi = _iv_mul_pair(ii, ij)
                    plo, phi = alo + blo, ahi + bhi
                weight = weights[place] * (2 if deg == 2 else 1)
                lo += weight * plo
                hi += weight * phi
            row.append((lo + hi) / 2)
            err = max(err, (hi - lo) / 2)
        entries.append(row)
    return GramMatrix(f, tuple(basis), None, _freeze(entries), err, prec)


def is_minimal(f: NumberField, lattice, x: FieldElement) -> bool:
    """Whether no nonzero lattice element is strictly smaller at every place."""
    if x.is_zero():
        raise ValueError("zero is never minimal")
    if not lattice.contains(x):
        raise ValueError("element does not lie in the lattice")
    # candidates: ellipsoid relaxation of the open box |sigma(g)| < |sigma(x)|
    v = f.embed(x).abs()
    b = [mpf_to_fraction(t) * (1 + _ENUM_SLACK) for t in v.values]
    w = [Fraction(1)] * f.num_places
    gram = _ellipsoid_gram(f, lattice, w, b, f.prec)
    radius = Fraction(f.n) * (1 + _ENUM_SLACK) ** 3
    for _, coeffs in enumerate_quadratic_form(gram.entries, radius):
        g = _element_of(gram, coeffs)
        if all(f.cmp_abs_pair(g, x, place) < 0 for place in range(f.num_places)):
            return False
    return True


def dominators(f: NumberField, lattice, x: FieldElement) -> list[FieldElement]:
    """Nonzero lattice elements strictly smaller than x at every place."""
    v = f.embed(x).abs()
    b = [mpf_to_fraction(t) * (1 + _ENUM_SLACK) for t in v.values]
    w = [Fraction(1)] * f.num_places
    gram = _ellipsoid_gram(f, lattice, w, b, f.prec)
    radius = Fraction(f.n) * (1 + _ENUM_SLACK) ** 3
    out = []
    for _, coeffs in enumerate_quadratic_form(gram.entries, radius):
        g = _element_of(gram, coeffs)
        if all(f.cmp_abs_pair(g, x, place) < 0 for place in range(f.num_places)):
            out.append(g)
    return out


def minimal_element_bounded(f: NumberField, ideal: FractionalIdeal,
                            u: ArchVector) -> FieldElement:
    """A minimal element g of the ideal with u_sigma |sigma(g)| below the
    box-bound constant at every place, chosen deterministically.

    The closed scaled box is nonempty for degree-0 pairs; all its points are
    enumerated, the minimal ones kept, and the tie broken by smallest scaled
    length then lexicographically smallest positive-leading coefficients.
    """
    n_ideal = ideal.norm()
    with mp.workprec(u.prec):
        deg = -(mp.log(mpf(n_ideal.numerator)) - mp.log(mpf(n_ideal.denominator))) \
            - sum(d * mp.log(abs(v)) for v, d in zip(u.values, u.degs))
        if abs(deg) > mpf(10) ** (-9):
            raise ValueError(f"(I, u) has degree {float(deg)}, not zero")
    with mp.workprec(f.prec):
        target = f.partial_constant() ** (mpf(1) / f.n)
        box = mpf_to_fraction(target) * (1 + Fraction(1, 1 << 64))
    candidates = enumerate_box(f, ideal, u, [box] * f.num_places, strict=False)
    if not candidates:
        raise RuntimeError("bounded box is empty; degree-0 precondition violated")
    # domination only needs comparisons within the candidate set
    minimal = []
    for g in candidates:
        dominated = False
        for h in candidates:
            if h is g:
                continue
            if all(f.cmp_abs_pair(h, g, place) < 0 for place in range(f.num_places)):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    gram = gram_of(f, ideal, u)
    seen = {}
    for g in minimal:
        canon = _canonical_sign(tuple(g.coords))
        if canon not in seen:
            seen[canon] = gram.value(ideal.coordinates_of(f.element(canon)))
    best = min(seen.items(), key=lambda kv: (kv[1], kv[0]))
    return f.element(best[0])


def covolume_check(f: NumberField, divisor) -> tuple:
    """(Gram-determinant covolume, closed-form covolume) of a divisor's
    lattice; the two must agree within tolerance."""
    gram = gram_of(f, divisor.ideal, divisor.u)
    with mp.workprec(max(f.prec, 64)):
        det = gram.det()
        from_gram = mp.sqrt(fraction_to_mpf(det, f.prec))
        deg = divisor.degree()
        closed = mp.sqrt(abs(f.disc)) * mp.exp(-deg)
    return from_gram, closed
