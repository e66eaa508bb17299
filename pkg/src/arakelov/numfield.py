"""Number field core: elements, embeddings, traces and norms, and the
archimedean algebra with its degree-weighted metric.

Exact data (rational coordinates, structure constants, discriminant) is kept
in Fractions. Embeddings are carried at a working precision (128 bits by
default) with certified error radii; comparisons that land too close to a
decision boundary escalate the precision, and quadratic fields short-circuit
to exact surd arithmetic so they never escalate at all.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .exact import (
    Surd,
    cmp_abs_surd,
    mat_det,
    mat_inv,
    mat_vec,
    sign_surd,
    sturm_real_root_count,
)

DEFAULT_PREC = 128
MAX_PREC = 4096

Interval = tuple[Fraction, Fraction]


class PrecisionExhausted(RuntimeError):
    """A certified comparison could not be decided below the precision cap."""


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (binary floats are exact rationals)."""
    if x == 0:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    val = Fraction(man) * (Fraction(2) ** exp)
    return -val if sign else val


def fraction_to_mpf(q: Fraction, prec: int):
    with mp.workprec(prec):
        return mpf(q.numerator) / q.denominator


# ---------------------------------------------------------------------------
# Interval arithmetic over exact rational endpoints

def _iv_add(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


def _iv_mul(a: Interval, b: Interval) -> Interval:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def _iv_sq(a: Interval) -> Interval:
    if a[0] >= 0:
        return (a[0] * a[0], a[1] * a[1])
    if a[1] <= 0:
        return (a[1] * a[1], a[0] * a[0])
    return (Fraction(0), max(a[0] * a[0], a[1] * a[1]))


def _iv_scale(a: Interval, c: Fraction) -> Interval:
    return (a[0] * c, a[1] * c) if c >= 0 else (a[1] * c, a[0] * c)


# ---------------------------------------------------------------------------
# Exceptions for field construction

class FieldConstructionError(ValueError):
    pass


def _is_rational_root_free(coeffs: list[int]) -> bool:
    c0, lead = coeffs[0], coeffs[-1]
    if c0 == 0:
        return False
    for p in _divisors(abs(c0)):
        for q in _divisors(abs(lead)):
            for num in (p, -p):
                if math.gcd(abs(num), q) != 1:
                    continue
                # evaluate at num/q exactly
                x = Fraction(num, q)
                val = Fraction(0)
                for c in reversed(coeffs):
                    val = val * x + c
                if val == 0:
                    return False
    return True


def _divisors(m: int) -> list[int]:
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            if d != m // d:
                out.append(m // d)
        d += 1
    return sorted(out)


def _is_irreducible(coeffs: list[int]) -> bool:
    deg = len(coeffs) - 1
    if deg <= 1:
        return deg == 1
    if not _is_rational_root_free(coeffs):
        return False
    if deg <= 3:
        return True  # no rational root suffices up to cubics
    from sympy import Poly, Symbol  # deferred: only needed for quartic and up

    x = Symbol("x")
    return Poly(list(reversed(coeffs)), x).is_irreducible


def _is_squarefree_int(d: int) -> bool:
    d = abs(d)
    if d in (0,):
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        while d % p == 0:
            d //= p
        p += 1
    return True


# ---------------------------------------------------------------------------
# Archimedean vectors

@dataclass(frozen=True)
class ArchVector:
    """Vector over the infinite places: signed values (embeddings) or
    positive magnitudes, with the place degrees for the weighted norm."""

    values: tuple
    degs: tuple[int, ...]
    prec: int = DEFAULT_PREC

    def norm_sq(self):
        with mp.workprec(self.prec):
            return sum(d * (abs(v) ** 2) for v, d in zip(self.values, self.degs))

    def norm(self):
        with mp.workprec(self.prec):
            return mp.sqrt(self.norm_sq())

    def mul(self, other: "ArchVector") -> "ArchVector":
        prec = max(self.prec, other.prec)
        with mp.workprec(prec):
            vals = tuple(a * b for a, b in zip(self.values, other.values))
        return ArchVector(vals, self.degs, prec)

    def inv(self) -> "ArchVector":
        with mp.workprec(self.prec):
            vals = tuple(1 / v for v in self.values)
        return ArchVector(vals, self.degs, self.prec)

    def abs(self) -> "ArchVector":
        with mp.workprec(self.prec):
            vals = tuple(abs(v) for v in self.values)
        return ArchVector(vals, self.degs, self.prec)

    def scale(self, c) -> "ArchVector":
        with mp.workprec(self.prec):
            vals = tuple(v * c for v in self.values)
        return ArchVector(vals, self.degs, self.prec)

    def log(self) -> "LogVector":
        """Componentwise log of a positive vector."""
        with mp.workprec(self.prec):
            vals = tuple(mp.log(v) for v in self.values)
        return LogVector(vals, self.degs, self.prec)

    @staticmethod
    def ones(degs: tuple[int, ...], prec: int = DEFAULT_PREC) -> "ArchVector":
        return ArchVector(tuple(mpf(1) for _ in degs), degs, prec)

    @staticmethod
    def constant(value, degs: tuple[int, ...], prec: int = DEFAULT_PREC) -> "ArchVector":
        with mp.workprec(prec):
            v = mpf(value) if not isinstance(value, Fraction) else fraction_to_mpf(value, prec)
        return ArchVector(tuple(v for _ in degs), degs, prec)


@dataclass(frozen=True)
class LogVector:
    """Logarithms of archimedean magnitudes, one real entry per place."""

    values: tuple
    degs: tuple[int, ...]
    prec: int = DEFAULT_PREC

    def norm_sq(self):
        with mp.workprec(self.prec):
            return sum(d * v * v for v, d in zip(self.values, self.degs))

    def norm(self):
        with mp.workprec(self.prec):
            return mp.sqrt(self.norm_sq())

    def add(self, other: "LogVector") -> "LogVector":
        prec = max(self.prec, other.prec)
        with mp.workprec(prec):
            vals = tuple(a + b for a, b in zip(self.values, other.values))
        return LogVector(vals, self.degs, prec)

    def neg(self) -> "LogVector":
        return LogVector(tuple(-v for v in self.values), self.degs, self.prec)

    def scale(self, c) -> "LogVector":
        with mp.workprec(self.prec):
            vals = tuple(v * c for v in self.values)
        return LogVector(vals, self.degs, self.prec)

    def exp(self) -> ArchVector:
        with mp.workprec(self.prec):
            vals = tuple(mp.exp(v) for v in self.values)
        return ArchVector(vals, self.degs, self.prec)

    def weighted_sum(self):
        with mp.workprec(self.prec):
            return sum(d * v for v, d in zip(self.values, self.degs))


# ---------------------------------------------------------------------------
# Number field

@dataclass(frozen=True)
class NumberField:
    """A number field given by a monic irreducible integer polynomial and an
    order basis (rows = basis elements in power-basis coordinates, b_1 = 1)."""

    min_poly: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    n: int
    r1: int
    r2: int
    disc: int
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        # idempotent derived-data caches; contents never depend on call order
        object.__setattr__(self, "_cache", {})

    # -- exact structure ----------------------------------------------------

    def _power_matrix(self):
        """Rows of the basis as a matrix B (b_i = sum_j B[i][j] theta^j)."""
        key = "pm"
        if key not in self._cache:
            b = [list(row) for row in self.basis]
            self._cache[key] = b
            self._cache["pm_inv_t"] = mat_inv([list(col) for col in zip(*b)])
        return self._cache[key]

    def to_power(self, coords) -> list[Fraction]:
        b = self._power_matrix()
        return [
            sum((coords[i] * b[i][j] for i in range(self.n)), Fraction(0))
            for j in range(self.n)
        ]

    def from_power(self, pcoords) -> list[Fraction]:
        self._power_matrix()
        return mat_vec(self._cache["pm_inv_t"], list(pcoords))

    def _poly_mod(self, coeffs: list[Fraction]) -> list[Fraction]:
        """Reduce a power-basis polynomial mod the minimal polynomial."""
        n = self.n
        c = list(coeffs) + [Fraction(0)] * max(0, 2 * n - 1 - len(coeffs))
        for k in range(len(c) - 1, n - 1, -1):
            f = c[k]
            if f:
                c[k] = Fraction(0)
                for j in range(n):
                    c[k - n + j] -= f * self.min_poly[j]
        return c[:n]

    def mult_table(self):
        """Structure constants: b_i * b_j on the integral basis (integers)."""
        key = "mt"
        if key not in self._cache:
            n = self.n
            table = []
            for i in range(n):
                row = []
                pi = self.to_power([Fraction(int(k == i)) for k in range(n)])
                for j in range(n):
                    pj = self.to_power([Fraction(int(k == j)) for k in range(n)])
                    prod = [Fraction(0)] * (2 * n - 1)
                    for a, ca in enumerate(pi):
                        if ca:
                            for b, cb in enumerate(pj):
                                if cb:
                                    prod[a + b] += ca * cb
                    coords = self.from_power(self._poly_mod(prod))
                    if any(x.denominator != 1 for x in coords):
                        raise FieldConstructionError(
                            "integral basis is not multiplicatively closed"
                        )
                    row.append(tuple(int(x) for x in coords))
                table.append(row)
            self._cache[key] = tuple(tuple(r) for r in table)
        return self._cache[key]

    def mult_matrix(self, coords) -> list[list[Fraction]]:
        """Matrix of multiplication by the element with the given coords."""
        t = self.mult_table()
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            ci = coords[i]
            if ci:
                for j in range(n):
                    row = t[i][j]
                    for k in range(n):
                        if row[k]:
                            m[k][j] += ci * row[k]
        return m

    @property
    def degs(self) -> tuple[int, ...]:
        return tuple([1] * self.r1 + [2] * self.r2)

    @property
    def num_places(self) -> int:
        return self.r1 + self.r2

    def one(self) -> "FieldElement":
        return FieldElement(self, tuple([Fraction(1)] + [Fraction(0)] * (self.n - 1)))

    def zero(self) -> "FieldElement":
        return FieldElement(self, tuple([Fraction(0)] * self.n))

    def element(self, coords) -> "FieldElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return FieldElement(self, coords)

    def rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)] + [0] * (self.n - 1))

    def gen(self) -> "FieldElement":
        """The root of the minimal polynomial as a field element."""
        return self.element(self.from_power([Fraction(int(j == 1)) for j in range(self.n)]))

    # -- quadratic surd backend --------------------------------------------

    @property
    def is_quadratic(self) -> bool:
        return self.n == 2

    def _surd_disc(self) -> int:
        c0, c1 = self.min_poly[0], self.min_poly[1]
        return c1 * c1 - 4 * c0

    def surd_embed(self, x: "FieldElement", place: int) -> Surd:
        """Exact embedding of x at a place of a quadratic field.

        Real places are ordered so that place 0 takes theta to the larger
        root ( +sqrt(disc) branch )."""
        if self.n != 2:
            raise ValueError("surd embeddings exist only for quadratic fields")
        p, q = self.to_power(x.coords)
        c1 = self.min_poly[1]
        d = self._surd_disc()
        sgn = 1 if place == 0 else -1
        # theta = (-c1 + s*sqrt(d))/2
        return Surd(p - q * Fraction(c1, 2), sgn * q * Fraction(1, 2), d)

    # -- certified embeddings ----------------------------------------------

    def places_mpf(self, prec: int | None = None):
        """Root data at the given precision: list of (kind, value, radius)
        with kind 'R' or 'C', value mpf/mpc, radius a rational error bound."""
        prec = prec or self.prec
        key = ("places", prec)
        if key not in self._cache:
            self._cache[key] = self._compute_places(prec)
        return self._cache[key]

    def _compute_places(self, prec: int):
        n = self.n
        if n == 2:
            c0, c1 = self.min_poly[0], self.min_poly[1]
            d = c1 * c1 - 4 * c0
            with mp.workprec(prec + 16):
                if d > 0:
                    s = mp.sqrt(d)
                    rad = Fraction(1, 2 ** (prec + 4))
                    th1 = (-c1 + s) / 2
                    th2 = (-c1 - s) / 2
                    return [("R", th1, rad), ("R", th2, rad)]
                s = mp.sqrt(-d)
                rad = Fraction(1, 2 ** (prec + 4))
                return [("C", mpc(mpf(-c1) / 2, s / 2), rad)]
        attempt = prec
        while attempt <= MAX_PREC:
            result = self._try_roots(attempt)
            if result is not None:
                return result
            attempt *= 2
        raise PrecisionExhausted("could not certify root isolation")

    def _try_roots(self, prec: int):
        n = self.n
        with mp.workprec(2 * prec + 32):
            coeffs_desc = [mpf(c) for c in reversed(self.min_poly)]
            try:
                roots = mp.polyroots(coeffs_desc, maxsteps=200, extraprec=prec)
            except mp.NoConvergence:
                return None
            der = [mpf(i * c) for i, c in enumerate(self.min_poly)][1:]

            def poly_at(cs, z):
                acc = mpc(0)
                for c in reversed(cs):
                    acc = acc * z + c
                return acc

            rads = []
            for z in roots:
                pz = poly_at([mpf(c) for c in self.min_poly], z)
                dz = poly_at(der, z)
                if dz == 0:
                    return None
                rads.append(Fraction(2 * n) * mpf_to_fraction(abs(pz) / abs(dz) + mpf(2) ** (-2 * prec)))
            # disjointness of certified disks
            for i in range(n):
                for j in range(i + 1, n):
                    if mpf_to_fraction(abs(roots[i] - roots[j])) <= rads[i] + rads[j]:
                        return None
            real_idx = [i for i in range(n) if mpf_to_fraction(abs(roots[i].imag)) <= rads[i]]
            if len(real_idx) != self.r1:
                return None
            cplx = [
                (roots[i], rads[i])
                for i in range(n)
                if i not in real_idx and roots[i].imag > 0
            ]
            if len(cplx) != self.r2:
                return None
            reals = sorted(
                ((roots[i].real, rads[i]) for i in real_idx), key=lambda t: -t[0]
            )
            cplx.sort(key=lambda t: (-t[0].real, -t[0].imag))
            return [("R", v, r) for v, r in reals] + [("C", v, r) for v, r in cplx]

    def embed(self, x: "FieldElement", prec: int | None = None) -> ArchVector:
        """Signed embedding vector (sigma(x)) over the infinite places."""
        prec = prec or self.prec
        places = self.places_mpf(prec)
        pcoords = self.to_power(x.coords)
        with mp.workprec(prec + 16):
            vals = []
            for kind, v, _ in places:
                acc = mpc(0) if kind == "C" else mpf(0)
                for c in reversed(pcoords):
                    acc = acc * v + fraction_to_mpf(c, prec + 16)
                vals.append(acc)
        return ArchVector(tuple(vals), self.degs, prec)

    def embed_interval(self, x: "FieldElement", place: int, prec: int):
        """Certified rectangle (re_iv, im_iv) for sigma(x); im_iv is None at
        real places."""
        kind, v, rad = self.places_mpf(prec)[place]
        pcoords = self.to_power(x.coords)
        if kind == "R":
            t: Interval = (mpf_to_fraction(v) - rad, mpf_to_fraction(v) + rad)
            acc: Interval = (Fraction(0), Fraction(0))
            for c in reversed(pcoords):
                acc = _iv_add(_iv_mul(acc, t), (c, c))
            return acc, None
        tr: Interval = (mpf_to_fraction(v.real) - rad, mpf_to_fraction(v.real) + rad)
        ti: Interval = (mpf_to_fraction(v.imag) - rad, mpf_to_fraction(v.imag) + rad)
        ar: Interval = (Fraction(0), Fraction(0))
        ai: Interval = (Fraction(0), Fraction(0))
        for c in reversed(pcoords):
            nr = _iv_add((_iv_mul(ar, tr)[0] - _iv_mul(ai, ti)[1],
                          _iv_mul(ar, tr)[1] - _iv_mul(ai, ti)[0]), (c, c))
            ni = _iv_add(_iv_mul(ar, ti), _iv_mul(ai, tr))
            ar, ai = nr, ni
        return ar, ai

    def abs_sq_interval(self, x: "FieldElement", place: int, prec: int) -> Interval:
        re_iv, im_iv = self.embed_interval(x, place, prec)
        if im_iv is None:
            return _iv_sq(re_iv)
        return _iv_add(_iv_sq(re_iv), _iv_sq(im_iv))

    # -- certified comparisons ----------------------------------------------

    def cmp_abs_sq(self, x: "FieldElement", place: int, t: Fraction,
                   scale_sq: Fraction = Fraction(1)) -> int:
        """Certified sign of scale_sq * |sigma(x)|^2 - t (t, scale_sq exact)."""
        if self.n == 2:
            s = self.surd_embed(x, place)
            if s.disc < 0:
                diff = scale_sq * s.abs_sq() - t
                return (diff > 0) - (diff < 0)
            sq = s * s
            return sign_surd(scale_sq * sq.a - t, scale_sq * sq.b, s.disc)
        # exact tie: real place and x^2 == t/scale_sq as a rational element
        kind = self.places_mpf(self.prec)[place][0]
        if kind == "R":
            xsq = x * x
            if xsq.is_rational() and xsq.coords[0] == t / scale_sq:
                return 0
        prec = self.prec
        while prec <= MAX_PREC:
            lo, hi = self.abs_sq_interval(x, place, prec)
            lo, hi = lo * scale_sq - t, hi * scale_sq - t
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise PrecisionExhausted(
            f"cannot separate |sigma(x)|^2 from bound at place {place}"
        )

    def cmp_abs_pair(self, x: "FieldElement", y: "FieldElement", place: int) -> int:
        """Certified sign of |sigma(x)| - |sigma(y)|."""
        if self.n == 2:
            return cmp_abs_surd(self.surd_embed(x, place), self.surd_embed(y, place))
        if x == y or x == -y:
            return 0
        # a root-of-unity ratio forces a tie at every place
        if not y.is_zero():
            h = x / y
            if h.norm_abs_one() and h.is_root_of_unity():
                return 0
        prec = self.prec
        while prec <= MAX_PREC:
            xlo, xhi = self.abs_sq_interval(x, place, prec)
            ylo, yhi = self.abs_sq_interval(y, place, prec)
            if xlo > yhi:
                return 1
            if xhi < ylo:
                return -1
            prec *= 2
        raise PrecisionExhausted("cannot separate |sigma(x)| from |sigma(y)|")

    def sign_at_place(self, x: "FieldElement", place: int) -> int:
        """Certified sign of sigma(x) at a real place (x nonzero)."""
        if self.n == 2:
            return self.surd_embed(x, place).sign()
        prec = self.prec
        while prec <= MAX_PREC:
            re_iv, im_iv = self.embed_interval(x, place, prec)
            if im_iv is not None:
                raise ValueError("sign only defined at real places")
            if re_iv[0] > 0:
                return 1
            if re_iv[1] < 0:
                return -1
            prec *= 2
        raise PrecisionExhausted("cannot determine sign at place")

    # -- constants -----------------------------------------------------------

    def partial_constant(self, prec: int | None = None):
        """(2/pi)^(r2) * sqrt(|disc|), the box-bound constant."""
        prec = prec or self.prec
        with mp.workprec(prec):
            return (mpf(2) / mp.pi) ** self.r2 * mp.sqrt(abs(self.disc))

    def trace_of_basis(self) -> list[Fraction]:
        key = "trb"
        if key not in self._cache:
            out = []
            for i in range(self.n):
                coords = [Fraction(int(k == i)) for k in range(self.n)]
                m = self.mult_matrix(coords)
                out.append(sum((m[k][k] for k in range(self.n)), Fraction(0)))
            self._cache[key] = out
        return self._cache[key]

    def trace_form(self) -> list[list[Fraction]]:
        """Matrix Tr(b_i b_j): integral for an order, det = disc."""
        key = "tf"
        if key not in self._cache:
            t = self.mult_table()
            trb = self.trace_of_basis()
            n = self.n
            self._cache[key] = [
                [sum((Fraction(t[i][j][k]) * trb[k] for k in range(n)), Fraction(0))
                 for j in range(n)]
                for i in range(n)
            ]
        return self._cache[key]

    def conjugate(self, x: "FieldElement") -> "FieldElement":
        """Image under the nontrivial automorphism (quadratic fields only)."""
        if self.n != 2:
            raise ValueError("conjugation implemented for quadratic fields only")
        p, q = self.to_power(x.coords)
        c1 = self.min_poly[1]
        return self.element(self.from_power([p - q * c1, -q]))

    def at_precision(self, prec: int) -> "NumberField":
        """A copy of the field with a different working precision."""
        return NumberField(self.min_poly, self.basis, self.n, self.r1, self.r2,
                           self.disc, prec)

    def __repr__(self) -> str:
        return f"NumberField({list(self.min_poly)}, disc={self.disc})"


# ---------------------------------------------------------------------------
# Field elements

@dataclass(frozen=True)
class FieldElement:
    """Element with exact rational coordinates on the integral basis."""

    field: NumberField
    coords: tuple[Fraction, ...]

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            t = self.field.mult_table()
            n = self.field.n
            out = [Fraction(0)] * n
            for i, ci in enumerate(self.coords):
                if ci:
                    for j, cj in enumerate(other.coords):
                        if cj:
                            f = ci * cj
                            row = t[i][j]
                            for k in range(n):
                                if row[k]:
                                    out[k] += f * row[k]
            return FieldElement(self.field, tuple(out))
        return FieldElement(self.field, tuple(a * Fraction(other) for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FieldElement):
            return self * other.inverse()
        return FieldElement(self.field, tuple(a / Fraction(other) for a in self.coords))

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.field.mult_matrix(self.coords)
        e1 = [Fraction(int(i == 0)) for i in range(self.field.n)]
        return FieldElement(self.field, tuple(mat_vec(mat_inv(m), e1)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_zero_at_none(self) -> bool:
        # nonzero field elements have no vanishing embedding
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return self.coords[0]

    def norm(self) -> Fraction:
        return mat_det(self.field.mult_matrix(self.coords))

    def trace(self) -> Fraction:
        m = self.field.mult_matrix(self.coords)
        return sum((m[i][i] for i in range(self.field.n)), Fraction(0))

    def norm_abs_one(self) -> bool:
        return abs(self.norm()) == 1

    def is_root_of_unity(self) -> bool:
        """Exact check: some power up to order 30 equals 1 (enough for n <= 8)."""
        acc = self
        for _ in range(30):
            if acc == self.field.one():
                return True
            acc = acc * self
        return False

    def embedding(self, prec: int | None = None) -> ArchVector:
        return self.field.embed(self, prec)

    def denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords))

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"


# ---------------------------------------------------------------------------
# Construction and the module-level operations

def create_field(min_poly, integral_basis=None, prec: int = DEFAULT_PREC) -> NumberField:
    """Build a number field from an ascending-coefficient monic integer
    polynomial, optionally with an explicit order basis (rows over the power
    basis; the first row must be 1).

    Quadratic x^2 - d with d squarefree gets the canonical maximal-order
    basis automatically; other fields default to the power basis.
    """
    coeffs = [int(c) for c in min_poly]
    if len(coeffs) < 3:
        raise FieldConstructionError("degree must be at least 2")
    if coeffs[-1] != 1:
        raise FieldConstructionError("polynomial must be monic")
    if not _is_irreducible(coeffs):
        raise FieldConstructionError("polynomial is reducible over the rationals")
    n = len(coeffs) - 1

    if integral_basis is None:
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        if n == 2 and coeffs[1] == 0:
            d = -coeffs[0]
            if _is_squarefree_int(d) and d % 4 == 1:
                rows[1] = [Fraction(1, 2), Fraction(1, 2)]
    else:
        rows = [[Fraction(x) for x in row] for row in integral_basis]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise FieldConstructionError("basis must be a square matrix of degree size")
        if rows[0] != [Fraction(1)] + [Fraction(0)] * (n - 1):
            raise FieldConstructionError("first basis element must be 1")
        if mat_det(rows) == 0:
            raise FieldConstructionError("basis has zero determinant")

    r1 = sturm_real_root_count(coeffs)
    r2 = (n - r1) // 2
    f = NumberField(tuple(coeffs), tuple(tuple(r) for r in rows), n, r1, r2, 0, prec)
    f.mult_table()  # validates ring closure
    disc = mat_det(f.trace_form())
    if disc.denominator != 1 or disc == 0:
        raise FieldConstructionError("trace form determinant is not a nonzero integer")
    return NumberField(tuple(coeffs), tuple(tuple(r) for r in rows), n, r1, r2,
                       int(disc), prec)


def partial_f(f: NumberField):
    """The constant (2/pi)^(r2) sqrt(|disc|) controlling box bounds."""
    return f.partial_constant()


def embed(f: NumberField, x: FieldElement, prec: int | None = None) -> ArchVector:
    return f.embed(x, prec)


def norm_trace(f: NumberField, x: FieldElement) -> tuple[Fraction, Fraction]:
    """Exact (norm, trace) of an element."""
    return x.norm(), x.trace()
