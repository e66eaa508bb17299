"""Independent brute-force oracles for the test suite.

Everything here deliberately avoids the library's LLL / Fincke-Pohst /
HNF-closure code paths: plain coefficient boxes, divisor sums, and its own
surd sign logic, so oracle agreement is a genuine dual-route check.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            k = -k
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def zeta_coefficient(disc: int, m: int) -> int:
    """Number of integral ideals of norm m in the quadratic field of the
    given fundamental discriminant (divisor sum of the Kronecker character)."""
    return sum(kronecker(disc, d) for d in range(1, m + 1) if m % d == 0)


# ---------------------------------------------------------------------------
# Exhaustive shortest vector

def brute_shortest_sq(entries) -> Fraction:
    """lambda_1^2 by exhaustive coefficient search inside the dual-Gram box.

    For x with x^T G x <= R one has x_i^2 <= R * (G^{-1})_{ii}; the search
    radius starts at the smallest diagonal entry (a lattice vector itself).
    """
    g = [[Fraction(x) for x in row] for row in entries]
    n = len(g)
    radius = min(g[i][i] for i in range(n))
    inv = _inv(g)
    box = [_isqrt_floor(radius * inv[i][i]) + 1 for i in range(n)]
    best = None
    for coeffs in product(*[range(-b, b + 1) for b in box]):
        if not any(coeffs):
            continue
        q = _qform(g, coeffs)
        if best is None or q < best:
            best = q
    return best


def _qform(g, coeffs) -> Fraction:
    n = len(g)
    acc = Fraction(0)
    for i in range(n):
        if coeffs[i]:
            for j in range(n):
                if coeffs[j]:
                    acc += g[i][j] * coeffs[i] * coeffs[j]
    return acc


def _inv(g):
    n = len(g)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(g)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        d = m[c][c]
        m[c] = [x / d for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _isqrt_floor(f: Fraction) -> int:
    if f < 0:
        return 0
    return math.isqrt(f.numerator * f.denominator) // f.denominator


# ---------------------------------------------------------------------------
# Independent quadratic-field machinery (surds carried as (a, b) ~ a + b*sqrt(D))

def surd_sign(a: Fraction, b: Fraction, d: int) -> int:
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    t = a * a - b * b * d
    return ((t > 0) - (t < 0)) * (1 if a > 0 else -1)


def surd_abs_less(x, y, d: int) -> bool:
    """|x| < |y| for surds over sqrt(d), d > 0, exactly."""
    xa, xb = x
    ya, yb = y
    # compare squares: (x^2) vs (y^2) as surds
    sx = (xa * xa + xb * xb * d, 2 * xa * xb)
    sy = (ya * ya + yb * yb * d, 2 * ya * yb)
    return surd_sign(sy[0] - sx[0], sy[1] - sx[1], d) > 0


class QuadField:
    """Minimal independent model of a real quadratic field with basis
    {1, w} where w = sqrt(d0) or (1+sqrt(d0))/2."""

    def __init__(self, d0: int):
        self.d0 = d0
        self.half = d0 % 4 == 1
        # w = (w_a + w_b sqrt(d0)) with rational pair
        self.w = (Fraction(1, 2), Fraction(1, 2)) if self.half else (Fraction(0), Fraction(1))
        self.disc = d0 if self.half else 4 * d0

    def embed_pair(self, coords) -> tuple[Fraction, Fraction]:
        """(a, b) with sigma(x) = a + b sqrt(d0) at the positive-root place."""
        c0, c1 = Fraction(coords[0]), Fraction(coords[1])
        return (c0 + c1 * self.w[0], c1 * self.w[1])

    def conj(self, pair):
        return (pair[0], -pair[1])

    def norm(self, coords) -> Fraction:
        a, b = self.embed_pair(coords)
        return a * a - b * b * self.d0

    def trace_gram(self, basis) -> list[list[Fraction]]:
        """Gram of pairs under x -> (sigma0 x)^2 + (sigma1 x)^2."""
        out = []
        for x in basis:
            row = []
            xa, xb = self.embed_pair(x)
            for y in basis:
                ya, yb = self.embed_pair(y)
                row.append(2 * (xa * ya + xb * yb * self.d0))
            out.append(row)
        return out


def brute_integral_ideals(d0: int, bound: int):
    """Integral ideals of the maximal order of Q(sqrt d0) with norm <= bound
    via direct triangular-basis scanning and ring-closure checking.

    Returns a set of canonical basis keys (a, b, c) for the module
    Z*a + Z*(b + c*w).
    """
    qf = QuadField(d0)
    out = set()
    for norm in range(1, bound + 1):
        for a in range(1, norm + 1):
            if norm % a:
                continue
            c = norm // a
            for b in range(a):
                # module M = Z*(a, 0) + Z*(b, c) in coordinates over {1, w}
                if _module_closed(qf, a, b, c):
                    out.add((norm, a, b, c))
    return out


def _module_closed(qf: QuadField, a: int, b: int, c: int) -> bool:
    # multiply each generator by w and check membership by solving
    # (x, y) = m*(a,0) + k*(b,c) over the integers
    def contains(x: Fraction, y: Fraction) -> bool:
        if c == 0:
            return False
        k = Fraction(y, c)
        if k.denominator != 1:
            return False
        m = Fraction(x - k * b, a)
        return m.denominator == 1

    # w*(a, 0) = a*w; w has coords (0,1): times w: w^2 = tr*w - nrm
    if qf.half:
        tr, nrm = 1, Fraction(1 - qf.d0, 4)
    else:
        tr, nrm = 0, -qf.d0
    # w * (x + y w) = -nrm*y + (x + tr*y) w
    for (x, y) in ((a, 0), (b, c)):
        px, py = -nrm * y, x + tr * y
        if not contains(Fraction(px), Fraction(py)):
            return False
    return True


def brute_census(d0: int, c2: Fraction):
    """Fully independent census of strongly C-reduced divisors for the real
    quadratic field of squarefree d0 > 0: own ideal enumeration, own
    primitivity check, own exhaustive shortest vector.

    Returns a set of inverse-ideal keys (norm, a, b, c).
    """
    qf = QuadField(d0)
    disc = qf.disc
    bound = math.isqrt(int(c2 * c2 * disc)) if (c2 * c2 * disc).denominator == 1 \
        else int(math.isqrt(int(c2 * c2 * disc)))
    # bound = floor(C^2 sqrt(disc)) computed exactly: m <= C^2 sqrt(disc)
    # <=> m^2 <= C^4 disc
    m2cap = c2 ** 2 * disc
    bound = int(math.isqrt(m2cap.numerator // m2cap.denominator))
    while Fraction((bound + 1) ** 2) <= m2cap:
        bound += 1
    while Fraction(bound ** 2) > m2cap:
        bound -= 1
    result = set()
    for key in brute_integral_ideals(d0, bound):
        norm, a, b, c = key
        inv_basis = _inverse_module(qf, a, b, c)
        if inv_basis is None:
            continue
        if not _one_primitive(qf, inv_basis):
            continue
        gram = qf.trace_gram(inv_basis)
        lam = brute_shortest_sq(gram)
        if lam >= Fraction(2) / c2:
            result.add(key)
    return result


def _inverse_module(qf: QuadField, a: int, b: int, c: int):
    """Basis of J^{-1} = conj(J)/N(J) for J = Z*a + Z*(b+cw) (quadratic)."""
    n = Fraction(a * c)  # norm of the module as an ideal
    conj_w = (qf.w[0], -qf.w[1])
    # conj(b + c w) = b + c*conj(w); express on {1, w}: conj(w) = tr - w
    tr = 1 if qf.half else 0
    g1 = (Fraction(a), Fraction(0))
    g2 = (Fraction(b + c * tr), Fraction(-c))
    return [(g1[0] / n, g1[1] / n), (g2[0] / n, g2[1] / n)]


def _one_primitive(qf: QuadField, basis) -> bool:
    """1 in the module and not 1/k for k >= 2, by direct 2x2 solving."""
    (p0, p1), (q0, q1) = basis

    def coords_of(x: Fraction, y: Fraction):
        det = p0 * q1 - p1 * q0
        if det == 0:
            return None
        s = (x * q1 - y * q0) / det
        t = (p0 * y - p1 * x) / det
        return s, t

    def member(x, y):
        st = coords_of(Fraction(x), Fraction(y))
        return st is not None and st[0].denominator == 1 and st[1].denominator == 1

    if not member(1, 0):
        return False
    # denominators of the module bound the k to test
    dens = [v.denominator for v in (p0, p1, q0, q1)]
    kmax = max(dens) * 2
    return not any(member(Fraction(1, k), 0) for k in range(2, kmax + 1))


def fundamental_unit_is_minimal(d0: int, x: int, y: int) -> bool:
    """Scan check that (x, y) on {1, w} is the smallest unit above 1: no
    coordinate pair below it has |norm| one."""
    qf = QuadField(d0)
    target = qf.embed_pair((x, y))
    # sigma0 of candidate must be in (1, sigma0(eps)); scan y' up to y
    for yp in range(-abs(int(y)) - 1, abs(int(y)) + 2):
        for xp in range(-abs(int(x)) - 2, abs(int(x)) + 3):
            if (xp, yp) in ((x, y), (1, 0)):
                continue
            if abs(qf.norm((xp, yp))) != 1:
                continue
            pair = qf.embed_pair((xp, yp))
            if surd_sign(pair[0] - 1, pair[1], qf.d0) > 0 and \
                    surd_abs_less(pair, target, qf.d0):
                return False
    return True
