"""Exact rational linear algebra and integer lattice normal forms.

Everything in this module is elementary and exact: integers and Fractions
only, no floating point. It backs all boundary-sharp decisions elsewhere.
"""
from __future__ import annotations

import math
from fractions import Fraction

Vec = list[Fraction]
Mat = list[list[Fraction]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b, g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# Rational matrices (dense, tiny dimensions)

def mat_identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    rows, inner, cols = len(a), len(b), len(b[0])
    return [
        [sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_vec(a: Mat, v: Vec) -> Vec:
    return [sum((a[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(a))]


def mat_transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def mat_det(a: Mat) -> Fraction:
    """Determinant by fraction Gaussian elimination."""
    n = len(a)
    m = [row[:] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def mat_inv(a: Mat) -> Mat:
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip(a, mat_identity(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve_linear(a: Mat, v: Vec) -> Vec:
    """Solve a x = v exactly; raises ValueError when singular."""
    return mat_vec(mat_inv(a), v)


# ---------------------------------------------------------------------------
# Hermite normal form (column style, upper triangular)

def hnf_upper(cols: list[list[int]], n: int) -> list[list[int]]:
    """Canonical upper-triangular HNF of the lattice spanned by integer columns.

    Returns H with H[i][j] = 0 for i > j, H[i][i] > 0 and
    0 <= H[i][j] < H[i][i] for j > i. Raises ValueError if the columns do
    not span a rank-n lattice.
    """
    work = [list(c) for c in cols if any(c)]
    basis: list[list[int]] = []
    for row in range(n - 1, -1, -1):
        piv: list[int] | None = None
        rest: list[list[int]] = []
        for col in work:
            if col[row] == 0:
                rest.append(col)
                continue
            if piv is None:
                piv = col
                continue
            a, b = piv[row], col[row]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            new_piv = [x * p + y * q for p, q in zip(piv, col)]
            new_col = [-v * p + u * q for p, q in zip(piv, col)]
            piv = new_piv
            if any(new_col):
                rest.append(new_col)
        if piv is None:
            raise ValueError("columns do not span a full-rank lattice")
        if piv[row] < 0:
            piv = [-t for t in piv]
        basis.append(piv)
        work = rest
    basis.reverse()  # basis[i] is the column with pivot in row i
    for j in range(n):
        for i in range(j - 1, -1, -1):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [t - q * s for t, s in zip(basis[j], basis[i])]
    return [[basis[j][i] for j in range(n)] for i in range(n)]


def hnf_with_denominator(vectors: list[Vec], n: int) -> tuple[int, list[list[int]]]:
    """HNF (den, H) of the lattice spanned by rational vectors; den minimal."""
    den = 1
    for v in vectors:
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
    cols = [[int(x * den) for x in v] for v in vectors]
    h = hnf_upper(cols, n)
    g = den
    for row in h:
        for x in row:
            g = math.gcd(g, x)
            if g == 1:
                break
        if g == 1:
            break
    if g > 1:
        den //= g
        h = [[x // g for x in row] for row in h]
    return den, h


def hnf_solve(h: list[list[int]], den: int, target: Vec) -> Vec | None:
    """Coordinates c with H c / den = target, or None if target is outside
    the rational span (never happens for full-rank H)."""
    n = len(h)
    c: Vec = [Fraction(0)] * n
    rhs = [Fraction(t) * den for t in target]
    for i in range(n - 1, -1, -1):
        acc = rhs[i] - sum((Fraction(h[i][j]) * c[j] for j in range(i + 1, n)), Fraction(0))
        c[i] = acc / h[i][i]
    return c


def hnf_membership(h: list[list[int]], den: int, target: Vec) -> bool:
    """Whether target (rational coords) lies in the lattice H/den."""
    c = hnf_solve(h, den, target)
    return all(x.denominator == 1 for x in c)


def kernel_basis(m: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : M x = 0} via column reduction."""
    rows = len(m)
    k = len(m[0])
    cols = [[m[r][c] for r in range(rows)] for c in range(k)]
    transform = [[int(i == j) for i in range(k)] for j in range(k)]  # transform[c] tracks col c
    pivot_cols: set[int] = set()
    for row in range(rows):
        piv_idx = None
        for idx in range(k):
            if idx in pivot_cols:
                continue
            if cols[idx][row] != 0:
                if piv_idx is None:
                    piv_idx = idx
                else:
                    a, b = cols[piv_idx][row], cols[idx][row]
                    g, x, y = xgcd(a, b)
                    u, v = a // g, b // g
                    new_piv = [x * p + y * q for p, q in zip(cols[piv_idx], cols[idx])]
                    new_other = [-v * p + u * q for p, q in zip(cols[piv_idx], cols[idx])]
                    new_tpiv = [x * p + y * q for p, q in zip(transform[piv_idx], transform[idx])]
                    new_tother = [-v * p + u * q for p, q in zip(transform[piv_idx], transform[idx])]
                    cols[piv_idx], cols[idx] = new_piv, new_other
                    transform[piv_idx], transform[idx] = new_tpiv, new_tother
        if piv_idx is not None:
            pivot_cols.add(piv_idx)
    return [transform[idx] for idx in range(k) if not any(cols[idx])]


# ---------------------------------------------------------------------------
# Quadratic surds a + b*sqrt(D)

def sign_surd(a: Fraction, b: Fraction, disc: int) -> int:
    """Certified sign of a + b*sqrt(disc) for disc > 0."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    t = a * a - b * b * disc  # sign(a + b√D) = sign(a)·sign(a² − b²D) for mixed signs
    s = (t > 0) - (t < 0)
    return s if a > 0 else -s


class Surd:
    """Exact element a + b*sqrt(disc) of a real or imaginary quadratic field."""

    __slots__ = ("a", "b", "disc")

    def __init__(self, a: Fraction, b: Fraction, disc: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.disc = disc

    def __add__(self, other: "Surd") -> "Surd":
        return Surd(self.a + other.a, self.b + other.b, self.disc)

    def __sub__(self, other: "Surd") -> "Surd":
        return Surd(self.a - other.a, self.b - other.b, self.disc)

    def __mul__(self, other: "Surd") -> "Surd":
        return Surd(
            self.a * other.a + self.b * other.b * self.disc,
            self.a * other.b + self.b * other.a,
            self.disc,
        )

    def scale(self, c: Fraction) -> "Surd":
        return Surd(self.a * c, self.b * c, self.disc)

    def conj(self) -> "Surd":
        return Surd(self.a, -self.b, self.disc)

    def abs_sq(self) -> Fraction:
        """|a + b sqrt(disc)|² as a rational; exact for disc < 0, and for
        disc > 0 equals the square of the real value."""
        if self.disc < 0:
            return self.a * self.a - self.b * self.b * self.disc
        sq = self * self
        if sq.b == 0:
            return sq.a
        raise ValueError("square is irrational; compare with sign_surd instead")

    def sign(self) -> int:
        if self.disc < 0:
            raise ValueError("no sign for complex surd")
        return sign_surd(self.a, self.b, self.disc)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self) -> str:
        return f"Surd({self.a} + {self.b}*sqrt({self.disc}))"


def cmp_abs_surd(x: Surd, y: Surd) -> int:
    """Certified sign of |x| − |y| for surds over the same disc."""
    if x.disc != y.disc:
        raise ValueError("mismatched discriminants")
    if x.disc < 0:
        t = x.abs_sq() - y.abs_sq()
        return (t > 0) - (t < 0)
    # compare squares: x² vs y², both surds again
    xx, yy = x * x, y * y
    return sign_surd(xx.a - yy.a, xx.b - yy.b, x.disc)


# ---------------------------------------------------------------------------
# Sturm's theorem (exact real-root count)

def _poly_div_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = num[:]
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        f = num[-1] / den[-1]
        shift = len(num) - len(den)
        for i, c in enumerate(den):
            num[shift + i] -= f * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def sturm_real_root_count(coeffs: list[int]) -> int:
    """Number of distinct real roots of the squarefree integer polynomial
    with ascending coefficients."""
    p0 = [Fraction(c) for c in coeffs]
    p1 = [Fraction(i * c) for i, c in enumerate(coeffs)][1:]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        rem = _poly_div_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    if chain[-1] and len(chain[-1]) == 1 and chain[-1][0] == 0:
        chain.pop()

    def sign_at_inf(poly: list[Fraction], positive: bool) -> int:
        lead = poly[-1]
        deg = len(poly) - 1
        s = (lead > 0) - (lead < 0)
        if not positive and deg % 2 == 1:
            s = -s
        return s

    def variations(positive: bool) -> int:
        signs = [sign_at_inf(p, positive) for p in chain if any(p)]
        count = 0
        prev = 0
        for s in signs:
            if s == 0:
                continue
            if prev and s != prev:
                count += 1
            prev = s
        return count

    return variations(False) - variations(True)


# ---------------------------------------------------------------------------
# Integer-range helpers for lattice enumeration

def floor_minus_c_plus_sqrt(c: Fraction, s: Fraction) -> int:
    """Largest integer x with x <= -c + sqrt(s) (requires s >= 0).

    The range [-c - sqrt(s), -c + sqrt(s)] may contain no integer, so the
    one-sided condition is tested: x + c <= sqrt(s)."""
    if s < 0:
        raise ValueError("negative radicand")

    def ok(t: int) -> bool:
        v = t + c
        return v <= 0 or v * v <= s

    x = math.floor(-c + math.sqrt(float(s))) if s < 10**30 else math.floor(-c) + math.isqrt(int(s))
    while ok(x + 1):
        x += 1
    while not ok(x):
        x -= 1
    return x


def ceil_minus_c_minus_sqrt(c: Fraction, s: Fraction) -> int:
    """Smallest integer x with x >= -c - sqrt(s) (requires s >= 0)."""
    if s < 0:
        raise ValueError("negative radicand")

    def ok(t: int) -> bool:
        v = t + c
        return v >= 0 or v * v <= s

    x = math.ceil(-c - math.sqrt(float(s))) if s < 10**30 else math.ceil(-c) - math.isqrt(int(s))
    while ok(x - 1):
        x -= 1
    while not ok(x):
        x += 1
    return x


def frac_isqrt_floor(f: Fraction) -> int:
    """floor(sqrt(f)) for f >= 0."""
    if f < 0:
        raise ValueError("negative")
    return math.isqrt(f.numerator * f.denominator) // f.denominator
