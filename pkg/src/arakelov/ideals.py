"""Fractional ideals as HNF modules over the ring of integers, plus plain
Z-lattices inside the field.

The HNF is column-style upper triangular with positive pivots and reduced
off-diagonal entries; together with a minimal denominator it is a canonical
record, so ideal equality is plain structural equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import hnf_membership, hnf_solve, hnf_with_denominator, kernel_basis
from .numfield import FieldElement, NumberField


@dataclass(frozen=True)
class FractionalIdeal:
    """Nonzero fractional ideal: columns of hnf divided by den form a basis
    on the integral basis of the field."""

    field: NumberField
    den: int
    hnf: tuple[tuple[int, ...], ...]

    def basis_elements(self) -> list[FieldElement]:
        n = self.field.n
        return [
            self.field.element([Fraction(self.hnf[i][j], self.den) for i in range(n)])
            for j in range(n)
        ]

    def norm(self) -> Fraction:
        det = 1
        for i in range(self.field.n):
            det *= self.hnf[i][i]
        return Fraction(det, self.den ** self.field.n)

    def contains(self, x: FieldElement) -> bool:
        return hnf_membership([list(r) for r in self.hnf], self.den, list(x.coords))

    def coordinates_of(self, x: FieldElement) -> list[Fraction]:
        """Rational coordinates of x on the ideal basis."""
        return hnf_solve([list(r) for r in self.hnf], self.den, list(x.coords))

    def rational_intersection(self) -> Fraction:
        """Positive generator c of the rational ideal I ∩ Q = cZ."""
        return Fraction(self.hnf[0][0], self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def key(self):
        return (self.den,) + tuple(x for row in self.hnf for x in row)

    def __repr__(self) -> str:
        return f"FractionalIdeal(den={self.den}, hnf={[list(r) for r in self.hnf]})"


@dataclass(frozen=True)
class PlainLattice:
    """Full-rank Z-lattice in the field, not required to be an ideal."""

    field: NumberField
    basis: tuple[FieldElement, ...]

    def __post_init__(self):
        den, h = hnf_with_denominator(
            [list(b.coords) for b in self.basis], self.field.n
        )
        object.__setattr__(self, "_den_hnf", (den, h))

    def basis_elements(self) -> list[FieldElement]:
        return list(self.basis)

    def den_hnf(self) -> tuple[int, list[list[int]]]:
        return self._den_hnf

    def contains(self, x: FieldElement) -> bool:
        den, h = self._den_hnf
        return hnf_membership(h, den, list(x.coords))

    def rational_intersection(self) -> Fraction:
        den, h = self._den_hnf
        return Fraction(h[0][0], den)

    def norm(self) -> Fraction:
        """Covolume index relative to the integral basis lattice."""
        den, h = self._den_hnf
        det = 1
        for i in range(self.field.n):
            det *= h[i][i]
        return Fraction(det, den ** self.field.n)


def _from_vectors(f: NumberField, vectors: list[list[Fraction]]) -> FractionalIdeal:
    den, h = hnf_with_denominator(vectors, f.n)
    return FractionalIdeal(f, den, tuple(tuple(r) for r in h))


def unit_ideal(f: NumberField) -> FractionalIdeal:
    eye = [[int(i == j) for j in range(f.n)] for i in range(f.n)]
    return FractionalIdeal(f, 1, tuple(tuple(r) for r in eye))


def ideal_from_generators(f: NumberField, gens: list[FieldElement]) -> FractionalIdeal:
    """Smallest O_F-module containing the generators, in canonical HNF."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("all generators are zero")
    basis_elems = [f.element([Fraction(int(i == k)) for i in range(f.n)]) for k in range(f.n)]
    vectors = [list((g * b).coords) for g in gens for b in basis_elems]
    return _from_vectors(f, vectors)


def principal_ideal(f: NumberField, g: FieldElement) -> FractionalIdeal:
    return ideal_from_generators(f, [g])


def scale_ideal(i: FractionalIdeal, g: FieldElement) -> FractionalIdeal:
    """The ideal g·I (exact, no closure step needed)."""
    if g.is_zero():
        raise ValueError("scaling by zero")
    return _from_vectors(i.field, [list((g * w).coords) for w in i.basis_elements()])


def multiply(i: FractionalIdeal, j: FractionalIdeal) -> FractionalIdeal:
    """Ideal product via HNF closure of pairwise basis products."""
    vectors = [
        list((w * v).coords) for w in i.basis_elements() for v in j.basis_elements()
    ]
    return _from_vectors(i.field, vectors)


def invert(i: FractionalIdeal) -> FractionalIdeal:
    """The inverse fractional ideal, computed from the exact membership
    conditions x·w_j ∈ O_F over the lattice (den/h00)·Z^n containing I⁻¹."""
    f = i.field
    n = f.n
    t = f.mult_table()
    h00 = i.hnf[0][0]
    cols = [[i.hnf[r][c] for r in range(n)] for c in range(n)]
    # stacked conditions: for each ideal basis column h_j and each k:
    #   sum_i v_i * (M_i h_j)_k  ≡ 0  (mod h00)
    rows: list[list[int]] = []
    for hj in cols:
        for k in range(n):
            row = []
            for idx in range(n):
                # (M_idx h_j)_k = sum_m t[idx][m][k] * h_j[m]
                row.append(sum(t[idx][m][k] * hj[m] for m in range(n)))
            rows.append(row)
    m_rows = len(rows)
    stacked = [rows[r] + [-h00 * int(c == r) for c in range(m_rows)] for r in range(m_rows)]
    kernel = kernel_basis(stacked)
    vecs = [k[:n] for k in kernel]
    scale = Fraction(i.den, h00)
    vectors = [[Fraction(x) * scale for x in v] for v in vecs]
    return _from_vectors(f, vectors)


def ideal_norm(i: FractionalIdeal) -> Fraction:
    return i.norm()


def contains(i: FractionalIdeal | PlainLattice, x: FieldElement) -> bool:
    return i.contains(x)


def one_is_primitive(i: FractionalIdeal | PlainLattice) -> bool:
    """1 ∈ I and I ∩ Q = Z (so no 1/d with d >= 2 lies in I)."""
    if not i.contains(i.field.one()):
        return False
    return i.rational_intersection() == 1


def conjugate_ideal(i: FractionalIdeal) -> FractionalIdeal:
    """Image of the ideal under the nontrivial automorphism (quadratic)."""
    f = i.field
    return _from_vectors(f, [list(f.conjugate(w).coords) for w in i.basis_elements()])


# ---------------------------------------------------------------------------
# Bounded-norm enumeration of integral ideals

def _diagonals(m: int, n: int) -> list[tuple[int, ...]]:
    if n == 1:
        return [(m,)]
    out = []
    for d in range(1, m + 1):
        if m % d == 0:
            for rest in _diagonals(m // d, n - 1):
                out.append((d,) + rest)
    return out


def _sublattices_of_index(n: int, m: int):
    """All column-HNF matrices of index m (upper triangular, reduced)."""
    for diag in _diagonals(m, n):
        h = [[0] * n for _ in range(n)]
        for i in range(n):
            h[i][i] = diag[i]
        # free positions: h[i][j] for i < j ranges over [0, diag[i])
        free = [(i, j) for j in range(n) for i in range(j)]
        def rec(idx: int):
            if idx == len(free):
                yield [row[:] for row in h]
                return
            i, j = free[idx]
            for val in range(diag[i]):
                h[i][j] = val
                yield from rec(idx + 1)
            h[i][j] = 0
        yield from rec(0)


def _is_module_closed(f: NumberField, h: list[list[int]]) -> bool:
    n = f.n
    t = f.mult_table()
    for k in range(1, n):  # multiplication by b_1 = 1 is trivially fine
        for j in range(n):
            prod = [sum(t[k][m][r] * h[m][j] for m in range(n)) for r in range(n)]
            c = [Fraction(0)] * n
            ok = True
            for r in range(n - 1, -1, -1):
                acc = Fraction(prod[r]) - sum(
                    (Fraction(h[r][s]) * c[s] for s in range(r + 1, n)), Fraction(0)
                )
                c[r] = acc / h[r][r]
                if c[r].denominator != 1:
                    ok = False
                    break
            if not ok:
                return False
    return True


def enumerate_integral_ideals(f: NumberField, bound) -> list[FractionalIdeal]:
    """All integral ideals of norm at most `bound`, sorted by (norm, HNF).

    Enumerates triangular sublattices of the integral-basis lattice by index
    and keeps those closed under multiplication by the basis.
    """
    limit = int(math.floor(float(bound) + 1e-12))
    if limit < 1:
        return []
    found: list[FractionalIdeal] = []
    for m in range(1, limit + 1):
        hits = []
        for h in _sublattices_of_index(f.n, m):
            if _is_module_closed(f, h):
                hits.append(FractionalIdeal(f, 1, tuple(tuple(r) for r in h)))
        hits.sort(key=lambda i: i.key())
        found.extend(hits)
    return found


def count_sublattices_up_to(n: int, limit: int, cap: int) -> int:
    """Number of index-<=limit sublattices, stopping early past cap."""
    total = 0
    for m in range(1, limit + 1):
        for diag in _diagonals(m, n):
            cnt = 1
            for j in range(n):
                for i in range(j):
                    cnt *= diag[i]
            total += cnt
            if total > cap:
                return total
    return total
