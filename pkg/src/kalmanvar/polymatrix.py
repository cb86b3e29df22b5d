"""Matrices with polynomial entries, plus exact rational linear algebra.

Two independent exact determinant algorithms are provided: fraction-free
Bareiss elimination (pivot = fewest-term nonzero entry) and a memoized
cofactor expansion over column subsets.  They are cross-checked in the
test suite; either may be selected explicitly, and `det()` picks a
sensible default per matrix.

Scalar (rational) matrices are handled by the `qmat_*` helpers working on
plain lists of lists of int/Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .polycore import (
    Fraction,
    NotDivisible,
    Polynomial,
    Scalar,
    Universe,
    UniverseMismatch,
    _demote,
    parse_polynomial,
)


class DimensionMismatch(ValueError):
    """Matrix dimensions incompatible with the requested operation."""


class NonSquareMatrix(ValueError):
    """Operation requires a square matrix."""


class PolyMatrix:
    """Dense rectangular matrix of Polynomials over a shared universe."""

    __slots__ = ("u", "nrows", "ncols", "rows")

    def __init__(self, u: Universe, rows: Sequence[Sequence[Polynomial]]):
        self.u = u
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged rows")
            for e in r:
                if not isinstance(e, Polynomial) or e.u != u:
                    raise UniverseMismatch("entry universe mismatch")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_scalars(u: Universe, rows: Sequence[Sequence[Scalar]]) -> "PolyMatrix":
        return PolyMatrix(u, [[Polynomial.const(u, c) for c in r] for r in rows])

    @staticmethod
    def zero(u: Universe, nrows: int, ncols: int) -> "PolyMatrix":
        z = Polynomial.zero(u)
        return PolyMatrix(u, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(u: Universe, n: int) -> "PolyMatrix":
        z = Polynomial.zero(u)
        one = Polynomial.const(u, 1)
        return PolyMatrix(u, [[one if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def generic(n: int) -> "PolyMatrix":
        """The symbolic n x n matrix with entries a11..ann."""
        from .polycore import a_universe

        u = a_universe(n)
        return PolyMatrix(
            u,
            [[Polynomial.var(u, f"a{i}{j}") for j in range(1, n + 1)] for i in range(1, n + 1)],
        )

    # -- basics -----------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.u == other.u
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {self.u.names})"

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.u, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix(self.u, [[fn(e) for e in r] for r in self.rows])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return PolyMatrix(
            self.u,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return PolyMatrix(
            self.u,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda e: e * c)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(
                    f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
                )
            if self.u != other.u:
                raise UniverseMismatch("matrix product universe mismatch")
            bt = other.transpose().rows
            out = []
            for ra in self.rows:
                row = []
                for cb in bt:
                    acc = None
                    for a, b in zip(ra, cb):
                        if a.terms and b.terms:
                            p = a * b
                            acc = p if acc is None else acc + p
                    row.append(acc if acc is not None else Polynomial.zero(self.u))
                out.append(row)
            return PolyMatrix(self.u, out)
        if isinstance(other, (int, Fraction, Polynomial)):
            return self.scale(other)
        return NotImplemented

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("column count mismatch in stack")
        return PolyMatrix(self.u, self.rows + other.rows)

    def evaluate(self, point: Sequence[Scalar]) -> list[list[Scalar]]:
        return [[e.evaluate(point) for e in r] for r in self.rows]

    def total_terms(self) -> int:
        return sum(e.term_count() for r in self.rows for e in r)

    # -- determinants -----------------------------------------------------

    def det(self, method: str = "auto") -> Polynomial:
        """Exact determinant of a square polynomial matrix."""
        if not self.is_square():
            raise NonSquareMatrix(f"{self.nrows}x{self.ncols}")
        n = self.nrows
        if n == 0:
            return Polynomial.const(self.u, 1)
        if method == "auto":
            # Bareiss excels on scalar-like entries (constants, one
            # variable); on multivariate polynomial entries its minor
            # cross-products balloon long before the division, so the
            # memoized cofactor expansion is the safe default there.
            used = [0] * self.u.nvars
            for r in self.rows:
                for e in r:
                    for i, v in enumerate(e.var_maxes()):
                        if v:
                            used[i] = 1
            method = "bareiss" if sum(used) <= 1 else "cofactor"
        if method == "bareiss":
            return self._det_bareiss()
        if method == "cofactor":
            return self._det_cofactor_dp()
        raise ValueError(f"unknown method {method!r}")

    def _det_bareiss(self) -> Polynomial:
        n = self.nrows
        u = self.u
        zero = Polynomial.zero(u)
        rows = [list(r) for r in self.rows]
        # structural short-circuit: an all-zero row or column
        for i in range(n):
            if all(e.is_zero() for e in rows[i]):
                return zero
        for j in range(n):
            if all(rows[i][j].is_zero() for i in range(n)):
                return zero
        sign = 1
        prev: Polynomial | None = None
        for k in range(n - 1):
            # pivot: nonzero entry with fewest terms in the trailing block,
            # ties broken by smallest (row, col)
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    e = rows[i][j]
                    if e.terms:
                        sz = len(e.terms)
                        if best is None or sz < best[0]:
                            best = (sz, i, j)
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return zero
            _, pi, pj = best
            if pi != k:
                rows[k], rows[pi] = rows[pi], rows[k]
                sign = -sign
            if pj != k:
                for r in rows:
                    r[k], r[pj] = r[pj], r[k]
                sign = -sign
            pkk = rows[k][k]
            for i in range(k + 1, n):
                ri = rows[i]
                rik = ri[k]
                rk = rows[k]
                for j in range(k + 1, n):
                    v = pkk * ri[j]
                    if rik.terms and rk[j].terms:
                        v = v - rik * rk[j]
                    if prev is not None:
                        v = v.exact_div(prev)
                    ri[j] = v
                ri[k] = zero
            prev = pkk
        d = rows[n - 1][n - 1]
        return d if sign > 0 else -d

    def _det_cofactor_dp(self) -> Polynomial:
        """Memoized cofactor expansion: process rows sparsest-first and keep
        minors indexed by column subsets.  Division-free."""
        n = self.nrows
        u = self.u
        order = sorted(range(n), key=lambda i: sum(len(e.terms) for e in self.rows[i]))
        # parity of the row permutation
        perm_sign = 1
        seen = list(order)
        for i in range(n):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                perm_sign = -perm_sign
        level: dict[int, Polynomial] = {0: Polynomial.const(u, 1)}
        for r_pos in range(n):
            row = self.rows[order[r_pos]]
            nxt: dict[int, Polynomial] = {}
            for mask, minor in level.items():
                if not minor.terms:
                    continue
                for j in range(n):
                    bit = 1 << j
                    if mask & bit:
                        continue
                    e = row[j]
                    if not e.terms:
                        continue
                    # sign: (-1)^(r_pos + rank of j within mask|bit)
                    pos = bin(mask & (bit - 1)).count("1")
                    contrib = minor * e
                    if (r_pos + pos) % 2:
                        contrib = -contrib
                    newmask = mask | bit
                    cur = nxt.get(newmask)
                    nxt[newmask] = contrib if cur is None else cur + contrib
            level = nxt
            if not level:
                return Polynomial.zero(u)
        d = level.get((1 << n) - 1, Polynomial.zero(u))
        return d if perm_sign > 0 else -d

    def char_poly(self) -> list[Polynomial]:
        """Coefficients [c_0, ..., c_N] (ascending, monic) of det(lambda*I - M),
        by the trace-recursion scheme (exact in characteristic zero)."""
        if not self.is_square():
            raise NonSquareMatrix(f"{self.nrows}x{self.ncols}")
        n = self.nrows
        u = self.u
        c = [Polynomial.zero(u) for _ in range(n + 1)]
        c[n] = Polynomial.const(u, 1)
        B = PolyMatrix.identity(u, n)
        Mk = self
        for k in range(1, n + 1):
            Mk = self * B if k > 1 else self
            tr = Polynomial.zero(u)
            for i in range(n):
                tr = tr + Mk.rows[i][i]
            ck = tr.scale(Fraction(-1, k))
            c[n - k] = ck
            if k < n:
                B = PolyMatrix(
                    u,
                    [
                        [Mk.rows[i][j] + ck if i == j else Mk.rows[i][j] for j in range(n)]
                        for i in range(n)
                    ],
                )
        return c

    def rank_at(self, point: Sequence[Scalar]) -> int:
        """Exact rank of the scalar matrix obtained by evaluation."""
        return qmat_rank(self.evaluate(point))

    # -- text and JSON forms ----------------------------------------------

    def to_text(self) -> str:
        return "\n".join(" | ".join(e.to_text() for e in r) for r in self.rows)

    def to_json_obj(self) -> list[list[str]]:
        return [[e.to_text() for e in r] for r in self.rows]

    @staticmethod
    def from_json_obj(u: Universe, obj: Sequence[Sequence[str]]) -> "PolyMatrix":
        return PolyMatrix(u, [[parse_polynomial(s, u) for s in r] for r in obj])


def parse_matrix(text: str, u: Universe) -> PolyMatrix:
    """Parse the row-per-line, `|`-delimited matrix text format."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([parse_polynomial(cell, u) for cell in line.split("|")])
    if not rows:
        raise ValueError("empty matrix text")
    return PolyMatrix(u, rows)


# -- exact scalar linear algebra -------------------------------------------


def qmat_mul(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    if len(A[0]) != len(B):
        raise DimensionMismatch("scalar matrix product shape mismatch")
    cols = list(zip(*B))
    return [[_demote(sum(a * b for a, b in zip(row, col))) for col in cols] for row in A]


def qmat_vec(A: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list[Scalar]:
    return [_demote(sum(a * x for a, x in zip(row, v))) for row in A]


def qmat_identity(n: int) -> list[list[Scalar]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def qmat_rank(A: Sequence[Sequence[Scalar]]) -> int:
    rows = [[Fraction(x) for x in r] for r in A]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < nr and col < nc:
        piv = None
        for i in range(rank, nr):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, nr):
            if rows[i][col]:
                f = rows[i][col] / pv
                ri, rr = rows[i], rows[rank]
                for j in range(col, nc):
                    ri[j] -= f * rr[j]
        rank += 1
        col += 1
    return rank


def qmat_det(A: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(A)
    if any(len(r) != n for r in A):
        raise NonSquareMatrix("scalar determinant needs a square matrix")
    rows = [[Fraction(x) for x in r] for r in A]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if rows[i][k]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        pv = rows[k][k]
        det *= pv
        for i in range(k + 1, n):
            if rows[i][k]:
                f = rows[i][k] / pv
                ri, rk = rows[i], rows[k]
                for j in range(k, n):
                    ri[j] -= f * rk[j]
    return _demote(det)


class SingularMatrixError(ZeroDivisionError):
    """Inverse of a singular matrix requested."""


def qmat_inv(A: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    n = len(A)
    if any(len(r) != n for r in A):
        raise NonSquareMatrix("inverse needs a square matrix")
    aug = [[Fraction(x) for x in r] + [Fraction(1 if i == j else 0) for j in range(n)] for i, r in enumerate(A)]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if aug[i][k]:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pv = aug[k][k]
        aug[k] = [x / pv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                ak = aug[k]
                aug[i] = [x - f * y for x, y in zip(aug[i], ak)]
    return [[_demote(x) for x in row[n:]] for row in aug]


def qmat_solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Scalar]:
    """Solve A x = b exactly (A square invertible)."""
    inv = qmat_inv(A)
    return qmat_vec(inv, b)
