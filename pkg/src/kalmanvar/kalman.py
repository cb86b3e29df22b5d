"""Kalman matrices of polynomial observation systems, exactly.

For an n x n matrix A acting on degree-d forms through its symmetric power
rho_d(A), and a p x N coefficient matrix C of observed forms
(N = C(n-1+d, d)), the order-d Kalman matrix stacks the row blocks

    C, C rho_d(A), C rho_d(A)^2, ..., C rho_d(A)^{N-p}

into a p(N-p+1) x N matrix.  Its maximal minors vanish on every matrix
with an eigenvector lying on the common zero locus of the observed forms,
which makes the square (p = 1) determinant a single equation certifying
eigenpoint membership.

This module constructs these matrices symbolically and numerically,
computes the hypersurface determinant, measures vanishing orders of the
determinant and of spectral discriminants along rational lines, and runs
a randomized-but-seeded audit of the determinant's factorization into a
saturated-discriminant square root times one factor per eigenvalue
partition.  Everything is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enumerative import discriminant_budget, partitions
from .polycore import (
    Polynomial,
    Scalar,
    ZeroPolynomial,
    root_multiplicity_at_zero,
    t_universe,
    univariate_discriminant,
)
from .polymatrix import (
    DimensionMismatch,
    PolyMatrix,
    qmat_det,
    qmat_identity,
    qmat_mul,
    qmat_rank,
)
from .veronese import (
    PartitionType,
    basis_size,
    coeff_matrix,
    coeff_row,
    polarize_value,
    sym_power,
    sym_power_scalar,
)
from .witness import (
    RETRY_BUDGET,
    EigenSpec,
    NoStrategy,
    RetryExhausted,
    UnsupportedPartition,
    collision_eigenvalues,
    derive_seed,
    matrix_with_eigenvectors,
    mu_witness,
    random_invertible,
    rho_simple_eigenvalues,
)


class RankDeficientC(ValueError):
    """The observation coefficient matrix does not have full row rank."""


class LineRestrictionZero(ArithmeticError):
    """The target polynomial restricts to zero on the whole sampled line,
    so no vanishing order at the base point is defined; retry with fresh
    randomness."""


def _infer_nd(f: Polynomial, n: int | None, d: int | None) -> tuple[int, int]:
    hd = f.is_homogeneous()
    if hd is None or hd < 1:
        raise ValueError("a nonzero homogeneous form of positive degree is required")
    if d is None:
        d = hd
    elif d != hd:
        raise ValueError(f"form has degree {hd}, not the requested d={d}")
    if n is None:
        n = f.u.nvars
    elif n != f.u.nvars:
        raise ValueError(f"form lives in {f.u.nvars} variables, not n={n}")
    return n, d


@dataclass(frozen=True)
class KalmanInstance:
    """Dimension n, form degree d, and an exact p x N coefficient matrix C
    of full row rank (rows = coefficient vectors of observed degree-d
    forms in the graded-lex monomial basis)."""

    n: int
    d: int
    C: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        N = basis_size(self.n, self.d)
        p = len(self.C)
        if p == 0 or p > N:
            raise ValueError(f"C must have between 1 and {N} rows")
        if any(len(r) != N for r in self.C):
            raise ValueError(f"C must have exactly N={N} columns")
        if qmat_rank([list(r) for r in self.C]) < p:
            raise RankDeficientC("C must have full row rank")

    @property
    def p(self) -> int:
        return len(self.C)

    @property
    def N(self) -> int:
        return basis_size(self.n, self.d)

    @classmethod
    def from_form(cls, f: Polynomial, n: int | None = None,
                  d: int | None = None) -> "KalmanInstance":
        """Single-form (p = 1) instance; n and d are inferred from f when
        omitted and cross-checked when given."""
        n, d = _infer_nd(f, n, d)
        return cls(n=n, d=d, C=(tuple(coeff_row(f, n, d)),))

    @classmethod
    def from_generators(cls, generators: Sequence[Polynomial]) -> "KalmanInstance":
        """Instance for several forms: d is the lcm of their degrees, each
        generator is raised to degree d, and dependent rows are dropped so
        C has full row rank."""
        rows, d = coeff_matrix(generators)
        n = generators[0].u.nvars
        return cls(n=n, d=d, C=tuple(tuple(r) for r in rows))


def kalman_matrix(inst: KalmanInstance, A: PolyMatrix) -> PolyMatrix:
    """The stacked matrix with row blocks C * rho_d(A)^i, i = 0..N-p.

    A may be any square matrix of polynomials of size n (the generic
    matrix of indeterminates, or a pencil A0 + t*A1 restricted to a line).
    Block i has entries homogeneous of degree d*i in the entries of A.
    """
    if not A.is_square() or A.nrows != inst.n:
        raise DimensionMismatch(f"A must be {inst.n}x{inst.n}")
    R = sym_power(A, inst.d)
    block = PolyMatrix.from_scalars(A.u, inst.C)
    rows = [list(r) for r in block.rows]
    for _ in range(inst.N - inst.p):
        block = block * R
        rows.extend(list(r) for r in block.rows)
    return PolyMatrix(A.u, rows)


def kalman_matrix_at(inst: KalmanInstance, A0: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """kalman_matrix evaluated at a rational matrix, computed in scalar
    arithmetic throughout (no symbolic detour)."""
    if len(A0) != inst.n or any(len(r) != inst.n for r in A0):
        raise DimensionMismatch(f"A0 must be {inst.n}x{inst.n}")
    R = sym_power_scalar(A0, inst.d)
    block = [list(r) for r in inst.C]
    rows = [list(r) for r in block]
    for _ in range(inst.N - inst.p):
        block = qmat_mul(block, R)
        rows.extend(list(r) for r in block)
    return rows


_DET_CACHE: dict[tuple, Polynomial] = {}


def kalman_det(f: Polynomial, n: int | None = None, d: int | None = None) -> Polynomial:
    """Determinant of the square (single-form) Kalman matrix at the generic
    matrix of indeterminates a11..ann, canonically normalized (integer
    coefficients, positive leading coefficient).

    Homogeneous of total degree d*C(N,2) whenever no structural
    cancellation occurs (generic full-support forms).
    """
    n, d = _infer_nd(f, n, d)
    fc = f.canonical()
    key = (fc.u.names, fc.to_text(), n, d)
    hit = _DET_CACHE.get(key)
    if hit is not None:
        return hit
    inst = KalmanInstance.from_form(fc, n, d)
    K = kalman_matrix(inst, PolyMatrix.generic(n))
    det = K.det().canonical()
    _DET_CACHE[key] = det
    return det


def membership_necessary(inst: KalmanInstance, A0: Sequence[Sequence[Scalar]]) -> bool:
    """True iff the Kalman matrix at A0 drops rank below N — a necessary
    condition for A0 to have an eigenvector on the observed zero locus
    (for p = 1 this is exactly the vanishing of the determinant)."""
    return qmat_rank(kalman_matrix_at(inst, A0)) < inst.N


# -- spectral discriminants ---------------------------------------------------


def _char_coeffs(A: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Ascending exact coefficients [c_0, ..., c_m] of det(x*I - A)
    (monic, c_m = 1), by the trace recursion."""
    m = len(A)
    if any(len(r) != m for r in A):
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    desc: list[Scalar] = [Fraction(1)]
    M = qmat_identity(m)
    for k in range(1, m + 1):
        AM = qmat_mul(A, M)
        c = Fraction(-sum(AM[i][i] for i in range(m)), k)
        desc.append(c)
        if k < m:
            M = [[AM[i][j] + (c if i == j else 0) for j in range(m)]
                 for i in range(m)]
    desc.reverse()
    return desc


def delta_at(A0: Sequence[Sequence[Scalar]]) -> Scalar:
    """Discriminant of the characteristic polynomial of A0 — the product of
    squared eigenvalue differences; zero iff an eigenvalue repeats."""
    return univariate_discriminant(_char_coeffs(A0))


def delta_d_at(A0: Sequence[Sequence[Scalar]], d: int) -> Scalar:
    """Discriminant of the characteristic polynomial of the d-th symmetric
    power of A0."""
    return univariate_discriminant(_char_coeffs(sym_power_scalar(A0, d)))


# -- vanishing orders along lines ---------------------------------------------


def _line_matrix(A0: Sequence[Sequence[Scalar]], A1: Sequence[Sequence[Scalar]]) -> PolyMatrix:
    """The pencil A0 + t*A1 as a matrix of univariate polynomials in t."""
    n = len(A0)
    if any(len(r) != n for r in A0) or len(A1) != n or any(len(r) != n for r in A1):
        raise DimensionMismatch("A0 and A1 must be square of equal size")
    ut = t_universe()
    rows = []
    for r0, r1 in zip(A0, A1):
        rows.append([
            Polynomial.const(ut, a) + Polynomial.var(ut, "t", 1, b)
            for a, b in zip(r0, r1)
        ])
    return PolyMatrix(ut, rows)


def _order_at_zero(p: Polynomial) -> int:
    try:
        return root_multiplicity_at_zero(p)
    except ZeroPolynomial:
        raise LineRestrictionZero("restriction identically zero") from None


def factor_order_along_line(target: str, A0: Sequence[Sequence[Scalar]],
                            A1: Sequence[Sequence[Scalar]], *,
                            f: Polynomial | None = None,
                            d: int | None = None) -> int:
    """Vanishing order at t = 0 of a target polynomial restricted to the
    line A0 + t*A1.

    Targets:
      "det"      determinant of the Kalman matrix of the form f (required);
      "delta_d"  discriminant of the characteristic polynomial of the d-th
                 symmetric power (d required);
      "delta"    discriminant of the characteristic polynomial itself.

    For A0 generic on a degeneration locus and A1 generic, the order equals
    the multiplicity of the corresponding factor of the target.  Raises
    LineRestrictionZero when the restriction vanishes identically (a
    non-generic line; the caller should retry with fresh randomness).
    """
    At = _line_matrix(A0, A1)
    if target in ("det", "kalman_det"):
        if f is None:
            raise ValueError('target "det" requires the form f')
        inst = KalmanInstance.from_form(f, len(A0), d)
        restricted = kalman_matrix(inst, At).det()
    elif target == "delta_d":
        if d is None:
            raise ValueError('target "delta_d" requires d')
        restricted = univariate_discriminant(sym_power(At, d).char_poly())
    elif target == "delta":
        restricted = univariate_discriminant(At.char_poly())
    else:
        raise ValueError(f"unknown target {target!r}")
    return _order_at_zero(restricted)


# -- factorization audit ------------------------------------------------------

_RANK = {"pass": 0, "error": 1, "fail": 2}


def _worse(a: str, b: str) -> str:
    return a if _RANK[a] >= _RANK[b] else b


def _eigencolumns(V: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    n = len(V)
    return [[V[i][j] for i in range(n)] for j in range(n)]


def _tuple_values_nonzero(f: Polynomial, mus: Sequence[PartitionType],
                          cols: Sequence[Sequence[Scalar]]) -> bool:
    """True iff every partition polarization of f is nonzero on every
    ordered tuple of distinct eigenvector columns — the draw then lies on
    no component of the determinant's vanishing locus."""
    n = len(cols)
    for mu in mus:
        for idx in itertools.permutations(range(n), mu.s):
            if polarize_value(f, mu, [cols[i] for i in idx]) == 0:
                return False
    return True


def factorization_audit(f: Polynomial, n: int | None = None, d: int | None = None,
                        *, trials: int = 20, seed: int = 0) -> dict:
    """Randomized-but-seeded audit of the factorization structure of the
    Kalman determinant of f.  Four assertions:

      degree_budget            deg det = deg sqrt(saturated discriminant)
                               + sum of the per-partition factor degrees
      mu_witness_vanishing     det vanishes at an exact witness matrix for
                               every eigenvalue partition of d into at most
                               n parts
      collision_vanishing      det vanishes at matrices whose symmetric
                               power has a repeated eigenvalue while the
                               matrix spectrum stays simple
      generic_nonvanishing     det is nonzero at `trials` diagonalizable
                               matrices drawn to avoid every factor's locus

    All evaluations are numeric-exact (the symbolic determinant is never
    expanded).  Witness construction failures are reported per case, not
    fatal.  The report is deterministic for a fixed seed and JSON-safe.
    """
    n, d = _infer_nd(f, n, d)
    inst = KalmanInstance.from_form(f, n, d)
    mus = partitions(d, n)
    assertions: list[dict] = []

    # degree budget
    try:
        rep = discriminant_budget(n, d)
        cert = {k: (str(v) if isinstance(v, Fraction) else v)
                for k, v in rep.values.items()}
        assertions.append({"assertion": "degree_budget", "status": "pass",
                           "witness_seed": None, "certificate": cert})
    except AssertionError as e:  # pragma: no cover - formulas are consistent
        assertions.append({"assertion": "degree_budget", "status": "fail",
                           "witness_seed": None,
                           "certificate": {"error": str(e)}})

    # vanishing at one exact witness per partition
    status = "pass"
    cases = []
    for k, mu in enumerate(mus):
        ws = derive_seed(seed, 1_000_000 + k)
        case: dict = {"mu": list(mu.parts), "witness_seed": ws}
        try:
            w = mu_witness(f, mu, n, seed=ws)
        except (UnsupportedPartition, NoStrategy, RetryExhausted) as e:
            case["status"] = "error"
            case["reason"] = str(e)
            status = _worse(status, "error")
            cases.append(case)
            continue
        val = qmat_det(kalman_matrix_at(inst, w.A))
        case["status"] = "pass" if val == 0 else "fail"
        case["det_value"] = str(val)
        case["certificate"] = w.certificate
        status = _worse(status, case["status"])
        cases.append(case)
    assertions.append({"assertion": "mu_witness_vanishing", "status": status,
                       "witness_seed": derive_seed(seed, 1_000_000),
                       "certificate": {"cases": cases}})

    # vanishing on the repeated-symmetric-power-eigenvalue locus
    if d < 2:
        assertions.append({
            "assertion": "collision_vanishing", "status": "pass",
            "witness_seed": None,
            "certificate": {"note": "the saturated discriminant factor is "
                                    "constant for d = 1; nothing to check"},
        })
    else:
        status = "pass"
        cases = []
        for j in range(trials):
            ws = derive_seed(seed, 2_000_000 + j)
            rng = random.Random(ws)
            case = {"trial": j, "witness_seed": ws}
            try:
                lams = collision_eigenvalues(rng, n, d)
                V = random_invertible(rng, n)
            except RetryExhausted as e:  # pragma: no cover - ample retries
                case["status"] = "error"
                case["reason"] = str(e)
                status = _worse(status, "error")
                cases.append(case)
                continue
            A = matrix_with_eigenvectors(EigenSpec(tuple(map(tuple, V)),
                                                   tuple(lams)))
            val = qmat_det(kalman_matrix_at(inst, A))
            case["eigenvalues"] = [str(l) for l in lams]
            case["status"] = "pass" if val == 0 else "fail"
            case["det_value"] = str(val)
            status = _worse(status, case["status"])
            cases.append(case)
        assertions.append({"assertion": "collision_vanishing", "status": status,
                           "witness_seed": derive_seed(seed, 2_000_000),
                           "certificate": {"cases": cases}})

    # nonvanishing at generic diagonalizable matrices away from all factors
    status = "pass"
    cases = []
    for j in range(trials):
        ws = derive_seed(seed, 3_000_000 + j)
        rng = random.Random(ws)
        case = {"trial": j, "witness_seed": ws}
        accepted = None
        try:
            for _ in range(RETRY_BUDGET):
                lams = rho_simple_eigenvalues(rng, n, d)
                V = random_invertible(rng, n)
                if _tuple_values_nonzero(f, mus, _eigencolumns(V)):
                    accepted = (lams, V)
                    break
        except RetryExhausted as e:  # pragma: no cover - ample retries
            case["status"] = "error"
            case["reason"] = str(e)
            status = _worse(status, "error")
            cases.append(case)
            continue
        if accepted is None:
            case["status"] = "error"
            case["reason"] = "rejection sampling found no generic draw"
            status = _worse(status, "error")
            cases.append(case)
            continue
        lams, V = accepted
        A = matrix_with_eigenvectors(EigenSpec(tuple(map(tuple, V)),
                                               tuple(lams)))
        val = qmat_det(kalman_matrix_at(inst, A))
        case["eigenvalues"] = [str(l) for l in lams]
        case["status"] = "pass" if val != 0 else "fail"
        case["det_value"] = str(val)
        status = _worse(status, case["status"])
        cases.append(case)
    assertions.append({"assertion": "generic_nonvanishing", "status": status,
                       "witness_seed": derive_seed(seed, 3_000_000),
                       "certificate": {"cases": cases}})

    overall = "pass"
    for a in assertions:
        overall = _worse(overall, a["status"])
    return {
        "n": n,
        "d": d,
        "f": f.to_text(),
        "seed": seed,
        "trials": trials,
        "assertions": assertions,
        "status": overall,
    }
