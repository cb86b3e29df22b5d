"""Symmetric powers, monomial vectors, coefficient rows, polarization."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    SYM_POWER_3X3_D2,
    U2,
    U3,
    fractions,
    homogeneous,
    invertible_matrices,
    matrices,
    polynomials,
    vectors,
)
from kalmanvar.polycore import Polynomial, a_universe, parse_polynomial, x_universe
from kalmanvar.polymatrix import PolyMatrix, qmat_det, qmat_mul, qmat_vec
from kalmanvar.veronese import (
    InhomogeneousInput,
    PartitionType,
    basis_size,
    coeff_matrix,
    coeff_row,
    mon_vector,
    monomial_basis,
    polarize,
    polarize_value,
    sym_power,
    sym_power_scalar,
)

# -- basis ------------------------------------------------------------------


def test_monomial_basis_order_3_2():
    assert monomial_basis(3, 2) == [
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
    ]


def test_monomial_basis_order_2_3():
    assert monomial_basis(2, 3) == [(3, 0), (2, 1), (1, 2), (0, 3)]


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=5))
def test_basis_size_matches_enumeration(n, d):
    assert basis_size(n, d) == len(monomial_basis(n, d)) == math.comb(n - 1 + d, d)


def test_mon_vector_oracle():
    assert mon_vector((Fraction(2), Fraction(3)), 2) == [4, 6, 9]
    assert mon_vector((Fraction(1), Fraction(2), Fraction(3)), 1) == [1, 2, 3]


# -- symmetric powers ----------------------------------------------------------


def test_sym_power_3x3_d2_entry_for_entry():
    A = PolyMatrix.generic(3)
    R = sym_power(A, 2)
    assert R.nrows == R.ncols == 6
    for i in range(6):
        for j in range(6):
            expect = parse_polynomial(SYM_POWER_3X3_D2[i][j], A.u)
            assert R.rows[i][j] == expect, (i, j)


def test_sym_power_d1_is_identity_functor():
    A = PolyMatrix.generic(3)
    assert sym_power(A, 1).rows == A.rows


def test_sym_power_scalar_matches_symbolic():
    A = PolyMatrix.generic(2)
    vals = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(5)]]
    flat = (Fraction(1), Fraction(2), Fraction(3), Fraction(5))
    sym = sym_power(A, 3)
    num = sym_power_scalar(vals, 3)
    assert [[e.evaluate(flat) for e in row] for row in sym.rows] == num


@settings(max_examples=40, deadline=None)
@given(matrices(3), vectors(3), st.integers(min_value=1, max_value=3))
def test_intertwining(A, v, d):
    # rho_d(A) . mon(v) == mon(A v)
    R = sym_power_scalar(A, d)
    left = qmat_vec(R, mon_vector(v, d))
    right = mon_vector(qmat_vec(A, v), d)
    assert left == right


@settings(max_examples=30, deadline=None)
@given(matrices(2), matrices(2), st.integers(min_value=1, max_value=4))
def test_multiplicativity(A, B, d):
    left = sym_power_scalar(qmat_mul(A, B), d)
    right = qmat_mul(sym_power_scalar(A, d), sym_power_scalar(B, d))
    assert left == right


@settings(max_examples=30, deadline=None)
@given(matrices(3), st.integers(min_value=1, max_value=3))
def test_det_power_law(A, d):
    N = basis_size(3, d)
    expo = d * N // 3
    assert qmat_det(sym_power_scalar(A, d)) == qmat_det(A) ** expo


def test_sym_power_rejects_nonsquare():
    m = PolyMatrix.from_scalars(U3, [[1, 2, 3]])
    with pytest.raises(Exception):
        sym_power(m, 2)


# -- coefficient rows -------------------------------------------------------------


def test_coeff_row_oracle():
    f = parse_polynomial("x2^2 - x1*x3", U3)
    assert coeff_row(f, 3, 2) == [0, 0, -1, 1, 0, 0]


def test_coeff_row_rejects_inhomogeneous():
    with pytest.raises(InhomogeneousInput):
        coeff_row(parse_polynomial("x1^2 + x2", U3), 3, 2)


def test_coeff_row_rejects_wrong_degree():
    with pytest.raises(InhomogeneousInput):
        coeff_row(parse_polynomial("x1^3", U3), 3, 2)


@settings(max_examples=60, deadline=None)
@given(homogeneous(U3, 3), vectors(3))
def test_coeff_row_pairing(f, v):
    # <coeff_row(f), mon(v)> = f(v)
    row = coeff_row(f, 3, 3)
    pair = sum(c * m for c, m in zip(row, mon_vector(v, 3)))
    assert pair == f.evaluate(tuple(v))


def test_coeff_matrix_independent_rows():
    f1 = parse_polynomial("x1^2", U3)
    f2 = parse_polynomial("x1^2 + x2^2", U3)
    rows, d = coeff_matrix([f1, f2])
    assert d == 2
    assert len(rows) == 2 and len(rows[0]) == 6
    rows2, d2 = coeff_matrix([f1, f1])
    assert d2 == 2 and len(rows2) == 1


def test_coeff_matrix_mixed_degrees_lift_to_lcm():
    lin = parse_polynomial("x1", U3)
    quad = parse_polynomial("x2^2", U3)
    rows, d = coeff_matrix([lin, quad])
    assert d == 2
    assert rows[0] == coeff_row(parse_polynomial("x1^2", U3), 3, 2)
    assert rows[1] == coeff_row(quad, 3, 2)


# -- partitions -------------------------------------------------------------------


def test_partition_type_normalizes_and_validates():
    mu = PartitionType((2, 1))
    assert mu.parts == (1, 2)
    assert mu.d == 3 and mu.s == 2
    assert PartitionType((2, 2, 1)).mults == {1: 1, 2: 2}
    assert PartitionType((2, 2, 1)).mult_factorial() == 2
    with pytest.raises(ValueError):
        PartitionType((0, 1))
    with pytest.raises(ValueError):
        PartitionType(())


# -- polarization -----------------------------------------------------------------


def test_polarize_oracles():
    f = parse_polynomial("x1^2", U2)
    p11 = polarize(f, (1, 1))
    assert p11.to_text() == "x1_1*x1_2"
    g = parse_polynomial("x1*x2", U2)
    p = polarize(g, (1, 1))
    assert p == parse_polynomial("1/2*x1_1*x2_2 + 1/2*x2_1*x1_2", p.u)


def test_polarize_trivial_partition_returns_f():
    f = parse_polynomial("x2^2 - x1*x3", U3)
    p = polarize(f, (2,))
    assert p == parse_polynomial("x2_1^2 - x1_1*x3_1", p.u)


def test_polarize_rejects_inhomogeneous():
    with pytest.raises(InhomogeneousInput):
        polarize(parse_polynomial("x1 + 1", U3), (1,))
    with pytest.raises(InhomogeneousInput):
        polarize(parse_polynomial("x1^2", U3), (1, 1, 1))


@settings(max_examples=40, deadline=None)
@given(homogeneous(U3, 3), vectors(3))
def test_polarize_diagonal_recovers_f(f, v):
    # f_mu(v, v, ..., v) = f(v) for every partition shape
    for mu in [(3,), (2, 1), (1, 1, 1)]:
        assert polarize_value(f, mu, [v] * len(mu)) == f.evaluate(tuple(v))


@settings(max_examples=40, deadline=None)
@given(vectors(3), vectors(3), fractions)
def test_polarize_block_homogeneity(v, w, c):
    # parts are kept sorted ascending, so block 1 has degree 1, block 2
    # has degree 2
    f = parse_polynomial("x2^3 - x1^2*x3", U3)
    base = polarize_value(f, (1, 2), [v, w])
    assert polarize_value(f, (1, 2), [[c * x for x in v], w]) == c * base
    assert polarize_value(f, (1, 2), [v, [c * x for x in w]]) == c ** 2 * base


@settings(max_examples=40, deadline=None)
@given(vectors(3), vectors(3))
def test_polarize_equal_blocks_symmetric(v, w):
    f = parse_polynomial("x1^2*x2^2 - x3^4", U3)
    assert polarize_value(f, (2, 2), [v, w]) == polarize_value(f, (2, 2), [w, v])
