"""Kalman matrices, determinants, vanishing orders, factorization audit."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import U2, U3, matrices
from kalmanvar.enumerative import detA_multiplicity, discriminant_budget
from kalmanvar.kalman import (
    KalmanInstance,
    LineRestrictionZero,
    RankDeficientC,
    delta_at,
    delta_d_at,
    factor_order_along_line,
    factorization_audit,
    kalman_det,
    kalman_matrix,
    kalman_matrix_at,
    membership_necessary,
)
from kalmanvar.polycore import a_universe, parse_polynomial, x_universe
from kalmanvar.polymatrix import PolyMatrix, qmat_det, qmat_rank
from kalmanvar.veronese import basis_size, coeff_row, mon_vector
from kalmanvar.witness import (
    matrix_with_eigenvectors,
    EigenSpec,
    random_invertible,
    special_locus_matrix,
)

F22 = parse_polynomial("x1^2 - x2^2", x_universe(2))
F32 = parse_polynomial("x2^2 - x1*x3", x_universe(3))
F23 = parse_polynomial("x1^3 - x2^3", x_universe(2))


def frac_rows(rows):
    return [[Fraction(x) for x in r] for r in rows]


# -- instance validation ------------------------------------------------------


def test_instance_from_form():
    inst = KalmanInstance.from_form(F32)
    assert (inst.n, inst.d, inst.p, inst.N) == (3, 2, 1, 6)
    assert inst.C == ((0, 0, -1, 1, 0, 0),)


def test_instance_from_generators():
    f1 = parse_polynomial("x1^2", x_universe(3))
    f2 = parse_polynomial("x2^2", x_universe(3))
    inst = KalmanInstance.from_generators([f1, f2])
    assert inst.p == 2 and inst.N == 6


def test_instance_validation_errors():
    with pytest.raises(RankDeficientC):
        KalmanInstance(2, 2, ((1, 0, 0), (1, 0, 0)))
    with pytest.raises(ValueError):
        KalmanInstance(2, 2, ((1, 0),))  # wrong width
    with pytest.raises(ValueError):
        KalmanInstance(2, 1, ((1, 0), (0, 1), (1, 1)))  # p > N


# -- matrix structure ----------------------------------------------------------


def test_kalman_matrix_shape_and_blocks():
    inst = KalmanInstance.from_form(F32)
    A = PolyMatrix.generic(3)
    K = kalman_matrix(inst, A)
    assert K.nrows == 6 and K.ncols == 6
    # block i is homogeneous of degree d*i in the matrix entries
    for i in range(6):
        h = K.rows[i][0].is_homogeneous() if not K.rows[i][0].is_zero() else None
        degs = {
            e.is_homogeneous() for e in K.rows[i] if not e.is_zero()
        }
        assert degs <= {2 * i}, (i, degs)


def test_kalman_matrix_first_block_is_C():
    inst = KalmanInstance.from_form(F22)
    A = PolyMatrix.generic(2)
    K = kalman_matrix(inst, A)
    assert [e.constant_value() for e in K.rows[0]] == list(inst.C[0])


def test_kalman_matrix_rectangular():
    f1 = parse_polynomial("x1^2", x_universe(3))
    f2 = parse_polynomial("x2^2", x_universe(3))
    inst = KalmanInstance.from_generators([f1, f2])
    A = PolyMatrix.generic(3)
    K = kalman_matrix(inst, A)
    # p(N - p + 1) x N
    assert K.nrows == 2 * 5 and K.ncols == 6


@settings(max_examples=25, deadline=None)
@given(matrices(2))
def test_symbolic_matches_numeric(A0):
    inst = KalmanInstance.from_form(F22)
    A = PolyMatrix.generic(2)
    K = kalman_matrix(inst, A)
    flat = tuple(x for row in A0 for x in row)
    sym_vals = [[e.evaluate(flat) for e in row] for row in K.rows]
    assert sym_vals == kalman_matrix_at(inst, A0)


# -- determinant ----------------------------------------------------------------


def test_kalman_det_2_2_degree_and_budget():
    det = kalman_det(F22)
    budget = discriminant_budget(2, 2)
    assert det.is_homogeneous() == budget.values["deg_det_K_d"] == 6


def test_kalman_det_via_dimensions():
    # n inferred from the form's universe; explicit n/d must agree
    det = kalman_det(F22, 2, 2)
    assert det == kalman_det(F22)
    with pytest.raises(ValueError):
        kalman_det(F22, 3, 2)


def test_kalman_det_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        kalman_det(parse_polynomial("x1^2 + x2", x_universe(2)))


def test_kalman_det_vanishes_on_eigenpoint_witness():
    # an eigenvector on V(f) forces the determinant to vanish
    det = kalman_det(F22)
    spec = EigenSpec(V=((1, 1), (2, 1)), D=(3, 5))  # (1,1) lies on V(x1^2-x2^2)
    A = matrix_with_eigenvectors(spec)
    flat = tuple(x for row in A for x in row)
    assert det.evaluate(flat) == 0


def test_kalman_det_nonzero_at_generic_point():
    det = kalman_det(F22)
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(5)]]
    flat = tuple(x for row in A for x in row)
    # eigenvectors of A avoid V(f): value must be nonzero
    assert det.evaluate(flat) != 0


# -- membership test ---------------------------------------------------------------


def test_membership_necessary():
    inst = KalmanInstance.from_form(F22)
    spec = EigenSpec(V=((1, 1), (2, 1)), D=(3, 5))
    assert membership_necessary(inst, frac_rows(matrix_with_eigenvectors(spec)))
    generic = frac_rows([[1, 2], [3, 5]])
    assert not membership_necessary(inst, generic)


def test_membership_necessary_pencil():
    f1 = parse_polynomial("x1^2", x_universe(3))
    f2 = parse_polynomial("x2^2", x_universe(3))
    inst = KalmanInstance.from_generators([f1, f2])
    # eigenvector (0,0,1) lies on V(x1^2, x2^2)
    spec = EigenSpec(V=((0, 0, 1), (0, 1, 1), (1, 1, 1)), D=(2, 3, 5))
    assert membership_necessary(inst, frac_rows(matrix_with_eigenvectors(spec)))


# -- spectral discriminants ----------------------------------------------------------


def test_delta_oracles():
    assert delta_at(frac_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])) == 4
    assert delta_at(frac_rows([[1, 1], [0, 1]])) == 0
    assert delta_d_at(frac_rows([[1, 0], [0, 2]]), 2) == 36


@settings(max_examples=30, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_delta2_identity_n2(l1, l2):
    # Delta_2 = Delta^3 * (l1*l2*(l1+l2))^2 on diagonal 2x2 matrices
    A = frac_rows([[l1, 0], [0, l2]])
    delta = delta_at(A)
    assert delta_d_at(A, 2) == delta ** 3 * Fraction(l1 * l2 * (l1 + l2)) ** 2


# -- vanishing orders along lines ------------------------------------------------------


def _line_through(kind: str, n: int, seed: int):
    loc = special_locus_matrix(kind, n, seed=seed)
    rng = random.Random(seed + 77)
    return frac_rows(loc["A"]), frac_rows(random_invertible(rng, n))


@pytest.mark.parametrize(
    "n,d,k",
    [(2, 2, 3), (3, 2, 4), (2, 3, 6)],
)
def test_multiplicity_of_delta_in_delta_d(n, d, k):
    A0, A1 = _line_through("repeated_eigenvalue_jordan", n, seed=5)
    assert factor_order_along_line("delta", A0, A1) == 1
    assert factor_order_along_line("delta_d", A0, A1, d=d) == k


def test_det_order_at_rank_deficient():
    A0, A1 = _line_through("rank_deficient", 3, seed=9)
    ord_det = factor_order_along_line("det", A0, A1, f=F32)
    assert ord_det == detA_multiplicity(3, 2) == 3


def test_det_order_at_rank_deficient_n2():
    A0, A1 = _line_through("rank_deficient", 2, seed=3)
    assert factor_order_along_line("det", A0, A1, f=F22) == detA_multiplicity(2, 2) == 1


def test_line_restriction_zero():
    # the pencil (1+t) I has identically vanishing discriminant
    I2 = frac_rows([[1, 0], [0, 1]])
    with pytest.raises(LineRestrictionZero):
        factor_order_along_line("delta", I2, I2)


def test_factor_order_validation():
    I2 = frac_rows([[1, 0], [0, 1]])
    J = frac_rows([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        factor_order_along_line("det", I2, J)  # missing f
    with pytest.raises(ValueError):
        factor_order_along_line("delta_d", I2, J)  # missing d
    with pytest.raises(ValueError):
        factor_order_along_line("no-such-target", I2, J)


# -- factorization audit ----------------------------------------------------------------


def test_audit_passes_2_2():
    rep = factorization_audit(F22, trials=5, seed=11)
    assert rep["status"] == "pass"
    assert [a["assertion"] for a in rep["assertions"]] == [
        "degree_budget",
        "mu_witness_vanishing",
        "collision_vanishing",
        "generic_nonvanishing",
    ]
    assert all(a["status"] == "pass" for a in rep["assertions"])
    assert rep["n"] == 2 and rep["d"] == 2 and rep["trials"] == 5


def test_audit_deterministic():
    a = factorization_audit(F22, trials=4, seed=123)
    b = factorization_audit(F22, trials=4, seed=123)
    assert a == b


def test_audit_seed_changes_witnesses():
    a = factorization_audit(F22, trials=4, seed=1)
    b = factorization_audit(F22, trials=4, seed=2)
    assert a["seed"] != b["seed"]


def test_audit_passes_3_2():
    rep = factorization_audit(F32, trials=5, seed=7)
    assert rep["status"] == "pass"


def test_audit_d1_collision_note():
    f = parse_polynomial("x1 + x2", x_universe(2))
    rep = factorization_audit(f, trials=3, seed=0)
    assert rep["status"] == "pass"
    coll = [a for a in rep["assertions"] if a["assertion"] == "collision_vanishing"][0]
    assert coll["status"] == "pass"


# -- special locus matrices ---------------------------------------------------------------


def test_special_locus_rank_deficient():
    loc = special_locus_matrix("rank_deficient", 3, seed=2)
    A = frac_rows(loc["A"])
    assert qmat_det(A) == 0
    assert qmat_rank(A) == 2


def test_special_locus_jordan():
    loc = special_locus_matrix("repeated_eigenvalue_jordan", 2, seed=2)
    A = frac_rows(loc["A"])
    assert delta_at(A) == 0
