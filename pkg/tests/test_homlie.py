"""Twisted Lie algebras: axiom certifiers, morphisms, representations, forms."""
from __future__ import annotations

from fractions import Fraction

import pytest

from maninforge.core import identity_matrix, matrix
from maninforge.homlie import (
    HomLieAlgebra,
    LinearRep,
    adjoint_representation,
    check_admissible_algebra,
    check_admissible_representation,
    check_hom_jacobi,
    check_homomorphism,
    check_involutive,
    check_quadratic,
    check_representation,
    check_twist_morphism,
    direct_sum,
)
from maninforge.manin import special_linear_data
from maninforge.rmatrix import sl2_lie, sl2_twisted

SL2_BRACKETS = {(0, 1): {1: -2}, (0, 2): {2: 2}, (1, 2): {0: 1}}
# [e0,e1]=e0 makes the twisted Jacobi cycle close to -e1 instead of zero.
BROKEN_BRACKETS = {(0, 1): {0: 1}, (0, 2): {1: 1}, (1, 2): {0: 1}}


def test_create_accepts_twisted_jacobi_data():
    h = sl2_twisted()
    assert check_hom_jacobi(h).passed
    assert check_twist_morphism(h).passed
    assert check_involutive(h)


def test_create_rejects_broken_jacobi_with_located_message():
    with pytest.raises(ValueError, match=r"twisted Jacobi identity fails at basis triple"):
        HomLieAlgebra.create(3, BROKEN_BRACKETS)


def test_unchecked_defers_to_certifier():
    h = HomLieAlgebra.unchecked(3, BROKEN_BRACKETS)
    report = check_hom_jacobi(h)
    assert not report.passed
    assert (0, 1, 2) in [f.index for f in report.failures]
    assert all(f.check == "hom_jacobi" for f in report.failures)


def test_twist_morphism_failure_located():
    """diag(1,1,-1) negates only one root vector, so it cannot respect the
    bracket of the two root vectors."""
    h = HomLieAlgebra.unchecked(3, SL2_BRACKETS, phi=[[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    report = check_twist_morphism(h)
    assert not report.passed
    assert (1, 2) in [f.index for f in report.failures]


def test_involutive_detects_non_involution():
    h = HomLieAlgebra.create(2, {}, phi=[[1, 0], [0, 2]])
    assert not check_involutive(h)
    assert check_involutive(sl2_lie())


def test_bracket_and_phi_linear_extension():
    h = sl2_twisted()
    x = (Fraction(1), Fraction(2), Fraction(0))
    y = (Fraction(0), Fraction(0), Fraction(3))
    # [e0 + 2 e1, 3 e2] = 3(2 e2) + 6(e0) = 6 e0 + 6 e2
    assert h.bracket(x, y) == (Fraction(6), Fraction(0), Fraction(6))
    assert h.phi_apply(x) == (Fraction(1), Fraction(-2), Fraction(0))


# ---------------------------------------------------------------------------
# Homomorphisms


def test_identity_and_twist_are_self_homomorphisms():
    h = sl2_twisted()
    assert check_homomorphism(identity_matrix(3), h, h).passed
    assert check_homomorphism(h.phi, h, h).passed


def test_scaling_map_between_abelian_algebras():
    a = HomLieAlgebra.create(2, {})
    assert check_homomorphism(matrix([[2, 0], [0, 2]]), a, a).passed


def test_basis_swap_is_not_a_homomorphism():
    h = sl2_lie()
    swap = matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    report = check_homomorphism(swap, h, h)
    assert not report.passed
    assert any(f.check == "bracket_preserved" for f in report.failures)


def test_homomorphism_requires_twist_compatibility():
    twisted, plain = sl2_twisted(), sl2_lie()
    report = check_homomorphism(identity_matrix(3), twisted, plain)
    assert not report.passed
    assert any(f.check == "twist_intertwine" for f in report.failures)


# ---------------------------------------------------------------------------
# Representations


def test_adjoint_matrices_encode_brackets():
    h = sl2_twisted()
    rep = adjoint_representation(h)
    # ad_{e0} scales the root vectors by -2 and 2.
    assert rep.rho[0] == matrix([[0, 0, 0], [0, -2, 0], [0, 0, 2]])
    assert rep.alpha == h.phi


def test_adjoint_is_a_representation_both_twists():
    for h in (sl2_lie(), sl2_twisted()):
        rep = adjoint_representation(h)
        assert check_representation(h, rep).passed
        assert check_admissible_representation(h, rep).passed


def test_wrong_alpha_breaks_intertwining():
    h = sl2_twisted()
    rep = adjoint_representation(h)
    wrong = LinearRep(rep.target_dim, rep.rho, identity_matrix(3))
    report = check_representation(h, wrong)
    assert not report.passed
    assert any(f.check == "intertwine" for f in report.failures)


def test_singular_alpha_is_inapplicable_not_failing():
    h = sl2_lie()
    zero3 = [[0] * 3 for _ in range(3)]
    rep = LinearRep.of(3, [zero3, zero3, zero3], alpha=zero3)
    report = check_admissible_representation(h, rep)
    assert not report.applicable
    assert report.verdict == "inapplicable"
    assert not report.failures


def test_involutive_algebras_are_admissible():
    assert check_admissible_algebra(sl2_lie()).passed
    assert check_admissible_algebra(sl2_twisted()).passed


def test_non_admissible_twist_detected():
    """A nilpotent non-involutive twist on the two-step algebra leaves a
    defect (Id - phi^2) that does not bracket away."""
    h = HomLieAlgebra.unchecked(
        3,
        {(0, 1): {2: 1}},
        phi=[[0, 0, 0], [0, 1, 0], [1, 0, 0]],
    )
    if check_hom_jacobi(h).passed:
        report = check_admissible_algebra(h)
        assert not report.passed


# ---------------------------------------------------------------------------
# Quadratic forms


def test_trace_form_is_invariant_and_twist_self_adjoint():
    data = special_linear_data(2)
    assert data.algebra.form == matrix([[2, 0, 0], [0, 0, -1], [0, -1, 0]])
    assert check_quadratic(data.algebra).passed


def test_identity_form_on_simple_algebra_fails_invariance():
    h = HomLieAlgebra.unchecked(3, SL2_BRACKETS, form=identity_matrix(3))
    report = check_quadratic(h)
    assert not report.passed
    assert any(f.check == "invariant" for f in report.failures)


def test_degenerate_form_reports_kernel():
    h = HomLieAlgebra.create(2, {}, form=[[1, 0], [0, 0]])
    report = check_quadratic(h)
    assert any(f.check == "nondegenerate" for f in report.failures)


def test_asymmetric_form_detected():
    h = HomLieAlgebra.create(2, {}, form=[[0, 1], [2, 0]])
    report = check_quadratic(h)
    assert any(f.check == "symmetric" for f in report.failures)


def test_missing_form_raises():
    with pytest.raises(ValueError):
        check_quadratic(sl2_twisted())


def test_twist_self_adjoint_failure_detected():
    h = HomLieAlgebra.create(
        2, {}, phi=[[0, 1], [0, 0]], form=[[1, 0], [0, 2]]
    )
    report = check_quadratic(h)
    assert any(f.check == "twist_self_adjoint" for f in report.failures)


# ---------------------------------------------------------------------------
# Direct sums


def test_direct_sum_structure():
    data = special_linear_data(2)
    h = data.algebra
    total = direct_sum(h, h)
    assert total.dim == 6
    # block brackets: second copy shifted by 3, no cross terms
    assert total.bracket_basis(1, 2) == h.bracket_basis(1, 2)
    assert total.bracket_basis(4, 5) == {k + 3: v for k, v in h.bracket_basis(1, 2).items()}
    assert total.bracket_basis(0, 4) == {}
    assert check_hom_jacobi(total).passed
    assert check_quadratic(total).passed
    for i in range(3):
        for j in range(3):
            assert total.form[i][j + 3] == 0
            assert total.form[i + 3][j] == 0


def test_direct_sum_without_forms_has_no_form():
    total = direct_sum(sl2_twisted(), sl2_twisted())
    assert total.form is None
    assert check_twist_morphism(total).passed
