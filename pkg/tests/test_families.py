from __future__ import annotations

import numpy as np
import pytest

from jsrbound import (
    NormKind,
    burnside_irreducible,
    chi_measure,
    control_pair,
    indecomposable,
    row_sign_flip_bound,
    row_sign_flip_family,
    row_substitution_bound,
    row_substitution_family,
)

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def _members(family) -> list[np.ndarray]:
    return [np.asarray(m) for m in family.members]


class TestRowSubstitutionFamily:
    def test_identity(self):
        mats = _members(row_substitution_family(np.eye(2)))
        assert len(mats) == 2
        for m in mats:
            np.testing.assert_array_equal(m, np.eye(2))

    def test_swap(self):
        mats = _members(row_substitution_family(SWAP))
        np.testing.assert_array_equal(mats[0], [[0, 1], [0, 1]])
        np.testing.assert_array_equal(mats[1], [[1, 0], [1, 0]])

    def test_symmetric_example(self):
        mats = _members(row_substitution_family(np.array([[2.0, 1.0], [1.0, 2.0]])))
        np.testing.assert_array_equal(mats[0], [[2, 1], [0, 1]])
        np.testing.assert_array_equal(mats[1], [[1, 0], [1, 2]])


class TestRowSignFlipFamily:
    def test_identity(self):
        mats = _members(row_sign_flip_family(np.eye(2)))
        assert len(mats) == 3
        np.testing.assert_array_equal(mats[0], np.eye(2))
        np.testing.assert_array_equal(mats[1], [[-1, 0], [0, 1]])
        np.testing.assert_array_equal(mats[2], [[1, 0], [0, -1]])

    def test_swap(self):
        mats = _members(row_sign_flip_family(SWAP))
        np.testing.assert_array_equal(mats[1], [[0, -1], [1, 0]])
        np.testing.assert_array_equal(mats[2], [[0, 1], [-1, 0]])

    def test_general(self):
        mats = _members(row_sign_flip_family(np.array([[1.0, 2.0], [3.0, 4.0]])))
        np.testing.assert_array_equal(mats[1], [[-1, -2], [3, 4]])
        np.testing.assert_array_equal(mats[2], [[1, 2], [-3, -4]])


class TestIndecomposable:
    def test_two_cycle(self):
        assert indecomposable(SWAP) is True

    def test_triangular(self):
        assert indecomposable(np.array([[1.0, 1.0], [0.0, 1.0]])) is False

    def test_three_cycle(self):
        a = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
        assert indecomposable(a) is True

    def test_tiny_entries_below_tolerance(self):
        a = np.array([[1.0, 1e-15], [1.0, 1.0]])
        assert indecomposable(a) is False


class TestRowSubstitutionBound:
    def test_identity_has_eigenvalue_one(self):
        bound = row_substitution_bound(np.eye(2))
        assert bound.alpha == 0.0
        assert bound.chi_lower == 0.0
        assert bound.irreducible is False

    def test_swap_also_fails_the_eigenvalue_test(self):
        # det(A - I) = 0 for the swap, so alpha collapses
        assert np.linalg.det(SWAP - np.eye(2)) == pytest.approx(0.0)
        bound = row_substitution_bound(SWAP)
        assert bound.alpha == 0.0
        assert bound.chi_lower == 0.0

    def test_doubled_swap(self):
        # (A - I)^{-1} = [[1/3, 2/3], [2/3, 1/3]] has l1 norm 1, so the
        # minimal l1 gain of A - I is 1 and alpha = 1/(2 d)
        a = 2.0 * SWAP
        inv = np.linalg.inv(a - np.eye(2))
        assert np.abs(inv).sum(axis=0).max() == pytest.approx(1.0)
        bound = row_substitution_bound(a)
        assert bound.alpha == pytest.approx(0.25)
        assert bound.beta == pytest.approx(1.0)
        assert bound.chi_lower == pytest.approx(0.25)
        assert bound.irreducible is True


class TestRowSignFlipBound:
    def test_identity(self):
        bound = row_sign_flip_bound(np.eye(2))
        assert bound.alpha == pytest.approx(0.5)
        assert bound.beta == 0.0
        assert bound.chi_lower == 0.0
        assert bound.irreducible is False

    def test_swap_exact_half(self):
        bound = row_sign_flip_bound(SWAP)
        assert bound.alpha == 0.5
        assert bound.beta == 1.0
        assert bound.chi_lower == 0.5
        assert bound.irreducible is True

    def test_doubled_swap(self):
        bound = row_sign_flip_bound(2.0 * SWAP)
        assert bound.alpha == pytest.approx(1.0)
        assert bound.beta == pytest.approx(2.0)
        assert bound.chi_lower == pytest.approx(2.0)

    def test_singular_matrix_collapses(self):
        bound = row_sign_flip_bound(np.array([[1.0, 1.0], [1.0, 1.0]]))
        assert bound.alpha == 0.0
        assert bound.chi_lower == 0.0

    def test_bound_respected_by_measure(self, rng):
        # closed form lower-bounds the sampled measure at p = 2, l1; entries
        # stay in [-1, 1] since the form is degree-2 homogeneous in A while
        # the measure is not, so it only holds at moderate scale
        found = 0
        while found < 3:
            a = rng.uniform(-1, 1, size=(2, 2))
            bound = row_sign_flip_bound(a)
            if not bound.irreducible or bound.chi_lower <= 0.01:
                continue
            found += 1
            family = row_sign_flip_family(a)
            est = chi_measure(family, 2, NormKind.L1, 0.02)
            assert est.sampled_inf >= bound.chi_lower - 1e-6

    def test_family_is_burnside_irreducible_when_flagged(self, rng):
        for _ in range(20):
            a = rng.uniform(-2, 2, size=(2, 2))
            bound = row_sign_flip_bound(a)
            if bound.irreducible:
                assert burnside_irreducible(row_sign_flip_family(a)) is True


class TestControlPair:
    def test_members(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        b = np.array([1.0, 0.0])
        c = np.array([0.0, 1.0])
        ms = control_pair(a, b, c)
        assert ms.r == 2
        np.testing.assert_array_equal(ms.members[0], a)
        np.testing.assert_array_equal(ms.members[1], np.outer(b, c))
        assert np.linalg.matrix_rank(np.asarray(ms.members[1])) == 1
