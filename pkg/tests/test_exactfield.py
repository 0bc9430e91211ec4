from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ccx.exactfield import (I, ONE, ZERO, AmbientMismatchError, GaussianRational, Matrix, ScalarSyntaxError,
                            Subspace, image, kernel, null_rows, parse_scalar, preimage, quotient_dim, rank,
                            row_echelon, subspace_intersection, subspace_sum, to_int_row)

small = st.integers(-6, 6)
fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5))
gauss = st.builds(GaussianRational, fractions, fractions)


def real_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


class TestScalars:
    def test_i_squared(self):
        assert I * I == -ONE

    def test_division_roundtrip(self):
        a = GaussianRational(Fraction(3, 2), -4)
        b = GaussianRational(1, 1)
        assert (a / b) * b == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_conjugate_and_norm(self):
        z = GaussianRational(3, 4)
        assert z.conjugate() == GaussianRational(3, -4)
        assert z.norm() == 25

    def test_power(self):
        assert I ** 4 == ONE
        assert GaussianRational(1, 1) ** 2 == GaussianRational(0, 2)

    def test_equality_with_ints(self):
        assert GaussianRational(5) == 5
        assert GaussianRational(5, 1) != 5

    @pytest.mark.parametrize("text,value", [
        ("1/2", GaussianRational(Fraction(1, 2))),
        ("i", I),
        ("-3/4*i", GaussianRational(0, Fraction(-3, 4))),
        ("1 + 2*i", GaussianRational(1, 2)),
        ("2 - i", GaussianRational(2, -1)),
    ])
    def test_parse(self, text, value):
        assert parse_scalar(text) == value

    @pytest.mark.parametrize("text", ["", "1/0", "2 3", "x", "1+"])
    def test_parse_errors(self, text):
        with pytest.raises(ScalarSyntaxError):
            parse_scalar(text)

    @given(gauss, gauss, gauss)
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if b:
            assert (a / b) * b == a

    def test_to_int_row_clears_denominators(self):
        row = to_int_row({0: GaussianRational(Fraction(1, 2)), 3: GaussianRational(0, Fraction(1, 3))})
        assert row == {0: (3, 0), 3: (0, 2)}


class TestMatrix:
    def test_shape_checks(self):
        with pytest.raises(IndexError):
            Matrix(2, 2, {(2, 0): 1})
        with pytest.raises(ValueError):
            Matrix(2, 3) @ Matrix(2, 3)

    def test_product_and_transpose(self):
        a = Matrix.from_rows([[1, 2], [3, 4]])
        b = Matrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).to_lists() == [[2, 1], [4, 3]]
        assert (a @ b).transpose() == b.transpose() @ a.transpose()

    def test_identity_and_zero(self):
        assert Matrix.identity(3) @ Matrix.identity(3) == Matrix.identity(3)
        assert Matrix.zero(2, 3).is_zero()
        assert not Matrix.identity(1).is_zero()

    def test_stacking(self):
        a = Matrix.from_rows([[1, 0]])
        assert Matrix.vstack(a, a).shape == (2, 2)
        assert Matrix.hstack(a, a).shape == (1, 4)

    def test_complex_rank(self):
        # rows (1, i) and (i, -1) are proportional over Q(i)
        m = Matrix.from_rows([[1, I], [I, -1]])
        assert rank(m) == 1
        assert rank(Matrix.from_rows([[1, I], [I, 1]])) == 2

    @settings(max_examples=60, deadline=None)
    @given(real_matrix(4, 5))
    def test_rank_against_sympy(self, rows):
        assert rank(Matrix.from_rows(rows)) == sympy.Matrix(rows).rank()

    @settings(max_examples=60, deadline=None)
    @given(real_matrix(3, 5))
    def test_rank_nullity(self, rows):
        m = Matrix.from_rows(rows)
        k = kernel(m)
        assert rank(m) + k.dim == 5
        for v in k.basis:
            assert all(x == 0 for x in m.apply(v))


class TestSubspaces:
    def test_membership(self):
        s = Subspace(3, [(1, 0, 1), (0, 1, 0)])
        assert (2, 3, 2) in s
        assert (1, 0, 0) not in s

    def test_canonical_equality(self):
        assert Subspace(2, [(1, 1)]) == Subspace(2, [(3, 3)])
        assert Subspace(2, [(1, I)]) != Subspace(2, [(1, -I)])

    def test_sum_and_intersection(self):
        a = Subspace(3, [(1, 0, 0), (0, 1, 0)])
        b = Subspace(3, [(0, 1, 0), (0, 0, 1)])
        assert subspace_sum(a, b).dim == 3
        assert subspace_intersection(a, b) == Subspace(3, [(0, 1, 0)])
        assert quotient_dim(a, subspace_intersection(a, b)) == 1

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatchError):
            subspace_sum(Subspace.zero(2), Subspace.zero(3))

    def test_image_and_preimage(self):
        m = Matrix.from_rows([[1, 0, 0], [0, 0, 0]])
        assert image(m).dim == 1
        w = Subspace.zero(2)
        assert preimage(m, w) == kernel(m)

    @settings(max_examples=40, deadline=None)
    @given(real_matrix(3, 4), real_matrix(2, 4))
    def test_dimension_formula(self, ra, rb):
        a, b = Subspace(4, ra), Subspace(4, rb)
        assert subspace_sum(a, b).dim + subspace_intersection(a, b).dim == a.dim + b.dim


class TestKernels:
    """Both elimination kernels must produce the same spans."""

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.dictionaries(st.integers(0, 6), st.tuples(small, small).filter(any), max_size=4),
                    max_size=6))
    def test_gaussian_rows(self, rows):
        from ccx import _backend

        ranks = {k.BACKEND: k.rank(rows, 7) for k in _backend.kernels()}
        assert len(set(ranks.values())) == 1
        spans = {k.BACKEND: Subspace._from_rows(7, [r for _, r in k.echelon(rows, 7, True)]) for k in _backend.kernels()}
        assert len(set(spans.values())) == 1

    def test_overflow_falls_back(self, backend):
        big = 2 ** 70
        rows = [{0: (big, 0), 1: (1, 0)}, {0: (1, 0), 1: (big, 0)}]
        assert len(row_echelon(rows, 2)) == 2

    def test_null_rows_are_integral(self, backend):
        rows = [{0: (2, 0), 1: (4, 0), 2: (0, 2)}]
        for v in null_rows(rows, 3):
            assert all(isinstance(a, int) and isinstance(b, int) for a, b in v.values())
            total = [0, 0]
            for k, (a, b) in v.items():
                ra, rb = rows[0].get(k, (0, 0))
                total[0] += ra * a - rb * b
                total[1] += ra * b + rb * a
            assert total == [0, 0]

    def test_reported_backend(self, kernel):
        assert kernel.BACKEND in ("cython", "python")
