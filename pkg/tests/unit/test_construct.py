"""Unit tests for the model-space builders"""
import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import DimensionMismatchError, MixedFieldsError, SingularMatrixError
from src.linalg.field import FieldDesc, Scalar
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace
from src.spaces.construct import (
    VeeSpec,
    affine_model,
    affine_translate,
    alt_space,
    companion_line,
    model_space,
    nt_space,
    p_alt,
    vee,
)

F3 = FieldDesc.prime(3)


@st.composite
def spaces_f3(draw):
    """Span of up to three random n x n matrices over F_3, n in 1..3"""
    n = draw(st.integers(min_value=1, max_value=3))
    entries = st.lists(st.integers(min_value=0, max_value=2), min_size=n * n, max_size=n * n)
    matrices = draw(st.lists(entries.map(lambda e: Matrix(F3, n, n, tuple(e))), max_size=3))
    return MatrixSubspace.span(F3, n, matrices)


def summands(space, n):
    """Diagonal blocks of a block upper triangular space split after row n"""
    size = space.n
    upper = MatrixSubspace.span(space.field, n, [m.submatrix(0, n, 0, n) for m in space.basis])
    lower = MatrixSubspace.span(space.field, size - n, [m.submatrix(n, size, n, size) for m in space.basis])
    return upper, lower


class TestBasicSpaces:

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_dimensions(self, f3, n):
        assert alt_space(n, f3).dim == n * (n - 1) // 2
        assert nt_space(n, f3).dim == n * (n - 1) // 2

    def test_alt_basis_is_alternate(self, f2):
        assert all(m.is_alternate() for m in alt_space(3, f2).basis)

    def test_nt_basis_is_strictly_upper(self, f5):
        assert all(m.is_strictly_upper() for m in nt_space(3, f5).basis)

    def test_p_alt(self, f3):
        assert p_alt(Matrix.identity(f3, 3)) == alt_space(3, f3)
        assert p_alt(Matrix.scalar_matrix(f3, 3, 2)) == alt_space(3, f3)
        p = Matrix.from_rows(f3, [[1, 1], [2, 1]])
        assert p_alt(p).contains(p @ Matrix.from_rows(f3, [[0, 1], [2, 0]]))

    def test_p_alt_rejects_singular(self, f3):
        with pytest.raises(SingularMatrixError):
            p_alt(Matrix.from_rows(f3, [[1, 1], [1, 1]]))
        with pytest.raises(DimensionMismatchError):
            p_alt(Matrix(f3, 1, 2, (1, 0)))


class TestVee:

    def test_vee_dimension(self, f3):
        v = vee(alt_space(2, f3), alt_space(3, f3))
        assert v.n == 5
        assert v.dim == 1 + 3 + 2 * 3

    def test_vee_of_points_is_nt(self, f3):
        point = alt_space(1, f3)
        assert vee(vee(point, point), point) == nt_space(3, f3)

    def test_model_space_all_ones(self, f3):
        assert model_space(VeeSpec.from_sizes(f3, [1, 1, 1])) == nt_space(3, f3)

    def test_model_space_is_maximal_dimension(self, f5):
        space = model_space(VeeSpec.from_sizes(f5, [2, 1, 2]))
        assert space.n == 5
        assert space.dim == 10

    @settings(max_examples=40, deadline=None)
    @given(spaces_f3(), spaces_f3())
    def test_vee_recovers_summands(self, upper, lower):
        n, p = upper.n, lower.n
        space = vee(upper, lower)
        assert space.dim == upper.dim + lower.dim + n * p
        assert summands(space, n) == (upper, lower)
        for m in space.basis:
            assert m.submatrix(n, n + p, 0, n).is_zero()
        for i in range(n):
            for j in range(p):
                assert space.contains(Matrix.unit(F3, n + p, i, n + j))

    def test_vee_mixed_fields(self, f3, f5):
        with pytest.raises(MixedFieldsError):
            vee(alt_space(2, f3), alt_space(2, f5))


class TestVeeSpec:

    def test_properties(self, f3):
        spec = VeeSpec.from_grams([Matrix.identity(f3, 2), Matrix.identity(f3, 1)])
        assert spec.sizes == (2, 1)
        assert spec.n == 3
        assert spec.field == f3

    def test_empty(self):
        with pytest.raises(DimensionMismatchError):
            VeeSpec(())

    def test_size_mismatch(self, f3):
        with pytest.raises(DimensionMismatchError):
            VeeSpec(((2, Matrix.identity(f3, 1)),))

    def test_singular_gram(self, f3):
        with pytest.raises(SingularMatrixError):
            VeeSpec(((2, Matrix.zeros(f3, 2)),))

    def test_mixed_fields(self, f3, f5):
        with pytest.raises(MixedFieldsError):
            VeeSpec.from_grams([Matrix.identity(f3, 1), Matrix.identity(f5, 1)])


class TestCompanionAndAffine:

    def test_companion_line(self, f3):
        line = companion_line(0, 2, f3)
        assert line == MatrixSubspace.span(f3, 2, [Matrix.from_rows(f3, [[0, 2], [1, 0]])])

    def test_companion_from_scalars(self, f5):
        line = companion_line(Scalar(f5, 1), Scalar(f5, 3))
        assert line.field == f5
        assert line.dim == 1

    def test_companion_needs_field(self):
        with pytest.raises(MixedFieldsError):
            companion_line(0, 1)

    def test_affine_models(self, f3):
        model = affine_model(VeeSpec.from_sizes(f3, [1, 1]))
        assert model.contains(Matrix.identity(f3, 2))
        assert model.translation == nt_space(2, f3)
        assert affine_translate(nt_space(2, f3)) == model
