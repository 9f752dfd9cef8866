"""Unit tests for the vectorized mod-p kernels, checked against the scalar code paths"""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.linalg.batched import (
    batched_rank,
    fixed_point_mask,
    inverses,
    matmul_mod,
    matrix_block,
    point_dims,
    projective_block,
    row_space,
)
from src.linalg.enumeration import iter_projective, projective_count
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace, echelonize, space_apply
from src.spaces.construct import VeeSpec, alt_space, model_space, nt_space, p_alt
from src.spaces.spectrum import fixed_point_witness

F3 = FieldDesc.prime(3)
F5 = FieldDesc.prime(5)

SPACES = [
    nt_space(3, F3),
    alt_space(3, F5),
    p_alt(Matrix.from_rows(F3, [[1, 1], [2, 1]])),
    model_space(VeeSpec.from_grams([Matrix.identity(F5, 1), Matrix.diagonal(F5, [1, 2])])),
    MatrixSubspace.span(F3, 3, [Matrix.identity(F3, 3), Matrix.unit(F3, 3, 0, 2)]),
    MatrixSubspace.zero(F3, 2),
]


def all_points(space):
    return projective_block(space.n, space.field.order, 0, projective_count(space.field.order, space.n))


class TestInverses:

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_every_residue(self, p):
        values = np.arange(p)
        inv = inverses(values, p)
        assert inv[0] == 0
        assert ((values[1:] * inv[1:]) % p == 1).all()

    def test_large_prime(self):
        p = 2_147_483_647
        values = np.array([2, 12345, p - 1])
        assert ((values * inverses(values, p)) % p == 1).all()


class TestBlocks:

    @pytest.mark.parametrize("n, q", [(1, 3), (2, 3), (3, 3), (3, 5), (4, 2)])
    def test_projective_block_matches_iteration(self, n, q):
        total = projective_count(q, n)
        block = projective_block(n, q, 0, total)
        assert [tuple(int(v) for v in row) for row in block] == list(iter_projective(n, q))

    def test_projective_block_window(self):
        block = projective_block(3, 5, 7, 19)
        assert [tuple(int(v) for v in row) for row in block] == list(iter_projective(3, 5, 7, 19))

    def test_matrix_block_is_odometer_order(self):
        block = matrix_block(2, 3, 0, 81)
        expected = list(itertools.product(range(3), repeat=4))
        assert [tuple(int(v) for v in m.ravel()) for m in block] == expected
        assert matrix_block(2, 3, 80, 81)[0].tolist() == [[2, 2], [2, 2]]

    def test_matmul_mod(self):
        a = matrix_block(2, 5, 100, 140)
        b = np.array([[1, 4], [3, 2]])
        product = matmul_mod(a, b, 5)
        for m, got in zip(a, product):
            expected = Matrix(F5, 2, 2, tuple(int(v) for v in m.ravel())) @ Matrix.from_rows(F5, b.tolist())
            assert Matrix(F5, 2, 2, tuple(int(v) for v in got.ravel())) == expected


class TestRank:

    @settings(max_examples=30, deadline=None)
    @given(
        st.sampled_from([3, 5, 7]),
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=1, max_value=4),
        st.data(),
    )
    def test_batched_rank_matches_matrix_rank(self, p, rows, cols, data):
        field = FieldDesc.prime(p)
        entries = st.lists(st.integers(min_value=0, max_value=p - 1), min_size=rows * cols, max_size=rows * cols)
        mats = data.draw(st.lists(entries, min_size=1, max_size=8))
        batch = np.array(mats).reshape(len(mats), rows, cols)
        expected = [Matrix(field, rows, cols, tuple(e)).rank() for e in mats]
        assert batched_rank(batch, p).tolist() == expected

    def test_empty_batch(self):
        assert batched_rank(np.zeros((0, 2, 2), dtype=np.int64), 3).size == 0

    def test_row_space_spans_the_rows(self):
        rows = np.array([[1, 2, 0], [2, 1, 0], [0, 0, 1], [1, 2, 1]])
        basis = row_space(rows, 3)
        assert echelonize(F3, 3, basis) == echelonize(F3, 3, rows.tolist())
        assert len(basis) == 2

    def test_row_space_of_nothing(self):
        assert row_space(np.zeros((0, 3), dtype=np.int64), 3) == []


class TestPointScans:

    @pytest.mark.parametrize("space", SPACES)
    def test_point_dims_match_space_apply(self, space):
        points = all_points(space)
        dims = point_dims(space, points)
        for x, d in zip(points, dims):
            assert d == space_apply(space, tuple(int(v) for v in x)).dim

    @pytest.mark.parametrize("space", SPACES)
    def test_fixed_point_mask_matches_witness(self, space):
        points = all_points(space)
        mask = fixed_point_mask(space, points)
        for x, fixed in zip(points, mask):
            x = tuple(int(v) for v in x)
            witness = fixed_point_witness(space, x)
            assert bool(fixed) == (witness is not None)
            if witness is not None:
                assert witness.apply(x) == x
