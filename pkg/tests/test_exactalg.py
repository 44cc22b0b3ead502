from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logblocks.exactalg import (DimensionMismatch, SparseMatrix, SparseVector,
                                Subspace, membership, quotient_dim,
                                span_insert, span_of)


def vec(*values):
    return SparseVector.from_dense([Fraction(v) for v in values])


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)


@st.composite
def vectors(draw, dimension=5):
    entries = draw(st.dictionaries(st.integers(0, dimension - 1), rationals,
                                   max_size=dimension))
    return SparseVector(entries, dimension)


class TestSparseVector:
    def test_drops_zero_entries(self):
        v = SparseVector({0: Fraction(0), 2: Fraction(3)}, 4)
        assert v.entries == {2: Fraction(3)}

    def test_out_of_range_index_rejected(self):
        with pytest.raises(DimensionMismatch):
            SparseVector({5: Fraction(1)}, 3)

    def test_plus_cancels(self):
        v = vec(1, 2, 0)
        assert v.plus(v, Fraction(-1)).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            vec(1, 2).plus(vec(1, 2, 3))

    @given(vectors(), vectors(), rationals)
    def test_plus_is_linear(self, a, b, c):
        lhs = a.plus(b, c).scaled(2)
        rhs = a.scaled(2).plus(b.scaled(2), c)
        assert lhs.entries == rhs.entries


class TestSubspace:
    def test_spec_rank_example(self):
        # five vectors spanning a rank-2 subspace of Q^3
        vs = [vec(1, 0, 1), vec(0, 1, 0), vec(1, 1, 1), vec(2, 1, 2),
              vec(1, -1, 1)]
        space = span_of(vs, 3)
        assert space.rank == 2
        assert quotient_dim(3, space) == 1

    def test_spec_membership_example(self):
        space = span_of([vec(1, 2), vec(1, 3)], 2)
        assert membership(space, vec(0, 1))

    def test_membership_negative(self):
        space = span_of([vec(1, 0, 0), vec(0, 1, 0)], 3)
        assert not membership(space, vec(0, 0, 1))

    def test_echelon_is_canonical(self):
        # insertion order must not change the reduced basis
        vs = [vec(1, 2, 3), vec(0, 1, 1), vec(2, 5, 7)]
        a = span_of(vs, 3)
        b = span_of(reversed(vs), 3)
        assert a.echelon_rows == b.echelon_rows

    def test_pivots_increase_and_normalized(self):
        space = span_of([vec(0, 2, 1), vec(3, 1, 0), vec(1, 1, 1)], 3)
        pivots = list(space.pivots)
        assert pivots == sorted(pivots)
        for row, p in zip(space.echelon_rows, pivots):
            assert row.get(p) == 1
            for other in space.echelon_rows:
                if other is not row:
                    assert other.get(p) == 0

    @given(st.lists(vectors(), max_size=8))
    @settings(max_examples=50, deadline=None)
    def test_inserting_member_is_idempotent(self, vs):
        space = span_of(vs, 5)
        for v in vs:
            assert span_insert(space, v) is space
            assert space.contains(v)

    @given(st.lists(vectors(), max_size=8))
    @settings(max_examples=50, deadline=None)
    def test_rank_bounded_by_ambient(self, vs):
        space = span_of(vs, 5)
        assert 0 <= space.rank <= 5


class TestSparseMatrix:
    def test_identity_apply(self):
        m = SparseMatrix.identity(3)
        v = vec(1, 2, 3)
        assert m.apply(v).entries == v.entries

    def test_compose_matches_sequential_apply(self):
        a = SparseMatrix.from_columns([{0: 1, 1: 2}, {1: 3}], 2)
        b = SparseMatrix.from_columns([{0: 5}, {0: 1, 1: 1}], 2)
        v = vec(1, 1)
        assert a.compose(b).apply(v).entries == a.apply(b.apply(v)).entries

    def test_shape_mismatch(self):
        a = SparseMatrix.from_columns([{0: 1}], 2)
        with pytest.raises(DimensionMismatch):
            a.compose(a)

    def test_plus_and_scaled(self):
        a = SparseMatrix.from_columns([{0: 1}, {1: 1}], 2)
        assert a.plus(a.scaled(-1)).is_zero()
