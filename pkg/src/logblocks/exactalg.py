"""Exact rational sparse linear algebra: spans, ranks, membership.

Scalars are ``fractions.Fraction`` throughout (arbitrary precision, always
reduced, positive denominator).  Subspaces are kept in reduced row-echelon
form, which is canonical: the echelon basis depends only on the subspace,
not on the insertion order of its generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class DimensionMismatch(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SparseVector:
    """Finite map basis-index -> nonzero Fraction, inside a fixed ambient."""

    entries: dict
    dimension: int

    def __post_init__(self):
        clean = {}
        for i, v in self.entries.items():
            v = _as_fraction(v)
            if v != 0:
                if not (0 <= i < self.dimension):
                    raise DimensionMismatch(
                        f"index {i} outside ambient dimension {self.dimension}")
                clean[i] = v
        object.__setattr__(self, "entries", clean)

    @staticmethod
    def zero(dimension: int) -> "SparseVector":
        return SparseVector({}, dimension)

    @staticmethod
    def unit(i: int, dimension: int) -> "SparseVector":
        return SparseVector({i: Fraction(1)}, dimension)

    @staticmethod
    def from_dense(values, dimension=None) -> "SparseVector":
        values = list(values)
        n = dimension if dimension is not None else len(values)
        return SparseVector({i: v for i, v in enumerate(values)}, n)

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, i: int) -> Fraction:
        return self.entries.get(i, Fraction(0))

    def scaled(self, c) -> "SparseVector":
        c = _as_fraction(c)
        if c == 0:
            return SparseVector.zero(self.dimension)
        return SparseVector({i: c * v for i, v in self.entries.items()},
                            self.dimension)

    def plus(self, other: "SparseVector", c=Fraction(1)) -> "SparseVector":
        """self + c*other."""
        if other.dimension != self.dimension:
            raise DimensionMismatch("vector dimensions differ")
        c = _as_fraction(c)
        out = dict(self.entries)
        for i, v in other.entries.items():
            w = out.get(i, Fraction(0)) + c * v
            if w == 0:
                out.pop(i, None)
            else:
                out[i] = w
        return SparseVector(out, self.dimension)

    def leading_index(self):
        return min(self.entries) if self.entries else None

    def to_dense(self):
        return [self.get(i) for i in range(self.dimension)]


@dataclass(frozen=True)
class Subspace:
    """Reduced row-echelon basis of a subspace of Q^n.

    Pivot columns strictly increase, pivot entries are 1, and every pivot
    column is zero in the other rows.
    """

    echelon_rows: tuple
    ambient_dimension: int
    _pivots: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._pivots is None:
            object.__setattr__(
                self, "_pivots",
                tuple(r.leading_index() for r in self.echelon_rows))

    @staticmethod
    def empty(ambient_dimension: int) -> "Subspace":
        return Subspace((), ambient_dimension)

    @property
    def rank(self) -> int:
        return len(self.echelon_rows)

    @property
    def pivots(self) -> tuple:
        return self._pivots

    def reduce(self, v: SparseVector) -> SparseVector:
        """Residual of v after elimination against the echelon rows."""
        if v.dimension != self.ambient_dimension:
            raise DimensionMismatch("ambient dimensions differ")
        for row, p in zip(self.echelon_rows, self._pivots):
            c = v.get(p)
            if c != 0:
                v = v.plus(row, -c)
        return v

    def contains(self, v: SparseVector) -> bool:
        return self.reduce(v).is_zero()


def span_insert(space: Subspace, v: SparseVector) -> Subspace:
    """Reduced echelon basis of span(space + {v})."""
    r = space.reduce(v)
    if r.is_zero():
        return space
    p = r.leading_index()
    r = r.scaled(1 / r.get(p))
    rows = []
    inserted = False
    for row, q in zip(space.echelon_rows, space.pivots):
        if not inserted and p < q:
            rows.append(r)
            inserted = True
        c = row.get(p)
        rows.append(row.plus(r, -c) if c != 0 else row)
    if not inserted:
        rows.append(r)
    return Subspace(tuple(rows), space.ambient_dimension)


def span_of(vectors, ambient_dimension: int) -> Subspace:
    space = Subspace.empty(ambient_dimension)
    for v in vectors:
        space = span_insert(space, v)
    return space


def membership(space: Subspace, v: SparseVector) -> bool:
    return space.contains(v)


def quotient_dim(ambient_dimension: int, image: Subspace) -> int:
    if image.ambient_dimension != ambient_dimension:
        raise DimensionMismatch("ambient dimensions differ")
    return ambient_dimension - image.rank


@dataclass(frozen=True)
class SparseMatrix:
    """Column-sparse exact matrix: cols[j] maps row index -> Fraction."""

    cols: tuple
    nrows: int
    ncols: int

    @staticmethod
    def from_columns(columns, nrows: int) -> "SparseMatrix":
        cols = tuple({i: _as_fraction(v) for i, v in col.items() if v != 0}
                     for col in columns)
        return SparseMatrix(cols, nrows, len(cols))

    @staticmethod
    def zero(nrows: int, ncols: int) -> "SparseMatrix":
        return SparseMatrix(tuple({} for _ in range(ncols)), nrows, ncols)

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(tuple({i: Fraction(1)} for i in range(n)), n, n)

    def entry(self, i: int, j: int) -> Fraction:
        return self.cols[j].get(i, Fraction(0))

    def apply(self, v: SparseVector) -> SparseVector:
        if v.dimension != self.ncols:
            raise DimensionMismatch("matrix/vector shapes differ")
        out = {}
        for j, c in v.entries.items():
            for i, a in self.cols[j].items():
                w = out.get(i, Fraction(0)) + c * a
                if w == 0:
                    out.pop(i, None)
                else:
                    out[i] = w
        return SparseVector(out, self.nrows)

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if other.nrows != self.ncols:
            raise DimensionMismatch("matrix shapes differ")
        cols = []
        for col in other.cols:
            out = {}
            for j, c in col.items():
                for i, a in self.cols[j].items():
                    w = out.get(i, Fraction(0)) + c * a
                    if w == 0:
                        out.pop(i, None)
                    else:
                        out[i] = w
            cols.append(out)
        return SparseMatrix(tuple(cols), self.nrows, other.ncols)

    def scaled(self, c) -> "SparseMatrix":
        c = _as_fraction(c)
        if c == 0:
            return SparseMatrix.zero(self.nrows, self.ncols)
        return SparseMatrix(tuple({i: c * v for i, v in col.items()}
                                  for col in self.cols),
                            self.nrows, self.ncols)

    def plus(self, other: "SparseMatrix", c=Fraction(1)) -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix shapes differ")
        c = _as_fraction(c)
        cols = []
        for a, b in zip(self.cols, other.cols):
            out = dict(a)
            for i, v in b.items():
                w = out.get(i, Fraction(0)) + c * v
                if w == 0:
                    out.pop(i, None)
                else:
                    out[i] = w
            cols.append(out)
        return SparseMatrix(tuple(cols), self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and self.nrows == other.nrows and self.ncols == other.ncols
                and all(a == b for a, b in zip(self.cols, other.cols)))

    def __hash__(self):
        return hash((self.nrows, self.ncols,
                     tuple(tuple(sorted(c.items())) for c in self.cols)))
