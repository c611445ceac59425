"""Exact linear algebra over arbitrary-precision rationals.

Dense matrices of :class:`fractions.Fraction` entries, unique reduced row
echelon forms, nullspaces, linear solves, and canonical subspace arithmetic.
Everything downstream (structure constants, derivation oracles, theorem
checks) reduces to these operations, so they are exact and deterministic by
construction: equal subspaces have bit-identical canonical bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Q = Fraction

Vector = tuple[Q, ...]

__all__ = [
    "Q",
    "Matrix",
    "Subspace",
    "rref",
    "nullspace",
    "solve",
    "subspace_sum",
    "subspace_intersect",
    "contains",
    "is_direct_sum",
    "vec",
    "unit_vector",
]


def vec(values) -> Vector:
    """Coerce an iterable of numbers into a tuple of Fractions."""
    return tuple(Q(v) for v in values)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


class Matrix:
    """Dense rows x cols matrix with Fraction entries, row-major, immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(Q(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"need {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, row_lists, cols: int | None = None) -> Matrix:
        row_lists = [tuple(r) for r in row_lists]
        if cols is None:
            if not row_lists:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(row_lists[0])
        flat = []
        for r in row_lists:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(len(row_lists), cols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> Q:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j :: self.cols]

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def mul_vec(self, v) -> Vector:
        v = tuple(v)
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum((self.entries[base + j] * v[j] for j in range(self.cols)), Q(0)))
        return tuple(out)

    def __mul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        cols = [other.col(j) for j in range(other.cols)]
        flat = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                flat.append(sum((a * b for a, b in zip(r, c)), Q(0)))
        return Matrix(self.rows, other.cols, flat)

    def __add__(self, other: Matrix) -> Matrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, a) -> Matrix:
        a = Q(a)
        return Matrix(self.rows, self.cols, [a * e for e in self.entries])

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def tolist(self) -> list[list[Q]]:
        return [list(self.row(i)) for i in range(self.rows)]


class _RowReducer:
    """Incremental fraction-free elimination keeping rows fully reduced.

    Rows are sparse dicts col -> int, kept primitive (content 1, positive
    pivot). Elimination uses integer cross-multiplication, so no rational
    arithmetic happens until the final normalization divides each row by its
    pivot. Rows are mutually reduced at all times (each pivot column appears
    in exactly one row), which keeps fill-in bounded by the number of
    non-pivot columns and makes the extracted result the unique RREF of the
    fed rows, independent of feed order.
    """

    __slots__ = ("ncols", "pivot_rows", "col_index")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, int]] = {}
        self.col_index: dict[int, set[int]] = {}

    @staticmethod
    def _reduce_content(row: dict[int, int]) -> None:
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g > 1:
            for c in row:
                row[c] //= g

    @staticmethod
    def _combine(target: dict[int, int], prow: dict[int, int], c: int) -> None:
        # target := prow[c] * target - target[c] * prow, entry at c cancels
        a = target.pop(c)
        b = prow[c]
        if b != 1:
            for col in target:
                target[col] *= b
        for col, v in prow.items():
            if col == c:
                continue
            nv = target.get(col, 0) - a * v
            if nv:
                target[col] = nv
            else:
                target.pop(col, None)
        _RowReducer._reduce_content(target)

    def add_row(self, row) -> bool:
        """Fold one row in; True if it increased the rank.

        Accepts a mapping col -> value (int or Fraction); denominators are
        cleared up front.
        """
        den = 1
        for v in row.values():
            if v:
                d = Q(v).denominator
                den = den * d // gcd(den, d)
        work: dict[int, int] = {}
        for c, v in row.items():
            if v:
                q = Q(v)
                work[c] = q.numerator * (den // q.denominator)
        for c in sorted(work.keys() & self.pivot_rows.keys()):
            if c in work:
                self._combine(work, self.pivot_rows[c], c)
        if not work:
            return False
        piv = min(work)
        self._reduce_content(work)
        if work[piv] < 0:
            for c in work:
                work[c] = -work[c]
        for other_piv in list(self.col_index.get(piv, ())):
            other = self.pivot_rows[other_piv]
            before = set(other)
            self._combine(other, work, piv)
            after = set(other)
            for c in before - after:
                self.col_index[c].discard(other_piv)
            for c in after - before:
                self.col_index.setdefault(c, set()).add(other_piv)
        self.pivot_rows[piv] = work
        for c in work:
            self.col_index.setdefault(c, set()).add(piv)
        return True

    def add_dense_row(self, values) -> bool:
        return self.add_row({j: v for j, v in enumerate(values) if v})

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)

    def rref_sparse(self) -> list[dict[int, Q]]:
        """Rows of the RREF (pivot entries normalized to 1), in pivot order."""
        out = []
        for piv in sorted(self.pivot_rows):
            r = self.pivot_rows[piv]
            pv = r[piv]
            out.append({c: Q(v, pv) for c, v in r.items()})
        return out

    def rref_dense(self) -> list[Vector]:
        dense = []
        for r in self.rref_sparse():
            dense.append(tuple(r.get(j, Q(0)) for j in range(self.ncols)))
        return dense


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Unique reduced row echelon form of m, with rank and pivot columns.

    The returned matrix has the shape of m (zero rows padded at the bottom).
    """
    red = _RowReducer(m.cols)
    for i in range(m.rows):
        red.add_dense_row(m.row(i))
    rows = red.rref_dense()
    zero = tuple(Q(0) for _ in range(m.cols))
    while len(rows) < m.rows:
        rows.append(zero)
    flat = [e for r in rows for e in r]
    return Matrix(m.rows, m.cols, flat), red.rank, red.pivots()


class Subspace:
    """A linear subspace, stored as its unique RREF basis.

    Basis rows are nonzero with strictly increasing pivot columns, pivot
    entries equal to 1, and pivot columns zero elsewhere, so two subspaces
    are equal exactly when their basis matrices are equal entrywise.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix, _canonical: bool = False):
        if basis.cols != ambient_dim:
            raise ValueError("basis width does not match ambient dimension")
        if not _canonical:
            red = _RowReducer(ambient_dim)
            for i in range(basis.rows):
                red.add_dense_row(basis.row(i))
            rows = red.rref_dense()
            basis = Matrix(len(rows), ambient_dim, [e for r in rows for e in r])
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors) -> Subspace:
        red = _RowReducer(ambient_dim)
        for v in vectors:
            red.add_dense_row(v)
        rows = red.rref_dense()
        m = Matrix(len(rows), ambient_dim, [e for r in rows for e in r])
        return cls(ambient_dim, m, _canonical=True)

    @classmethod
    def from_sparse(cls, ambient_dim: int, sparse_vectors) -> Subspace:
        red = _RowReducer(ambient_dim)
        for v in sparse_vectors:
            red.add_row(v)
        rows = red.rref_dense()
        m = Matrix(len(rows), ambient_dim, [e for r in rows for e in r])
        return cls(ambient_dim, m, _canonical=True)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix(0, ambient_dim, ()), _canonical=True)

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim), _canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> list[int]:
        out = []
        for i in range(self.basis.rows):
            r = self.basis.row(i)
            out.append(next(j for j, e in enumerate(r) if e != 0))
        return out

    def vectors(self) -> list[Vector]:
        return self.basis.row_list()

    def coordinates_of(self, v) -> Vector | None:
        """Coordinates of v in the canonical basis, or None if v is outside.

        Because the basis is in RREF, the coordinate along row i is just the
        entry of v at that row's pivot column.
        """
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        coords = tuple(v[p] for p in self.pivots())
        residual = list(v)
        for c, row in zip(coords, self.basis.row_list()):
            if c:
                for j, e in enumerate(row):
                    if e:
                        residual[j] -= c * e
        if any(residual):
            return None
        return coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __le__(self, other: Subspace) -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return all(contains(other, v) for v in self.vectors())

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def nullspace(m: Matrix) -> Subspace:
    """Canonical basis of the kernel {v : m v = 0}."""
    red = _RowReducer(m.cols)
    for i in range(m.rows):
        red.add_dense_row(m.row(i))
    return _nullspace_of_reducer(red)


def nullspace_of_rows(ncols: int, sparse_rows) -> Subspace:
    """Kernel of a system given as an iterable of sparse rows (col -> value)."""
    red = _RowReducer(ncols)
    for row in sparse_rows:
        red.add_row(row)
    return _nullspace_of_reducer(red)


def _nullspace_of_reducer(red: _RowReducer) -> Subspace:
    pivots = red.pivots()
    pivset = set(pivots)
    rows = red.rref_sparse()
    free = [c for c in range(red.ncols) if c not in pivset]
    vectors = []
    for f in free:
        v = {f: Q(1)}
        for p, row in zip(pivots, rows):
            e = row.get(f)
            if e:
                v[p] = -e
        vectors.append(v)
    return Subspace.from_sparse(red.ncols, vectors)


def solve(m: Matrix, b) -> Vector | None:
    """Some x with m x = b (free variables set to zero), or None if inconsistent."""
    b = vec(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = m.cols
    red = _RowReducer(m.cols + 1)
    for i in range(m.rows):
        row = {j: e for j, e in enumerate(m.row(i)) if e}
        if b[i]:
            row[aug] = b[i]
        red.add_row(row)
    pivots = red.pivots()
    if aug in pivots:
        return None
    x = [Q(0)] * m.cols
    for p, row in zip(pivots, red.rref_sparse()):
        x[p] = row.get(aug, Q(0))
    return tuple(x)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Subspace.from_vectors(a.ambient_dim, a.vectors() + b.vectors())


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, via the kernel of the stacked-basis system.

    A vector is in both spaces iff it is sum(lam_i a_i) = sum(mu_j b_j); the
    coefficient pairs (lam, mu) form the kernel of [A^T | -B^T].
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    n = a.ambient_dim
    avecs = a.vectors()
    bvecs = b.vectors()
    rows = []
    for i in range(n):
        row = {}
        for k, v in enumerate(avecs):
            if v[i]:
                row[k] = v[i]
        for k, v in enumerate(bvecs):
            if v[i]:
                row[a.dim + k] = -v[i]
        if row:
            rows.append(row)
    ker = nullspace_of_rows(a.dim + b.dim, rows)
    out = []
    for lam in ker.vectors():
        w = [Q(0)] * n
        for k, v in enumerate(avecs):
            if lam[k]:
                for j, e in enumerate(v):
                    if e:
                        w[j] += lam[k] * e
        out.append(tuple(w))
    return Subspace.from_vectors(n, out)


def contains(a: Subspace, v) -> bool:
    """True iff v lies in a (exact residual after one elimination pass)."""
    v = vec(v)
    if len(v) != a.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    residual = list(v)
    for p, row in zip(a.pivots(), a.basis.row_list()):
        c = residual[p]
        if c:
            for j, e in enumerate(row):
                if e:
                    residual[j] -= c * e
    return not any(residual)


def is_direct_sum(parts, whole: Subspace) -> bool:
    """True iff the parts are independent and together span the whole space."""
    parts = list(parts)
    for p in parts:
        if p.ambient_dim != whole.ambient_dim:
            raise ValueError("ambient dimensions differ")
    if sum(p.dim for p in parts) != whole.dim:
        return False
    total = Subspace.zero(whole.ambient_dim)
    for p in parts:
        total = subspace_sum(total, p)
    return total == whole
