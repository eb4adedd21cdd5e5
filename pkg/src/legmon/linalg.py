"""Exact linear algebra in small dimension.

Matrices and subspaces over a single exact field, with the four
operations everything else is built from: determinants, kernels,
subspace intersection, and the wedge-normalized solve that pins each
replacement vector u to the scalar multiple of an intersection line
satisfying v1 ∧ v2 = v2 ∧ u in Λ²V.

Subspaces are kept in a canonical reduced echelon form (unit pivots,
pivot columns increasing, pivots the only nonzero entries in their
column), so subspace equality is plain tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .fields import Field, FieldScalar, field_inverse

Vector = tuple[FieldScalar, ...]


class DegeneracyError(Exception):
    """Input is not generic enough for the requested construction."""


class DegenerateNormalization(DegeneracyError):
    """No scalar multiple of the direction satisfies the wedge identity."""


@dataclass(frozen=True)
class Matrix:
    """A dense r×c matrix of scalars over one field, stored by rows."""

    entries: tuple[tuple[FieldScalar, ...], ...]
    field: Field

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows, field: Field) -> "Matrix":
        return cls(tuple(tuple(row) for row in rows), field)

    @classmethod
    def from_columns(cls, columns, field: Field) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if not cols:
            return cls((), field)
        return cls(tuple(zip(*cols, strict=True)), field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        one, zero = field.one(), field.zero()
        return cls(
            tuple(
                tuple(one if i == j else zero for j in range(n)) for i in range(n)
            ),
            field,
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> tuple[Vector, ...]:
        return tuple(zip(*self.entries)) if self.entries else ()

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ocols = other.columns()
        rows = tuple(
            tuple(_dot(row, col) for col in ocols) for row in self.entries
        )
        return Matrix(rows, self.field)


def _dot(u, v) -> FieldScalar:
    it = iter(zip(u, v))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def determinant(m: Matrix) -> FieldScalar:
    """Exact determinant; closed forms for n ≤ 4, elimination beyond."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    e = m.entries
    if n == 0:
        return m.field.one()
    if n == 1:
        return e[0][0]
    if n == 2:
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]
    if n == 3:
        (a, b, c), (d, f, g), (h, i, j) = e
        return a * (f * j - g * i) - b * (d * j - g * h) + c * (d * i - f * h)
    if n == 4:
        return _det4(e)
    return _det_eliminate(m)


def _det4(e) -> FieldScalar:
    # Expansion by 2x2 complementary minors (first two rows vs last two).
    (a, b, c, d), (f, g, h, i), (j, k, l, p), (q, r, s, t) = e
    return (
        (a * g - b * f) * (l * t - p * s)
        - (a * h - c * f) * (k * t - p * r)
        + (a * i - d * f) * (k * s - l * r)
        + (b * h - c * g) * (j * t - p * q)
        - (b * i - d * g) * (j * s - l * q)
        + (c * i - d * h) * (j * r - k * q)
    )


def _det_eliminate(m: Matrix) -> FieldScalar:
    n = m.nrows
    a = [list(row) for row in m.entries]
    det = m.field.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return m.field.zero()
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = field_inverse(a[col][col])
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _rref(rows: list[list[FieldScalar]]) -> tuple[list[list[FieldScalar]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots: list[int] = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field_inverse(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F^n in canonical reduced echelon form.

    `basis` lists the basis vectors (the columns of the canonical n×d
    basis matrix), first pivot topmost.  Construct through `span`; two
    Subspace values are equal iff they are the same subspace.
    """

    ambient: int
    basis: tuple[Vector, ...]
    field: Field

    @classmethod
    def span(cls, vectors, ambient: int, field: Field) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != ambient for v in vectors):
            raise ValueError("spanning vector length differs from ambient dimension")
        rows = [list(v) for v in vectors if any(v)]
        if not rows:
            return cls(ambient, (), field)
        rows, pivots = _rref(rows)
        return cls(ambient, tuple(tuple(r) for r in rows[: len(pivots)]), field)

    @classmethod
    def zero(cls, ambient: int, field: Field) -> "Subspace":
        return cls(ambient, (), field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix.from_columns(self.basis, self.field)

    def contains(self, v: Vector) -> bool:
        w = list(v)
        for b in self.basis:
            piv = next(i for i, x in enumerate(b) if x)
            if w[piv]:
                f = w[piv]
                w = [x - f * y for x, y in zip(w, b)]
        return not any(w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of {x : m·x = 0}."""
    n = m.ncols
    if m.nrows == 0 or n == 0:
        return Subspace(n, tuple(), m.field) if n == 0 else Subspace.span(
            Matrix.identity(n, m.field).entries, n, m.field
        )
    rows, pivots = _rref([list(r) for r in m.entries])
    free = [c for c in range(n) if c not in pivots]
    zero, one = m.field.zero(), m.field.one()
    vecs = []
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        vecs.append(v)
    return Subspace.span(vecs, n, m.field)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient, a.field)
    stacked = Matrix.from_columns(a.basis + b.basis, a.field)
    ker = kernel_basis(stacked)
    da = a.dim
    zero = a.field.zero()
    vecs = []
    for coeffs in ker.basis:
        v = [zero] * a.ambient
        for i in range(da):
            if coeffs[i]:
                v = [x + coeffs[i] * y for x, y in zip(v, a.basis[i])]
        vecs.append(v)
    return Subspace.span(vecs, a.ambient, a.field)


def wedge(v: Vector, w: Vector) -> Vector:
    """Coordinates of v ∧ w in Λ²F^n, index pairs in lexicographic order."""
    return tuple(v[i] * w[j] - v[j] * w[i] for i, j in combinations(range(len(v)), 2))


def wedge_normalize(v1: Vector, v2: Vector, direction: Vector) -> Vector:
    """The unique u = c·direction with v1 ∧ v2 = v2 ∧ u.

    Raises:
        DegenerateNormalization: if v1 ∧ v2 = 0, if direction lies in
            ⟨v2⟩, or if no single scalar matches every Λ² coordinate.
    """
    target = wedge(v1, v2)
    if not any(target):
        raise DegenerateNormalization("v1 and v2 are dependent (v1 wedge v2 = 0)")
    base = wedge(v2, direction)
    if not any(base):
        raise DegenerateNormalization("direction lies in the span of v2")
    k = next(i for i, x in enumerate(base) if x)
    c = target[k] / base[k]
    if any(t != c * z for t, z in zip(target, base)):
        raise DegenerateNormalization(
            "no scalar multiple of direction satisfies the wedge identity"
        )
    return tuple(c * d for d in direction)
