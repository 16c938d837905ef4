"""Dense matrices over finite fields.

Matrices are immutable; every operation returns a new :class:`FFMatrix`.
Entries are integer codes of the owning :class:`~ametensor.gf.FieldSpec`.
Row/column *positions* are 0-based like any Python sequence, while the
labelled quantities taken from the tensor-network literature (pair slots of
``embed8``, the cofactor tables) use 1-based labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import NotSuperregular
from .gf import FieldElement, FieldSpec


@dataclass(frozen=True)
class FFMatrix:
    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(self.entries[0])
        if any(len(r) != width for r in self.entries):
            raise ValueError("ragged matrix rows")
        q = self.field.order
        if any(not (isinstance(c, int) and 0 <= c < q) for r in self.entries for c in r):
            raise ValueError(f"entries must be codes in [0, {q})")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> FFMatrix:
        """Build from nested sequences of ints/FieldElements (negatives allowed in prime fields)."""
        return cls(field, tuple(tuple(field.code(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> FFMatrix:
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> FFMatrix:
        return cls(field, ((0,) * cols,) * rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i][j]

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.entries[i][j])

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def __matmul__(self, other: FFMatrix) -> FFMatrix:
        return mul(self, other)

    def transpose(self) -> FFMatrix:
        return transpose(self)

    T = property(transpose)

    def det(self) -> int:
        return det(self)

    def inverse(self) -> FFMatrix:
        return inverse(self)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> FFMatrix:
        return FFMatrix(self.field, tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def with_entry(self, i: int, j: int, value) -> FFMatrix:
        rows = self.tolist()
        rows[i][j] = self.field.code(value)
        return FFMatrix.from_rows(self.field, rows)

    def is_identity(self) -> bool:
        return self.is_square and all(
            c == int(i == j) for i, r in enumerate(self.entries) for j, c in enumerate(r)
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(str(c) for c in r) for r in self.entries)


def _check_same_field(a: FFMatrix, b: FFMatrix):
    if a.field != b.field:
        raise ValueError(f"matrices over different fields: {a.field} vs {b.field}")


def mul(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    f = a.field
    bt = list(zip(*b.entries))
    out = []
    for row in a.entries:
        out.append(tuple(f.sum(f.mul(x, y) for x, y in zip(row, col) if x and y) for col in bt))
    return FFMatrix(f, tuple(out))


def transpose(m: FFMatrix) -> FFMatrix:
    return FFMatrix(m.field, tuple(zip(*m.entries)))


def permute_rows(m: FFMatrix, order: Sequence[int]) -> FFMatrix:
    """Row ``i`` of the result is row ``order[i]`` of ``m``."""
    if sorted(order) != list(range(m.rows)):
        raise ValueError(f"{order} is not a permutation of the rows")
    return FFMatrix(m.field, tuple(m.entries[i] for i in order))


def permute_cols(m: FFMatrix, order: Sequence[int]) -> FFMatrix:
    """Column ``j`` of the result is column ``order[j]`` of ``m``."""
    if sorted(order) != list(range(m.cols)):
        raise ValueError(f"{order} is not a permutation of the columns")
    return FFMatrix(m.field, tuple(tuple(r[j] for j in order) for r in m.entries))


def scale_rows(m: FFMatrix, factors: Sequence) -> FFMatrix:
    f = m.field
    codes = [f.code(x) for x in factors]
    return FFMatrix(f, tuple(tuple(f.mul(c, x) for x in r) for c, r in zip(codes, m.entries)))


def scale_cols(m: FFMatrix, factors: Sequence) -> FFMatrix:
    f = m.field
    codes = [f.code(x) for x in factors]
    return FFMatrix(f, tuple(tuple(f.mul(c, x) for c, x in zip(codes, r)) for r in m.entries))


def _require_square(m: FFMatrix):
    if not m.is_square:
        raise ValueError(f"square matrix required, got {m.rows}x{m.cols}")


def _det_rows(f: FieldSpec, rows: list[list[int]]) -> int:
    n = len(rows)
    result = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = f.neg(result)
        pv = rows[col][col]
        result = f.mul(result, pv)
        pinv = f.inv(pv)
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = f.mul(rows[r][col], pinv)
                rows[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[r], rows[col])]
    return result


def det(m: FFMatrix) -> int:
    """Determinant by Gaussian elimination; returns the code of the result."""
    _require_square(m)
    f = m.field
    if m.rows == 1:
        return m.entries[0][0]
    if m.rows == 2:
        (a, b), (c, d) = m.entries
        return f.sub(f.mul(a, d), f.mul(b, c))
    return _det_rows(f, [list(r) for r in m.entries])


def det_laplace(m: FFMatrix) -> int:
    """Cofactor expansion along the first row; slow, used to cross-check :func:`det`."""
    _require_square(m)
    f = m.field
    n = m.rows
    if n == 1:
        return m.entries[0][0]
    total = 0
    for j in range(n):
        a = m.entries[0][j]
        if not a:
            continue
        minor = det_laplace(m.submatrix(range(1, n), [c for c in range(n) if c != j]))
        term = f.mul(a, minor)
        total = f.sub(total, term) if j % 2 else f.add(total, term)
    return total


def det_leibniz(m: FFMatrix) -> int:
    """Sum over permutations; the brute-force definition of the determinant."""
    _require_square(m)
    f = m.field
    n = m.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = f.mul(term, m.entries[i][j])
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total = f.sub(total, term) if inversions % 2 else f.add(total, term)
    return total


def minor(m: FFMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    return det(m.submatrix(rows, cols))


def iter_minors(m: FFMatrix) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Yield ``(rows, cols, value)`` for every square minor.

    Order: increasing size, then row subsets and column subsets
    lexicographically.
    """
    for size in range(1, min(m.shape) + 1):
        for rows in itertools.combinations(range(m.rows), size):
            for cols in itertools.combinations(range(m.cols), size):
                yield rows, cols, minor(m, rows, cols)


def first_vanishing_minor(m: FFMatrix) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Row/column positions (0-based) of the first zero minor, or None."""
    _require_square(m)
    for r, c in ((i, j) for i in range(m.rows) for j in range(m.cols)):
        if not m.entries[r][c]:
            return (r,), (c,)
    for rows, cols, value in iter_minors(m):
        if len(rows) > 1 and not value:
            return rows, cols
    return None


def all_minors_nonzero(m: FFMatrix) -> bool:
    """Superregularity: every square minor of every size is nonzero."""
    return first_vanishing_minor(m) is None


is_superregular = all_minors_nonzero


def require_superregular(m: FFMatrix):
    hit = first_vanishing_minor(m)
    if hit is not None:
        raise NotSuperregular(*hit)


def inverse(m: FFMatrix) -> FFMatrix:
    _require_square(m)
    f = m.field
    n = m.rows
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pinv = f.inv(aug[col][col])
        aug[col] = [f.mul(pinv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(aug[r], aug[col])]
    return FFMatrix(f, tuple(tuple(r[n:]) for r in aug))


def cauchy(field: FieldSpec, xs: Sequence, ys: Sequence) -> FFMatrix:
    """Matrix with entries 1/(x_i - y_j); all x's and y's must be distinct."""
    xc = [field.code(x) for x in xs]
    yc = [field.code(y) for y in ys]
    if len(set(xc + yc)) != len(xc) + len(yc):
        raise ValueError("Cauchy parameters must be pairwise distinct")
    return FFMatrix(field, tuple(tuple(field.inv(field.sub(x, y)) for y in yc) for x in xc))


def cauchy_det(field: FieldSpec, xs: Sequence, ys: Sequence) -> int:
    """Closed-form determinant of the square Cauchy matrix."""
    f = field
    xc = [f.code(x) for x in xs]
    yc = [f.code(y) for y in ys]
    num = 1
    for i in range(len(xc)):
        for j in range(i + 1, len(xc)):
            num = f.mul(num, f.mul(f.sub(xc[i], xc[j]), f.sub(yc[j], yc[i])))
    den = 1
    for x in xc:
        for y in yc:
            den = f.mul(den, f.sub(x, y))
    return f.div(num, den)


_SLOTS6 = {"A": (0, 1), "B": (0, 2), "C": (1, 2)}


def _embed(gate: FFMatrix, positions: tuple[int, int], size: int) -> FFMatrix:
    if gate.shape != (2, 2):
        raise ValueError(f"gate must be 2x2, got {gate.rows}x{gate.cols}")
    rows = [[int(i == j) for j in range(size)] for i in range(size)]
    for r, pr in enumerate(positions):
        for c, pc in enumerate(positions):
            rows[pr][pc] = gate.entries[r][c]
    return FFMatrix(gate.field, tuple(tuple(r) for r in rows))


def embed6(gate: FFMatrix, slot: str) -> FFMatrix:
    """Embed a 2x2 gate into 3x3: slot A acts on (1,2), B on (1,3), C on (2,3)."""
    try:
        positions = _SLOTS6[slot]
    except KeyError:
        raise ValueError(f"slot must be one of A, B, C; got {slot!r}") from None
    return _embed(gate, positions, 3)


def embed8(gate: FFMatrix, pair: tuple[int, int], size: int = 4) -> FFMatrix:
    """Identity of the given size with rows/cols ``j`` and ``k`` (1-based) replaced by the gate."""
    j, k = pair
    if not 1 <= j < k <= size:
        raise ValueError(f"invalid pair {pair} for size {size}")
    return _embed(gate, (j - 1, k - 1), size)


@dataclass(frozen=True)
class CofactorTable:
    """First minors of a 4x4 matrix, keyed by 1-based ``(i, j)``.

    ``m[i, j]`` is the determinant with row i and column j deleted,
    ``M[i, j] = g_ij * m[i, j]`` and ``N[i, j]`` (i < j) the 2x2 principal
    minor on rows/columns i and j.
    """

    m: dict
    M: dict
    N: dict


def cofactors(g: FFMatrix) -> CofactorTable:
    if g.shape != (4, 4):
        raise ValueError(f"cofactor table needs a 4x4 matrix, got {g.rows}x{g.cols}")
    f = g.field
    idx = range(4)
    m, big_m = {}, {}
    for i in idx:
        for j in idx:
            val = det(g.submatrix([r for r in idx if r != i], [c for c in idx if c != j]))
            m[i + 1, j + 1] = val
            big_m[i + 1, j + 1] = f.mul(g[i, j], val)
    n = {
        (i + 1, j + 1): det(g.submatrix([i, j], [i, j]))
        for i, j in itertools.combinations(idx, 2)
    }
    return CofactorTable(m, big_m, n)
