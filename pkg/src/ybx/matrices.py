"""Dense exact matrices over Q(i) and the row-reduction kernel.

Everything downstream (Jordan assembly, anticommutant bases, the solver, the
oracles) is built on the handful of primitives here: multiplication, reduced
row echelon form, null spaces, and inversion.  All results are exact; pivot
choice is simply the first nonzero entry in column order, since magnitude is
meaningless over an exact field.  Matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, SingularMatrix
from .scalars import ONE, ZERO, GaussianRational, as_gaussian


@dataclass(frozen=True, slots=True)
class ExactMatrix:
    """A rows x cols matrix of GaussianRational, stored row-major."""

    rows: int
    cols: int
    entries: tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries for {self.rows}x{self.cols}, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        """Build from nested sequences; entries may be int/Fraction/str/scalar."""
        grid = [[as_gaussian(x) for x in row] for row in rows]
        if not grid or not grid[0]:
            raise ValueError("matrix rows must be nonempty")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("ragged rows in matrix literal")
        return cls(len(grid), width, tuple(x for row in grid for x in row))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        return cls.from_rows([[v] for v in values])

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {key} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[GaussianRational, ...]:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch("add", self.shape, other.shape)
        return ExactMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch("sub", self.shape, other.shape)
        return ExactMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, scalar) -> "ExactMatrix":
        s = as_gaussian(scalar)
        return ExactMatrix(self.rows, self.cols, tuple(a * s for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "\n".join("  ".join(str(x) for x in self.row(i)) for i in range(self.rows))


class RrefResult(NamedTuple):
    reduced: ExactMatrix
    rank: int
    pivot_columns: tuple[int, ...]


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact matrix product; raises DimensionMismatch on shape conflict."""
    if a.cols != b.rows:
        raise DimensionMismatch("mat_mul", a.shape, b.shape)
    b_cols = [b.col(j) for j in range(b.cols)]
    out: list[GaussianRational] = []
    for i in range(a.rows):
        arow = a.row(i)
        for bc in b_cols:
            acc = ZERO
            for x, y in zip(arow, bc):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
    return ExactMatrix(a.rows, b.cols, tuple(out))


def mat_pow(m: ExactMatrix, k: int) -> ExactMatrix:
    if not m.is_square():
        raise DimensionMismatch("mat_pow", m.shape, m.shape)
    if k < 0:
        raise ValueError("negative matrix power")
    out = ExactMatrix.identity(m.rows)
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def _reduce_rows(work: list[list[GaussianRational]], width: int) -> tuple[int, list[int]]:
    """In-place Gauss-Jordan over the first `width` columns; returns rank, pivots."""
    n_rows = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = None
        for i in range(r, n_rows):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].reciprocal()
        work[r] = [x * inv if x else x for x in work[r]]
        for i in range(n_rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y if y else x for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return r, pivots


def rref(m: ExactMatrix) -> RrefResult:
    """Exact reduced row-echelon form with rank and 0-indexed pivot columns."""
    work = [list(m.row(i)) for i in range(m.rows)]
    rank, pivots = _reduce_rows(work, m.cols)
    return RrefResult(ExactMatrix.from_rows(work), rank, tuple(pivots))


def null_space_basis(m: ExactMatrix) -> list[ExactMatrix]:
    """Basis column vectors of the exact kernel of m.

    Each vector has one pivot-free coordinate set to 1, the rest filled by
    back-substitution; the list has exactly cols - rank elements, in order of
    the free columns.
    """
    reduced, rank, pivots = rref(m)
    pivot_set = set(pivots)
    basis: list[ExactMatrix] = []
    for j in range(m.cols):
        if j in pivot_set:
            continue
        vec = [ZERO] * m.cols
        vec[j] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r, j]
        basis.append(ExactMatrix.column(vec))
    return basis


def mat_inverse(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse; raises SingularMatrix (carrying the rank) if none exists."""
    if not m.is_square():
        raise DimensionMismatch("mat_inverse", m.shape, m.shape)
    n = m.rows
    work = [
        list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)
    ]
    rank, _pivots = _reduce_rows(work, n)
    if rank < n:
        raise SingularMatrix(rank, n)
    return ExactMatrix.from_rows([row[n:] for row in work])


def block_diag(blocks: Iterable[ExactMatrix]) -> ExactMatrix:
    """Direct sum of square or rectangular blocks along the diagonal."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("block_diag of no blocks")
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    grid = [[ZERO] * total_c for _ in range(total_r)]
    r_off = c_off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                grid[r_off + i][c_off + j] = b[i, j]
        r_off += b.rows
        c_off += b.cols
    return ExactMatrix.from_rows(grid)


def permutation_matrix(position_map: Sequence[int]) -> ExactMatrix:
    """P with P[old, new] = 1 where position_map[new] = old.

    For square M, (P^T M P)[a, b] = M[position_map[a], position_map[b]], and
    column new of M*P is column position_map[new] of M.
    """
    n = len(position_map)
    if sorted(position_map) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    grid = [[ZERO] * n for _ in range(n)]
    for new, old in enumerate(position_map):
        grid[old][new] = ONE
    return ExactMatrix.from_rows(grid)


def first_nonzero_entry(m: ExactMatrix) -> tuple[int, int, GaussianRational] | None:
    """Row-major position and value of the first nonzero entry, if any."""
    for i in range(m.rows):
        for j in range(m.cols):
            v = m[i, j]
            if v:
                return (i, j, v)
    return None
