"""Jordan block structure: specs, assembly, validation, and exact computation.

A JordanSpec records block sizes grouped by eigenvalue.  The canonical
layout puts the zero-eigenvalue group first and the remaining groups in
lexicographic (re, im) order, sizes non-increasing inside each group; that
fixes one coordinate frame in which the solver's leading-block structure is
deterministic.  Specs in any other order are accepted and can be
canonicalized, with the block permutation reported so similarity data can be
adjusted.

jordan_form computes an exact Jordan decomposition, but only for matrices
whose complete distinct eigenvalue list is supplied by the caller; exact
root finding is out of scope here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DimensionMismatch,
    IncompleteSpectrum,
    NotAnEigenvalue,
    SimilarityMismatch,
    SingularMatrix,
)
from .matrices import ExactMatrix, mat_inverse, mat_mul, null_space_basis, permutation_matrix, rref
from .scalars import ONE, ZERO, GaussianRational, as_gaussian


@dataclass(frozen=True, slots=True)
class JordanBlockSpec:
    """One upper-bidiagonal block: `size` copies of `eigenvalue` on the diagonal."""

    eigenvalue: GaussianRational
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"block size must be >= 1, got {self.size}")


def _group_key(eigenvalue: GaussianRational):
    return (bool(eigenvalue), *eigenvalue.sort_key())


@dataclass(frozen=True, slots=True)
class JordanSpec:
    """Eigenvalue-grouped Jordan block sizes, in a definite layout order."""

    groups: tuple[tuple[GaussianRational, tuple[int, ...]], ...]

    def __post_init__(self):
        if not self.groups:
            raise ValueError("a Jordan spec needs at least one eigenvalue group")
        seen: set[GaussianRational] = set()
        for eig, sizes in self.groups:
            if eig in seen:
                raise ValueError(f"duplicate eigenvalue {eig} across groups")
            seen.add(eig)
            if not sizes:
                raise ValueError(f"eigenvalue {eig} has no block sizes")
            if any(s < 1 for s in sizes):
                raise ValueError(f"eigenvalue {eig} has a block of size < 1")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple]) -> "JordanSpec":
        """Build from (eigenvalue, sizes) pairs; eigenvalues may be int/str/Fraction."""
        return cls(tuple((as_gaussian(e), tuple(int(s) for s in sizes)) for e, sizes in pairs))

    @property
    def n(self) -> int:
        return sum(s for _, sizes in self.groups for s in sizes)

    def blocks(self) -> list[JordanBlockSpec]:
        return [JordanBlockSpec(eig, s) for eig, sizes in self.groups for s in sizes]

    def block_offsets(self) -> list[int]:
        offsets = []
        pos = 0
        for block in self.blocks():
            offsets.append(pos)
            pos += block.size
        return offsets

    def eigenvalues(self) -> tuple[GaussianRational, ...]:
        return tuple(eig for eig, _ in self.groups)

    def is_canonical(self) -> bool:
        keys = [_group_key(eig) for eig, _ in self.groups]
        if keys != sorted(keys):
            return False
        return all(list(sizes) == sorted(sizes, reverse=True) for _, sizes in self.groups)

    def canonical(self) -> tuple["JordanSpec", tuple[int, ...]]:
        """The canonical reordering and the coordinate map new -> old.

        position_map[new] = old means coordinate `new` of the canonical layout
        is coordinate `old` of this layout; permutation_matrix(position_map)
        conjugates between the two frames.
        """
        offsets = self.block_offsets()
        blocks = self.blocks()
        group_order = sorted(range(len(self.groups)), key=lambda g: _group_key(self.groups[g][0]))
        block_index_of_group: list[list[int]] = []
        pos = 0
        for _, sizes in self.groups:
            block_index_of_group.append(list(range(pos, pos + len(sizes))))
            pos += len(sizes)
        position_map: list[int] = []
        new_groups = []
        for g in group_order:
            indices = sorted(block_index_of_group[g], key=lambda b: -blocks[b].size)
            for b in indices:
                position_map.extend(range(offsets[b], offsets[b] + blocks[b].size))
            new_groups.append((self.groups[g][0], tuple(blocks[b].size for b in indices)))
        return JordanSpec(tuple(new_groups)), tuple(position_map)


def nilpotent_part(spec: JordanSpec) -> tuple[tuple[int, ...], int]:
    """Block sizes of the zero-eigenvalue group and their total (0 if nonsingular)."""
    for eig, sizes in spec.groups:
        if not eig:
            return tuple(sizes), sum(sizes)
    return (), 0


def jordan_block(eigenvalue, size: int) -> ExactMatrix:
    lam = as_gaussian(eigenvalue)
    grid = [[ZERO] * size for _ in range(size)]
    for i in range(size):
        grid[i][i] = lam
        if i + 1 < size:
            grid[i][i + 1] = ONE
    return ExactMatrix.from_rows(grid)


def assemble_jordan(spec: JordanSpec) -> ExactMatrix:
    """Block-diagonal matrix with the spec's blocks in spec order."""
    n = spec.n
    grid = [[ZERO] * n for _ in range(n)]
    pos = 0
    for block in spec.blocks():
        for i in range(block.size):
            grid[pos + i][pos + i] = block.eigenvalue
            if i + 1 < block.size:
                grid[pos + i][pos + i + 1] = ONE
        pos += block.size
    return ExactMatrix.from_rows(grid)


@dataclass(frozen=True, slots=True)
class SimilarityData:
    """A similarity a = w * J(spec) * w_inv, with the inverse precomputed."""

    a: ExactMatrix
    w: ExactMatrix
    w_inv: ExactMatrix
    spec: JordanSpec

    def __post_init__(self):
        n = self.spec.n
        for name, m in (("a", self.a), ("w", self.w), ("w_inv", self.w_inv)):
            if m.shape != (n, n):
                raise DimensionMismatch(f"similarity {name}", m.shape, (n, n))

    def canonicalized(self) -> "SimilarityData":
        """The same similarity re-expressed in the canonical block layout."""
        canon, position_map = self.spec.canonical()
        if position_map == tuple(range(self.spec.n)):
            return SimilarityData(self.a, self.w, self.w_inv, canon)
        p = permutation_matrix(position_map)
        return SimilarityData(
            self.a, mat_mul(self.w, p), mat_mul(p.transpose(), self.w_inv), canon
        )


def similarity_from_jordan(spec: JordanSpec, w: ExactMatrix | None = None) -> SimilarityData:
    """Similarity data for a matrix given directly by (spec, w); w defaults to I."""
    n = spec.n
    if w is None:
        j = assemble_jordan(spec)
        return SimilarityData(j, ExactMatrix.identity(n), ExactMatrix.identity(n), spec)
    return validate_similarity(None, w, spec)


def validate_similarity(
    a: ExactMatrix | None, w: ExactMatrix, spec: JordanSpec
) -> SimilarityData:
    """Check a = w * J * w_inv exactly and package the result.

    With a=None the product w * J * w_inv is computed instead of checked.
    Raises SingularMatrix when w is not invertible and SimilarityMismatch
    (with the first differing entry) when the identity fails.
    """
    n = spec.n
    if w.shape != (n, n):
        raise DimensionMismatch("validate_similarity w", w.shape, (n, n))
    try:
        w_inv = mat_inverse(w)
    except SingularMatrix as exc:
        raise SingularMatrix(exc.rank, exc.size, what="similarity matrix W") from None
    j = assemble_jordan(spec)
    if a is None:
        a = mat_mul(mat_mul(w, j), w_inv)
        return SimilarityData(a, w, w_inv, spec)
    if a.shape != (n, n):
        raise DimensionMismatch("validate_similarity a", a.shape, (n, n))
    lhs = mat_mul(a, w)
    rhs = mat_mul(w, j)
    for i in range(n):
        for jj in range(n):
            if lhs[i, jj] != rhs[i, jj]:
                raise SimilarityMismatch((i, jj))
    return SimilarityData(a, w, w_inv, spec)


def _apply(m: ExactMatrix, vec: tuple[GaussianRational, ...]) -> tuple[GaussianRational, ...]:
    out = []
    for i in range(m.rows):
        acc = ZERO
        for x, y in zip(m.row(i), vec):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


class _SpanTracker:
    """Incremental row-reduced span with exact membership tests."""

    def __init__(self):
        self.rows: list[tuple[int, list[GaussianRational]]] = []

    def _reduce(self, vec) -> list[GaussianRational]:
        v = list(vec)
        for pivot, row in self.rows:
            if v[pivot]:
                f = v[pivot]
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Add vec to the span; returns True when it was independent."""
        v = self._reduce(vec)
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = v[pivot].reciprocal()
        v = [x * inv if x else x for x in v]
        self.rows.append((pivot, v))
        return True

    def contains(self, vec) -> bool:
        return all(not x for x in self._reduce(vec))


def jordan_form(a: ExactMatrix, eigenvalues: Sequence) -> SimilarityData:
    """Exact Jordan decomposition from a complete distinct-eigenvalue list.

    For each eigenvalue the ranks of (A - lam*I)^k determine the block sizes,
    and generalized-eigenvector chains are grown top-down: chain tops are
    chosen from null-space bases at the highest power, extended greedily by
    the first candidates independent of the lower kernel plus the vectors
    carried down from longer chains, then propagated with (A - lam*I).

    Raises NotAnEigenvalue for a spurious value and IncompleteSpectrum if the
    generalized eigenspaces do not fill the whole space.
    """
    if not a.is_square():
        raise DimensionMismatch("jordan_form", a.shape, a.shape)
    n = a.rows
    eigs = [as_gaussian(e) for e in eigenvalues]
    if len(set(eigs)) != len(eigs):
        raise ValueError("eigenvalue list contains duplicates")

    identity = ExactMatrix.identity(n)
    per_eig: list[tuple[GaussianRational, list[list[ExactMatrix]], list[int]]] = []
    covered = 0
    for lam in sorted(eigs, key=_group_key):
        m = a - identity * lam
        ranks = [n]
        power = identity
        kernels: list[list[ExactMatrix]] = [[]]
        while True:
            power = mat_mul(power, m)
            ranks.append(rref(power).rank)
            kernels.append(null_space_basis(power))
            if ranks[-1] == ranks[-2]:
                break
            if len(ranks) > n + 1:
                raise RuntimeError("rank sequence failed to stabilize")
        if ranks[1] == n:
            raise NotAnEigenvalue(lam)
        index = len(ranks) - 2
        blocks_ge = [ranks[k - 1] - ranks[k] for k in range(1, index + 1)]
        covered += sum(blocks_ge)

        chains: list[list[tuple[GaussianRational, ...]]] = []
        for k in range(index, 0, -1):
            span = _SpanTracker()
            for basis_vec in kernels[k - 1]:
                span.add(basis_vec.col(0))
            carried = 0
            for chain in chains:
                span.add(chain[k - 1])
                carried += 1
            needed = blocks_ge[k - 1] - carried
            for cand in kernels[k]:
                if needed == 0:
                    break
                vec = cand.col(0)
                if span.add(vec):
                    chain = [vec]
                    for _ in range(k - 1):
                        chain.append(_apply(m, chain[-1]))
                    chain.reverse()
                    chains.append(chain)
                    needed -= 1
            if needed:
                raise RuntimeError(f"could not complete chains for eigenvalue {lam}")
        chains.sort(key=len, reverse=True)
        per_eig.append((lam, chains, [len(c) for c in chains]))

    if covered != n:
        raise IncompleteSpectrum(covered, n)

    columns: list[tuple[GaussianRational, ...]] = []
    groups = []
    for lam, chains, sizes in per_eig:
        groups.append((lam, tuple(sizes)))
        for chain in chains:
            columns.extend(chain)
    spec = JordanSpec(tuple(groups))
    w = ExactMatrix.from_rows([[columns[j][i] for j in range(n)] for i in range(n)])
    try:
        data = validate_similarity(a, w, spec)
    except (SingularMatrix, SimilarityMismatch) as exc:  # pragma: no cover - guarded
        raise RuntimeError(f"internal chain construction failure: {exc}") from exc
    return data
