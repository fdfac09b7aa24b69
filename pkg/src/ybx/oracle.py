"""Independent verification machinery.

Nothing here reuses the structural block-pattern construction: the
anticommutant is recomputed from scratch through the vectorization identity
vec(U X + X V) = (I kron U + V^T kron I) vec(X) and an exact kernel, small
solution sets are enumerated over a finite grid of anticommutant
coordinates, and solution families are spot-checked at pseudorandom rational
parameter values.  Agreement between these oracles and the structural path
is what the test suite leans on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Sequence

from .anticommutant import anticommutant_basis
from .errors import DimensionMismatch, DisequalityViolated, GridTooLarge
from .jordan import JordanSpec, assemble_jordan
from .matrices import ExactMatrix, mat_mul, null_space_basis
from .scalars import ZERO, GaussianRational, as_gaussian
from .solver import SolutionBranch, SolutionFamily, branch_satisfied_by, branch_values

_GRID_DIMENSION_LIMIT = 6
_GRID_POINT_LIMIT = 10**6
_REDRAW_LIMIT = 100


@dataclass(frozen=True, slots=True)
class OracleReport:
    """Outcome of an oracle comparison.

    For span checks the dimensions are the structural count versus the kernel
    count; for membership checks they are planned versus completed trials.
    span_match true implies the dimensions agree and no counterexample was
    found.
    """

    expected_dimension: int
    oracle_dimension: int
    span_match: bool
    counterexample: ExactMatrix | None = None


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; entry ((p,q),(r,s)) = a[p,r] * b[q,s]."""
    grid = [
        [ZERO] * (a.cols * b.cols) for _ in range(a.rows * b.rows)
    ]
    for p in range(a.rows):
        for r in range(a.cols):
            factor = a[p, r]
            if not factor:
                continue
            for q in range(b.rows):
                for s in range(b.cols):
                    v = b[q, s]
                    if v:
                        grid[p * b.rows + q][r * b.cols + s] = factor * v
    return ExactMatrix.from_rows(grid)


def vec(m: ExactMatrix) -> ExactMatrix:
    """Column-stacking vectorization: vec(m)[j*rows + i] = m[i, j]."""
    return ExactMatrix.column([m[i, j] for j in range(m.cols) for i in range(m.rows)])


def unvec(v: ExactMatrix, rows: int, cols: int) -> ExactMatrix:
    if v.cols != 1 or v.rows != rows * cols:
        raise DimensionMismatch("unvec", v.shape, (rows * cols, 1))
    return ExactMatrix.from_rows(
        [[v[j * rows + i, 0] for j in range(cols)] for i in range(rows)]
    )


def kron_anticommutant_kernel(u: ExactMatrix, v: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {X : U X + X V = 0} straight from the vectorized kernel."""
    if not u.is_square():
        raise DimensionMismatch("kron_anticommutant_kernel u", u.shape, u.shape)
    if not v.is_square():
        raise DimensionMismatch("kron_anticommutant_kernel v", v.shape, v.shape)
    operator = kron(ExactMatrix.identity(v.rows), u) + kron(
        v.transpose(), ExactMatrix.identity(u.rows)
    )
    return [unvec(w, u.rows, v.rows) for w in null_space_basis(operator)]


class _RowSpan:
    """Incremental reduced row span over vectorized matrices."""

    def __init__(self):
        self.rows: list[tuple[int, list[GaussianRational]]] = []

    def add(self, entries: Sequence[GaussianRational]) -> bool:
        v = list(entries)
        for pivot, row in self.rows:
            if v[pivot]:
                f = v[pivot]
                v = [x - f * y if y else x for x, y in zip(v, row)]
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = v[pivot].reciprocal()
        self.rows.append((pivot, [x * inv if x else x for x in v]))
        return True

    def contains(self, entries: Sequence[GaussianRational]) -> bool:
        v = list(entries)
        for pivot, row in self.rows:
            if v[pivot]:
                f = v[pivot]
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return not any(v)


def cross_check_anticommutant(u_spec: JordanSpec, v_spec: JordanSpec) -> OracleReport:
    """Structural anticommutant basis versus the vectorized kernel.

    Dimensions must agree and each structural element must lie in the kernel
    span (the kernel basis is independent by construction, and the structural
    elements are checked independent too, so equal spans follow).
    """
    structural = anticommutant_basis(u_spec, v_spec)
    kernel = kron_anticommutant_kernel(assemble_jordan(u_spec), assemble_jordan(v_spec))
    expected = structural.dimension
    oracle_dim = len(kernel)

    kernel_span = _RowSpan()
    for element in kernel:
        kernel_span.add(element.entries)
    structural_span = _RowSpan()
    counterexample = None
    independent = True
    for element in structural.basis:
        if not structural_span.add(element.entries):
            independent = False
            counterexample = element
            break
        if not kernel_span.contains(element.entries):
            counterexample = element
            break
    span_match = (
        expected == oracle_dim and independent and counterexample is None
    )
    return OracleReport(expected, oracle_dim, span_match, counterexample)


def grid_enumerate_solutions(
    j: ExactMatrix, entry_set: Sequence
) -> list[ExactMatrix]:
    """Every anti-commuting solution with anticommutant coordinates in entry_set.

    Sound and complete relative to the grid: enumeration runs over
    coordinates in the vectorized-kernel basis of {X : JX + XJ = 0} (every
    solution anti-commutes, so nothing outside that subspace is missed), and
    each candidate is checked against both equations exactly.  Refuses with
    GridTooLarge when the coordinate count exceeds 6 or the grid 10^6 points.
    """
    values = [as_gaussian(v) for v in entry_set]
    basis = kron_anticommutant_kernel(j, j)
    dim = len(basis)
    count = len(values) ** dim if values else 0
    if dim > _GRID_DIMENSION_LIMIT or count > _GRID_POINT_LIMIT:
        raise GridTooLarge(dim, count)
    solutions = []
    for coords in _cartesian(values, repeat=dim):
        k = ExactMatrix.zeros(j.rows, j.cols)
        for c, e in zip(coords, basis):
            if c:
                k = k + e * c
        jk = mat_mul(j, k)
        kj = mat_mul(k, j)
        if not (jk + kj).is_zero():
            continue
        if (mat_mul(jk, j) - mat_mul(kj, k)).is_zero():
            solutions.append(k)
    return solutions


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.randint(-9, 9)
    den = rng.choice([d for d in range(-9, 10) if d])
    return Fraction(num, den)


def random_gaussian(rng: random.Random) -> GaussianRational:
    """Small random scalar: both parts have numerator and denominator in [-9, 9]."""
    return GaussianRational(_random_rational(rng), _random_rational(rng))


def random_branch_values(
    branch: SolutionBranch, rng: random.Random, attempts: int = _REDRAW_LIMIT
) -> dict[str, GaussianRational] | None:
    """A random full valuation lying in the branch, or None when every draw
    hits a side condition (degenerate at this sampling grid)."""
    for _ in range(attempts):
        candidate = {name: random_gaussian(rng) for name in branch.free_parameters}
        try:
            return branch_values(branch, candidate)
        except DisequalityViolated:
            continue
    return None


def branches_agree(
    left: SolutionBranch, right: SolutionBranch, trials: int, seed: int
) -> bool:
    """Randomized two-sided containment check of two branch strata.

    Both branches must range over the same parameter name space.  Each side
    is sampled `trials` times and the values must satisfy the other branch;
    any miss means the strata differ.
    """
    for tag, (src, dst) in enumerate(((left, right), (right, left))):
        for trial in range(trials):
            rng = random.Random(f"{seed}:{tag}:{trial}")
            values = random_branch_values(src, rng)
            if values is None:
                continue
            if any(poly.evaluate(values) for poly in src.residual_system):
                continue
            if not branch_satisfied_by(dst, values):
                return False
    return True


def verify_family_membership(
    family: SolutionFamily, j: ExactMatrix, trials: int, seed: int
) -> OracleReport:
    """Random instantiations of every branch, re-verified against both equations.

    Each (branch, trial) pair derives its own generator from the seed, draws
    small random rationals for the free parameters, redraws up to 100 times
    while a side condition lands on zero (exhaustion counts the trial as
    degenerate-at-grid, not a failure), and checks both residuals of the
    instantiated matrix against j.  The first failure is reported as a
    counterexample.
    """
    if j.shape != (family.n, family.n):
        raise DimensionMismatch("verify_family_membership", j.shape, (family.n, family.n))
    planned = len(family.branches) * trials
    completed = 0
    counterexample = None
    for branch_index, branch in enumerate(family.branches):
        for trial in range(trials):
            rng = random.Random(f"{seed}:{branch_index}:{trial}")
            values = None
            for _ in range(_REDRAW_LIMIT):
                candidate = {name: random_gaussian(rng) for name in branch.free_parameters}
                try:
                    values = branch_values(branch, candidate)
                    break
                except DisequalityViolated:
                    values = None
            if values is None:
                completed += 1  # degenerate at this grid; not a failure
                continue
            if any(poly.evaluate(values) for poly in branch.residual_system):
                completed += 1  # draw misses the unresolved constraints; skip
                continue
            k = family.template.evaluate(values)
            jk = mat_mul(j, k)
            kj = mat_mul(k, j)
            ok = (jk + kj).is_zero() and (mat_mul(jk, j) - mat_mul(kj, k)).is_zero()
            if ok:
                completed += 1
            elif counterexample is None:
                counterexample = k
    span_match = counterexample is None and completed == planned
    return OracleReport(planned, completed, span_match, counterexample)
