"""Shared helpers: seeded random generators for specs, matrices, and scalars."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ybx.jordan import JordanSpec
from ybx.matrices import ExactMatrix, rref
from ybx.scalars import GaussianRational

EIGEN_POOL = (
    GaussianRational(0),
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(2),
    GaussianRational(-2),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(Fraction(1, 2)),
    GaussianRational(Fraction(-1, 2)),
    GaussianRational(3),
)


def random_partition(rng: random.Random, total: int) -> list[int]:
    parts = []
    while total:
        size = rng.randint(1, total)
        parts.append(size)
        total -= size
    return parts


def random_spec(
    rng: random.Random,
    max_n: int = 8,
    min_n: int = 1,
    require_zero: bool = False,
    forbid_zero: bool = False,
    pool=EIGEN_POOL,
) -> JordanSpec:
    """A random Jordan spec, not necessarily in canonical order."""
    assert not (require_zero and forbid_zero)
    n = rng.randint(min_n, max_n)
    candidates = [e for e in pool if e] if forbid_zero else list(pool)
    blocks = random_partition(rng, n)
    eigenvalues = [rng.choice(candidates) for _ in blocks]
    if require_zero and all(e for e in eigenvalues):
        eigenvalues[rng.randrange(len(eigenvalues))] = GaussianRational(0)
    grouped: dict[GaussianRational, list[int]] = {}
    for eig, size in zip(eigenvalues, blocks):
        grouped.setdefault(eig, []).append(size)
    return JordanSpec(tuple((eig, tuple(sizes)) for eig, sizes in grouped.items()))


def random_paired_spec(rng: random.Random, max_n: int = 8) -> JordanSpec:
    """Nonsingular spec guaranteed to contain an eigenvalue pair lam, -lam."""
    while True:
        n = rng.randint(2, max_n)
        lam = rng.choice([e for e in EIGEN_POOL if e])
        left = rng.randint(1, n - 1)
        spec = {lam: random_partition(rng, left), -lam: random_partition(rng, n - left)}
        return JordanSpec(tuple((e, tuple(sizes)) for e, sizes in spec.items()))


def random_scalar(rng: random.Random, span: int = 4) -> GaussianRational:
    def part():
        return Fraction(rng.randint(-span, span), rng.randint(1, 3))

    return GaussianRational(part(), part())


def random_matrix(rng: random.Random, rows: int, cols: int, span: int = 4) -> ExactMatrix:
    return ExactMatrix.from_rows(
        [[random_scalar(rng, span) for _ in range(cols)] for _ in range(rows)]
    )


def random_invertible(rng: random.Random, n: int, span: int = 3) -> ExactMatrix:
    while True:
        candidate = ExactMatrix.from_rows(
            [[rng.randint(-span, span) for _ in range(n)] for _ in range(n)]
        )
        if rref(candidate).rank == n:
            return candidate


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20250808)
