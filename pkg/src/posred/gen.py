"""Seeded random positive systems for property suites and the CLI.

With a planted reachable dimension q, the first q coordinates of a random
permutation form an invariant coordinate block containing Im(B), so the
reachable space of the generated system has dimension at most q.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numerics import DEFAULT_TOL, Tolerances
from .possys import PositiveLtiSystem


@dataclass(frozen=True)
class GeneratorSpec:
    """Shape, sparsity, planted reachable dimension, and seed."""

    n: int
    inputs: int = 1
    outputs: int = 1
    reachable_dim: Optional[int] = None
    density: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.inputs < 1 or self.outputs < 1:
            raise ValueError("n, inputs, and outputs must be at least 1")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")
        if self.reachable_dim is not None and not 1 <= self.reachable_dim <= self.n:
            raise ValueError("reachable_dim must lie in [1, n]")


def _dense(rng: np.random.Generator, shape, density: float) -> np.ndarray:
    # Entries bounded away from zero so sign and support tests stay crisp.
    values = rng.uniform(0.1, 1.0, shape)
    if density < 1.0:
        values = np.where(rng.random(shape) < density, values, 0.0)
    return values


def generate_system(spec: GeneratorSpec, tol: Tolerances = DEFAULT_TOL) -> PositiveLtiSystem:
    """Deterministic for a fixed spec: same spec and seed, same system."""
    rng = np.random.default_rng(spec.seed)
    A = _dense(rng, (spec.n, spec.n), spec.density)
    B = _dense(rng, (spec.n, spec.inputs), spec.density)
    C = _dense(rng, (spec.outputs, spec.n), spec.density)
    if spec.reachable_dim is not None and spec.reachable_dim < spec.n:
        permutation = rng.permutation(spec.n)
        inside = permutation[:spec.reachable_dim]
        outside = permutation[spec.reachable_dim:]
        A[np.ix_(outside, inside)] = 0.0
        B[outside, :] = 0.0
    return PositiveLtiSystem(A, B, C, tol=tol)
