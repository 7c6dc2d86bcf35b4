"""Shared fixtures: the two reference systems used across the suite."""
import numpy as np

from posred import PositiveLtiSystem


def cascade_system(eps: float = 0.0, C=None) -> PositiveLtiSystem:
    """4-state single-input system whose reachable space is the plane of
    the first two coordinates; eps perturbs the coupling into state 1 and
    the input weight of state 2. The tail block (states 3, 4) is
    unreachable."""
    A = np.array([[1.0, 1.0 + eps, 0.0, 0.0],
                  [1.0, 0.0, 2.0, 0.0],
                  [0.0, 0.0, 1.0, 2.0],
                  [0.0, 0.0, 3.0, 1.0]])
    B = np.array([[1.0], [1.0 + eps], [0.0], [0.0]])
    return PositiveLtiSystem(A, B, C)


def swap_system(eps: float = 1.0, C=None) -> PositiveLtiSystem:
    """4-state single-input system: A swaps the first two states (scaled
    by eps) and fixes the last two. The reachable space has dimension 2
    at eps=1 and dimension 3 otherwise."""
    A = np.array([[0.0, eps, 0.0, 0.0],
                  [eps, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 1.0, 0.0],
                  [0.0, 0.0, 0.0, 1.0]])
    B = np.array([[0.0], [1.0], [1.0], [1.0]])
    return PositiveLtiSystem(A, B, C)


def stubborn_span() -> np.ndarray:
    """Positively generated 3-dimensional subspace of R^4 that admits no
    projector with non-negative factors: every 3-row block of the basis
    fails the sign test, and its product-algebra closure is all of R^4."""
    return np.array([[2.0, 1.0, 0.0],
                     [0.0, 2.0, 1.0],
                     [1.0, 0.0, 2.0],
                     [3.0, 0.0, 0.0]])
