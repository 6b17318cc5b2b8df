"""Concrete realizations used as ground truth.

A diagonal pair (A, B) has numerical ranges equal to the convex hulls of the
diagonals, so a box is realized exactly by diagonals spanning its intervals.
The numerical range of T is the union of the quartic roots over Rayleigh
quotients (alpha_u, beta_u) of unit vectors u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import OmegaBox, ProblemParams, denominator, family_roots, near_pole
from .errors import PoleEvaluation

TRUNCATION = 1e6


@dataclass(frozen=True)
class MatrixPair:
    """Diagonal selfadjoint A and B given by their diagonals."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("diagonals must be 1-D arrays of equal length")
        if not np.all(np.isfinite(a)) or not np.all(np.isfinite(b)):
            raise ValueError("diagonal entries must be finite")
        if not np.any(b != 0):
            raise ValueError("B must be non-zero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def A(self) -> np.ndarray:
        return np.diag(self.a)

    @property
    def B(self) -> np.ndarray:
        return np.diag(self.b)

    @classmethod
    def realize(cls, box: OmegaBox, n: int = 8, seed: int | None = None,
                truncation: float = TRUNCATION) -> "MatrixPair":
        """Random diagonals whose extreme entries are the box endpoints.

        Infinite alpha endpoints are replaced by -+truncation.
        """
        if n < 2:
            raise ValueError("n must be at least 2")
        rng = np.random.default_rng(seed)
        alo = max(box.alpha_lo, -truncation)
        ahi = min(box.alpha_hi, truncation)
        blo = box.beta_lo
        bhi = min(box.beta_hi, truncation)
        a = np.concatenate([[alo, ahi], rng.uniform(alo, ahi, n - 2)])
        b = np.concatenate([[blo, bhi], rng.uniform(blo, bhi, n - 2)])
        return cls(rng.permutation(a), rng.permutation(b))


@dataclass(frozen=True)
class PointSet:
    """Sampled numerical-range points with their Rayleigh quotients."""

    points: np.ndarray  # (n_samples, 4) complex
    alpha: np.ndarray
    beta: np.ndarray

    def flat(self) -> np.ndarray:
        return self.points.ravel()


def rayleigh(pair: MatrixPair, n_samples: int, seed: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(Au, u)/(u, u) and (Bu, u)/(u, u) for random complex unit vectors."""
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((n_samples, pair.n)) + 1j * rng.standard_normal((n_samples, pair.n))
    w = np.abs(u) ** 2
    w /= w.sum(axis=1, keepdims=True)
    return w @ pair.a, w @ pair.b


def sample_numerical_range(pair: MatrixPair, n_samples: int, seed: int | None, params: ProblemParams) -> PointSet:
    """Points of W(T) from random unit vectors; all four roots per sample.

    For a 1x1 pair the quotients are the diagonal entries themselves.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    if pair.n == 1:
        al = np.full(n_samples, pair.a[0])
        be = np.full(n_samples, pair.b[0])
    else:
        al, be = rayleigh(pair, n_samples, seed)
    return PointSet(family_roots(al, be, params), al, be)


def sigma_min_T(pair: MatrixPair, omega: complex, params: ProblemParams) -> float:
    """Smallest singular value of T(omega) = A - omega**2 - omega**2 B/(c - i d omega - omega**2).

    For diagonal pairs this is the smallest modulus of the diagonal.

    Raises
    ------
    PoleEvaluation
        At the poles.
    """
    omega = complex(omega)
    if near_pole(omega, params):
        raise PoleEvaluation(f"T is undefined at the pole {omega}")
    if pair.n > 1024:
        raise ValueError("n must be at most 1024")
    w2 = omega * omega
    diag = pair.a - w2 - w2 * pair.b / denominator(omega, params)
    return float(np.abs(diag).min())


def sigma_min_dense(A: np.ndarray, B: np.ndarray, omega: complex, params: ProblemParams) -> float:
    """Smallest singular value of T(omega) for dense selfadjoint A and B."""
    omega = complex(omega)
    if near_pole(omega, params):
        raise PoleEvaluation(f"T is undefined at the pole {omega}")
    w2 = omega * omega
    T = A - w2 * np.eye(len(A)) - w2 * B / denominator(omega, params)
    return float(np.linalg.svd(T, compute_uv=False).min())


def random_config(rng: np.random.Generator, unbounded: bool = False) -> tuple[ProblemParams, OmegaBox]:
    """A random (params, box) pair for property tests.

    About a tenth of the draws use c = 0; beta intervals are mostly
    non-negative but sometimes straddle zero.
    """
    c = 0.0 if rng.random() < 0.1 else float(rng.uniform(0.1, 8))
    d = float(rng.uniform(0.2, 8))
    a = np.sort(rng.uniform(-30, 10, 2))
    b = np.sort(rng.uniform(0, 12, 2))
    if rng.random() < 0.2:
        b[0] = -rng.uniform(0, 3)
    if unbounded and rng.random() < 0.5:
        a = (-math.inf, a[1]) if rng.random() < 0.5 else (a[0], math.inf)
    return ProblemParams(c, d), OmegaBox(float(a[0]), float(a[1]), float(b[0]), float(b[1]))
