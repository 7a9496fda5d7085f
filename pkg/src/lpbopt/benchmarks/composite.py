"""Composite test functions CF1-CF6 (Liang, Suganthan & Deb 2005).

A composite blends ten basic functions, each centred on its own optimum
``o_i`` and stretched by ``lambda_i``. Gaussian weights with widths
``sigma_i`` favour the component whose optimum is nearest; every component
is normalised to a common height ``C`` at ``[5, ..., 5]`` and offset by a
bias of ``100 * i``. The global optimum is ``o_1`` with value 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import classical

COMPOSITE_SEED = 20050608
NORMALISATION_HEIGHT = 2000.0
N_COMPONENTS = 10


def weierstrass(x, a=0.5, b=3.0, k_max=20):
    k = np.arange(k_max + 1)
    ak = a ** k
    bk = b ** k
    inner = np.sum(ak * np.cos(2.0 * np.pi * bk * (x[..., None] + 0.5)), axis=-1)
    return np.sum(inner, axis=1) - x.shape[1] * np.sum(ak * np.cos(np.pi * bk))


BASIC = {
    "sphere": classical.sphere,
    "griewank": classical.griewank,
    "ackley": classical.ackley,
    "rastrigin": classical.rastrigin,
    "weierstrass": weierstrass,
}


@dataclass
class CompositeSpec:
    components: list[str]
    sigmas: np.ndarray
    lambdas: np.ndarray
    optima: np.ndarray
    biases: np.ndarray = field(default_factory=lambda: 100.0 * np.arange(N_COMPONENTS))
    rotations: np.ndarray | None = None
    f_max: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.sigmas = np.asarray(self.sigmas, dtype=float)
        self.lambdas = np.asarray(self.lambdas, dtype=float)
        self.optima = np.asarray(self.optima, dtype=float)
        self.biases = np.asarray(self.biases, dtype=float)
        d = self.optima.shape[1]
        if self.rotations is None:
            self.rotations = np.broadcast_to(np.eye(d), (len(self.components), d, d))
        probe = np.full((1, d), 5.0)
        self.f_max = np.array([
            abs(BASIC[name]((probe / lam) @ rot)[0])
            for name, lam, rot in zip(self.components, self.lambdas, self.rotations)
        ])

    def weights(self, x: np.ndarray) -> np.ndarray:
        """Normalised component weights, shape ``(m, 10)``; rows sum to 1."""
        d = x.shape[1]
        dist2 = np.sum((x[:, None, :] - self.optima[None, :, :]) ** 2, axis=2)
        w = np.exp(-dist2 / (2.0 * d * self.sigmas ** 2))
        w_max = w.max(axis=1, keepdims=True)
        w = np.where(w == w_max, w, w * (1.0 - w_max ** 10))
        total = w.sum(axis=1, keepdims=True)
        # far from every optimum all kernels underflow; fall back to equal weights
        w = np.where(total == 0.0, 1.0, w)
        return w / w.sum(axis=1, keepdims=True)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        w = self.weights(x)
        values = np.empty_like(w)
        for i, name in enumerate(self.components):
            z = ((x - self.optima[i]) / self.lambdas[i]) @ self.rotations[i]
            values[:, i] = NORMALISATION_HEIGHT * BASIC[name](z) / self.f_max[i] + self.biases[i]
        return np.sum(w * values, axis=1)


_MIX = ["rastrigin", "rastrigin", "weierstrass", "weierstrass", "griewank", "griewank",
        "ackley", "ackley", "sphere", "sphere"]

_LAYOUTS: dict[str, tuple[list[str], list[float], list[float]]] = {
    "CF1": (["sphere"] * 10, [1.0] * 10, [5 / 100] * 10),
    "CF2": (["griewank"] * 10, [1.0] * 10, [5 / 100] * 10),
    "CF3": (["griewank"] * 10, [1.0] * 10, [1.0] * 10),
    "CF4": (["ackley", "ackley", "rastrigin", "rastrigin", "weierstrass", "weierstrass",
             "griewank", "griewank", "sphere", "sphere"],
            [1.0] * 10,
            [5 / 32, 5 / 32, 1, 1, 5 / 0.5, 5 / 0.5, 5 / 100, 5 / 100, 5 / 100, 5 / 100]),
    "CF5": (_MIX, [1.0] * 10,
            [1 / 5, 1 / 5, 5 / 0.5, 5 / 0.5, 5 / 100, 5 / 100, 5 / 32, 5 / 32, 5 / 100, 5 / 100]),
    "CF6": (_MIX, [0.1 * k for k in range(1, 11)],
            [0.1 * 1 / 5, 0.2 * 1 / 5, 0.3 * 5 / 0.5, 0.4 * 5 / 0.5, 0.5 * 5 / 100,
             0.6 * 5 / 100, 0.7 * 5 / 32, 0.8 * 5 / 32, 0.9 * 5 / 100, 1.0 * 5 / 100]),
}


def build_composite(cid: str, dim: int = 10, seed: int = COMPOSITE_SEED) -> CompositeSpec:
    """CF1..CF6 with optima drawn uniformly in [-5, 5]^dim from ``seed``.

    Every composite uses the same optima so the suite is one fixed
    instance set.
    """
    components, sigmas, lambdas = _LAYOUTS[cid]
    optima = np.random.default_rng(seed).uniform(-5.0, 5.0, size=(N_COMPONENTS, dim))
    return CompositeSpec(list(components), np.array(sigmas), np.array(lambdas), optima)


COMPOSITE_IDS = tuple(_LAYOUTS)
