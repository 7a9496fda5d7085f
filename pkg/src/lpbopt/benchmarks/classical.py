"""Unimodal and multi-modal test functions TF1-TF13.

All functions take a gene matrix ``x`` of shape ``(m, n)`` and return ``m``
values. Shifting is handled by :class:`~lpbopt.core.ObjectiveProblem`.
"""

from __future__ import annotations

from typing import Optional

import numpy as np


def sphere(x):
    return np.sum(x * x, axis=1)


def schwefel_2_22(x):
    a = np.abs(x)
    return np.sum(a, axis=1) + np.prod(a, axis=1)


def schwefel_1_2(x):
    return np.sum(np.cumsum(x, axis=1) ** 2, axis=1)


def schwefel_2_21(x):
    return np.max(np.abs(x), axis=1)


def rosenbrock(x):
    head, tail = x[:, :-1], x[:, 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2, axis=1)


def step(x):
    return np.sum(np.floor(x + 0.5) ** 2, axis=1)


def quartic(x, rng: Optional[np.random.Generator] = None):
    i = np.arange(1, x.shape[1] + 1)
    value = np.sum(i * x ** 4, axis=1)
    if rng is not None:
        value = value + rng.random(x.shape[0])
    return value


def schwefel_2_26(x):
    return np.sum(-x * np.sin(np.sqrt(np.abs(x))), axis=1)


def rastrigin(x):
    return np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=1)


def ackley(x):
    n = x.shape[1]
    a = -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x * x, axis=1) / n))
    b = -np.exp(np.sum(np.cos(2.0 * np.pi * x), axis=1) / n)
    return a + b + 20.0 + np.e


def griewank(x):
    i = np.sqrt(np.arange(1, x.shape[1] + 1))
    return np.sum(x * x, axis=1) / 4000.0 - np.prod(np.cos(x / i), axis=1) + 1.0


def penalty_u(x, a, k, m):
    """Boundary penalty: k*(|x|-a)**m outside [-a, a], zero inside."""
    over = np.maximum(np.abs(x) - a, 0.0)
    return k * over ** m


def penalized_1(x):
    n = x.shape[1]
    y = 1.0 + (x + 1.0) / 4.0
    body = (10.0 * np.sin(np.pi * y[:, 0]) ** 2
            + np.sum((y[:, :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[:, 1:]) ** 2), axis=1)
            + (y[:, -1] - 1.0) ** 2)
    return np.pi / n * body + np.sum(penalty_u(x, 10.0, 100.0, 4), axis=1)


def penalized_2(x):
    body = (np.sin(3.0 * np.pi * x[:, 0]) ** 2
            + np.sum((x[:, :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[:, 1:]) ** 2), axis=1)
            + (x[:, -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[:, -1]) ** 2))
    return 0.1 * body + np.sum(penalty_u(x, 5.0, 100.0, 4), axis=1)
