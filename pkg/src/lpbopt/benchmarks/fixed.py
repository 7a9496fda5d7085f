"""Classic fixed-dimension test functions (FD14-FD19)."""

from __future__ import annotations

import numpy as np

_FOXHOLE_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
FOXHOLES_A = np.vstack([np.tile(_FOXHOLE_GRID, 5), np.repeat(_FOXHOLE_GRID, 5)])

KOWALIK_A = np.array([0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])

HARTMANN3_A = np.array([[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]])
HARTMANN3_C = np.array([1.0, 1.2, 3.0, 3.2])
HARTMANN3_P = np.array([
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.038150, 0.5743, 0.8828],
])


def shekel_foxholes(x):
    diff = x[:, :, None] - FOXHOLES_A[None, :, :]
    inner = np.arange(1, 26) + np.sum(diff ** 6, axis=1)
    return 1.0 / (1.0 / 500.0 + np.sum(1.0 / inner, axis=1))


def kowalik(x):
    b = KOWALIK_B[None, :]
    x1, x2, x3, x4 = (x[:, i:i + 1] for i in range(4))
    model = x1 * (b * b + b * x2) / (b * b + b * x3 + x4)
    return np.sum((KOWALIK_A[None, :] - model) ** 2, axis=1)


def six_hump_camel(x):
    x1, x2 = x[:, 0], x[:, 1]
    return 4 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3 + x1 * x2 - 4 * x2 ** 2 + 4 * x2 ** 4


def branin(x):
    x1, x2 = x[:, 0], x[:, 1]
    return ((x2 - 5.1 / (4 * np.pi ** 2) * x1 ** 2 + 5 / np.pi * x1 - 6) ** 2
            + 10 * (1 - 1 / (8 * np.pi)) * np.cos(x1) + 10)


def goldstein_price(x):
    x1, x2 = x[:, 0], x[:, 1]
    a = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1 ** 2 - 14 * x2 + 6 * x1 * x2 + 3 * x2 ** 2)
    b = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1 ** 2 + 48 * x2 - 36 * x1 * x2 + 27 * x2 ** 2)
    return a * b


def hartmann3(x):
    sq = (x[:, None, :] - HARTMANN3_P[None, :, :]) ** 2
    return -np.sum(HARTMANN3_C * np.exp(-np.sum(HARTMANN3_A * sq, axis=2)), axis=1)
