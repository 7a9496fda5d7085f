"""CEC-C06 2019 "100-digit challenge" functions CEC01-CEC10.

CEC01-CEC03 are unshifted. CEC04-CEC10 shift, scale and rotate their input
(``z = M @ (s * (x - o))``) using data files named ``cecNN_dD.txt``. The
files shipped with the package were generated locally by
:func:`generate_data`; they are not the official competition data. Every
function adds 1 so that its global minimum value is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from ..core import ConfigurationError

DATA_SEED = 2019
LJ_OFFSET = 12.7120622568


def chebyshev_target(degree: int, at: float = 1.2) -> float:
    """Value of the Chebyshev polynomial T_degree at ``at``."""
    a, b = 1.0, at
    if degree == 0:
        return a
    for _ in range(degree - 1):
        a, b = b, 2.0 * at * b - a
    return b


def _horner(coeffs: np.ndarray, points: np.ndarray) -> np.ndarray:
    # coeffs (m, D) highest power first; points (k,) -> (m, k)
    out = np.zeros((coeffs.shape[0], points.shape[0]))
    for j in range(coeffs.shape[1]):
        out = out * points + coeffs[:, j:j + 1]
    return out


def storn_chebyshev(x):
    """Storn's Chebyshev polynomial fitting problem (no +1)."""
    d = x.shape[1]
    target = chebyshev_target(d - 1)
    m = 32 * d
    grid = np.linspace(-1.0, 1.0, m + 1)
    w = _horner(x, grid)
    p3 = np.sum(np.where(w > 1.0, (w - 1.0) ** 2, 0.0) + np.where(w < -1.0, (w + 1.0) ** 2, 0.0), axis=1)
    ends = _horner(x, np.array([1.2, -1.2]))
    p12 = np.sum(np.where(ends < target, (ends - target) ** 2, 0.0), axis=1)
    return p12 + p3


def inverse_hilbert(x):
    """Sum of |H Z - I| with Z the row-major square reshaping of x (no +1)."""
    m, d = x.shape
    n = math.isqrt(d)
    if n * n != d:
        raise ConfigurationError(f"inverse Hilbert problem needs a square dimension, got {d}")
    idx = np.arange(n)
    hilbert = 1.0 / (idx[:, None] + idx[None, :] + 1.0)
    z = x.reshape(m, n, n)
    return np.sum(np.abs(hilbert @ z - np.eye(n)), axis=(1, 2))


def lennard_jones(x):
    """Lennard-Jones cluster energy plus 12.7120622568 (no +1)."""
    m, d = x.shape
    atoms = x.reshape(m, d // 3, 3)
    i, j = np.triu_indices(d // 3, k=1)
    r2 = np.sum((atoms[:, i, :] - atoms[:, j, :]) ** 2, axis=2)
    r6 = r2 ** 3
    safe = np.where(r6 > 1e-10, r6, 1.0)
    energy = np.where(r6 > 1e-10, (1.0 / safe - 2.0) / safe, 1e20)
    return LJ_OFFSET + np.sum(energy, axis=1)


def rastrigin(z):
    return np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0, axis=1)


def griewank(z):
    i = np.sqrt(np.arange(1, z.shape[1] + 1))
    return np.sum(z * z, axis=1) / 4000.0 - np.prod(np.cos(z / i), axis=1) + 1.0


def weierstrass(z, a=0.5, b=3.0, k_max=20):
    k = np.arange(k_max + 1)
    ak, bk = a ** k, b ** k
    inner = np.sum(ak * np.cos(2.0 * np.pi * bk * (z[..., None] + 0.5)), axis=-1)
    return np.sum(inner, axis=1) - z.shape[1] * np.sum(ak * np.cos(np.pi * bk))


def modified_schwefel(z):
    d = z.shape[1]
    z = z + 4.209687462275036e2
    over = z > 500.0
    under = z < -500.0
    mid = ~(over | under)
    r_over = 500.0 - np.fmod(np.where(over, z, 0.0), 500.0)
    r_under = -500.0 + np.fmod(np.abs(np.where(under, z, 0.0)), 500.0)
    terms = np.where(
        over,
        -r_over * np.sin(np.sqrt(np.abs(r_over))) + ((z - 500.0) / 100.0) ** 2 / d,
        np.where(
            under,
            -r_under * np.sin(np.sqrt(np.abs(r_under))) + ((z + 500.0) / 100.0) ** 2 / d,
            -z * np.sin(np.sqrt(np.abs(np.where(mid, z, 0.0)))),
        ),
    )
    return np.sum(terms, axis=1) + 4.189828872724338e2 * d


def expanded_schaffer_f6(z):
    nxt = np.roll(z, -1, axis=1)
    s = z * z + nxt * nxt
    return np.sum(0.5 + (np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2, axis=1)


def happycat(z, alpha=0.125):
    d = z.shape[1]
    z = z - 1.0
    r2 = np.sum(z * z, axis=1)
    return np.abs(r2 - d) ** (2 * alpha) + (0.5 * r2 + np.sum(z, axis=1)) / d + 0.5


def ackley(z):
    d = z.shape[1]
    a = -20.0 * np.exp(-0.2 * np.sqrt(np.sum(z * z, axis=1) / d))
    return a - np.exp(np.sum(np.cos(2.0 * np.pi * z), axis=1) / d) + 20.0 + np.e


@dataclass(frozen=True)
class CecLayout:
    name: str
    dim: int
    bound: float
    func: Callable[[np.ndarray], np.ndarray]
    scale: Optional[float] = None  # None: unshifted, unrotated


LAYOUTS: dict[str, CecLayout] = {
    "CEC01": CecLayout("Storn's Chebyshev polynomial fitting", 9, 8192.0, storn_chebyshev),
    "CEC02": CecLayout("Inverse Hilbert matrix", 16, 16384.0, inverse_hilbert),
    "CEC03": CecLayout("Lennard-Jones minimum energy cluster", 18, 4.0, lennard_jones),
    "CEC04": CecLayout("Shifted rotated Rastrigin", 10, 100.0, rastrigin, 5.12 / 100.0),
    "CEC05": CecLayout("Shifted rotated Griewank", 10, 100.0, griewank, 600.0 / 100.0),
    "CEC06": CecLayout("Shifted rotated Weierstrass", 10, 100.0, weierstrass, 0.5 / 100.0),
    "CEC07": CecLayout("Shifted rotated modified Schwefel", 10, 100.0, modified_schwefel, 1000.0 / 100.0),
    "CEC08": CecLayout("Shifted rotated expanded Schaffer F6", 10, 100.0, expanded_schaffer_f6, 1.0),
    "CEC09": CecLayout("Shifted rotated HappyCat", 10, 100.0, happycat, 5.0 / 100.0),
    "CEC10": CecLayout("Shifted rotated Ackley", 10, 100.0, ackley, 1.0),
}


def data_filename(cid: str, dim: int) -> str:
    return f"cec{int(cid[3:]):02d}_d{dim}.txt"


def generate_data(cid: str, dim: int, seed: int = DATA_SEED) -> tuple[np.ndarray, np.ndarray]:
    """Shift in [-80, 80]^dim and a random orthonormal rotation (QR of a Gaussian)."""
    rng = np.random.default_rng([seed, int(cid[3:]), dim])
    shift = rng.uniform(-80.0, 80.0, size=dim)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return shift, q * np.sign(np.diag(r))


def write_data(path: Path, shift: np.ndarray, rotation: np.ndarray) -> None:
    lines = [" ".join(repr(float(v)) for v in shift)]
    lines += [" ".join(repr(float(v)) for v in row) for row in rotation]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_data(path: Path, dim: int) -> tuple[np.ndarray, np.ndarray]:
    rows = [line.split() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]
    values = np.array([[float(v) for v in row] for row in rows])
    if values.shape != (dim + 1, dim):
        raise ConfigurationError(f"{path}: expected {dim + 1} rows of {dim} values, got shape {values.shape}")
    return values[0], values[1:]


@lru_cache(maxsize=None)
def load_data(cid: str, data_dir: Optional[str] = None) -> tuple[np.ndarray, np.ndarray]:
    layout = LAYOUTS[cid]
    name = data_filename(cid, layout.dim)
    if data_dir is None:
        source = resources.files("lpbopt.benchmarks") / "data" / name
    else:
        source = Path(data_dir) / name
    if not source.is_file():
        raise ConfigurationError(f"missing CEC data file: {source}")
    with resources.as_file(source) as path:
        shift, rotation = read_data(path, layout.dim)
    shift.flags.writeable = False
    rotation.flags.writeable = False
    return shift, rotation


def make_cec(cid: str, data_dir: Optional[str] = None) -> tuple[Callable[[np.ndarray], np.ndarray], Optional[np.ndarray]]:
    """Evaluator for ``cid`` and the location of its optimum if it is a shift point."""
    layout = LAYOUTS[cid]
    if layout.scale is None:
        return (lambda x: layout.func(x) + 1.0), None
    shift, rotation = load_data(cid, data_dir)
    scale = layout.scale

    def evaluate(x: np.ndarray) -> np.ndarray:
        z = (scale * (x - shift)) @ rotation.T
        return layout.func(z) + 1.0

    return evaluate, shift


def chebyshev_optimum(dim: int = 9) -> np.ndarray:
    """Coefficients of T_{dim-1}, highest power first."""
    coeffs = np.polynomial.chebyshev.cheb2poly([0] * (dim - 1) + [1])
    return coeffs[::-1].astype(float)


def hilbert_optimum(dim: int = 16) -> np.ndarray:
    n = math.isqrt(dim)
    idx = np.arange(n)
    return np.linalg.inv(1.0 / (idx[:, None] + idx[None, :] + 1.0)).round().reshape(-1)


def lennard_jones_optimum(dim: int = 18) -> np.ndarray:
    """Regular octahedron at the edge length that minimises the 6-atom energy.

    The pair energy ``r**-12 - 2 r**-6`` is scale-covariant, so for the
    octahedron (12 edges of length ``e``, 3 diagonals of ``e*sqrt(2)``) the
    optimal edge has a closed form.
    """
    if dim != 18:
        raise ConfigurationError("closed-form optimum only known for 6 atoms")
    # E(e) = A e**-12 - 2 B e**-6 with A = 12 + 3/64, B = 12 + 3/8
    a, b = 12.0 + 3.0 / 64.0, 12.0 + 3.0 / 8.0
    edge = (a / b) ** (1.0 / 6.0)
    h = edge / math.sqrt(2.0)
    pts = np.array([[h, 0, 0], [-h, 0, 0], [0, h, 0], [0, -h, 0], [0, 0, h], [0, 0, -h]])
    return pts.reshape(-1)
