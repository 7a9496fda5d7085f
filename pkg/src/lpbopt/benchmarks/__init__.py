"""Benchmark registry.

Ids:

* ``TF1``-``TF13``: unimodal and multi-modal functions, 10-D, shifted by
  default.
* ``CF1``-``CF6``: composite functions on [-5, 5]^10.
* ``FD14``-``FD19``: fixed-dimension functions (Shekel's foxholes, Kowalik,
  six-hump camel, Branin, Goldstein-Price, Hartmann-3). ``TF14``-``TF19``
  are accepted as aliases, matching the labels of the classical results
  table.
* ``CEC01``-``CEC10``: the CEC-C06 2019 suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np

from ..core import ConfigurationError, ObjectiveProblem, UsageError
from . import cec, classical, composite, fixed

__all__ = [
    "FunctionSpec",
    "registry",
    "get_spec",
    "make_problem",
    "eval_classical",
    "eval_composite",
    "eval_fixed_dimension",
    "eval_cec",
    "self_test",
    "expand_ids",
    "CLASSICAL_19",
]

SCHWEFEL_X = 420.9687462275036
SCHWEFEL_F = -418.9828872724338


@dataclass(frozen=True)
class FunctionSpec:
    id: str
    name: str
    family: str
    dim: int
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    f_min: float
    # optimum of the unshifted formula; the shifted optimum is this + shift
    raw_optimum: np.ndarray = field(repr=False)
    shift: Optional[np.ndarray] = field(default=None, repr=False)
    stochastic: bool = False
    tolerance: float = 1e-10

    @property
    def range(self) -> tuple[float, float]:
        return float(self.lower.min()), float(self.upper.max())

    def optimum(self, shifted: bool = True) -> np.ndarray:
        if shifted and self.shift is not None:
            return self.raw_optimum + self.shift
        return self.raw_optimum.copy()


_CLASSICAL: dict[str, tuple] = {
    # id: (name, formula, bound, table shift, raw optimum coordinate)
    "TF1": ("Sphere", classical.sphere, 100.0, -30.0, 0.0),
    "TF2": ("Schwefel 2.22", classical.schwefel_2_22, 10.0, -3.0, 0.0),
    "TF3": ("Schwefel 1.2", classical.schwefel_1_2, 100.0, -30.0, 0.0),
    "TF4": ("Schwefel 2.21", classical.schwefel_2_21, 100.0, -30.0, 0.0),
    "TF5": ("Rosenbrock", classical.rosenbrock, 30.0, -15.0, 1.0),
    # the tabulated shift (-750) lies outside [-100, 100]; left unshifted
    "TF6": ("Step", classical.step, 100.0, None, 0.0),
    "TF7": ("Quartic with noise", classical.quartic, 1.28, -0.25, 0.0),
    "TF8": ("Schwefel 2.26", classical.schwefel_2_26, 500.0, -300.0, SCHWEFEL_X),
    "TF9": ("Rastrigin", classical.rastrigin, 5.12, -2.0, 0.0),
    "TF10": ("Ackley", classical.ackley, 32.0, None, 0.0),
    "TF11": ("Griewank", classical.griewank, 600.0, -400.0, 0.0),
    "TF12": ("Penalized 1", classical.penalized_1, 50.0, np.array([-30.0] + [30.0] * 9), -1.0),
    # the tabulated shift (-100) lies outside [-50, 50]; left unshifted
    "TF13": ("Penalized 2", classical.penalized_2, 50.0, None, 1.0),
}

_FIXED: dict[str, tuple] = {
    # id: (name, formula, lower, upper, optimum, f_min)
    "FD14": ("Shekel's foxholes", fixed.shekel_foxholes, [-65.536] * 2, [65.536] * 2,
             [-31.978330712590456, -31.97833157692572], 0.998003837794449),
    "FD15": ("Kowalik", fixed.kowalik, [-5.0] * 4, [5.0] * 4,
             [0.19283345304274813, 0.19083624027597035, 0.12311729907598003, 0.13576599033984466],
             0.0003074859878056),
    "FD16": ("Six-hump camel back", fixed.six_hump_camel, [-5.0] * 2, [5.0] * 2,
             [0.08984201652927098, -0.7126564013807202], -1.0316284534898774),
    "FD17": ("Branin", fixed.branin, [-5.0, 0.0], [10.0, 15.0], [np.pi, 2.275], 5.0 / (4.0 * np.pi)),
    "FD18": ("Goldstein-Price", fixed.goldstein_price, [-2.0] * 2, [2.0] * 2, [0.0, -1.0], 3.0),
    "FD19": ("Hartmann 3", fixed.hartmann3, [0.0] * 3, [1.0] * 3,
             [0.11461434203082951, 0.5556488507905384, 0.8525469538460251], -3.86278214782076),
}

CLASSICAL_19 = tuple([f"TF{i}" for i in range(1, 14)] + [f"FD{i}" for i in range(14, 20)])


def _build() -> dict[str, FunctionSpec]:
    specs: dict[str, FunctionSpec] = {}
    for fid, (name, _, bound, shift, opt) in _CLASSICAL.items():
        d = 10
        f_min = SCHWEFEL_F * d if fid == "TF8" else 0.0
        specs[fid] = FunctionSpec(
            fid, name, "unimodal" if int(fid[2:]) <= 7 else "multimodal", d,
            np.full(d, -bound), np.full(d, bound), f_min, np.full(d, opt),
            None if shift is None else np.broadcast_to(np.asarray(shift, dtype=float), (d,)).copy(),
            stochastic=fid == "TF7",
        )
    for cid in composite.COMPOSITE_IDS:
        spec = composite.build_composite(cid)
        specs[cid] = FunctionSpec(cid, f"Composite {cid[2:]}", "composite", 10, np.full(10, -5.0),
                                  np.full(10, 5.0), 0.0, spec.optima[0].copy())
    for fid, (name, _, lo, hi, opt, f_min) in _FIXED.items():
        specs[fid] = FunctionSpec(fid, name, "fixed-dimension", len(lo), np.array(lo, dtype=float),
                                  np.array(hi, dtype=float), float(f_min), np.array(opt, dtype=float))
    raw_optima = {
        "CEC01": cec.chebyshev_optimum(9),
        "CEC02": cec.hilbert_optimum(16),
        "CEC03": cec.lennard_jones_optimum(18),
    }
    for cid, layout in cec.LAYOUTS.items():
        d = layout.dim
        specs[cid] = FunctionSpec(
            cid, layout.name, "cec2019", d, np.full(d, -layout.bound), np.full(d, layout.bound), 1.0,
            raw_optima[cid] if cid in raw_optima else cec.load_data(cid)[0].copy(),
            # CEC03's closed-form optimum misses the tabulated offset by ~1e-11
            tolerance=1e-9 if cid == "CEC03" else 1e-10,
        )
    return specs


_SPECS = _build()
_ALIASES = {f"TF{i}": f"FD{i}" for i in range(14, 20)}


def registry() -> list[FunctionSpec]:
    return list(_SPECS.values())


def canonical_id(fid: str) -> str:
    fid = fid.strip().upper()
    fid = _ALIASES.get(fid, fid)
    if fid not in _SPECS:
        raise ConfigurationError(f"unknown function id {fid!r}")
    return fid


def get_spec(fid: str) -> FunctionSpec:
    return _SPECS[canonical_id(fid)]


def expand_ids(text: str) -> list[str]:
    """Expand ``"TF1..TF19,CEC04"``-style lists into canonical ids.

    ``classical`` names the 19 classical functions, ``cec`` the CEC suite,
    ``composite`` CF1-CF6 and ``all`` the whole registry.
    """
    groups = {
        "CLASSICAL": list(CLASSICAL_19),
        "CEC": [f"CEC{i:02d}" for i in range(1, 11)],
        "COMPOSITE": list(composite.COMPOSITE_IDS),
        "ALL": list(_SPECS),
    }
    out: list[str] = []
    for token in filter(None, (t.strip().upper() for t in text.split(","))):
        if token in groups:
            out.extend(groups[token])
            continue
        m = re.fullmatch(r"([A-Z]+)(\d+)\.\.([A-Z]+)?(\d+)", token)
        if m:
            prefix, a, prefix2, b = m.groups()
            if prefix2 not in (None, prefix):
                raise ConfigurationError(f"range {token!r} mixes prefixes")
            width = len(a) if a.startswith("0") else 0
            out.extend(canonical_id(f"{prefix}{i:0{width}d}") for i in range(int(a), int(b) + 1))
        else:
            out.append(canonical_id(token))
    return list(dict.fromkeys(out))


def _formula(fid: str, rng: Optional[np.random.Generator] = None,
             data_dir: Optional[str] = None) -> Callable[[np.ndarray], np.ndarray]:
    if fid in _CLASSICAL:
        f = _CLASSICAL[fid][1]
        return partial(f, rng=rng) if fid == "TF7" else f
    if fid in composite.COMPOSITE_IDS:
        return composite.build_composite(fid)
    if fid in _FIXED:
        return _FIXED[fid][1]
    return cec.make_cec(fid, data_dir)[0]


def make_problem(fid: str, *, shifted: bool = True, rng: Optional[np.random.Generator] = None,
                 data_dir: Optional[str] = None) -> ObjectiveProblem:
    """Build an :class:`ObjectiveProblem` for a registry id.

    ``rng`` feeds TF7's additive noise; without it TF7 is noise-free.
    ``shifted=False`` drops the default shift of TF1-TF13.
    """
    spec = get_spec(fid)
    return ObjectiveProblem(
        dim=spec.dim,
        lower=spec.lower,
        upper=spec.upper,
        func=_formula(spec.id, rng, data_dir),
        shift=spec.shift if shifted else None,
        known_f_min=spec.f_min,
        name=spec.id,
    )


def _as_matrix(spec: FunctionSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.dim or x.ndim not in (1, 2):
        raise UsageError(f"{spec.id} expects vectors of length {spec.dim}, got shape {x.shape}")
    x = np.atleast_2d(x)
    if np.any(x < spec.lower) or np.any(x > spec.upper):
        raise UsageError(f"{spec.id}: input outside {spec.range}")
    return x


def _eval(fid: str, family: set[str], x, **kwargs) -> float | np.ndarray:
    spec = get_spec(fid)
    if spec.family not in family:
        raise UsageError(f"{fid} is not a {'/'.join(sorted(family))} function")
    xs = _as_matrix(spec, x)
    values = make_problem(spec.id, **kwargs).evaluate_batch(xs)
    return float(values[0]) if np.ndim(x) == 1 else values


def eval_classical(fid: str, x, *, shifted: bool = True, rng: Optional[np.random.Generator] = None):
    return _eval(fid, {"unimodal", "multimodal"}, x, shifted=shifted, rng=rng)


def eval_composite(fid: str, x, spec: Optional[composite.CompositeSpec] = None):
    if spec is None:
        return _eval(fid, {"composite"}, x)
    fs = get_spec(fid)
    xs = _as_matrix(fs, x)
    values = spec(xs)
    return float(values[0]) if np.ndim(x) == 1 else values


def eval_fixed_dimension(fid: str, x):
    return _eval(fid, {"fixed-dimension"}, x)


def eval_cec(fid: str, x, data_dir: Optional[str] = None):
    return _eval(fid, {"cec2019"}, x, data_dir=data_dir)


@dataclass(frozen=True)
class SelfTestResult:
    id: str
    value: float
    f_min: float
    ok: bool


def self_test(data_dir: Optional[str] = None) -> list[SelfTestResult]:
    """Evaluate every registry entry at its known optimum (TF7 noise off)."""
    results = []
    for spec in registry():
        problem = make_problem(spec.id, data_dir=data_dir)
        point = spec.optimum()
        if data_dir is not None and spec.family == "cec2019" and cec.LAYOUTS[spec.id].scale is not None:
            point = cec.load_data(spec.id, data_dir)[0]
        value = problem(point)
        results.append(SelfTestResult(spec.id, value, spec.f_min, abs(value - spec.f_min) <= spec.tolerance))
    return results
