"""One-dimensional radial quadrature shared by the moment and Chern integrals.

Integrals over the plane of functions of ``|z|^2`` are reduced with
``u = |z|^2``, for which ``dx dy = (1/2) du dphi``.  After the angular
integral this gives ``(1/pi) dx dy -> du``, the single normalization used
throughout (it is also the measure carried by ``(1/2 pi i) dzbar ^ dz``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import ConfigInvalid, QuadratureBudgetExceeded

__all__ = ["QuadratureConfig", "plane_to_radial", "half_line_integral", "interval_integral"]


@dataclass(frozen=True)
class QuadratureConfig:
    max_subdivisions: int = 200
    target_tol: float = 1e-10
    radial_transform: str = "rational"

    def __post_init__(self):
        if self.target_tol < 1e-12:
            raise ConfigInvalid("target_tol must be at least 1e-12")
        if self.max_subdivisions < 1:
            raise ConfigInvalid("max_subdivisions must be positive")
        if self.radial_transform not in ("rational", "tangent"):
            raise ConfigInvalid(f"unknown radial transform {self.radial_transform!r}")


def plane_to_radial(weight: float = 1.0) -> float:
    """Factor converting ``weight * dx dy`` over the plane into ``du`` over ``[0, inf)``.

    ``(1/pi) dx dy`` integrates a radial function exactly like ``du``; the
    return value is ``pi * weight``, the coefficient in front of ``du``.
    """
    return np.pi * weight


def _quad(f, a, b, config: QuadratureConfig) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(
            f, a, b, epsabs=0.1 * config.target_tol, epsrel=config.target_tol,
            limit=config.max_subdivisions, full_output=1)[:3]
    bad = not np.isfinite(val) or err > max(config.target_tol, config.target_tol * abs(val))
    if bad:
        raise QuadratureBudgetExceeded(
            f"quadrature did not reach {config.target_tol:g} (error estimate {err:.2e})")
    return float(val)


def half_line_integral(f: Callable[[float], float], config: QuadratureConfig | None = None) -> float:
    """``int_0^inf f(u) du`` after mapping the half-line onto ``[0, 1)``."""
    config = config or QuadratureConfig()
    if config.radial_transform == "rational":
        def g(t):
            if t >= 1.0:
                return 0.0
            return f(t / (1 - t)) / (1 - t) ** 2
    else:
        half_pi = np.pi / 2

        def g(t):
            if t >= 1.0:
                return 0.0
            c = np.cos(half_pi * t)
            return f(np.tan(half_pi * t)) * half_pi / (c * c)
    return _quad(g, 0.0, 1.0, config)


def interval_integral(f: Callable[[float], float], a: float, b: float,
                      config: QuadratureConfig | None = None) -> float:
    return _quad(f, a, b, config or QuadratureConfig())
