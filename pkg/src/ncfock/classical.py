"""Commutative two-level models: the Berry and pseudo-Berry Hamiltonians.

Points of parameter space are ``BerryPoint(x, y, z)``.  The Berry model
is diagonalized by SU(2) matrices on two charts, each missing one half of
the z-axis (a Dirac string).  The pseudo-Berry model is non-Hermitian but
J-Hermitian with ``J = sigma_3`` and is diagonalized by SU(1,1) matrices on
the upper sheet of the two-sheeted cone interior.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

from .errors import DegeneratePoint, DiracString, OnAxis, OutsideDomain

__all__ = [
    "BerryPoint",
    "Chart",
    "Domain",
    "J2",
    "su2_generators",
    "su11_generators",
    "group_exponential",
    "berry_hamiltonian",
    "berry_diagonalizer",
    "berry_transition",
    "berry_projector",
    "pseudo_berry_hamiltonian",
    "pseudo_domain",
    "pseudo_diagonalizer",
    "pseudo_transition",
    "pseudo_projector",
    "is_su2",
    "is_su11",
]

# relative distance to a Dirac string below which a chart is refused
STRING_FENCE = 1e-13

J2 = np.diag([1.0, -1.0]).astype(complex)


class BerryPoint(NamedTuple):
    x: float
    y: float
    z: float

    @property
    def r(self) -> float:
        return float(np.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2))

    @property
    def rho(self) -> float:
        return float(np.hypot(self.x, self.y))

    @property
    def w(self) -> complex:
        """The combination x + iy."""
        return complex(self.x, self.y)


class Chart(enum.Enum):
    I = "I"
    II = "II"

    @classmethod
    def parse(cls, value) -> "Chart":
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


class Domain(enum.Enum):
    Dplus = "Dplus"
    Dminus = "Dminus"
    Outside = "Outside"


def su2_generators():
    """Pauli matrices followed by the ladder combinations sigma_+ and sigma_-."""
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return s1, s2, s3, (s1 + 1j * s2) / 2, (s1 - 1j * s2) / 2


def su11_generators():
    """Generators of su(1,1) in the J = sigma_3 realization."""
    t1 = np.array([[0, 1], [-1, 0]], dtype=complex)
    t2 = np.array([[0, -1j], [-1j, 0]], dtype=complex)
    t3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return t1, t2, t3, (t1 + 1j * t2) / 2, (t1 - 1j * t2) / 2


def group_exponential(coeffs, algebra: str = "su2") -> np.ndarray:
    """``exp(i * sum_j x_j G_j)`` for the su(2) or su(1,1) generators."""
    gens = {"su2": su2_generators, "su11": su11_generators}[algebra]()[:3]
    x = np.asarray(coeffs, dtype=float)
    return expm(1j * sum(c * g for c, g in zip(x, gens)))


def is_su2(A, tol: float = 1e-12) -> bool:
    A = np.asarray(A)
    return (np.max(np.abs(A.conj().T @ A - np.eye(2))) < tol
            and abs(np.linalg.det(A) - 1) < tol)


def is_su11(B, tol: float = 1e-12) -> bool:
    B = np.asarray(B)
    return (np.max(np.abs(B.conj().T @ J2 @ B - J2)) < tol
            and abs(np.linalg.det(B) - 1) < tol)


def berry_hamiltonian(p: BerryPoint) -> np.ndarray:
    x, y, z = p
    return np.array([[z, x - 1j * y], [x + 1j * y, -z]], dtype=complex)


def _r_plus_minus(p: BerryPoint):
    """``(r + z, r - z)`` without cancellation near either half-axis."""
    r, z, rho2 = p.r, p.z, p.x ** 2 + p.y ** 2
    if z >= 0:
        rpz = r + z
        rmz = rho2 / rpz if rpz > 0 else 0.0
    else:
        rmz = r - z
        rpz = rho2 / rmz
    return rpz, rmz


def berry_diagonalizer(p: BerryPoint, chart=Chart.I) -> np.ndarray:
    """Eigenvector matrix ``A`` with ``H_B = A diag(r, -r) A^dagger``.

    Chart I misses the lower half of the z-axis and chart II the upper half.
    """
    p = BerryPoint(*map(float, p))
    chart = Chart.parse(chart)
    r = p.r
    if r == 0:
        raise DegeneratePoint("r = 0: the two eigenvalues coincide")
    rpz, rmz = _r_plus_minus(p)
    x, y = p.x, p.y
    if chart is Chart.I:
        if rpz < STRING_FENCE * r:
            raise DiracString(f"{tuple(p)} lies on the lower Dirac string")
        c = 1.0 / np.sqrt(2 * r * rpz)
        return c * np.array([[rpz, -x + 1j * y], [x + 1j * y, rpz]], dtype=complex)
    if rmz < STRING_FENCE * r:
        raise DiracString(f"{tuple(p)} lies on the upper Dirac string")
    c = 1.0 / np.sqrt(2 * r * rmz)
    return c * np.array([[x - 1j * y, -rmz], [rmz, x + 1j * y]], dtype=complex)


def berry_transition(p: BerryPoint) -> np.ndarray:
    """Transition function between the two charts, ``A_II = A_I Phi``."""
    rho = BerryPoint(*p).rho
    if rho == 0:
        raise OnAxis("the transition function is not defined on the z-axis")
    w = complex(p[0], p[1])
    return np.diag([w.conjugate(), w]) / rho


def berry_projector(p: BerryPoint) -> np.ndarray:
    """Projector onto the positive eigenvector; globally defined."""
    p = BerryPoint(*map(float, p))
    r = p.r
    if r == 0:
        raise DegeneratePoint("r = 0: the projector is undefined")
    rpz, rmz = _r_plus_minus(p)
    w = p.w
    return np.array([[rpz, w.conjugate()], [w, rmz]], dtype=complex) / (2 * r)


def pseudo_berry_hamiltonian(p: BerryPoint) -> np.ndarray:
    x, y, z = p
    return np.array([[z, x - 1j * y], [-(x + 1j * y), -z]], dtype=complex)


def pseudo_domain(p: BerryPoint) -> Domain:
    x, y, z = map(float, p)
    if z * z - x * x - y * y > 0:
        return Domain.Dplus if z > 0 else Domain.Dminus
    return Domain.Outside


def _require_dplus(p: BerryPoint):
    dom = pseudo_domain(p)
    if dom is not Domain.Dplus:
        raise OutsideDomain(f"{tuple(p)} is in {dom.value}, not Dplus")


def pseudo_diagonalizer(p: BerryPoint, chart=Chart.I) -> np.ndarray:
    """SU(1,1) matrix ``B`` with ``H_pB = B diag(s, -s) B^{-1}``.

    Only the upper sheet is covered; chart II additionally misses the
    z-axis itself.
    """
    p = BerryPoint(*map(float, p))
    chart = Chart.parse(chart)
    _require_dplus(p)
    x, y, z = p
    w = p.w
    s = np.sqrt(z * z - x * x - y * y)
    if chart is Chart.I:
        c = 1.0 / np.sqrt(2 * s * (s + z))
        return c * np.array([[s + z, -w.conjugate()], [-w, s + z]], dtype=complex)
    rho2 = x * x + y * y
    zms = rho2 / (z + s)
    if zms < STRING_FENCE * s:
        raise DiracString(f"{tuple(p)} lies on the upper Dirac string")
    c = 1.0 / np.sqrt(2 * s * zms)
    return c * np.array([[-w.conjugate(), zms], [zms, -w]], dtype=complex)


def pseudo_transition(p: BerryPoint) -> np.ndarray:
    """Transition function with ``B_I = B_II Phi`` on the upper sheet."""
    rho = BerryPoint(*p).rho
    if rho == 0:
        raise OnAxis("the transition function is not defined on the z-axis")
    w = complex(p[0], p[1])
    return np.diag([-w, -w.conjugate()]) / rho


def pseudo_projector(p: BerryPoint) -> np.ndarray:
    """J-self-adjoint projector ``Q`` onto the eigenvalue ``+s``."""
    p = BerryPoint(*map(float, p))
    _require_dplus(p)
    x, y, z = p
    w = p.w
    s = np.sqrt(z * z - x * x - y * y)
    return np.array([[z + s, w.conjugate()], [-w, s - z]], dtype=complex) / (2 * s)
