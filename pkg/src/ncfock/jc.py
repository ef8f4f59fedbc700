"""The Jaynes-Cummings model and its quantum diagonalization.

The reduced Hamiltonian is the operator-valued Berry model

    H_JC = [[theta, a], [a^dagger, -theta]]

acting on two copies of the Fock space.  Everything here is built from the
ladder operators and diagonal functions of N, chiefly
``R(N) = sqrt(N + theta^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classical import Chart, su2_generators
from .errors import GroundSingularity, ModelInvalid
from .fock import (
    BlockOperator,
    FockOperator,
    FockSpace,
    annihilation,
    band_residual,
    creation,
    diag_fn,
    identity,
    number,
)

__all__ = [
    "DetunedModel",
    "JCParams",
    "full_jc_hamiltonian",
    "h_jc",
    "r_op",
    "qdm_factorization",
    "u_chart",
    "u_chart_orderings",
    "chart_eigenvalues",
    "singular_set",
    "transition_phi_jc",
    "transition_phi_jc_alt",
    "projector_p_jc",
    "spectral_decomposition",
    "evolution_closed",
    "dirac_string_scan",
]

# largest disagreement tolerated between the two orderings of a product form
ORDERING_TOL = 1e-13


@dataclass(frozen=True)
class DetunedModel:
    """Detuning ``theta = (Delta - omega) / 2g`` on a truncated Fock space."""

    theta: float
    space: FockSpace = field(default_factory=FockSpace)

    def __post_init__(self):
        if not np.isfinite(self.theta) or self.theta == 0:
            raise ModelInvalid("theta must be finite and nonzero")


@dataclass(frozen=True)
class JCParams:
    omega: float
    delta: float
    g: float

    def __post_init__(self):
        if not (self.omega > 0 and self.g > 0):
            raise ModelInvalid("omega and g must be positive")

    @property
    def theta(self) -> float:
        return (self.delta - self.omega) / (2 * self.g)


def _radius(theta: float):
    """``u -> sqrt(u + theta^2)`` with the value at ``u = 0`` set to ``|theta|`` exactly."""
    def f(u):
        u = np.asarray(u, dtype=float)
        return np.where(u == 0, abs(theta), np.sqrt(u + theta * theta))
    return f


def r_op(model: DetunedModel, shift: int = 0) -> FockOperator:
    """The diagonal operator ``R(N + shift)``."""
    return diag_fn(model.space, _radius(model.theta), shift)


def full_jc_hamiltonian(params: JCParams, space: FockSpace):
    """Return ``(H, H1, H2)`` for the full model with ``H = H1 + H2``.

    ``H1`` is the free part at the field frequency and ``H2`` carries the
    detuning and the coupling; the two commute.
    """
    s1, s2, s3, sp, sm = su2_generators()
    a, ad, n = annihilation(space), creation(space), number(space)
    one = identity(space)
    w, d, g = params.omega, params.delta, params.g
    h1 = w * BlockOperator.kron(np.eye(2), n) + (w / 2) * BlockOperator.kron(s3, one)
    h2 = ((d - w) / 2) * BlockOperator.kron(s3, one) + g * (
        BlockOperator.kron(sp, a) + BlockOperator.kron(sm, ad))
    h = (w * BlockOperator.kron(np.eye(2), n) + (d / 2) * BlockOperator.kron(s3, one)
         + g * (BlockOperator.kron(sp, a) + BlockOperator.kron(sm, ad)))
    return h, h1, h2


def h_jc(model: DetunedModel) -> BlockOperator:
    th = model.theta
    a, ad = annihilation(model.space), creation(model.space)
    return BlockOperator.from_grid([[th, a], [ad, -th]], valid_band=1)


def qdm_factorization(model: DetunedModel):
    """Outer ladder factors around a middle factor that is diagonal in N.

    ``left @ middle @ right`` reproduces ``H_JC`` except on the lower
    component's vacuum, where ``a^dagger (N+1)^{-1} a`` vanishes instead of
    acting as the identity.
    """
    sp = model.space
    th = model.theta
    a, ad = annihilation(sp), creation(sp)
    inv_sqrt = diag_fn(sp, lambda u: 1 / np.sqrt(u), 1)
    sqrt_n1 = diag_fn(sp, np.sqrt, 1)
    left = BlockOperator.diag([identity(sp), ad @ inv_sqrt])
    middle = BlockOperator.from_grid([[th, sqrt_n1], [sqrt_n1, -th]])
    right = BlockOperator.diag([identity(sp), inv_sqrt @ a])
    return left, middle, right


def _sign(chart: Chart) -> int:
    return 1 if chart is Chart.I else -1


def _normalizer(model: DetunedModel, chart: Chart, shift: int) -> FockOperator:
    """``1/sqrt(2 R (R +- theta))`` at ``N + shift``; vanishing denominators clamp to 0."""
    th = model.theta
    rad = _radius(th)
    sgn = _sign(chart)

    def f(u):
        r = rad(u)
        return 1.0 / np.sqrt(2 * r * (r + sgn * th))

    return diag_fn(model.space, f, shift)


def singular_set(model: DetunedModel, chart=Chart.I, ordering: str = "left"):
    """Basis states ``(component, index)`` on which the chart's normalizer vanishes.

    Uses the exact value ``R(0) = |theta|`` so the test ``R +- theta == 0``
    is a symbolic zero rather than a floating-point coincidence.
    """
    chart = Chart.parse(chart)
    rad = _radius(model.theta)
    sgn = _sign(chart)
    m = np.arange(model.space.dim, dtype=float)
    if chart is Chart.I or ordering == "left":
        shifts = {"upper": 1, "lower": 0}
    else:
        shifts = {"upper": 0, "lower": 1}
    out = []
    for comp, shift in shifts.items():
        r = rad(m + shift)
        for k in np.flatnonzero(r + sgn * model.theta == 0):
            out.append((comp, int(k)))
    return sorted(out)


def u_chart_orderings(model: DetunedModel, chart=Chart.I):
    """Both product forms of the chart operator: (normalizer left, normalizer right)."""
    chart = Chart.parse(chart)
    sp = model.space
    th = model.theta
    a, ad = annihilation(sp), creation(sp)
    r0, r1 = r_op(model, 0), r_op(model, 1)
    one = identity(sp)
    h0, h1 = _normalizer(model, chart, 0), _normalizer(model, chart, 1)
    if chart is Chart.I:
        core = BlockOperator.from_grid([[r1 + th * one, -a], [ad, r0 + th * one]])
        left = BlockOperator.diag([h1, h0]) @ core
        right = core @ BlockOperator.diag([h1, h0])
    else:
        core = BlockOperator.from_grid([[a, -(r1 - th * one)], [r0 - th * one, ad]])
        left = BlockOperator.diag([h1, h0]) @ core
        right = core @ BlockOperator.diag([h0, h1])
    return left, right


def u_chart(model: DetunedModel, chart=Chart.I, allow_singular: bool = False) -> BlockOperator:
    """The chart diagonalizer, normalizer-on-the-left form.

    Chart I diagonalizes ``H_JC`` as ``U diag(R(N+1), -R(N)) U^dagger`` and
    chart II as ``U diag(R(N), -R(N+1)) U^dagger``.  When the normalizer
    vanishes on the lower vacuum (chart I with theta < 0, chart II with
    theta > 0) a GroundSingularity is raised unless ``allow_singular``, in
    which case the offending row is set to its limiting value, zero.
    """
    chart = Chart.parse(chart)
    bad = singular_set(model, chart)
    if bad and not allow_singular:
        raise GroundSingularity(
            f"chart {chart.value} is singular on {bad} at theta={model.theta}")
    left, right = u_chart_orderings(model, chart)
    gap = float(np.max(np.abs(left.dense - right.dense)))
    if gap > ORDERING_TOL:
        raise ArithmeticError(f"product orderings disagree by {gap:.3e}")
    return BlockOperator(left.dense, left.row_dims, left.col_dims, 2)


def chart_eigenvalues(model: DetunedModel, chart=Chart.I) -> BlockOperator:
    """The diagonal factor matched to each chart."""
    chart = Chart.parse(chart)
    r0, r1 = r_op(model, 0), r_op(model, 1)
    if chart is Chart.I:
        return BlockOperator.diag([r1, -r0])
    return BlockOperator.diag([r0, -r1])


def transition_phi_jc(space: FockSpace) -> BlockOperator:
    """``diag((N+1)^{-1/2} a, a^dagger (N+1)^{-1/2})``, with ``U_II = U_I Phi``."""
    a, ad = annihilation(space), creation(space)
    inv = diag_fn(space, lambda u: 1 / np.sqrt(u), 1)
    return BlockOperator.diag([inv @ a, ad @ inv], valid_band=1)


def transition_phi_jc_alt(space: FockSpace) -> BlockOperator:
    """The equivalent form ``diag(a N^{-1/2}, N^{-1/2} a^dagger)``.

    ``N^{-1/2}`` is undefined on the vacuum; that entry is clamped to zero,
    which is harmless because ``a`` annihilates the vacuum anyway.
    """
    a, ad = annihilation(space), creation(space)
    inv = diag_fn(space, lambda u: 1 / np.sqrt(u), 0)
    return BlockOperator.diag([a @ inv, inv @ ad], valid_band=1)


def projector_p_jc(model: DetunedModel) -> BlockOperator:
    """Projector onto the positive-energy eigenspaces.

    Requires no chart: ``R(N)`` never vanishes for ``theta != 0``.
    """
    th = model.theta
    sp = model.space
    a, ad = annihilation(sp), creation(sp)
    one = identity(sp)
    r0, r1 = r_op(model, 0), r_op(model, 1)
    d = BlockOperator.diag([diag_fn(sp, lambda u: 1 / (2 * _radius(th)(u)), 1),
                            diag_fn(sp, lambda u: 1 / (2 * _radius(th)(u)), 0)])
    core = BlockOperator.from_grid([[r1 + th * one, a], [ad, r0 - th * one]])
    left, right = d @ core, core @ d
    gap = float(np.max(np.abs(left.dense - right.dense)))
    if gap > ORDERING_TOL:
        raise ArithmeticError(f"product orderings disagree by {gap:.3e}")
    return BlockOperator(left.dense, left.row_dims, left.col_dims, 2)


def spectral_decomposition(model: DetunedModel, band: int = 2) -> float:
    """Residual of ``D P - D (1 - P)`` against ``H_JC`` with ``D = diag(R(N+1), R(N))``."""
    p = projector_p_jc(model)
    d = BlockOperator.diag([r_op(model, 1), r_op(model, 0)])
    one = BlockOperator(np.eye(p.dense.shape[0]), p.row_dims, p.col_dims)
    rebuilt = d @ p - d @ (one - p)
    return band_residual(rebuilt, h_jc(model), band)


def evolution_closed(model: DetunedModel, gt: float) -> BlockOperator:
    """Closed form of ``exp(-i gt H_JC)`` as a 2x2 block of functions of N."""
    th = model.theta
    sp = model.space
    rad = _radius(th)
    a, ad = annihilation(sp), creation(sp)

    def cos_f(u):
        return np.cos(gt * rad(u))

    def sinc_f(u):
        r = rad(u)
        return np.sin(gt * r) / r

    c1, c0 = diag_fn(sp, cos_f, 1), diag_fn(sp, cos_f, 0)
    s1, s0 = diag_fn(sp, sinc_f, 1), diag_fn(sp, sinc_f, 0)
    grid = [[c1 - (1j * th) * s1, (-1j) * (s1 @ a)],
            [(-1j) * (s0 @ ad), c0 + (1j * th) * s0]]
    return BlockOperator.from_grid(grid, valid_band=2)


def dirac_string_scan(thetas, space: FockSpace, excited_only: bool = False) -> dict:
    """Singular sets of both charts over a list of detunings.

    The expected set is the lower-component vacuum, for chart I when
    theta < 0 and for chart II when theta > 0, and nothing otherwise.
    With ``excited_only`` the vacuum states are ignored and every set must
    be empty.
    """
    rows = []
    consistent = True
    for th in thetas:
        model = DetunedModel(float(th), space)
        for chart in Chart:
            found = singular_set(model, chart)
            if excited_only:
                found = [s for s in found if s[1] >= 1]
                expected = []
            else:
                hit = th < 0 if chart is Chart.I else th > 0
                expected = [("lower", 0)] if hit else []
            ok = found == expected
            consistent &= ok
            rows.append({
                "theta": float(th),
                "chart": chart.value,
                "singular": [list(s) for s in found],
                "expected": [list(s) for s in expected],
                "matches": ok,
            })
    return {"dim": space.dim, "excited_only": excited_only,
            "consistent": bool(consistent), "entries": rows}
