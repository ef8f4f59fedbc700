"""Verification suites: every identity of the package as a recorded residual.

Each suite is a function ``(config) -> list[CheckRecord]``.  They share
nothing mutable, so :func:`run_verify` may execute them on a thread pool;
records are always assembled in a fixed order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.special import binom, poch

from . import chern, classical, jc, pseudo, representations as rep, veronese as ver
from .errors import ConfigInvalid, DiracString, UnknownSuite
from .fock import BlockOperator, FockSpace, band_residual, identity, reference_exponential, window_residual
from .reports import CheckRecord, ReportDocument

__all__ = ["SUITES", "DEFAULT_CONFIG", "normalize_config", "run_verify"]

DEFAULT_CONFIG = {"cutoff": 64, "band": 2, "tol": None, "seed": 0, "samples": 1000, "workers": 1}

JC_THETAS = (0.3, 1.0, 2.5, -0.3, -1.0, -2.5)
PSEUDO_THETAS = (1.5, 2.2, 3.1, 9.5)


def normalize_config(config: dict | None) -> dict:
    """Merge ``config`` over the defaults and validate it."""
    cfg = dict(DEFAULT_CONFIG)
    for key, value in (config or {}).items():
        if key not in cfg:
            raise ConfigInvalid(f"unknown configuration key {key!r}")
        if value is not None:
            cfg[key] = value
    try:
        cfg["cutoff"], cfg["band"] = int(cfg["cutoff"]), int(cfg["band"])
        cfg["seed"], cfg["samples"] = int(cfg["seed"]), int(cfg["samples"])
        cfg["workers"] = int(cfg["workers"])
        cfg["tol"] = None if cfg["tol"] is None else float(cfg["tol"])
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from exc
    if cfg["cutoff"] < 16:
        raise ConfigInvalid("cutoff must be at least 16")
    if not 1 <= cfg["band"] < cfg["cutoff"] // 4:
        raise ConfigInvalid("band must be positive and well below the cutoff")
    if cfg["tol"] is not None and not cfg["tol"] > 0:
        raise ConfigInvalid("tol must be positive")
    if cfg["samples"] < 1 or cfg["workers"] < 1:
        raise ConfigInvalid("samples and workers must be positive")
    return cfg


class _Recorder:
    def __init__(self, suite: str, cfg: dict):
        self.suite, self.cfg, self.records = suite, cfg, []

    def add(self, name, residual, tol, direction="below", **params):
        if self.cfg["tol"] is not None and direction == "below":
            tol = self.cfg["tol"]
        self.records.append(CheckRecord.make(self.suite, name, params, residual, tol, direction))


def _max(values) -> float:
    return float(max(values, default=0.0))


# classical -------------------------------------------------------------------

def _random_points(rng, count):
    pts = rng.normal(size=(count, 3)) * rng.uniform(1e-3, 10, size=(count, 1))
    return [classical.BerryPoint(*p) for p in pts if np.linalg.norm(p) > 1e-6]


def suite_classical(cfg) -> list[CheckRecord]:
    rec = _Recorder("classical", cfg)
    rng = np.random.default_rng(cfg["seed"])
    pts = _random_points(rng, cfg["samples"])
    proj, diag, trans = [], {c: [] for c in classical.Chart}, []
    for p in pts:
        P = classical.berry_projector(p)
        proj.append(max(np.abs(P @ P - P).max(), np.abs(P - P.conj().T).max(),
                        abs(np.trace(P) - 1)))
        H = classical.berry_hamiltonian(p)
        mats = {}
        for c in classical.Chart:
            try:
                A = classical.berry_diagonalizer(p, c)
            except DiracString:
                continue
            mats[c] = A
            diag[c].append(np.abs(A @ np.diag([p.r, -p.r]) @ A.conj().T - H).max() / p.r)
        if len(mats) == 2 and p.rho > 0:
            phi = classical.berry_transition(p)
            trans.append(np.abs(mats[classical.Chart.I] @ phi - mats[classical.Chart.II]).max())
    rec.add("projector_laws", _max(proj), 1e-12, samples=len(pts))
    for c in classical.Chart:
        rec.add(f"diagonalization_chart_{c.value}", _max(diag[c]), 1e-12, samples=len(diag[c]))
    rec.add("transition", _max(trans), 1e-12, samples=len(trans))

    # chart I fails exactly on the negative z-axis, chart II on the positive one
    wrong = 0
    for z in (-3.0, -1e-3, 1e-3, 3.0):
        for c, should_fail in ((classical.Chart.I, z < 0), (classical.Chart.II, z > 0)):
            try:
                classical.berry_diagonalizer(classical.BerryPoint(0.0, 0.0, z), c)
                failed = False
            except DiracString:
                failed = True
            wrong += failed != should_fail
    rec.add("dirac_string_pattern", float(wrong), 0.5)

    # pseudo (SU(1,1)) model on the upper sheet
    J = classical.J2
    pres = []
    for p in pts:
        q = classical.BerryPoint(p.x, p.y, abs(p.z) + 1.01 * p.rho + 1e-3)
        s = np.sqrt(q.z ** 2 - q.rho ** 2)
        H = classical.pseudo_berry_hamiltonian(q)
        B = classical.pseudo_diagonalizer(q, classical.Chart.I)
        Q = classical.pseudo_projector(q)
        binv = J @ B.conj().T @ J
        pres.append(max(np.abs(B.conj().T @ J @ B - J).max(),
                        np.abs(B @ np.diag([s, -s]) @ binv - H).max() / max(s, 1.0),
                        np.abs(Q @ Q - Q).max() / max(1.0, np.abs(Q).max() ** 2),
                        np.abs(J @ Q @ J - Q.conj().T).max()))
    rec.add("pseudo_model", _max(pres), 1e-10, samples=len(pres))
    return rec.records


# jc --------------------------------------------------------------------------

def suite_jc(cfg) -> list[CheckRecord]:
    rec = _Recorder("jc", cfg)
    space, band = FockSpace(cfg["cutoff"]), cfg["band"]
    phi = jc.transition_phi_jc(space)
    for th in JC_THETAS:
        model = jc.DetunedModel(th, space)
        chart = classical.Chart.I if th > 0 else classical.Chart.II
        U = jc.u_chart(model, chart)
        D = jc.chart_eigenvalues(model, chart)
        H = jc.h_jc(model)
        one = BlockOperator(np.eye(2 * space.dim), U.row_dims, U.col_dims)
        rec.add("diagonalization", band_residual(U @ D @ U.dag, H, band), 1e-10,
                theta=th, chart=chart.value)
        rec.add("unitarity", band_residual(U.dag @ U, one, band), 1e-10,
                theta=th, chart=chart.value)
        u1 = jc.u_chart(model, "I", allow_singular=True)
        u2 = jc.u_chart(model, "II", allow_singular=True)
        rec.add("transition", band_residual(u1 @ phi, u2, band, start=1), 1e-10, theta=th)
        left, mid, right = jc.qdm_factorization(model)
        rec.add("qdm_factorization", band_residual(left @ mid @ right, H, band, start=1),
                1e-10, theta=th)
        rec.add("spectral_decomposition", jc.spectral_decomposition(model, band), 1e-10, theta=th)
    for th in (0.5, -0.5, 2.0, -2.0):
        model = jc.DetunedModel(th, space)
        H = jc.h_jc(model)
        for gt in (0.1, 1.0, 5.0, 20.0):
            E = jc.evolution_closed(model, gt)
            ref = reference_exponential(H, gt)
            rec.add("evolution", band_residual(E, ref, band), 1e-8, theta=th, gt=gt)
            one = BlockOperator(np.eye(2 * space.dim), E.row_dims, E.col_dims)
            rec.add("evolution_norm", band_residual(E.dag @ E, one, band), 1e-9, theta=th, gt=gt)
    grid = [t for t in np.linspace(-3, 3, 41) if abs(t) > 1e-12][:40]
    scan = jc.dirac_string_scan(grid, space)
    rec.add("ground_dirac_strings", float(not scan["consistent"]), 0.5, points=len(grid))
    return rec.records


# pseudo ----------------------------------------------------------------------

def suite_pseudo(cfg) -> list[CheckRecord]:
    rec = _Recorder("pseudo", cfg)
    for th in PSEUDO_THETAS:
        m = pseudo.PseudoModel(th)
        J, V = pseudo.signature(m), pseudo.v_operator(m)
        rec.add("pseudo_unitarity", float(np.abs((V.dag @ J @ V - J).dense).max()), 1e-12, theta=th)
        rec.add("factorization", pseudo.pseudo_factorization(m), 1e-12, theta=th)
        Q = pseudo.projector_q_pjc(m)
        rec.add("projector", float(max(np.abs((Q @ Q - Q).dense).max(),
                                       np.abs((J @ Q @ J - Q.dag).dense).max())), 1e-12, theta=th)
        rec.add("spectral_decomposition", pseudo.pseudo_spectral_residual(m), 1e-12, theta=th)
        H = pseudo.h_pjc(m)
        for gt in (0.1, 1.0, 5.0, 20.0):
            E = pseudo.evolution_closed_pseudo(m, gt)
            ref = reference_exponential(H, gt, hermitian=False)
            rec.add("evolution", float(np.abs(E.dense - ref.dense).max()), 1e-10, theta=th, gt=gt)
            rec.add("evolution_pseudo_norm", float(np.abs((E.dag @ J @ E - J).dense).max()),
                    1e-10, theta=th, gt=gt)
    rec.add("admissible_level", float(pseudo.admissible_level(1.5) != 2), 0.5)
    return rec.records


# veronese --------------------------------------------------------------------

def suite_veronese(cfg) -> list[CheckRecord]:
    rec = _Recorder("veronese", cfg)
    M, band = cfg["cutoff"], cfg["band"]
    for th in (0.5, 1.0, 2.5):
        m = jc.DetunedModel(th, FockSpace(M))
        one = identity(m.space)
        pair = []
        for j in range(5):
            X, Y = ver.x_op(m, j), ver.y_op(m, j)
            pair.append(band_residual(X @ X + Y.dag @ Y, one, band, start=j))
            if j:
                Yp = ver.y_op(m, j - 1)
                pair.append(band_residual(Y.dag @ Y, Yp @ Yp.dag, band, start=j))
        rec.add("xy_pair", _max(pair), 1e-10, theta=th)
        for n in range(1, 5):
            A = ver.veronese_column(m, n).as_block()
            P = ver.veronese_projector(m, n)
            rec.add("column_isometry", band_residual(A.dag @ A, one, n + 1), 1e-9, theta=th, n=n)
            rec.add("projector_idempotent", band_residual(P @ P, P, n + 2), 1e-9, theta=th, n=n)
            Z0 = ver.z_op(m, 0).matrix
            lhs = np.eye(M) + ver.local_column(m, n).gram()
            rhs = np.linalg.matrix_power(np.eye(M) + Z0.conj().T @ Z0, n)
            rec.add("local_gram", band_residual(lhs, rhs, n + 1), 1e-9, theta=th, n=n)
        rec.add("oike_projector",
                band_residual(ver.oike_projector(ver.z_op(m, 0)), jc.projector_p_jc(m), band),
                1e-9, theta=th)
    for th in (1.5, 2.2, 3.1):
        m = pseudo.PseudoModel(th)
        for n in range(1, min(m.level, 5)):
            c = ver.pseudo_veronese_column(m, n)
            g = c.gram(ver.signature_signs(n))
            rec.add("pseudo_column", window_residual(g, np.eye(c.space.dim), [c.input_window]),
                    1e-10, theta=th, n=n)
            Q = ver.pseudo_veronese_projector(m, n)
            rec.add("pseudo_projector", window_residual(Q @ Q, Q, list(c.windows)),
                    1e-10, theta=th, n=n)
        d = ver.bhat_defects(m, 1, 5)
        rec.add("bhat_defect_monotone", float(np.max(np.diff(d, axis=0), initial=-1.0)), 1e-14,
                theta=th)
    return rec.records


# representations -------------------------------------------------------------

def suite_representations(cfg) -> list[CheckRecord]:
    rec = _Recorder("representations", cfg)
    rng = np.random.default_rng(cfg["seed"] + 1)
    closed, hom, unit = [], [], []
    for _ in range(100):
        A = classical.group_exponential(rng.normal(size=3), "su2")
        B = classical.group_exponential(rng.normal(size=3), "su2")
        for j in (0.5, 1, 1.5):
            closed.append(np.abs(rep.spin_rep_su2(j, A) - rep.spin_closed_form(j, A)).max())
        for j in (0.5, 1, 1.5, 2, 2.5):
            pa, pb = rep.spin_rep_su2(j, A), rep.spin_rep_su2(j, B)
            hom.append(np.abs(rep.spin_rep_su2(j, A @ B) - pa @ pb).max())
            unit.append(np.abs(pa.conj().T @ pa - np.eye(len(pa))).max())
    rec.add("closed_forms", _max(closed), 1e-12)
    rec.add("homomorphism", _max(hom), 1e-10)
    rec.add("unitarity", _max(unit), 1e-10)
    M = cfg["cutoff"]
    for th in (0.5, 1.0, 2.5):
        m = jc.DetunedModel(th, FockSpace(M))
        for j, P, n in ((1, rep.nc_phi_one(m), 2), (1.5, rep.nc_phi_three_half(m), 3)):
            win = [rep.phi_window(j, M, cfg["band"])] * (n + 1)
            one = BlockOperator(np.eye(P.dense.shape[0]), P.row_dims, P.col_dims)
            res = max(window_residual(P.dag @ P, one, win), window_residual(P @ P.dag, one, win))
            rec.add("nc_phi_unitary", res, 1e-9, theta=th, j=j)
            col = ver.veronese_column(m, n)
            first = _max(np.abs(P.block(i, 0) - col[i].matrix).max() for i in range(n + 1))
            rec.add("nc_phi_first_column", first, 1e-12, theta=th, j=j)
    for j in (1, 1.5, 2, 3):
        B = classical.group_exponential(rng.normal(size=3) * 0.5, "su11")
        col = rep.su11_rep(j, B)[:, 0]
        rec.add("su11_column_defect", abs(np.vdot(col, col).real - 1), 1e-8, j=j, cutoff=len(col))
    for fold, dim in ((2, 4), (3, 8)):
        T = rep.clebsch_T(fold)
        rec.add("clebsch_orthogonal", float(np.abs(T.T @ T - np.eye(dim)).max()), 1e-14, fold=fold)
        A = classical.group_exponential(rng.normal(size=3), "su2")
        rec.add("tensor_decomposition", rep.tensor_decomposition_su2(A, fold), 1e-12, fold=fold)
    rec.add("nc_tensor_obstruction",
            rep.nc_tensor_obstruction(jc.DetunedModel(1.0, FockSpace(32))), 1e-6, "above",
            theta=1.0, cutoff=32)
    moments = []
    for two_j in range(1, 7):
        j = two_j / 2
        for k in range(min(two_j, 6) + 1):
            for l in range(min(two_j, 6) + 1):
                exact = 1 / binom(two_j, k) if k == l else 0.0
                moments.append(abs(rep.compact_moment(j, k, l) - exact))
    rec.add("compact_moments", _max(moments), 1e-6)
    moments = []
    for two_j in range(2, 7):
        j = two_j / 2
        for k in range(7):
            for l in range(7):
                exact = math.factorial(k) / poch(two_j, k) if k == l else 0.0
                moments.append(abs(rep.noncompact_moment(j, k, l) - exact))
    rec.add("noncompact_moments", _max(moments), 1e-6)
    return rec.records


# chern -----------------------------------------------------------------------

def suite_chern(cfg) -> list[CheckRecord]:
    rec = _Recorder("chern", cfg)
    for n in (1, 2, 3):
        rec.add("chern_number", abs(chern.chern_number(n) - n), 1e-7, n=n)
    return rec.records


SUITES = {
    "classical": suite_classical,
    "jc": suite_jc,
    "pseudo": suite_pseudo,
    "veronese": suite_veronese,
    "representations": suite_representations,
    "chern": suite_chern,
}


def run_verify(suites, config: dict | None = None) -> ReportDocument:
    """Run the named suites and collect their records into a report."""
    names = list(suites) or ["all"]
    for name in names:
        if name != "all" and name not in SUITES:
            raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    if "all" in names:
        names = list(SUITES)
    names = list(dict.fromkeys(names))
    cfg = normalize_config(config)
    if cfg["workers"] > 1:
        with ThreadPoolExecutor(cfg["workers"]) as pool:
            results = list(pool.map(lambda n: SUITES[n](cfg), names))
    else:
        results = [SUITES[n](cfg) for n in names]
    checks = [r for res in results for r in res]
    public = {k: v for k, v in cfg.items() if k != "workers"}
    return ReportDocument.build(seed=cfg["seed"], config={**public, "suites": ",".join(names)},
                                checks=checks)
