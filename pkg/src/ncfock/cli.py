"""Command-line front end.

Subcommands::

    ncfock verify     [--suite NAME ...] [--cutoff M] [--band B] [--tol T] [--seed S]
    ncfock evolve     --model {jc,pseudo} --theta T [--initial up:0] [--gt-max 10] [--steps 101]
    ncfock dirac-scan --theta=-2,-1,1,2 [--cutoff M] [--excited-only]
    ncfock veronese   --theta T [--degree N]
    ncfock chern      --degree N

Exit status is 0 when every check passes, 1 when any fails and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, jc, pseudo
from . import veronese as ver
from .chern import chern_number
from .errors import ConfigInvalid, IOFailure, ModelInvalid, NCFockError
from .fock import FockSpace, band_residual, identity
from .quadrature import QuadratureConfig
from .reports import REPORT_VERSION, CheckRecord, ReportDocument, atomic_write, format_float, write_csv
from .suites import SUITES, run_verify

__all__ = ["main", "build_parser", "parse_initial", "gt_grid", "run_evolve", "run_dirac_scan",
           "veronese_table", "chern_report"]


# initial states and grids ---------------------------------------------------

def parse_initial(spec: str):
    """``"up:3"`` / ``"down:0"`` for a number state, ``"coherent:1.5"`` for a coherent state.

    Coherent states sit in the upper component.
    """
    try:
        kind, value = spec.split(":")
        kind = kind.strip().lower()
        if kind in ("up", "down"):
            return kind, int(value)
        if kind == "coherent":
            return kind, complex(value.replace(" ", ""))
    except ValueError:
        pass
    raise ConfigInvalid(f"bad initial state {spec!r}; use up:K, down:K or coherent:ALPHA")


def _component_state(spec, dims) -> np.ndarray:
    kind, value = spec
    psi = np.zeros(sum(dims), dtype=complex)
    if kind == "coherent":
        n = np.arange(dims[0])
        logfact = np.cumsum(np.log(np.maximum(n, 1)))
        mag = np.exp(-abs(value) ** 2 / 2 + n * np.log(abs(value) or 1.0) - logfact / 2)
        if value == 0:
            mag = (n == 0).astype(float)
        amp = mag * np.exp(1j * n * np.angle(value))
        psi[: dims[0]] = amp / np.linalg.norm(amp)
        return psi
    comp = 0 if kind == "up" else 1
    if not 0 <= value < dims[comp]:
        raise ModelInvalid(f"Fock index {value} outside the {kind} component of size {dims[comp]}")
    psi[sum(dims[:comp]) + value] = 1.0
    return psi


def gt_grid(gt_max: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ConfigInvalid("the gt grid must contain at least one point")
    if not gt_max >= 0:
        raise ConfigInvalid("gt_max must be non-negative")
    return np.linspace(0.0, gt_max, steps)


# evolve ----------------------------------------------------------------------

def run_evolve(model_kind: str, theta: float, initial, grid, out=None, cutoff: int = 64):
    """Populations, inversion and (pseudo-)norm along the closed-form evolution.

    Returns ``(header, rows)`` and writes a CSV when ``out`` is given.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ConfigInvalid("the gt grid must contain at least one point")
    spec = parse_initial(initial) if isinstance(initial, str) else initial
    if model_kind == "jc":
        model = jc.DetunedModel(theta, FockSpace(cutoff))
        dims = (cutoff, cutoff)
        signs = np.ones(2 * cutoff)
        propagate = lambda gt: jc.evolution_closed(model, gt).dense  # noqa: E731
        norm_name = "norm"
    elif model_kind == "pseudo":
        model = pseudo.PseudoModel(theta)
        dims = model.dims
        signs = np.r_[np.ones(dims[0]), -np.ones(dims[1])]
        propagate = lambda gt: pseudo.evolution_closed_pseudo(model, gt).dense  # noqa: E731
        norm_name = "pseudo_norm"
    else:
        raise ConfigInvalid(f"unknown model kind {model_kind!r}")
    psi0 = _component_state(spec, dims)
    header = ["gt", "p_up", "p_down", "inversion", norm_name]
    rows = []
    for gt in grid:
        psi = propagate(gt) @ psi0
        p = np.abs(psi) ** 2
        up, down = float(p[: dims[0]].sum()), float(p[dims[0]:].sum())
        rows.append([float(gt), up, down, up - down, float(np.sum(signs * p))])
    if out is not None:
        write_csv(out, header, rows)
    return header, rows


# dirac scan ------------------------------------------------------------------

def run_dirac_scan(theta_grid, cutoff: int = 64, out=None, excited_only: bool = False) -> dict:
    thetas = [float(t) for t in theta_grid]
    if not thetas:
        raise ConfigInvalid("empty theta grid")
    if any(t == 0 for t in thetas):
        raise ConfigInvalid("theta = 0 is not allowed in a Dirac-string scan")
    result = jc.dirac_string_scan(thetas, FockSpace(cutoff), excited_only=excited_only)
    result = {"version": REPORT_VERSION, **result}
    if out is not None:
        atomic_write(out, json.dumps(result, indent=2) + "\n")
    return result


# veronese table -------------------------------------------------------------

def veronese_table(theta: float, degree: int, cutoff: int = 64) -> list[CheckRecord]:
    """Residuals of the Veronese identities for ``n = 1..degree``."""
    if degree < 1:
        raise ConfigInvalid("degree must be positive")
    m = jc.DetunedModel(theta, FockSpace(cutoff))
    one = identity(m.space)
    z0 = ver.z_op(m, 0).matrix
    records = []
    for n in range(1, degree + 1):
        if n + 2 >= cutoff // 2:
            raise ConfigInvalid("degree too large for the cutoff")
        a = ver.veronese_column(m, n).as_block()
        p = ver.veronese_projector(m, n)
        lhs = np.eye(cutoff) + ver.local_column(m, n).gram()
        rhs = np.linalg.matrix_power(np.eye(cutoff) + z0.conj().T @ z0, n)
        params = {"theta": theta, "n": n, "cutoff": cutoff}
        records += [
            CheckRecord.make("veronese", "column_isometry", params,
                             band_residual(a.dag @ a, one, n + 1), 1e-9),
            CheckRecord.make("veronese", "projector_idempotent", params,
                             band_residual(p @ p, p, n + 2), 1e-9),
            CheckRecord.make("veronese", "local_gram", params,
                             band_residual(lhs, rhs, n + 1), 1e-9),
        ]
    return records


def chern_report(degree: int, tol: float = 1e-10) -> CheckRecord:
    value = chern_number(degree, QuadratureConfig(target_tol=tol))
    return CheckRecord.make("chern", "chern_number", {"n": degree, "value": value,
                                                      "exact": degree},
                            abs(value - degree), max(tol, 1e-7) * max(1, degree))


# argument parsing -----------------------------------------------------------

def _theta_list(text: str):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad theta list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncfock", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theta=None):
        p.add_argument("--cutoff", type=int, default=64, help="Fock space dimension M")
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if theta == "one":
            p.add_argument("--theta", type=float, required=True)
        elif theta == "list":
            p.add_argument("--theta", type=_theta_list, default=[-2.0, -1.0, 1.0, 2.0],
                           help="comma-separated detunings")

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", action="append", default=None,
                   help=f"one of {', '.join(SUITES)} or all; repeatable")
    p.add_argument("--band", type=int, default=2)
    p.add_argument("--tol", type=float, default=None, help="override every upper tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("evolve", help="closed-form time evolution as CSV")
    common(p, "one")
    p.add_argument("--model", choices=("jc", "pseudo"), default="jc")
    p.add_argument("--initial", default="up:0")
    p.add_argument("--gt-max", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=101)

    p = sub.add_parser("dirac-scan", help="singular sets of both charts over a theta grid")
    common(p, "list")
    p.add_argument("--excited-only", action="store_true")

    p = sub.add_parser("veronese", help="residual table of the Veronese identities")
    common(p, "one")
    p.add_argument("--degree", type=int, default=4)

    p = sub.add_parser("chern", help="first Chern number of the pulled-back bundle")
    common(p)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-10)
    return parser


def _emit(text: str, out):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _records_text(records, fmt: str, seed: int = 0, config=None) -> str:
    doc = ReportDocument.build(seed, config or {}, records)
    return doc.to_json() if fmt == "json" else doc.to_csv()


def _dispatch(args) -> int:
    if args.command == "verify":
        cfg = {"cutoff": args.cutoff, "band": args.band, "tol": args.tol, "seed": args.seed,
               "samples": args.samples, "workers": args.workers}
        doc = run_verify(args.suite or ["all"], cfg)
        _emit(doc.to_json() if args.format == "json" else doc.to_csv(), args.out)
        return 0 if doc.ok else 1

    if args.command == "evolve":
        grid = gt_grid(args.gt_max, args.steps)
        header, rows = run_evolve(args.model, args.theta, args.initial, grid, None, args.cutoff)
        if args.format == "csv":
            lines = [",".join(header)] + [",".join(format_float(v) for v in r) for r in rows]
            _emit("\n".join(lines) + "\n", args.out)
        else:
            _emit(json.dumps({"columns": header, "rows": rows}, indent=1) + "\n", args.out)
        return 0

    if args.command == "dirac-scan":
        result = run_dirac_scan(args.theta, args.cutoff, None, args.excited_only)
        if args.format == "json":
            _emit(json.dumps(result, indent=2) + "\n", args.out)
        else:
            lines = ["theta,chart,singular,expected,matches"]
            for e in result["entries"]:
                sing = ";".join(f"{c}:{k}" for c, k in e["singular"])
                exp = ";".join(f"{c}:{k}" for c, k in e["expected"])
                lines.append(f"{format_float(e['theta'])},{e['chart']},{sing},{exp},{e['matches']}")
            _emit("\n".join(lines) + "\n", args.out)
        return 0 if result["consistent"] else 1

    if args.command == "veronese":
        records = veronese_table(args.theta, args.degree, args.cutoff)
        _emit(_records_text(records, args.format), args.out)
        return 0 if all(r.passed for r in records) else 1

    if args.command == "chern":
        rec = chern_report(args.degree, args.tol)
        if args.out:
            _emit(_records_text([rec], args.format), args.out)
        print(f"integral = {format_float(rec.params['value'])}  exact = {args.degree}  "
              f"error = {rec.residual:.3e}")
        return 0 if rec.passed else 1
    raise AssertionError(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NCFockError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
