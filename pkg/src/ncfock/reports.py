"""Report records and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import IOFailure

__all__ = ["REPORT_VERSION", "CheckRecord", "ReportDocument", "atomic_write", "format_float",
           "write_csv"]

REPORT_VERSION = "1.0"


def format_float(x: float) -> str:
    """Seventeen significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    name: str
    params: dict
    residual: float
    tol: float
    direction: str = "below"
    passed: bool = field(default=False)

    @classmethod
    def make(cls, suite, name, params, residual, tol, direction="below") -> "CheckRecord":
        if direction not in ("below", "above"):
            raise ValueError("direction must be 'below' or 'above'")
        residual = float(residual)
        ok = residual < tol if direction == "below" else residual > tol
        ok = ok and math.isfinite(residual)
        clean = {k: (v.item() if hasattr(v, "item") else v) for k, v in params.items()}
        return cls(suite, name, clean, residual, float(tol), direction, bool(ok))

    def flat(self) -> dict:
        """Flat mapping with parameters as ``param_<key>`` columns."""
        out = {"suite": self.suite, "name": self.name}
        out.update({f"param_{k}": v for k, v in sorted(self.params.items())})
        out.update({"residual": self.residual, "tol": self.tol,
                    "direction": self.direction, "pass": self.passed})
        return out


@dataclass
class ReportDocument:
    version: str
    seed: int
    config: dict
    checks: list
    summary: dict
    timestamp: str = ""

    @classmethod
    def build(cls, seed: int, config: dict, checks: list, timestamp: str | None = None):
        passed = sum(c.passed for c in checks)
        summary = {"total": len(checks), "passed": passed, "failed": len(checks) - passed}
        if timestamp is None:
            timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return cls(REPORT_VERSION, int(seed), dict(config), list(checks), summary, timestamp)

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def to_dict(self) -> dict:
        return {"version": self.version, "timestamp": self.timestamp, "seed": self.seed,
                "config": self.config, "summary": self.summary,
                "checks": [c.flat() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        rows = [c.flat() for c in self.checks]
        params = sorted({k for r in rows for k in r if k.startswith("param_")})
        cols = ["suite", "name", *params, "residual", "tol", "direction", "pass"]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: format_float(v) if isinstance(v, float) else v for k, v in r.items()})
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        checks = []
        for row in data["checks"]:
            params = {k[6:]: v for k, v in row.items() if k.startswith("param_")}
            checks.append(CheckRecord(row["suite"], row["name"], params, row["residual"],
                                      row["tol"], row["direction"], row["pass"]))
        return cls(data["version"], data["seed"], data["config"], checks, data["summary"],
                   data.get("timestamp", ""))


def atomic_write(path, text: str) -> Path:
    """Write ``text`` to a temporary sibling file, then rename it into place."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IOFailure(f"could not write {path}: {exc}") from exc
    return path


def write_csv(path, header, rows) -> Path:
    """CSV with every float at full double precision."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, (float, int)) and not isinstance(v, bool)
                    else v for v in row])
    return atomic_write(path, buf.getvalue())
