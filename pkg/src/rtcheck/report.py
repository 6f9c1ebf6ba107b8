"""Verification reports: per-identity residual records with a stable,
versioned JSON serialization and a human-readable text table."""

from __future__ import annotations

import json
from dataclasses import dataclass

SCHEMA_VERSION = 1
TOOLKIT_VERSION = "0.1.0"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    max_residual: float
    worst_momenta: tuple[float, ...]
    samples: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "max_residual": self.max_residual,
            "worst_momenta": list(self.worst_momenta),
            "samples": self.samples,
            "pass": self.passed,
        }

    @staticmethod
    def from_dict(d: dict) -> "CheckResult":
        return CheckResult(
            check_id=d["id"],
            max_residual=float(d["max_residual"]),
            worst_momenta=tuple(d["worst_momenta"]),
            samples=int(d["samples"]),
            passed=bool(d["pass"]),
        )


@dataclass(frozen=True)
class VerificationReport:
    config: dict
    checks: tuple[CheckResult, ...]
    tolerance: float

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "toolkit_version": TOOLKIT_VERSION,
            "config": self.config,
            "tolerance": self.tolerance,
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
        }

    @staticmethod
    def from_dict(d: dict) -> "VerificationReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return VerificationReport(
            config=d["config"],
            checks=tuple(CheckResult.from_dict(c) for c in d["checks"]),
            tolerance=float(d["tolerance"]),
        )


def emit_report(report: VerificationReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2)
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = []
    cfg = report.config
    lines.append(f"rtcheck report (schema {SCHEMA_VERSION}, toolkit {TOOLKIT_VERSION})")
    lines.append(f"config: {json.dumps(cfg, sort_keys=True)}")
    lines.append(f"tolerance: {report.tolerance:.3e}")
    if not report.checks:
        lines.append("no checks requested")
    else:
        width = max(len(c.check_id) for c in report.checks) + 2
        lines.append(f"{'check':<{width}} {'max residual':>13} {'n':>5}  verdict  worst momenta")
        for c in report.checks:
            verdict = "pass" if c.passed else "FAIL"
            worst = ", ".join(f"{m:+.4f}" for m in c.worst_momenta)
            lines.append(
                f"{c.check_id:<{width}} {c.max_residual:>13.3e} {c.samples:>5}  {verdict:<7}  ({worst})"
            )
    n_fail = sum(1 for c in report.checks if not c.passed)
    verdict = "PASS" if report.all_pass else f"FAIL ({n_fail}/{len(report.checks)} checks failed)"
    lines.append(f"global: {verdict}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))
