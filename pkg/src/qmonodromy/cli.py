"""Command-line front end: run identity checks or export objects.

Exit codes: 0 when every residual vanishes, 1 when some identity fails,
2 on a configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .affine import GradingError
from .algebra import ConfigError
from .checks import CHECK_IDS, DEFAULT_GRADINGS, DEFAULT_ORDER, DEFAULT_REPS, Context, Grading, plan_jobs, run_check
from .export import FORMATS, TARGETS, export
from .representations import make_representation
from .report import CheckResult
from .scalars import LatticeError, SampleError, make_field

CONFIG_ERRORS = (ConfigError, SampleError, LatticeError, GradingError)


@dataclass
class RunConfig:
    checks: list[str] = field(default_factory=lambda: list(CHECK_IDS))
    reps: list[str] = field(default_factory=lambda: list(DEFAULT_REPS))
    gradings: list[Grading] = field(default_factory=lambda: list(DEFAULT_GRADINGS))
    order: int = DEFAULT_ORDER
    q_mode: str | None = None
    out: str | None = None
    flip_sign: bool = False
    jobs: int = 1
    allow_large: bool = False

    def validate(self) -> None:
        if self.order < 1:
            raise ConfigError("order must be at least 1")
        for c in self.checks:
            if c not in CHECK_IDS:
                raise ConfigError(f"unknown check {c!r}; choose from {', '.join(CHECK_IDS)}")
        for s in self.gradings:
            if len(s) != 3 or sum(s) < 1:
                raise ConfigError(f"invalid grading {s}: need three integers with s0 + s1 + s2 >= 1")
        # parse everything up front so bad input fails before any check runs
        fld = make_field(self.q_mode, self.order)
        for r in self.reps:
            make_representation(r, fld, self.allow_large)

    def as_dict(self) -> dict:
        return {
            "checks": self.checks, "reps": self.reps, "gradings": [list(s) for s in self.gradings],
            "order": self.order, "q": self.q_mode or "symbolic", "flip-sign-debug": self.flip_sign,
        }


def parse_grading(text: str) -> Grading:
    try:
        parts = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError as exc:
        raise ConfigError(f"invalid grading {text!r}") from exc
    if len(parts) != 3:
        raise ConfigError(f"invalid grading {text!r}: need s0,s1,s2")
    return parts  # type: ignore[return-value]


_worker_ctx: Context | None = None


def _init_worker(q_mode: str | None, order: int, flip: bool, allow_large: bool) -> None:
    global _worker_ctx
    _worker_ctx = Context(q_mode, order, flip, allow_large)


def _run_job(job: tuple[str, str, Grading | None]) -> CheckResult:
    assert _worker_ctx is not None
    return run_check(_worker_ctx, *job)


def run(config: RunConfig) -> tuple[int, dict]:
    config.validate()
    jobs = plan_jobs(config.checks, config.reps, config.gradings)
    init = (config.q_mode, config.order, config.flip_sign, config.allow_large)
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=init) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        _init_worker(*init)
        results = [_run_job(j) for j in jobs]
    failed = sum(1 for r in results if not r.passed)
    report = {
        "config": config.as_dict(),
        "results": [r.as_dict() for r in results],
        "summary": {"total": len(results), "passed": len(results) - failed, "failed": failed},
    }
    return (1 if failed else 0), report


def _run_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmonodromy", description="Certify monodromy-operator identities exactly.")
    p.add_argument("--checks", default=",".join(CHECK_IDS), help="comma-separated check ids")
    p.add_argument("--reps", default=",".join(DEFAULT_REPS), help="comma-separated: fund, trivial, tensor:n")
    p.add_argument("--s", action="append", metavar="S0,S1,S2", help="grading (repeatable)")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--q", default="symbolic", help="'symbolic' or a rational r (q = r^6)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--flip-sign-debug", action="store_true", help="negate one entry of the monodromy (test hook)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-large", action="store_true", help="permit tensor powers above 3")
    return p


def _export_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmonodromy export")
    p.add_argument("target", help=f"one of {', '.join(TARGETS)}")
    p.add_argument("--rep", help="evaluate in this representation as well")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--q", default="symbolic")
    p.add_argument("--format", default="json", choices=FORMATS)
    p.add_argument("--out")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "export":
            a = _export_parser().parse_args(argv[1:])
            q = None if a.q == "symbolic" else a.q
            rep = make_representation(a.rep, make_field(q, a.order)) if a.rep else None
            _emit(export(a.target, rep, a.order, a.format), a.out)
            return 0
        a = _run_parser().parse_args(argv)
        config = RunConfig(
            checks=[c.strip() for c in a.checks.split(",") if c.strip()],
            reps=[r.strip() for r in a.reps.split(",") if r.strip()],
            gradings=[parse_grading(s) for s in a.s] if a.s else list(DEFAULT_GRADINGS),
            order=a.order,
            q_mode=None if a.q == "symbolic" else a.q,
            out=a.out,
            flip_sign=a.flip_sign_debug,
            jobs=a.jobs,
            allow_large=a.allow_large,
        )
        config.validate()
    except (*CONFIG_ERRORS, ValueError, ZeroDivisionError) as exc:
        # ValueError here only comes from malformed numbers in the flags
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        code, report = run(config)
    except CONFIG_ERRORS as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    _emit(text, config.out)
    if config.out:
        for r in report["results"]:
            g = "" if r["grading"] is None else " s=" + ",".join(map(str, r["grading"]))
            line = f"{r['status'].upper():4} {r['check-id']} [{r['representation']}{g}]"
            if r["first-failing-coefficient"]:
                line += f"  first failure: {r['first-failing-coefficient']}"
            print(line)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
