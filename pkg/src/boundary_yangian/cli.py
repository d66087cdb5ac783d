"""Command-line verification harness.

    boundary-yangian verify <suite> [--max-mode N] [--format json|text] [--output PATH]
    boundary-yangian export <presentation> [--bound N] [--max-mode N] [--output PATH]

Exit status: 0 all checks pass, 1 some check failed, 2 usage error,
3 internal error (including checks that could not be evaluated).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .checks import Check
from .ncalg import e, h
from .scalarfield import CapacityError, U, V

SCHEMA = "boundary-yangian-report/1"
SUITES = ("hopf", "limit", "cybe", "colie", "factor", "twist", "ybe", "pqybe", "series", "gfmodes")
FAULTS = ("table", "tensor", "exponent")
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class SuiteConfig:
    suite: str
    max_mode: int = 3
    format: str = "json"
    output: str | None = None
    timings: bool = False
    inject_fault: str | None = None

    def __post_init__(self):
        if self.suite not in SUITES + ("all",):
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.max_mode < 1:
            raise ValueError("max_mode must be at least 1")
        if self.format not in ("json", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.inject_fault not in (None,) + FAULTS:
            raise ValueError(f"unknown fault {self.inject_fault!r}")


class _Context:
    """Presentations shared by the suites of one run, built on first use."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.bound = max(6, 2 * config.max_mode)
        self._cache: dict = {}

    def _get(self, key: str, build: Callable):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def y_sl2(self):
        from .presentations.algebras import build_y_sl2, corrupt

        def build():
            pres = build_y_sl2(self.bound)
            if self.config.inject_fault == "table":
                pres = corrupt(pres, e(1), e(0))
            return pres
        return self._get("y_sl2", build)

    @property
    def boundary(self):
        from .presentations.algebras import build_boundary
        return self._get("boundary", lambda: build_boundary(self.bound))

    @property
    def factor(self):
        from .presentations.algebras import quotient_by_hp
        return self._get("factor", lambda: quotient_by_hp(self.boundary))


def _prefixed(prefix: str, checks: list[Check]) -> list[Check]:
    for c in checks:
        c.name = f"{prefix}/{c.name}"
    return checks


def suite_hopf(ctx: _Context) -> list[Check]:
    from .presentations.hopf import p_divisibility_checks, verify_hopf

    m = ctx.config.max_mode
    return (_prefixed("y_sl2", verify_hopf(ctx.y_sl2, m, jacobi_max=max(m, 4)))
            + _prefixed("boundary", verify_hopf(ctx.boundary, m) + p_divisibility_checks(ctx.boundary, m))
            + _prefixed("factor", verify_hopf(ctx.factor, m)))


def suite_limit(ctx: _Context) -> list[Check]:
    from .presentations.limit import parametrize_and_limit

    report = parametrize_and_limit(max(2, ctx.config.max_mode), boundary=ctx.boundary)
    notes = [Check(f"limit-normalizer[{k}]", True, detail=v) for k, v in report.normalizers.items()]
    return report.checks + notes


def suite_cybe(ctx: _Context) -> list[Check]:
    from .cybe import SpectralTensor, builtin, cybe_checks, cybe_residual, parametrized_r_divergence

    checks = cybe_checks() + parametrized_r_divergence().checks
    if ctx.config.inject_fault == "tensor":
        bad = SpectralTensor(2, {("e", "f"): 1 / (U - V)})
        res = cybe_residual(bad, builtin("sl2"))
        checks.append(Check("cybe[(e@f)/(u-v) on sl2]", not res, None if not res else res.to_text()))
    return checks


def suite_colie(ctx: _Context) -> list[Check]:
    from .cybe import compare_colie, boundary_r

    report = compare_colie(ctx.boundary, boundary_r())
    return report.checks


def suite_factor(ctx: _Context) -> list[Check]:
    from .presentations.algebras import closed_form_factor_table, factor_current_coproduct
    from .presentations.currents import factor_current_checks
    from .presentations.hopf import verify_hopf_ideal

    m = ctx.config.max_mode
    out = []
    ok, why = verify_hopf_ideal(ctx.boundary, {"Hp"}, detail=True)
    out.append(Check("hopf-ideal[h']", ok, why))
    closed = closed_form_factor_table(ctx.factor.bound)
    for (a, b), val in sorted(closed.entries.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        if a.mode <= m and b.mode <= m:
            diff = ctx.factor.bracket(a, b) - val
            out.append(Check(f"closed-form[{a},{b}]", not diff, None if not diff else str(diff)))
    d = ctx.factor.coproduct(h(1)) - factor_current_coproduct(1)
    out.append(Check("Delta(h_1)=h_1@1+1@h_1-4p f_0@e_0", not d, None if not d else str(d)))
    return out + factor_current_checks(ctx.factor, m)


def suite_twist(ctx: _Context) -> list[Check]:
    from .evalrep import MatrixRF, NotNilpotentError, evaluation_checks, exp_nilpotent, twist_check

    m = max(1, ctx.config.max_mode - 1)
    out = twist_check(ctx.factor, max_mode=m) + evaluation_checks(ctx.config.max_mode)
    if ctx.config.inject_fault == "exponent":
        try:
            exp_nilpotent(MatrixRF.diag(1, 2))
            out.append(Check("exp-nilpotent[diag(1,2)]", True))
        except NotNilpotentError as exc:
            out.append(Check("exp-nilpotent[diag(1,2)]", False, None, str(exc), errored=True))
    return out


def suite_ybe(ctx: _Context) -> list[Check]:
    from .evalrep import r_matrix_checks
    return r_matrix_checks()


def suite_pqybe(ctx: _Context) -> list[Check]:
    from .evalrep import pqybe_check

    m = max(1, ctx.config.max_mode - 1)
    return [pqybe_check(g, factor=ctx.factor) for g in ctx.factor.generators(m)]


def suite_series(ctx: _Context) -> list[Check]:
    from .presentations.currents import boundary_current_checks, check_molev_coproduct

    m = ctx.config.max_mode
    return check_molev_coproduct(m, ctx.y_sl2) + boundary_current_checks(ctx.boundary, m)


def suite_gfmodes(ctx: _Context) -> list[Check]:
    from .presentations.currents import gf_suite

    m = ctx.config.max_mode
    return (_prefixed("y_sl2", gf_suite(ctx.y_sl2, "y_sl2", m))
            + _prefixed("boundary", gf_suite(ctx.boundary, "boundary", m))
            + _prefixed("factor", gf_suite(ctx.factor, "factor", m)))


SUITE_FUNCS = {
    "hopf": suite_hopf, "limit": suite_limit, "cybe": suite_cybe, "colie": suite_colie,
    "factor": suite_factor, "twist": suite_twist, "ybe": suite_ybe, "pqybe": suite_pqybe,
    "series": suite_series, "gfmodes": suite_gfmodes,
}


def _run_suite(name: str, ctx: _Context) -> tuple[list[Check], float]:
    start = time.perf_counter()
    try:
        checks = SUITE_FUNCS[name](ctx)
    except CapacityError as exc:
        checks = [Check(f"{name}-capacity", False, None, str(exc), errored=True)]
    return checks, time.perf_counter() - start


def run(config: SuiteConfig) -> tuple[dict, int]:
    """Run a suite; returns the report and the process exit status."""
    ctx = _Context(config)
    names = SUITES if config.suite == "all" else (config.suite,)
    records = []
    counts = {"pass": 0, "fail": 0, "error": 0}
    for name in names:
        checks, seconds = _run_suite(name, ctx)
        for c in checks:
            rec = {"suite": name, "name": c.name, "status": c.status}
            if c.status == "fail":
                rec["residual"] = c.residual if c.residual is not None else ""
            if c.detail:
                rec["detail"] = c.detail
            records.append(rec)
            counts[c.status] += 1
        if config.timings:
            records.append({"suite": name, "name": "wall-time", "status": "pass",
                            "seconds": round(seconds, 3)})
    if counts["fail"]:
        status, code = "fail", EXIT_FAIL
    elif counts["error"]:
        status, code = "error", EXIT_INTERNAL
    else:
        status, code = "pass", EXIT_PASS
    echo = {"suite": config.suite, "max_mode": config.max_mode, "format": config.format}
    if config.inject_fault:
        echo["inject_fault"] = config.inject_fault
    report = {
        "schema": SCHEMA,
        "tool": "boundary-yangian",
        "version": __version__,
        "config": echo,
        "status": status,
        "summary": {"total": sum(counts.values()), "passed": counts["pass"],
                    "failed": counts["fail"], "errored": counts["error"]},
        "checks": records,
    }
    return report, code


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    lines = [f"boundary-yangian {report['version']}  suite={report['config']['suite']}"
             f"  max_mode={report['config']['max_mode']}"]
    for rec in report["checks"]:
        line = f"{rec['status'].upper():5} {rec['suite']:8} {rec['name']}"
        if "seconds" in rec:
            line += f"  ({rec['seconds']} s)"
        lines.append(line)
        if "residual" in rec:
            lines.append(f"      residual: {rec['residual']}")
        if rec["status"] == "error" and "detail" in rec:
            lines.append(f"      error: {rec['detail']}")
    s = report["summary"]
    lines.append(f"{report['status'].upper()}: {s['passed']} passed, {s['failed']} failed, "
                 f"{s['errored']} errored of {s['total']}")
    return "\n".join(lines) + "\n"


def export_tables(target: str, bound: int = 6, max_mode: int = 2) -> str:
    """Table dump plus coproducts of all generators with mode <= max_mode."""
    from .presentations.algebras import PRESENTATIONS

    if target not in PRESENTATIONS:
        raise ValueError(f"unknown presentation {target!r}")
    pres = PRESENTATIONS[target](bound)
    lines = [f"# presentation {pres.name}", f"# bound {pres.bound}", "# table"]
    lines.append(pres.table.dump().rstrip("\n"))
    lines.append("# coproducts")
    for g in pres.generators(max_mode):
        lines.append(f"Delta({g}) = {pres.coproduct(g)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boundary-yangian", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--max-mode", type=int, default=3)
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--output", default=None)
    v.add_argument("--timings", action="store_true", help="add wall-time records (breaks byte-identity)")
    v.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)

    x = sub.add_parser("export", help="dump a presentation's table and coproducts")
    x.add_argument("presentation", choices=("y_sl2", "boundary", "factor"))
    x.add_argument("--bound", type=int, default=6)
    x.add_argument("--max-mode", type=int, default=2)
    x.add_argument("--output", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            if args.max_mode < 1:
                parser.error("--max-mode must be at least 1")
            config = SuiteConfig(args.suite, args.max_mode, args.format, args.output,
                                 args.timings, args.inject_fault)
            report, code = run(config)
            _emit(render(report, config.format), config.output)
            return code
        if args.bound < 1 or args.max_mode < 0 or args.max_mode > args.bound:
            parser.error("need 1 <= --bound and 0 <= --max-mode <= --bound")
        _emit(export_tables(args.presentation, args.bound, args.max_mode), args.output)
        return EXIT_PASS
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort guard for the exit-status contract
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
