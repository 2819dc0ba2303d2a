"""Command-line front end.

    relclass hminus --p 23 --d all
    relclass verify n-parity --pmax 5000
    relclass table --mersenne --plot ratios.svg

Exit codes: 0 all pass, 1 verification failure, 2 invalid input,
3 resource or precision limit (including indeterminate verdicts),
4 internal inconsistency between independent computations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import mpmath

from . import analytic, suites
from .bounded import Verdict
from .classnumber import DEFAULT_ORBIT_CAP, FieldSpec, compute
from .errors import InvalidInput, RelclassError
from .numtheory import euler_phi, is_prime, mersenne_exponent, odd_divisors

log = logging.getLogger("relclass")

PRECISION_ENV = "RELCLASS_PRECISION"
HMINUS_COLUMNS = ["p", "d", "m", "w", "h_exact", "h_float", "h_err", "bound_amgm", "bound_special", "ratio_r", "envelope"]
EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_RESOURCE, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass
class JobConfig:
    command: str
    p: int | None = None
    pmin: int = 3
    pmax: int | None = None
    d: str = "all"
    mersenne: bool = False
    float_only: bool = False
    precision: int = 53
    cutoff: int = analytic.DEFAULT_CUTOFF
    jobs: int = 1
    fmt: str = "human"
    output: str | None = None
    suite: str | None = None
    plot: str | None = None
    sigma1_over_m: bool = False
    phi_d_max: int = 4
    orbit_cap: int = DEFAULT_ORBIT_CAP

    def validate(self) -> None:
        if self.precision < 32:
            raise InvalidInput("precision must be at least 32 bits")
        if self.fmt not in ("csv", "json", "human"):
            raise InvalidInput(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise InvalidInput("jobs must be >= 1")
        if self.p is not None and (self.p < 3 or not is_prime(self.p)):
            raise InvalidInput(f"--p {self.p} is not an odd prime")
        if self.pmax is not None and self.pmax < self.pmin:
            raise InvalidInput("empty prime range")


def read_config_file(path: str) -> dict:
    """``key = value`` lines; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidInput(f"bad config line: {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _coerce(name: str, raw):
    kinds = {f.name: f.type for f in fields(JobConfig)}
    kind = kinds.get(name)
    if kind is None:
        raise InvalidInput(f"unknown config key {name!r}")
    if not isinstance(raw, str):
        return raw
    if "bool" in kind:
        return raw.lower() in ("1", "true", "yes", "on")
    if "int" in kind:
        return int(raw)
    return raw


def build_config(args: argparse.Namespace) -> JobConfig:
    """flags > config file > environment > defaults."""
    values: dict = {}
    env = os.environ.get(PRECISION_ENV)
    if env:
        values["precision"] = int(env)
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for k, v in vars(args).items():
        if k in ("config", "func", "verbose") or v is None:
            continue
        values[k] = v
    cfg = JobConfig(**{k: _coerce(k, v) for k, v in values.items()})
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# hminus rows
# ---------------------------------------------------------------------------


def _r53(x) -> mpmath.mpf:
    with mpmath.workprec(53):
        return +mpmath.mpf(x)


def _fmt_mpf(x) -> str:
    return mpmath.libmp.to_str(_r53(x)._mpf_, 17)


@dataclass
class HMinusRow:
    p: int
    d: int
    m: int
    w: int
    h_exact: int | None
    h_float: mpmath.mpf
    h_err: mpmath.mpf
    bound_amgm: mpmath.mpf
    bound_special: dict = field(default_factory=dict)
    ratio_r: float = math.nan
    envelope: float = math.nan

    def to_record(self) -> dict:
        return {
            "p": str(self.p),
            "d": str(self.d),
            "m": str(self.m),
            "w": str(self.w),
            "h_exact": "" if self.h_exact is None else str(self.h_exact),
            "h_float": _fmt_mpf(self.h_float),
            "h_err": _fmt_mpf(self.h_err),
            "bound_amgm": _fmt_mpf(self.bound_amgm),
            "bound_special": ";".join(f"{k}={_fmt_mpf(v)}" for k, v in sorted(self.bound_special.items())),
            "ratio_r": repr(self.ratio_r),
            "envelope": repr(self.envelope),
        }

    @classmethod
    def from_record(cls, rec: dict) -> HMinusRow:
        with mpmath.workprec(53):
            special = {}
            if rec["bound_special"]:
                for item in rec["bound_special"].split(";"):
                    k, v = item.split("=", 1)
                    special[k] = mpmath.mpf(v)
            return cls(
                int(rec["p"]),
                int(rec["d"]),
                int(rec["m"]),
                int(rec["w"]),
                int(rec["h_exact"]) if rec["h_exact"] else None,
                mpmath.mpf(rec["h_float"]),
                mpmath.mpf(rec["h_err"]),
                mpmath.mpf(rec["bound_amgm"]),
                special,
                float(rec["ratio_r"]),
                float(rec["envelope"]),
            )


def hminus_row(p: int, d: int, exact: bool = True, prec: int = 53, orbit_cap: int = DEFAULT_ORBIT_CAP) -> HMinusRow:
    spec = FieldSpec(p, d)
    res = compute(spec, exact=exact, prec=prec, orbit_cap=orbit_cap)
    ar = analytic.asymptotic_ratio(p, d, res.exact)
    return HMinusRow(
        p,
        d,
        spec.m,
        spec.w,
        res.exact,
        _r53(res.float.value),
        _r53(res.float.abs_error),
        _r53(res.bound_AMGM),
        {k: _r53(v) for k, v in res.specialized_bounds.items()},
        float(ar.r.value),
        float(ar.envelope),
    )


def _hminus_task(args):
    return hminus_row(*args)


def emit_csv(records: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r)
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def emit(records: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "csv":
        return emit_csv(records, columns)
    if fmt == "json":
        return "".join(json.dumps({c: r.get(c) for c in columns}) + "\n" for r in records)
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in records)) if records else len(c) for c in columns}
    lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
    for r in records:
        lines.append("  ".join(str(r.get(c, "")).rjust(widths[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _prime_list(cfg: JobConfig) -> list[int]:
    if cfg.p is not None:
        return [cfg.p]
    if cfg.pmax is None:
        raise InvalidInput("give --p or --pmax")
    return suites.odd_primes(cfg.pmin, cfg.pmax)


def _select_d(p: int, cfg: JobConfig) -> list[int]:
    if cfg.mersenne:
        d = mersenne_exponent(p)
        if d is None:
            return []
        return [d]
    if cfg.d == "all":
        return odd_divisors(p - 1)
    if cfg.d == "max-degree":
        return [1]
    ds = [int(x) for x in str(cfg.d).split(",")]
    for d in ds:
        if d % 2 == 0 or (p - 1) % d:
            if cfg.p is not None:
                raise InvalidInput(f"d = {d} is not an odd divisor of {p - 1}")
    return [d for d in ds if d % 2 and (p - 1) % d == 0]


def _pmap(fn, items, jobs):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def cmd_hminus(cfg: JobConfig) -> int:
    tasks = [(p, d, not cfg.float_only, cfg.precision, cfg.orbit_cap) for p in _prime_list(cfg) for d in _select_d(p, cfg)]
    if not tasks:
        raise InvalidInput("no (p, d) pairs selected")
    rows = _pmap(_hminus_task, tasks, cfg.jobs)
    _write(emit([r.to_record() for r in rows], HMINUS_COLUMNS, cfg.fmt), cfg.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


_SUITE_ARGS = {
    "prop1": ("pmax",),
    "n-parity": ("pmax",),
    "d1": ("pmax",),
    "d3": ("pmax",),
    "mean-square": ("pmax", "jobs"),
    "bound-chain": ("pmax", "jobs"),
    "fh-bounds": ("pmin", "pmax", "cutoff", "jobs"),
    "sigma-ranges": ("pmin", "pmax", "cutoff", "jobs"),
    "mv": ("pmax",),
}
REPORT_COLUMNS = ["claim", "params", "relation", "lhs", "lhs_err", "rhs", "rhs_err", "verdict", "note"]


def run_suite(cfg: JobConfig):
    if cfg.suite not in suites.SUITES:
        raise InvalidInput(f"unknown suite {cfg.suite!r}; choose from {', '.join(suites.SUITES)}")
    kwargs = {}
    for name in _SUITE_ARGS.get(cfg.suite, ()):
        if name == "pmin" and cfg.pmin == 3:
            continue
        if name == "cutoff" and cfg.cutoff == analytic.DEFAULT_CUTOFF and cfg.suite == "sigma-ranges":
            continue
        val = getattr(cfg, name)
        if val is not None:
            kwargs[name] = val
    return suites.SUITES[cfg.suite](**kwargs)


def cmd_verify(cfg: JobConfig) -> int:
    reports = run_suite(cfg)
    recs = []
    for r in reports:
        rec = r.to_dict()
        rec["params"] = json.dumps(rec["params"], sort_keys=True)
        recs.append(rec)
    if cfg.fmt == "human":
        counts = {v: sum(r.verdict is v for r in reports) for v in Verdict}
        failed = [rec for rec, r in zip(recs, reports) if not r.passed]
        text = f"{cfg.suite}: {len(reports)} checks, " + ", ".join(f"{counts[v]} {v.value}" for v in Verdict) + "\n"
        if failed:
            text += emit(failed, REPORT_COLUMNS, "human")
        _write(text, cfg.output)
    else:
        _write(emit(recs, REPORT_COLUMNS, cfg.fmt), cfg.output)
    if any(r.verdict is Verdict.FAIL for r in reports):
        return EXIT_FAIL
    if any(r.verdict is Verdict.INDETERMINATE for r in reports):
        return EXIT_RESOURCE
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def _ratio_task(args):
    p, d = args
    ar = analytic.asymptotic_ratio(p, d)
    return {
        "p": str(p),
        "d": str(d),
        "m": str((p - 1) // d),
        "ratio_r": repr(float(ar.r.value)),
        "r_err": repr(float(ar.r.abs_error)),
        "r_minus_log4": repr(float(ar.r.value) - math.log(4)),
        "envelope": repr(ar.envelope),
    }


def _sigma1_task(args):
    p, d = args
    return {"p": str(p), "d": str(d), "phi_d": str(euler_phi(d)), "sigma1_over_m": repr(analytic.sigma1_over_m(p, d))}


def _plot(rows, xkey, ykey, path, title, hline=None) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [math.log(float(r[xkey])) for r in rows]
    ys = [float(r[ykey]) for r in rows]
    ax.scatter(xs, ys, s=8)
    if hline is not None:
        ax.axhline(hline, color="k", lw=0.8, ls="--")
    ax.set_xlabel("log p")
    ax.set_ylabel(ykey)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_table(cfg: JobConfig) -> int:
    if cfg.sigma1_over_m:
        if cfg.pmax is None:
            raise InvalidInput("--sigma1-over-m needs --pmax")
        tasks = [
            (p, d)
            for p in suites.odd_primes(cfg.pmin, cfg.pmax)
            for d in odd_divisors(p - 1)
            if euler_phi(d) <= cfg.phi_d_max
        ]
        rows = _pmap(_sigma1_task, tasks, cfg.jobs)
        cols = ["p", "d", "phi_d", "sigma1_over_m"]
        _write(emit(rows, cols, cfg.fmt), cfg.output)
        if cfg.plot:
            _plot(rows, "p", "sigma1_over_m", cfg.plot, "Sigma_1 / m")
        return EXIT_OK
    if cfg.mersenne:
        primes = [p for p in suites.MERSENNE_PRIMES if cfg.pmax is None or p <= cfg.pmax]
        tasks = [(p, mersenne_exponent(p)) for p in primes]
        hline = math.log(4)
    else:
        if cfg.pmax is None and cfg.p is None:
            raise InvalidInput("table needs --pmax, --p or --mersenne")
        d = 1 if cfg.d in ("all", "max-degree") else int(cfg.d)
        tasks = [(p, d) for p in _prime_list(cfg) if d % 2 and (p - 1) % d == 0]
        hline = 0.0
    if not tasks:
        raise InvalidInput("no (p, d) pairs selected")
    rows = _pmap(_ratio_task, tasks, cfg.jobs)
    cols = ["p", "d", "m", "ratio_r", "r_err", "r_minus_log4", "envelope"]
    _write(emit(rows, cols, cfg.fmt), cfg.output)
    if cfg.plot:
        _plot(rows, "p", "ratio_r", cfg.plot, "(4/m) log(h/w) - log(p/4pi^2)", hline)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="key = value configuration file")
    sp.add_argument("--precision", type=int, help=f"working precision in bits (env {PRECISION_ENV})")
    sp.add_argument("--jobs", type=int, help="worker processes")
    sp.add_argument("--format", dest="fmt", choices=["csv", "json", "human"])
    sp.add_argument("--output", help="write to this file instead of stdout")
    sp.add_argument("--pmin", type=int)
    sp.add_argument("--pmax", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relclass", description="Relative class numbers of imaginary abelian fields of prime conductor.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hminus", help="compute h^- rows")
    _common(h)
    h.add_argument("--p", type=int)
    h.add_argument("--d", help="all | max-degree | comma-separated list")
    h.add_argument("--mersenne", action="store_true", default=None)
    h.add_argument("--float-only", action="store_true", default=None)
    h.add_argument("--orbit-cap", type=int)
    h.set_defaults(func=cmd_hminus)

    v = sub.add_parser("verify", help="run a verification suite")
    _common(v)
    v.add_argument("suite", help=", ".join(suites.SUITES))
    v.add_argument("--cutoff", type=int)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="asymptotic-ratio or Sigma_1/m tables")
    _common(t)
    t.add_argument("--p", type=int)
    t.add_argument("--d")
    t.add_argument("--mersenne", action="store_true", default=None)
    t.add_argument("--sigma1-over-m", action="store_true", default=None)
    t.add_argument("--phi-d-max", type=int)
    t.add_argument("--plot", help="write an SVG scatter plot here")
    t.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    func = args.func
    try:
        cfg = build_config(args)
        return func(cfg)
    except RelclassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
