"""Command-line surface.

Subcommands: compute, certify, decompose, trace, verify, scan.  Report
paths write canonical JSON/CSV (byte-stable across reruns) and, unless
--no-plots is given, matplotlib figures alongside.

Exit codes: 0 success; 2 input/parse error; 3 domain error; 4 an asserted
invariant failed (witness path printed); 5 work budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import certificates, decompose, energy, generators, report, szt, tracer
from .core import RatSet, format_scalar, parse_scalar
from .errors import BudgetError, DomainError, InvariantError, ParseError, SumprodError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_INVARIANT = 4
EXIT_BUDGET = 5


def _load_set(path: str) -> RatSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read set file {path}: {exc}") from exc
    loaded = RatSet.parse(text)
    loaded.require_nonempty(f"set file {path}")
    return loaded


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ParseError("config must be a single JSON object")
    return payload


def _outdir(args, config: dict) -> Path:
    out = args.out or config.get("out") or "sumprod-reports"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _plots_enabled(args, config: dict) -> bool:
    if args.no_plots:
        return False
    if args.plots:
        return True
    return bool(config.get("plots", True))


def _print_value(value, decimals: bool) -> None:
    if isinstance(value, Fraction):
        line = format_scalar(value)
        if decimals:
            line += f"    # approx {float(value):.6g} (non-authoritative)"
        print(line)
    else:
        print(value)


# -- subcommand implementations ---------------------------------------------------------


def _cmd_compute(args, config: dict) -> int:
    budget = int(args.budget or config.get("sigma_budget", energy.DEFAULT_SIGMA_BUDGET))
    sets = [_load_set(p) for p in args.sets]
    a = sets[0]
    b = sets[1] if len(sets) > 1 else a
    q = args.quantity
    record_value = None
    if q in ("sumset", "productset", "quotientset", "slice", "sym", "level-add", "level-mult"):
        from .core import productset, quotientset, slice_set, sumset

        if q == "sumset":
            out = sumset(a, b)
        elif q == "productset":
            out = productset(a, b)
        elif q == "quotientset":
            out = quotientset(a, b)
        elif q == "slice":
            if args.lam is None:
                raise ParseError("slice needs --lam")
            out = slice_set(a, parse_scalar(args.lam))
        elif q == "sym":
            if args.level is None:
                raise ParseError("sym needs --level")
            if len(sets) < 2:
                raise ParseError("sym needs two set files (Q and R)")
            fn = certificates.sym_mult if args.kind == "mult" else certificates.sym_add
            out = fn(sets[0], sets[1], args.level)
        else:
            if args.tau is None:
                raise ParseError(f"{q} needs --tau")
            fn = szt.additive_level_set if q == "level-add" else szt.mult_level_set
            out = fn(a, b, args.tau)
        for x in out:
            _print_value(x, args.decimals)
        record_value = out.to_json_list()
    elif q == "e+":
        record_value = energy.additive_energy(a, b)
        _print_value(Fraction(record_value), args.decimals)
    elif q in ("ex", "e×"):
        record_value = energy.multiplicative_energy(a, b)
        _print_value(Fraction(record_value), args.decimals)
    elif q in ("e3x", "e3×"):
        record_value = energy.third_moment(a)
        _print_value(Fraction(record_value), args.decimals)
    elif q == "sigma":
        if not args.alphas or len(sets) != 3:
            raise ParseError("sigma needs --alphas a1,a2,a3 and three set files")
        alphas = tuple(parse_scalar(s) for s in args.alphas.split(","))
        if len(alphas) != 3:
            raise ParseError("--alphas must hold exactly three values")
        record_value = energy.sigma_count(alphas, (sets[0], sets[1], sets[2]))
        _print_value(Fraction(record_value), args.decimals)
    elif q == "sigma-sup":
        if len(sets) != 3:
            raise ParseError("sigma-sup needs three set files")
        record_value = energy.sigma_sup(sets[0], sets[1], sets[2], budget=budget)
        _print_value(Fraction(record_value), args.decimals)
    elif q in ("szt-add", "szt-mult"):
        family = sets[1:] if len(sets) > 1 else None
        result = szt.empirical_szt_scan(
            a, family, kind="add" if q == "szt-add" else "mult"
        )
        _print_value(result.max_bound, args.decimals)
        record_value = result.to_json_dict()
        if args.json:
            fields, rows = report.scan_result_rows(result)
            report.write_csv(Path(args.json).with_suffix(".csv"), fields, rows)
    else:
        raise ParseError(f"unknown quantity {q!r}")

    if args.json:
        rec = report.energy_record(q, sets, record_value, {"sigma_budget": budget})
        report.write_json(Path(args.json), rec)
    return EXIT_OK


def _cmd_certify(args, config: dict) -> int:
    a = _load_set(args.set)
    c_sets = [_load_set(p) for p in args.c] if args.c else None
    best, survey = certificates.symmetry_certificate_survey(a, c_sets=c_sets)
    outdir = _outdir(args, config)
    payload = {
        "schema": "sumprod.certify/1",
        "input_digest": a.digest(),
        "best": best.to_json_dict(),
        "survey": [
            {
                "member": row["member"],
                "value": None if row["value"] is None else report.fraction_str(row["value"]),
                "t": row["t"],
                "note": row["note"],
            }
            for row in survey
        ],
    }
    report.write_json(outdir / "certificates.json", payload)
    print(f"best certificate value: {report.fraction_str(best.value)} (t = {best.t})")
    print(f"wrote {outdir / 'certificates.json'}")
    return EXIT_OK


def _cmd_decompose(args, config: dict) -> int:
    a = _load_set(args.set)
    m = "auto" if args.m == "auto" else parse_scalar(args.m)
    result = decompose.low_energy_decomposition(a, m)
    outdir = _outdir(args, config)
    report.write_json(outdir / "decomposition.json", result.to_json_dict())
    fields, rows = report.decomposition_rows(result)
    report.write_csv(outdir / "decomposition.csv", fields, rows)
    if _plots_enabled(args, config):
        from . import plots

        plots.decomposition_figure(result, outdir / "decomposition.png")
    print(
        f"partition |B| = {len(result.b_set)}, |C| = {len(result.c_set)}"
        f" in {len(result.steps)} steps (stop: {result.stop_reason})"
    )
    print(f"wrote {outdir / 'decomposition.json'}")
    return EXIT_OK


def _cmd_trace(args, config: dict) -> int:
    a = _load_set(args.set)
    outdir = _outdir(args, config)
    if args.pipeline == "3":
        trace = tracer.trace_sum_product(a, mode=args.mode)
        name = "trace-sum-product"
    else:
        gamma = parse_scalar(args.gamma or str(config.get("gamma", "1/16")))
        kappa = "auto" if args.kappa == "auto" else parse_scalar(args.kappa)
        trace = tracer.trace_small_quotient(a, kappa=kappa, gamma=gamma)
        name = "trace-small-quotient"
    report.write_json(outdir / f"{name}.json", trace.to_json_dict())
    if _plots_enabled(args, config):
        from . import plots

        profile = energy.quotient_slice_profile(a)
        tau = None
        for step in trace.steps:
            if "tau" in step.values:
                tau = parse_scalar(step.values["tau"])
                break
        plots.slice_profile_figure(
            profile, tau, outdir / f"{name}.png", title=f"slice profile, |A| = {len(a)}"
        )
    statuses = [s.status for s in trace.steps]
    print(f"{name}: {len(trace.steps)} steps ({', '.join(sorted(set(statuses)))})")
    print(f"wrote {outdir / f'{name}.json'}")
    return EXIT_OK


def _sizes(arg: str) -> list[int]:
    try:
        return [int(s) for s in arg.split(",") if s]
    except ValueError as exc:
        raise ParseError(f"bad sizes list {arg!r}") from exc


def _cmd_verify(args, config: dict) -> int:
    seed = int(args.seed if args.seed is not None else config.get("seed", 0))
    outdir = _outdir(args, config)
    reports = []
    if args.set:
        reports.append(tracer.inequality_suite(_load_set(args.set), seed=seed))
    elif args.family:
        if not args.sizes:
            raise ParseError("--family needs --sizes")
        for size in _sizes(args.sizes):
            spec = generators.FamilySpec(kind=args.family, size=size, seed=seed)
            reports.append(tracer.inequality_suite(generators.generate(spec), seed=seed))
    else:
        raise ParseError("verify needs a set file or --family")

    fields, rows = report.suite_rows(reports)
    report.write_csv(outdir / "suite.csv", fields, rows)
    report.write_json(
        outdir / "suite.json",
        {"schema": tracer.SCHEMA_SUITE, "reports": [r.to_json_dict() for r in reports]},
    )
    if _plots_enabled(args, config):
        from . import plots

        plots.suite_margin_figure(reports, outdir / "suite.png")
    total_fail = sum(len(r.failures) for r in reports)
    print(f"suite rows: {sum(len(r.rows) for r in reports)}, failures: {total_fail}")
    print(f"wrote {outdir / 'suite.csv'}")
    if total_fail:
        for rep in reports:
            for fail in rep.failures:
                print(f"FAILED: {fail.row_id}: {fail.detail} (digest {rep.input_digest})")
        return EXIT_INVARIANT
    return EXIT_OK


def _cmd_scan(args, config: dict) -> int:
    seed = int(args.seed if args.seed is not None else config.get("seed", 0))
    jobs = int(args.jobs or config.get("jobs", 1))
    outdir = _outdir(args, config)
    if args.batch:
        try:
            payload = json.loads(Path(args.batch).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read batch spec {args.batch}: {exc}") from exc
        specs = [generators.FamilySpec.from_json_dict(d) for d in payload]
    elif args.family:
        if not args.sizes:
            raise ParseError("--family needs --sizes")
        kinds = args.family.split(",")
        specs = [
            generators.FamilySpec(kind=k, size=s, seed=seed)
            for k in kinds
            for s in _sizes(args.sizes)
        ]
    else:
        raise ParseError("scan needs --batch or --family")
    operations = tuple((args.ops or "growth").split(","))
    rows = generators.family_scan(specs, operations=operations, seed=seed, jobs=jobs)
    fields = ["family", "kind", "size", "op", "metric", "value"]
    report.write_csv(outdir / "scan.csv", fields, rows)
    fit_table = report.growth_fit_table(rows)
    report.write_json(outdir / "growth-fit.json", fit_table)
    if _plots_enabled(args, config) and fit_table:
        from . import plots

        plots.growth_figure(fit_table, outdir / "growth.png")
    print(f"scan cells: {len(specs) * len(operations)}, rows: {len(rows)}")
    print(f"wrote {outdir / 'scan.csv'}")
    bad = [r for r in rows if r["metric"] == "error" and "InvariantError" in r["value"]]
    bad += [r for r in rows if r["metric"] == "suite_failures" and r["value"] != "0"]
    if bad:
        print(f"FAILED cells: {[(r['family'], r['op']) for r in bad]}")
        return EXIT_INVARIANT
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumprod",
        description="Exact sum-product set statistics: energies, certificates, scans, decompositions.",
    )
    parser.add_argument("--config", help="JSON config file; flags override its values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print one exact quantity")
    p.add_argument(
        "quantity",
        choices=[
            "sumset",
            "productset",
            "quotientset",
            "slice",
            "e+",
            "ex",
            "e×",
            "e3x",
            "e3×",
            "sigma",
            "sigma-sup",
            "sym",
            "level-add",
            "level-mult",
            "szt-add",
            "szt-mult",
        ],
    )
    p.add_argument("sets", nargs="+", help="set file(s): lines of p/q, or a JSON array")
    p.add_argument("--lam", help="slice parameter λ")
    p.add_argument("--alphas", help="three comma-separated coefficients for sigma")
    p.add_argument("--tau", type=int, help="level-set threshold")
    p.add_argument("--level", type=int, help="symmetry-set level t")
    p.add_argument("--kind", choices=["mult", "add"], default="mult")
    p.add_argument("--budget", type=int, help="sigma-sup work budget")
    p.add_argument("--json", help="also write the JSON record here")
    p.add_argument("--decimals", action="store_true", help="append non-authoritative decimals")

    p = sub.add_parser("certify", help="best symmetry certificate in the default family")
    p.add_argument("set")
    p.add_argument("--c", nargs="*", help="extra C-witness set files")
    p.add_argument("--out")
    _add_plot_flags(p)

    p = sub.add_parser("decompose", help="low-energy partition A = B ⊔ C")
    p.add_argument("set")
    p.add_argument("--m", default="auto", help='threshold parameter M, or "auto" for |A|^(1/5)')
    p.add_argument("--out")
    _add_plot_flags(p)

    p = sub.add_parser("trace", help="replay a proof pipeline on a concrete set")
    p.add_argument("pipeline", choices=["3", "5"], help="3: sum-product; 5: small quotient set")
    p.add_argument("set")
    p.add_argument("--mode", choices=["quotient", "product"], default="quotient")
    p.add_argument("--kappa", default="auto")
    p.add_argument("--gamma")
    p.add_argument("--out")
    _add_plot_flags(p)

    p = sub.add_parser("verify", help="run the asserted inequality suite")
    p.add_argument("set", nargs="?")
    p.add_argument("--family", choices=list(generators.KINDS))
    p.add_argument("--sizes", help="comma-separated sizes for --family")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    _add_plot_flags(p)

    p = sub.add_parser("scan", help="batch metrics over generated families")
    p.add_argument("--batch", help="JSON list of family specs")
    p.add_argument("--family", help="comma-separated family kinds")
    p.add_argument("--sizes")
    p.add_argument("--ops", help=f"comma-separated from {generators.SCAN_OPERATIONS}")
    p.add_argument("--jobs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    _add_plot_flags(p)

    return parser


def _add_plot_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--plots", action="store_true", help="force figure rendering on")
    p.add_argument("--no-plots", action="store_true", help="disable figure rendering")


_COMMANDS = {
    "compute": _cmd_compute,
    "certify": _cmd_certify,
    "decompose": _cmd_decompose,
    "trace": _cmd_trace,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load_config(args.config)
        return _COMMANDS[args.command](args, config)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantError as exc:
        print(f"asserted invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SumprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
