"""Command line interface.

Verbs: build (algebra + Haar checks only), verify (full pipeline and all
suites), dualize (emit the dual as a re-ingestable spec), export, import,
report (render a stored report).  Exit status 0 iff every check passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import pipeline, specfile, star_algebra
from .builders import comultiplication_check
from .errors import FiniteQGError
from .numlin import Tolerance
from .pipeline import PipelineConfig
from .report import VerificationReport


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", required=True, help="quantum group spec file (JSON)")
    p.add_argument("--tol", type=float, default=1e-10, metavar="REL",
                   help="relative tolerance (default 1e-10)")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--report", help="write the report JSON/text here")
    p.add_argument("--format", choices=("json", "text"), default="text")


def _config(args) -> PipelineConfig:
    cfg = PipelineConfig(tol=Tolerance(rel=args.tol, abs=args.tol * 0.01),
                         seed=args.seed)
    if getattr(args, "kdims", None):
        cfg.kdims = tuple(int(k) for k in args.kdims.split(","))
    if getattr(args, "batch", None):
        cfg.batch = args.batch
    return cfg


def _emit(report: VerificationReport, args) -> int:
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report.all_passed else 1


def cmd_build(args) -> int:
    qg = specfile.spec_to_qg(specfile.load_spec(args.spec), _config(args).tol)
    cfg = _config(args)
    rep = star_algebra.axioms_check(qg.alg, cfg.tol, qg.name)
    rep.merge(comultiplication_check(qg.alg, qg.comul, cfg.tol, qg.name))
    return _emit(rep, args)


def cmd_verify(args) -> int:
    cfg = _config(args)
    qg = specfile.spec_to_qg(specfile.load_spec(args.spec), cfg.tol)
    _, rep = pipeline.run_full(qg, cfg)
    return _emit(rep, args)


def cmd_dualize(args) -> int:
    cfg = _config(args)
    qg = specfile.spec_to_qg(specfile.load_spec(args.spec), cfg.tol)
    pipe = pipeline.build_pipeline(qg, dual_levels=1, tol=cfg.tol)
    spec = specfile.dual_spec(pipe)
    with open(args.out, "w") as fh:
        json.dump(spec, fh, indent=1, sort_keys=True)
    print(f"dual of {qg.name} written to {args.out}")
    return 0


def cmd_export(args) -> int:
    cfg = _config(args)
    spec = specfile.load_spec(args.spec)
    qg = specfile.spec_to_qg(spec, cfg.tol)
    pipe = pipeline.build_pipeline(qg, dual_levels=1, tol=cfg.tol)
    specfile.export_qg(pipe, spec, args.out)
    print(f"pipeline state for {qg.name} written to {args.out}")
    return 0


def cmd_import(args) -> int:
    cfg = PipelineConfig(tol=Tolerance(rel=args.tol, abs=args.tol * 0.01))
    try:
        state = specfile.import_qg(args.input, cfg.tol)
    except FiniteQGError as exc:
        print(f"import failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(f"imported {state.data.get('example_id', '?')}: validation passed")
    return 0


def cmd_report(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    rep = VerificationReport()
    for r in data.get("records", []):
        rep.check(r["check_id"], r["paper_anchor"], r["residual"], r["tolerance"],
                  r.get("example_id", ""))
    rep.skipped = data.get("skipped_stages", [])
    print(rep.to_text())
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="finiteqg",
                                 description="finite quantum groups, verified numerically")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="construct the quantum group and check the axioms")
    _add_common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="full pipeline and all verification suites")
    _add_common(p)
    p.add_argument("--kdims", help="comma-separated external leg dimensions (default 1,2,3)")
    p.add_argument("--batch", type=int, help="PSD samples per leg dimension (default 20)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("dualize", help="write the dual quantum group as a spec file")
    _add_common(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_dualize)

    p = sub.add_parser("export", help="write the computed operators to a state file")
    _add_common(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("import", help="load and re-validate a state file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(fn=cmd_import)

    p = sub.add_parser("report", help="render a stored report")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(fn=cmd_report)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except FiniteQGError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
