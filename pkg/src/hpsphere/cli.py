"""Command line interface: ``hpsphere classify | verify | rep-test``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse error.
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
import tempfile
from dataclasses import asdict, dataclass, field

import numpy as np

from .classify import (
    CURVATURE_RTOL,
    CURVATURE_SPREAD,
    InvalidFamilyError,
    Kind,
    VerificationReport,
    enumerate_families,
    make_family,
    verify_base_point,
    verify_family,
)
from .irreps import InvalidRepresentationError, RepSum, WeightError
from .orbit import CONFORMAL_TOL, CURVATURE_STEP, MINIMALITY_TOL, BasePoint
from .suite import representation_suite

log = logging.getLogger("hpsphere")

SCHEMA_VERSION = "1"
CSV_COLUMNS = (
    "kind",
    "params",
    "K_closed",
    "K_numeric_mean",
    "K_numeric_std",
    "minimality_residual",
    "conformality_residual",
    "pass",
)
CHECK_COLUMNS = ("check", "n", "max_residual", "tolerance", "pass")


class UsageError(Exception):
    pass


def sig12(x):
    """Round to 12 significant digits; None and non-finite values pass through."""
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


@dataclass
class ReportDocument:
    command: str
    families: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls(**json.loads(text))

    @property
    def passed(self) -> bool:
        rows = self.families + self.checks
        return all(r.get("pass") is not False for r in rows)


# --------------------------------------------------------------------------
# spec files


SPEC_FIELDS = {"n", "lambda", "blocks"}
BLOCK_FIELDS = {"m", "c_re", "c_im"}


def load_orbit_spec(path: str) -> BasePoint:
    """Read an orbit spec file; raises UsageError on anything malformed."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read spec {path}: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != SPEC_FIELDS:
        raise UsageError(f"spec must have exactly the fields {sorted(SPEC_FIELDS)}")
    blocks = doc["blocks"]
    if not isinstance(blocks, list) or not blocks:
        raise UsageError("blocks must be a non-empty list")
    for blk in blocks:
        if not isinstance(blk, dict) or set(blk) != BLOCK_FIELDS:
            raise UsageError(f"each block must have exactly the fields {sorted(BLOCK_FIELDS)}")
    try:
        rep = RepSum(tuple(int(b["m"]) for b in blocks))
        c = np.array([complex(float(b["c_re"]), float(b["c_im"])) for b in blocks])
        lam = int(doc["lambda"])
        if int(doc["n"]) != rep.n:
            raise UsageError(f"n = {doc['n']} but the blocks give n = {rep.n}")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > 1e-12:
            log.warning("base point has |z| = %.12g; normalizing", norm)
        return BasePoint.normalized(rep, lam, c)
    except (TypeError, ValueError, InvalidRepresentationError, WeightError) as exc:
        raise UsageError(f"invalid spec: {exc}") from exc


# --------------------------------------------------------------------------
# rows


def _descriptor_row(fam) -> dict:
    return {
        "kind": fam.kind.value,
        "label": fam.label,
        "n": fam.n,
        "params": dict(fam.params),
        "K_closed": sig12(fam.K_closed),
        "K_numeric_mean": None,
        "K_numeric_std": None,
        "minimality_residual": None,
        "conformality_residual": None,
        "pass": None,
    }


def _verification_row(vr: VerificationReport, z: BasePoint | None = None) -> dict:
    if vr.family is not None:
        row = _descriptor_row(vr.family)
        row["params"].update(vr.params)
    else:
        row = {
            "kind": "custom",
            "label": "custom",
            "n": z.rep.n,
            "params": {"blocks": list(z.rep.blocks), "lambda": z.lam},
            "K_closed": None,
        }
    rep = vr.report
    if rep is not None:
        row.update(
            K_closed=sig12(rep.K_closed),
            K_numeric_mean=sig12(rep.K_numeric_mean),
            K_numeric_std=sig12(rep.K_numeric_std),
            minimality_residual=sig12(rep.minimality_residual),
            conformality_residual=sig12(rep.conformality_residual),
        )
    else:
        row.update(K_numeric_mean=None, K_numeric_std=None, minimality_residual=None, conformality_residual=None)
    row["pass"] = vr.passed
    row["failures"] = list(vr.failures)
    return row


THRESHOLDS = {
    "minimality_residual": MINIMALITY_TOL,
    "conformality_residual": CONFORMAL_TOL,
    "curvature_rtol": CURVATURE_RTOL,
    "curvature_spread": CURVATURE_SPREAD,
}


# --------------------------------------------------------------------------
# commands


def run_classify(n: int) -> ReportDocument:
    if n < 1:
        raise UsageError(f"--n must be at least 1, got {n}")
    return ReportDocument("classify", families=[_descriptor_row(f) for f in enumerate_families(n)])


def run_verify(args) -> ReportDocument:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    if args.step <= 0:
        raise UsageError("--step must be positive")
    kw = dict(samples=args.samples, seed=args.seed, step=args.step)
    doc = ReportDocument("verify", thresholds=dict(THRESHOLDS, curvature_step=args.step))
    if args.spec:
        z = load_orbit_spec(args.spec)
        doc.families.append(_verification_row(verify_base_point(z, **kw), z))
        return doc
    if args.n is None or args.family is None:
        raise UsageError("verify needs --spec, or --n together with --family")
    if args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    if args.family == "all":
        for fam in enumerate_families(args.n):
            doc.families.append(_verification_row(verify_family(fam, **kw)))
        return doc
    try:
        fam = make_family(args.family, args.n, lam=args.lam, m1=args.m1, m2=args.m2)
        if fam.kind is Kind.F_LAMBDA_M_T and args.t is None:
            raise UsageError("f-lambda-m-t needs --t")
        t = args.t if fam.kind is Kind.F_LAMBDA_M_T else None
        vr = verify_family(fam, t=t, **kw)
    except InvalidFamilyError as exc:
        raise UsageError(str(exc)) from exc
    doc.families.append(_verification_row(vr))
    return doc


def run_reptest(n_max: int, seed: int) -> ReportDocument:
    if n_max < 1:
        raise UsageError(f"--n-max must be at least 1, got {n_max}")
    rows = representation_suite(n_max, seed=seed)
    checks = [
        {
            "check": r.check,
            "n": r.n,
            "max_residual": sig12(r.max_residual),
            "tolerance": r.tolerance,
            "pass": r.passed,
        }
        for r in rows
    ]
    return ReportDocument("rep-test", checks=checks)


# --------------------------------------------------------------------------
# rendering


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return ";".join(f"{k}={_cell(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "/".join(_cell(x) for x in v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _table(doc: ReportDocument):
    if doc.checks:
        return CHECK_COLUMNS, doc.checks
    return CSV_COLUMNS, doc.families


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json() + "\n"
    cols, rows = _table(doc)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in rows:
            writer.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r.get(c)) for c in cols) + " |")
    return "\n".join(lines) + "\n"


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hpsphere-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="hpsphere",
        description="Minimal homogeneous two-spheres in quaternionic projective space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="list the families for HP^n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="verify a family or an orbit spec file")
    p.add_argument("--n", type=int)
    p.add_argument("--family", choices=[k.value for k in Kind] + ["all"])
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--t", type=float)
    p.add_argument("--m1", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--spec", metavar="FILE")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--step", type=float, default=CURVATURE_STEP)

    p = sub.add_parser("rep-test", parents=[common], help="run the representation property suite")
    p.add_argument("--n-max", type=int, required=True)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            doc = run_classify(args.n)
        elif args.command == "verify":
            doc = run_verify(args)
        else:
            doc = run_reptest(args.n_max, args.seed)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    _write(render(doc, args.format), args.out)
    return 0 if doc.passed else 1


if __name__ == "__main__":
    sys.exit(main())
