"""Batch front-end: config in, exact artifacts and a verification report out.

Subcommands:
    compute --config c.json [--depth N] [--out DIR]   write H/S/Sbar/T1/T2/families/moments
    verify  --config c.json [--checks a,b] [--seed S] run checks, write report.json
    kernel  --config c.json --n N --x "x1,x2" --y "y1,y2"   print one kernel value

Exit codes: 0 all requested checks pass, 1 check failure, 2 factorization
breakdown, 3 configuration error.  All emitted files are byte-identical across
reruns with the same config and seed; rationals are serialized as "num/den"
strings and timing never enters any file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .bipoly import BiPoly, PolyMatrix
from .cdkernel import (
    cd_blocks,
    check_abc,
    check_cd_formula,
    check_projection,
    check_projection_dual,
    check_reproduction,
    kernel_eval,
)
from .errors import Breakdown, ConfigError, DepthError
from .families import (
    FamilyA,
    FamilyB,
    check_biorthogonality,
    check_orthogonality,
    extract_families,
    validate_degree_structure,
)
from .gaussborel import factorize
from .measures import MeasureMatrix
from .moments import assemble_moments, hankel_mismatches
from .rational import format_rat, parse_rat, rat
from .recurrence import (
    build_recurrence,
    check_dual_form,
    check_recurrence_matrix,
    check_recurrences,
    required_depth,
    validate_band,
)
from .stepline import n_plus

SCHEMA_VERSION = 1

CHECK_NAMES = [
    "hankel",
    "degree",
    "orthogonality",
    "biorthogonality",
    "dual",
    "band",
    "recurrence",
    "reproduction",
    "projection",
    "cd",
    "abc",
]

EXPORT_KINDS = ("H", "S", "Sbar", "T1", "T2", "families", "moments")


@dataclass
class RunConfig:
    q: int
    p: int
    measures: MeasureMatrix
    depth: int
    checks: list[str]
    eval_points: list[tuple]
    seed: int
    output: str | None

    @staticmethod
    def from_json(obj: dict) -> "RunConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config root must be a JSON object")
        if obj.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {obj.get('schema_version')}")
        mm = MeasureMatrix.from_json(obj)
        try:
            depth = int(obj.get("depth", 1))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad depth: {exc}") from exc
        if depth < 1:
            raise ConfigError(f"depth must be >= 1, got {depth}")
        checks = obj.get("checks", list(CHECK_NAMES))
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            raise ConfigError("checks must be a list of names")
        for c in checks:
            if c not in CHECK_NAMES:
                raise ConfigError(f"unknown check {c!r}; known: {', '.join(CHECK_NAMES)}")
        points = []
        for entry in obj.get("eval_points", []):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ConfigError(f"eval point must be a pair, got {entry!r}")
            try:
                points.append((parse_rat(entry[0]), parse_rat(entry[1])))
            except ValueError as exc:
                raise ConfigError(f"bad eval point {entry!r}: {exc}") from exc
        try:
            seed = int(obj.get("seed", 0))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad seed: {exc}") from exc
        output = obj.get("output")
        if output is not None and not isinstance(output, str):
            raise ConfigError("output must be a path string")
        return RunConfig(mm.q, mm.p, mm, depth, checks, points, seed, output)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return RunConfig.from_json(obj)


def seeded_point(rng: random.Random) -> tuple:
    """Small random rational pair; denominators <= 16 keep exact arithmetic cheap."""
    def draw():
        return rat(rng.randint(-24, 24), rng.randint(1, 16))

    return (draw(), draw())


def seeded_monic_matrix(rng: random.Random, size: int, I: int) -> PolyMatrix:
    """Monic size x size matrix polynomial of grlex-degree I with random lower part."""
    def small():
        return rat(rng.randint(-6, 6), rng.randint(1, 4))

    entries = []
    for r in range(size):
        row = []
        for c in range(size):
            coeffs = {}
            for K in range(I):
                v = small()
                if v != 0:
                    coeffs[K] = v
            if r == c:
                coeffs[I] = rat(1)
            row.append(BiPoly(coeffs))
        entries.append(row)
    return PolyMatrix(entries)


@dataclass
class CheckOutcome:
    name: str
    status: str  # pass | fail | skipped
    details: str = ""


@dataclass
class Report:
    status: str  # ok | breakdown
    depth: int
    extended_depth: int
    seed: int
    q: int
    p: int
    H: list[str] = field(default_factory=list)
    checks: list[CheckOutcome] = field(default_factory=list)
    breakdown_index: int | None = None

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    def to_json_obj(self) -> dict:
        obj = {
            "schema_version": SCHEMA_VERSION,
            "kind": "report",
            "status": self.status,
            "q": self.q,
            "p": self.p,
            "depth": self.depth,
            "extended_depth": self.extended_depth,
            "seed": self.seed,
            "H": self.H,
            "checks": [
                {"name": c.name, "status": c.status, "details": c.details}
                for c in self.checks
            ],
            "summary": {
                "pass": sum(1 for c in self.checks if c.status == "pass"),
                "fail": self.failed,
                "skipped": sum(1 for c in self.checks if c.status == "skipped"),
            },
        }
        if self.breakdown_index is not None:
            obj["breakdown_index"] = self.breakdown_index
        return obj


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


class Workspace:
    """Everything computed for one config at one depth."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.depth = config.depth
        self.extended_depth = max(
            required_depth(config.depth, config.q, config.p), config.depth
        )
        self.M = assemble_moments(config.measures, self.extended_depth)
        self.F = factorize(self.M)
        self.A, self.B = extract_families(self.F, config.q, config.p)
        self.T = {
            k: build_recurrence(self.F, config.q, config.p, k, self.depth)
            for k in (1, 2)
        }

    def families_window(self, count: int) -> tuple[FamilyA, FamilyB]:
        return (
            FamilyA(self.config.p, self.A.cols[:count]),
            FamilyB(self.config.q, self.B.rows[:count]),
        )


def _report_from_check(name: str, ok: bool, details: str = "") -> CheckOutcome:
    return CheckOutcome(name, "pass" if ok else "fail", details if not ok else "")


def _violation_summary(rep) -> str:
    if rep.ok:
        return ""
    first = rep.violations[0]
    return f"{len(rep.violations)} violation(s); first at {first.where}: {first.detail}"


def run_checks(ws: Workspace, checks: list[str]) -> list[CheckOutcome]:
    cfg = ws.config
    q, p, D = cfg.q, cfg.p, ws.depth
    rng = random.Random(cfg.seed)
    rec_points = cfg.eval_points or [seeded_point(rng) for _ in range(10)]
    cd_pairs = [(seeded_point(rng), seeded_point(rng)) for _ in range(5)]
    abc_pairs = [(seeded_point(rng), seeded_point(rng)) for _ in range(10)]
    repro_pairs = [(seeded_point(rng), seeded_point(rng)) for _ in range(3)]
    out: list[CheckOutcome] = []
    A_D, B_D = ws.families_window(D)

    for name in checks:
        if name == "hankel":
            bad = []
            for k in (1, 2):
                try:
                    bad.extend((k,) + b[:2] for b in hankel_mismatches(ws.M, k))
                except DepthError as exc:
                    out.append(CheckOutcome(name, "skipped", str(exc)))
                    break
            else:
                out.append(_report_from_check(name, not bad, f"mismatches: {bad[:3]}"))
        elif name == "degree":
            rep = validate_degree_structure(ws.A, ws.B, q, p)
            out.append(_report_from_check(name, rep.ok, _violation_summary(rep)))
        elif name == "orthogonality":
            rep = check_orthogonality(A_D, B_D, cfg.measures)
            out.append(_report_from_check(name, rep.ok, _violation_summary(rep)))
        elif name == "biorthogonality":
            rep = check_biorthogonality(A_D, B_D, cfg.measures)
            out.append(_report_from_check(name, rep.ok, _violation_summary(rep)))
        elif name == "dual":
            ok = all(check_dual_form(ws.T[k], ws.F) for k in (1, 2))
            out.append(_report_from_check(name, ok, "primal and dual forms differ"))
        elif name == "band":
            reps = [validate_band(ws.T[k]) for k in (1, 2)]
            ok = all(r.ok for r in reps)
            detail = "; ".join(_violation_summary(r) for r in reps if not r.ok)
            out.append(_report_from_check(name, ok, detail))
        elif name == "recurrence":
            oks, details = [], []
            for k in (1, 2):
                rep = check_recurrences(ws.T[k], ws.A, ws.B, rec_points)
                rep2 = check_recurrence_matrix(ws.T[k], ws.A, ws.B)
                oks.append(rep.ok and rep2.ok)
                if not rep.ok:
                    details.append(_violation_summary(rep))
                if not rep2.ok:
                    details.append(_violation_summary(rep2))
            out.append(_report_from_check(name, all(oks), "; ".join(details)))
        elif name == "reproduction":
            ok = check_reproduction(ws.A, ws.B, cfg.measures, D - 1, repro_pairs)
            out.append(_report_from_check(name, ok, f"reproduction failed at n={D - 1}"))
        elif name == "projection":
            I = min(3, D // p - 1)
            I_dual = min(3, D // q - 1)
            if I < 0 or I_dual < 0:
                out.append(CheckOutcome(name, "skipped", "depth below projection threshold"))
                continue
            P = seeded_monic_matrix(rng, p, I)
            P_dual = seeded_monic_matrix(rng, q, I_dual)
            ok = check_projection(ws.A, ws.B, cfg.measures, D - 1, P)
            ok = ok and check_projection_dual(ws.A, ws.B, cfg.measures, D - 1, P_dual)
            out.append(_report_from_check(name, ok, f"projection failed at n={D - 1}"))
        elif name == "cd":
            ok = True
            detail = ""
            for k in (1, 2):
                n = 0
                while max(n_plus(n, p, k), n_plus(n, q, k)) < ws.T[k].size and ok:
                    blocks = cd_blocks(ws.T[k], ws.A, ws.B, n, k)
                    for x, y in cd_pairs:
                        if not check_cd_formula(blocks, x, y):
                            ok = False
                            detail = f"CD identity failed at n={n}, k={k}"
                            break
                    n += 1
            out.append(_report_from_check(name, ok, detail))
        elif name == "abc":
            ok = True
            detail = ""
            for n in range(min(D, 8)):
                for x, y in abc_pairs:
                    if not check_abc(cfg.measures, ws.A, ws.B, n, x, y):
                        ok = False
                        detail = f"ABC identity failed at n={n}"
                        break
                if not ok:
                    break
            out.append(_report_from_check(name, ok, detail))
        else:  # pragma: no cover - names validated at config parse
            raise ConfigError(f"unknown check {name!r}")
    return out


def run(config: RunConfig) -> Report:
    """Assemble, factorize, run the requested checks; never writes files itself."""
    try:
        ws = Workspace(config)
    except Breakdown as exc:
        return Report(
            status="breakdown",
            depth=config.depth,
            extended_depth=max(required_depth(config.depth, config.q, config.p), config.depth),
            seed=config.seed,
            q=config.q,
            p=config.p,
            breakdown_index=exc.index,
        )
    report = Report(
        status="ok",
        depth=ws.depth,
        extended_depth=ws.extended_depth,
        seed=config.seed,
        q=config.q,
        p=config.p,
        H=[format_rat(h) for h in ws.F.H[: ws.depth]],
    )
    report.checks = run_checks(ws, config.checks)
    return report


# ---- exports ----------------------------------------------------------


def _matrix_to_strings(data: list[list]) -> list[list[str]]:
    return [[format_rat(v) for v in row] for row in data]


def export_json(ws: Workspace, what: str) -> str:
    if what not in EXPORT_KINDS:
        raise ConfigError(f"unknown export kind {what!r}")
    obj: dict = {"schema_version": SCHEMA_VERSION, "kind": what}
    D = ws.depth
    if what == "H":
        obj["values"] = [format_rat(h) for h in ws.F.H[:D]]
    elif what == "S":
        obj["entries"] = _matrix_to_strings([row[:D] for row in ws.F.S[:D]])
    elif what == "Sbar":
        obj["entries"] = _matrix_to_strings([row[:D] for row in ws.F.Sbar[:D]])
    elif what in ("T1", "T2"):
        k = 1 if what == "T1" else 2
        obj["entries"] = _matrix_to_strings(ws.T[k].data)
    elif what == "moments":
        obj["entries"] = _matrix_to_strings([row[:D] for row in ws.M.data[:D]])
    elif what == "families":
        obj["q"] = ws.config.q
        obj["p"] = ws.config.p
        obj["A"] = [
            [poly.to_json() for poly in ws.A.cols[n]] for n in range(D)
        ]
        obj["B"] = [
            [poly.to_json() for poly in ws.B.rows[n]] for n in range(D)
        ]
    if "entries" in obj:
        obj["rows"] = len(obj["entries"])
        obj["cols"] = len(obj["entries"][0]) if obj["entries"] else 0
    return _dump_json(obj)


def export_csv(ws: Workspace, what: str, render_decimal: bool = False) -> str:
    if what == "families":
        raise ConfigError("families export is JSON-only")
    buf = io.StringIO()
    writer = csv.writer(buf)  # RFC 4180 quoting and line endings
    if what == "H":
        rows = [[format_rat(h) for h in ws.F.H[: ws.depth]]]
    else:
        data = {
            "S": ws.F.S,
            "Sbar": ws.F.Sbar,
            "T1": ws.T[1].data,
            "T2": ws.T[2].data,
            "moments": ws.M.data,
        }[what]
        D = ws.depth
        rows = _matrix_to_strings([row[:D] for row in data[:D]])
    for row in rows:
        if render_decimal:
            dec = [f"{float(parse_rat(v)):.12g}" for v in row]
            writer.writerow(row + dec)
        else:
            writer.writerow(row)
    return buf.getvalue()


def write_exports(ws: Workspace, out_dir: Path, render_decimal: bool = False) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for what in EXPORT_KINDS:
        path = out_dir / f"{what}.json"
        path.write_text(export_json(ws, what))
        written.append(path)
        if what != "families":
            path_csv = out_dir / f"{what}.csv"
            path_csv.write_text(export_csv(ws, what, render_decimal), newline="")
            written.append(path_csv)
    return written


# ---- entry points -----------------------------------------------------


def _cmd_compute(args) -> int:
    config = load_config(args.config)
    if args.depth is not None:
        if args.depth < 1:
            raise ConfigError("--depth must be >= 1")
        config.depth = args.depth
    t0 = time.perf_counter()
    try:
        ws = Workspace(config)
    except Breakdown as exc:
        print(f"factorization breakdown at index {exc.index}", file=sys.stderr)
        return 2
    out_dir = Path(args.out or config.output or ".")
    written = write_exports(ws, out_dir, args.render_decimal)
    print(f"wrote {len(written)} files to {out_dir}", file=sys.stderr)
    print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    config = load_config(args.config)
    if args.checks:
        names = [c.strip() for c in args.checks.split(",") if c.strip()]
        for c in names:
            if c not in CHECK_NAMES:
                raise ConfigError(f"unknown check {c!r}; known: {', '.join(CHECK_NAMES)}")
        config.checks = names
    if args.seed is not None:
        config.seed = args.seed
    t0 = time.perf_counter()
    report = run(config)
    if report.status == "breakdown":
        print(f"factorization breakdown at index {report.breakdown_index}")
    else:
        for c in report.checks:
            line = f"{c.name}: {c.status.upper()}"
            if c.details:
                line += f" ({c.details})"
            print(line)
    out_dir = args.out or config.output
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / "report.json").write_text(_dump_json(report.to_json_obj()))
    print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if report.status == "breakdown":
        return 2
    return 1 if report.failed else 0


def _cmd_kernel(args) -> int:
    config = load_config(args.config)
    n = args.n
    if n < 0:
        raise ConfigError("--n must be >= 0")
    try:
        x = tuple(parse_rat(v) for v in args.x.split(","))
        y = tuple(parse_rat(v) for v in args.y.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad point: {exc}") from exc
    if len(x) != 2 or len(y) != 2:
        raise ConfigError("points need exactly two coordinates")
    M = assemble_moments(config.measures, n + 1)
    try:
        F = factorize(M)
    except Breakdown as exc:
        print(f"factorization breakdown at index {exc.index}", file=sys.stderr)
        return 2
    A, B = extract_families(F, config.q, config.p)
    value = kernel_eval(A, B, n, x, y)
    obj = {
        "schema_version": SCHEMA_VERSION,
        "kind": "kernel",
        "n": n,
        "x": [format_rat(v) for v in x],
        "y": [format_rat(v) for v in y],
        "matrix": _matrix_to_strings(value),
    }
    text = _dump_json(obj)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "kernel.json").write_text(text)
    sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steppoly",
        description="Exact bivariate mixed multiple orthogonal polynomials on the step-line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="factorize and export matrices and families")
    c.add_argument("--config", required=True)
    c.add_argument("--depth", type=int, default=None)
    c.add_argument("--out", default=None)
    c.add_argument("--render-decimal", action="store_true",
                   help="append decimal columns to CSV exports (JSON unaffected)")
    c.set_defaults(func=_cmd_compute)

    v = sub.add_parser("verify", help="run structural checks and write a report")
    v.add_argument("--config", required=True)
    v.add_argument("--checks", default=None, help="comma-separated subset of checks")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--out", default=None)
    v.set_defaults(func=_cmd_verify)

    kcmd = sub.add_parser("kernel", help="evaluate one Christoffel-Darboux kernel value")
    kcmd.add_argument("--config", required=True)
    kcmd.add_argument("--n", type=int, required=True)
    kcmd.add_argument("--x", required=True, help='point as "x1,x2" with rational parts')
    kcmd.add_argument("--y", required=True, help='point as "y1,y2" with rational parts')
    kcmd.add_argument("--out", default=None)
    kcmd.set_defaults(func=_cmd_kernel)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold into the config-error code
        return 0 if exc.code == 0 else 3
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except Breakdown as exc:
        print(f"factorization breakdown at index {exc.index}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
