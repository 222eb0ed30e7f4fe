"""``condmon`` command line.

Exit codes: 0 success, 1 a checked assertion failed, 2 invalid spec or
arguments, 3 I/O error or malformed JSON, 4 budget exceeded.

Every report is built from plain dicts in a fixed key order and dumped with
``json.dumps(..., indent=2)``, so identical inputs give identical bytes.
Wall-clock timing is only added with ``--timing``.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import inspect
import io
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from . import __version__, factor, suites
from . import constructions as cons
from . import freemonoid as fm
from .budget import Budget, default_budget
from .conductor import IdealExtensionMonoid
from .errors import BudgetExceeded, CondmonError, GroupTooSmall, SpecError, VerificationFailed
from .group import FiniteAbelianGroup
from .zerosum import (
    FIotaMonoid,
    FPhiMonoid,
    LabeledPrimes,
    ZeroSumContext,
    davenport,
    davenport_brute_force,
    in_F_iota,
    in_F_phi,
    max_zero_sum_free_length,
)

EXIT_OK, EXIT_FAIL, EXIT_SPEC, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4

TOOL = "condmon"
DEFAULT_WINDOW = 8
DEFAULT_LENGTH = 12

_COMMON_KEYS = {"budgets", "elements", "meta"}
_BUDGET_KEYS = {"factorization_cap", "window", "length_cap"}
_KINDS = {
    "ideal": {"s", "generators", "unit_group"},
    "zero-sum": {"group", "support"},
    "labeled-primes": {"group", "primes", "support"},
    "construction": {"construction", "params"},
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _spec_error(msg: str) -> CliError:
    return CliError(EXIT_SPEC, msg)


def dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def digest(data) -> str:
    canon = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


# ------------------------------------------------------------------------------
# spec files


def _int(x, what: str, lo: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise _spec_error(f"{what} must be an integer, got {x!r}")
    if lo is not None and x < lo:
        raise _spec_error(f"{what} must be >= {lo}, got {x}")
    return x


def _int_list(x, what: str) -> list[int]:
    if not isinstance(x, list) or not x:
        raise _spec_error(f"{what} must be a nonempty list of integers")
    return [_int(v, f"{what} entry", 0) for v in x]


def _group(x, what: str = "group") -> FiniteAbelianGroup:
    if not isinstance(x, str):
        raise _spec_error(f"{what} must be a string like \"C2xC2\", got {x!r}")
    return FiniteAbelianGroup.parse(x)


def spec_kind(data: dict) -> str:
    if "construction" in data:
        return "construction"
    if "generators" in data:
        return "ideal"
    if "primes" in data:
        return "labeled-primes"
    if "group" in data:
        return "zero-sum"
    raise _spec_error("cannot tell the spec kind: expected one of 'generators', 'group', 'primes', 'construction'")


@dataclass
class LoadedSpec:
    kind: str
    data: dict
    oracle: Any
    budget: Budget
    window: tuple | None = None  # ideal specs
    length_cap: int = DEFAULT_LENGTH
    elements: list = field(default_factory=list)
    resolved: dict | None = None  # the spec a construction expanded to

    def parse(self, raw):
        o = self.oracle
        try:
            if self.kind == "ideal":
                x = o.parse_element(raw) if isinstance(raw, str) else o.element(raw)
            elif self.kind == "labeled-primes":
                x = o.element(raw)
            else:
                if not isinstance(raw, str):
                    raise SpecError(f"sequence literals are strings, got {raw!r}")
                x = o.element(raw)
        except (CondmonError, ValueError, TypeError) as exc:
            raise _spec_error(f"element {raw!r}: {exc}") from exc
        if not o.contains(x):
            raise _spec_error(f"element {raw!r} is not in the monoid")
        return x

    def fmt(self, x) -> str:
        return getattr(self.oracle, "format", str)(x)

    def domain(self, window=None, max_length=None, min_length=0) -> Iterable:
        if self.kind == "ideal":
            box = tuple(window) if window is not None else self.window
            if len(box) != self.oracle.s:
                raise _spec_error(f"window {fm.format_vector(box)} is not in dimension {self.oracle.s}")
            fm.Box(box).check(self.budget.element_cap)
            return [self.oracle.element(v) for v in itertools.product(*(range(u + 1) for u in box)) if self.oracle.member_vector(v)]
        n = self.length_cap if max_length is None else max_length
        if self.kind == "zero-sum":
            ctx = self.oracle.ctx
            return [S for S in ctx.sequences(n, min_length) if in_F_iota(S, self.budget)]
        lp = self.oracle.lp
        out = []
        for total in range(min_length, n + 1):
            for combo in itertools.combinations_with_replacement(range(len(lp.primes)), total):
                v = [0] * len(lp.primes)
                for i in combo:
                    v[i] += 1
                if in_F_phi(lp, v, self.budget):
                    out.append(tuple(v))
        return out


def _check_keys(data: dict, kind: str) -> None:
    allowed = _KINDS[kind] | _COMMON_KEYS
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise _spec_error(f"unknown key {unknown[0]!r} in {kind} spec")


def _budgets(data: dict) -> tuple[Budget, tuple | None, int | None]:
    raw = data.get("budgets", {})
    if not isinstance(raw, dict):
        raise _spec_error("budgets must be an object")
    unknown = sorted(set(raw) - _BUDGET_KEYS)
    if unknown:
        raise _spec_error(f"unknown budget key {unknown[0]!r}")
    overrides = {}
    if "factorization_cap" in raw:
        overrides["factorization_cap"] = _int(raw["factorization_cap"], "factorization_cap", 1)
    window = tuple(_int_list(raw["window"], "window")) if "window" in raw else None
    length_cap = _int(raw["length_cap"], "length_cap", 0) if "length_cap" in raw else None
    return default_budget(**overrides), window, length_cap


def _build_ideal(data: dict, budget: Budget) -> IdealExtensionMonoid:
    gens = data["generators"]
    if not isinstance(gens, list) or not gens:
        raise _spec_error("generators must be a nonempty list of vectors")
    vecs = [_int_list(g, "generator") for g in gens]
    s = _int(data["s"], "s", 1) if "s" in data else None
    unit = _group(data["unit_group"], "unit_group") if data.get("unit_group") is not None else None
    return IdealExtensionMonoid(vecs, unit_group=unit, s=s, budget=budget)


def _support(G: FiniteAbelianGroup, raw) -> tuple | None:
    if raw is None:
        return None
    if not isinstance(raw, list) or not raw:
        raise _spec_error("support must be a nonempty list of group elements")
    out = []
    for g in raw:
        if not isinstance(g, str):
            raise _spec_error(f"support entries are strings like \"(1,0)\", got {g!r}")
        out.append(G.parse_element(g))
    return tuple(out)


def load_spec(data) -> LoadedSpec:
    if not isinstance(data, dict):
        raise _spec_error("a spec is a JSON object")
    kind = spec_kind(data)
    _check_keys(data, kind)
    budget, window, length_cap = _budgets(data)
    if "meta" in data and not isinstance(data["meta"], dict):
        raise _spec_error("meta must be an object")
    resolved = None
    try:
        if kind == "construction":
            resolved = construct(data["construction"], data.get("params", {}))
            inner = dict(resolved)
            inner.pop("meta", None)
            if "budgets" in data:
                inner["budgets"] = data["budgets"]
            if "elements" in data:
                inner["elements"] = data["elements"]
            out = load_spec(inner)
            out.kind, out.data, out.resolved = out.kind, data, resolved
            return out
        if kind == "ideal":
            if "s" not in data:
                raise _spec_error("ideal spec needs 's'")
            oracle = _build_ideal(data, budget)
        elif kind == "zero-sum":
            G = _group(data["group"])
            sup = _support(G, data.get("support"))
            ctx = ZeroSumContext(G, sup) if sup is not None else ZeroSumContext.full(G)
            oracle = FIotaMonoid(ctx, budget)
        else:
            G = _group(data["group"])
            primes = data["primes"]
            if not isinstance(primes, dict) or not primes:
                raise _spec_error("primes must be a nonempty object name -> group element")
            labels = {}
            for name, g in primes.items():
                if not isinstance(g, str):
                    raise _spec_error(f"label of prime {name!r} must be a string")
                labels[name] = G.parse_element(g)
            lp = LabeledPrimes(G, labels, _support(G, data.get("support")))
            oracle = FPhiMonoid(lp, budget)
    except CliError:
        raise
    except (CondmonError, ValueError) as exc:
        raise _spec_error(str(exc)) from exc
    if kind == "ideal" and window is None:
        window = (DEFAULT_WINDOW,) * oracle.s
    spec = LoadedSpec(kind, data, oracle, budget, window, length_cap if length_cap is not None else DEFAULT_LENGTH)
    raw_elements = data.get("elements", [])
    if not isinstance(raw_elements, list):
        raise _spec_error("elements must be a list")
    spec.elements = [spec.parse(e) for e in raw_elements]
    return spec


def read_spec(path: str) -> tuple[dict, LoadedSpec]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_IO, f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    return data, load_spec(data)


# ------------------------------------------------------------------------------
# constructions


def _parse_params(pairs: list[str]) -> dict:
    out = {}
    for p in pairs:
        key, sep, val = p.partition("=")
        if not sep or not key:
            raise _spec_error(f"--params entries look like key=value, got {p!r}")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


_FAMILY_PARAMS = {
    "deep_hole": ({"s", "alpha"}, {"unit_group"}),
    "power_primary": ({"alphas"}, {"unit_group"}),
    "cycle": ({"m"}, set()),
    "thm55_interval": ({"group", "k", "ell"}, set()),
    "thm55_equal_catenary": ({"n"}, {"mode", "p", "order"}),
}


def _ideal_spec(H: IdealExtensionMonoid) -> dict:
    out = {"s": H.s, "generators": [list(g) for g in H.generators]}
    if H.unit_group is not None:
        out["unit_group"] = str(H.unit_group)
    return out


def construct(family, params) -> dict:
    """Expand a recipe into a spec accepted by :func:`load_spec`."""
    if family not in _FAMILY_PARAMS:
        raise _spec_error(f"unknown construction {family!r}; choose from {', '.join(cons.FAMILIES)}")
    if not isinstance(params, dict):
        raise _spec_error("params must be an object")
    required, optional = _FAMILY_PARAMS[family]
    missing = sorted(required - set(params))
    if missing:
        raise _spec_error(f"{family} needs parameter {missing[0]!r}")
    unknown = sorted(set(params) - required - optional)
    if unknown:
        raise _spec_error(f"{family} does not take parameter {unknown[0]!r}")
    unit = _group(params["unit_group"], "unit_group") if params.get("unit_group") is not None else None
    try:
        if family == "deep_hole":
            return _ideal_spec(cons.deep_hole_monoid(_int(params["s"], "s"), _int(params["alpha"], "alpha"), unit))
        if family == "power_primary":
            alphas = params["alphas"]
            if isinstance(alphas, int):
                alphas = [alphas]
            if isinstance(alphas, str):
                alphas = list(fm.parse_vector(alphas if alphas.startswith("(") else f"({alphas})"))
            return _ideal_spec(cons.power_primary_monoid(_int_list(alphas, "alphas"), unit))
        if family == "cycle":
            m = _int(params["m"], "m")
            H = cons.cycle_monoid(m)
            out = _ideal_spec(H)
            out["elements"] = [fm.format_vector(cons.all_ones(H.s))]
            return out
        if family == "thm55_interval":
            G = _group(params["group"])
            w = cons.thm55_interval_witness(G, _int(params["k"], "k"), _int(params["ell"], "ell"))
            S = w.sequence
            return {
                "group": str(G),
                "support": [str(g) for g in S.support],
                "elements": [str(S)],
                "meta": {"case": w.case, "L": w.lengths},
            }
        n = _int(params["n"], "n")
        mode = params.get("mode", "bounded_exponent")
        extra = {k: _int(params[k], k) for k in ("p", "order") if k in params}
        inst = cons.thm55_equal_catenary_instance(n, mode, **extra)
        ctx = inst.context
        return {
            "group": str(ctx.group),
            "support": [str(g) for g in ctx.support],
            "elements": [str(inst.element)],
            "meta": {
                "z": [str(u) for u in inst.z],
                "z_prime": [str(u) for u in inst.z_prime],
                "layer_size": inst.layer_size,
                "distance": inst.distance,
                "c_eq": inst.c_eq,
            },
        }
    except CliError:
        raise
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc)) from exc
    except VerificationFailed as exc:
        raise CliError(EXIT_FAIL, str(exc)) from exc
    except (CondmonError, ValueError) as exc:
        raise _spec_error(str(exc)) from exc


# ------------------------------------------------------------------------------
# reports


def _header(data: dict | None = None) -> dict:
    out = {"tool": TOOL, "version": __version__}
    if data is not None:
        out["input_digest"] = digest(data)
    return out


def _row(spec: LoadedSpec, engine, x) -> dict:
    try:
        rep = factor.invariant_report(engine or spec.oracle, x, spec.budget)
    except BudgetExceeded as exc:
        return {"element": spec.fmt(x), "error": "budget_exceeded", "progress": dict(sorted(exc.progress.items()))}
    out = rep.to_json()
    out["interval"] = "interval" in out.pop("flags", [])
    return out


def _engine(spec: LoadedSpec, top):
    if spec.kind != "ideal":
        return None
    if not spec.oracle.member_vector(top):
        return None
    return factor.FactorizationEngine(spec.oracle, top, spec.budget)


def cmd_validate(args) -> int:
    data, spec = read_spec(args.spec)
    report = _header(data)
    report.update({"kind": spec_kind(data), "valid": True, "elements": len(spec.elements)})
    if spec.kind == "ideal":
        report["generators"] = [fm.format_vector(g) for g in spec.oracle.generators]
    _emit(args, dump(report))
    return EXIT_OK


def cmd_invariants(args) -> int:
    data, spec = read_spec(args.spec)
    elements = [spec.parse(e) for e in args.element] if args.element else spec.elements
    if not elements:
        raise _spec_error("no element given on the command line or in the spec")
    report = _header(data)
    report["reports"] = rows = []
    t0 = time.perf_counter()
    code = EXIT_OK
    for x in elements:
        row = _row(spec, None, x)
        rows.append(row)
        if "error" in row:
            code = EXIT_BUDGET
            break
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 3)
    _emit(args, dump(report))
    return code


def _summary(rows: list[dict]) -> dict:
    done = [r for r in rows if "error" not in r]
    return {
        "rows": len(rows),
        "over_budget": len(rows) - len(done),
        "max_c": max((r["c"] for r in done), default=None),
        "max_c_eq": max((r["c_eq"] for r in done), default=None),
        "interval": sum(r["interval"] for r in done),
        "non_interval": sum(not r["interval"] for r in done),
    }


CSV_COLUMNS = ["element", "Z_count", "L", "c", "c_eq", "c_adj", "c_mon", "interval", "error"]


def survey_csv(rows: list[dict], summary: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        cells = []
        for col in CSV_COLUMNS:
            v = r.get(col, "")
            if col == "L" and isinstance(v, list):
                v = json.dumps(v, separators=(",", ":"))
            elif isinstance(v, bool):
                v = str(v).lower()
            cells.append(v)
        w.writerow(cells)
    if rows:
        tally = f"{summary['interval']}/{summary['rows'] - summary['over_budget']}"
        w.writerow(["summary", summary["rows"], "", summary["max_c"], summary["max_c_eq"], "", "", tally, summary["over_budget"] or ""])
    return buf.getvalue()


def cmd_survey(args) -> int:
    data, spec = read_spec(args.spec)
    window = _parse_window(args.window) if args.window else None
    max_length = args.max_length
    if spec.kind == "ideal" and max_length is not None:
        raise _spec_error("--max-length applies to sequence monoids; use --window for ideal specs")
    if spec.kind != "ideal" and window is not None:
        raise _spec_error("--window applies to ideal specs; use --max-length for sequence monoids")
    t0 = time.perf_counter()
    try:
        domain = spec.domain(window, max_length, args.min_length)
    except CondmonError as exc:
        raise _spec_error(str(exc)) from exc
    engine = _engine(spec, window or spec.window) if spec.kind == "ideal" else None
    rows = [_row(spec, engine, x) for x in domain]
    summary = _summary(rows)
    if args.format == "csv":
        _emit(args, survey_csv(rows, summary))
        return EXIT_OK
    report = _header(data)
    if spec.kind == "ideal":
        report["window"] = list(window or spec.window)
    else:
        report["max_length"] = spec.length_cap if max_length is None else max_length
    report["rows"] = rows
    report["summary"] = summary
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 3)
    _emit(args, dump(report))
    return EXIT_OK


def _parse_window(text: str) -> tuple:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise _spec_error(f"bad window {text!r}; use comma-separated integers like 6,6") from exc
    if any(u < 0 for u in w):
        raise _spec_error(f"window entries must be >= 0, got {text!r}")
    return w


def _parse_range(text: str) -> tuple:
    """``3..5`` or ``3,4,5``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise _spec_error(f"bad range {text!r}; use 3..5 or 3,4,5") from exc


def cmd_verify(args) -> int:
    name = args.suite
    if name not in suites.SUITES:
        raise _spec_error(f"unknown suite {name!r}; choose from {', '.join(suites.SUITES)}")
    fn: Callable = suites.SUITES[name]
    accepted = set(inspect.signature(fn).parameters)
    kwargs: dict = {}

    def put(key, value, flag):
        if value is None or value is False:
            return
        if key not in accepted:
            raise _spec_error(f"suite {name} does not take {flag}")
        kwargs[key] = value

    if args.window is not None:
        w = _parse_window(args.window)
        if len(set(w)) != 1:
            raise _spec_error("suite windows are cubes; give equal entries like 6,6")
        put("window", w[0], "--window")
    put("families", args.families, "--families")
    put("ms", _parse_range(args.m) if args.m else None, "--m")
    put("negative", args.negative, "--negative")
    put("seed", args.seed, "--seed")
    put("monoids", args.monoids, "--monoids")
    put("cap", args.cap, "--cap")
    put("max_ell", args.max_ell, "--max-ell")
    tally = None
    if args.cross_check:
        if "tally" not in accepted:
            raise _spec_error(f"suite {name} has no factorizations to cross-check")
        tally = suites.ConsistencyChecker()
        kwargs["tally"] = tally
    t0 = time.perf_counter()
    try:
        result = fn(**kwargs)
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, f"{name}: {exc}") from exc
    report = _header()
    report["suite"] = name
    report["params"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(kwargs.items()) if k != "tally"}
    report["verdict"] = result.to_json()
    ok = result.ok
    if tally is not None:
        report["consistency"] = tally.result.to_json()
        ok = ok and tally.result.ok
    report["ok"] = ok
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 3)
    _emit(args, dump(report))
    if not ok:
        first = result.failures[0] if result.failures else None
        if first is None and tally is not None and tally.result.failures:
            first = tally.result.failures[0]
        _err(f"{name}: FAILED" + (f": {first}" if first else " (no assertions were made)"))
        return EXIT_FAIL
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = construct(args.family, _parse_params(args.params or []))
    load_spec({k: v for k, v in spec.items()})  # the output must validate
    _emit(args, dump(spec))
    return EXIT_OK


def cmd_davenport(args) -> int:
    try:
        G = _group(args.group)
        sup = _support(G, [s.strip() for s in args.support.split(";")]) if args.support else None
        ctx = ZeroSumContext(G, sup) if sup is not None else ZeroSumContext.full(G)
    except CliError:
        raise
    except (CondmonError, ValueError) as exc:
        raise _spec_error(str(exc)) from exc
    report = _header()
    report["group"] = str(G)
    report["support"] = [str(g) for g in ctx.support]
    t0 = time.perf_counter()
    try:
        if args.method in ("dfs", "both"):
            report["D"] = davenport(ctx)
            report["max_zero_sum_free_length"] = max_zero_sum_free_length(ctx)
        if args.method in ("brute", "both"):
            report["D_brute_force"] = davenport_brute_force(ctx)
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc)) from exc
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 3)
    agree = "D" not in report or "D_brute_force" not in report or report["D"] == report["D_brute_force"]
    report["agree"] = agree
    _emit(args, dump(report))
    if not agree:
        _err(f"Davenport constant disagrees: DFS {report['D']}, brute force {report['D_brute_force']}")
        return EXIT_FAIL
    return EXIT_OK


# ------------------------------------------------------------------------------
# plumbing


def _emit(args, text: str) -> None:
    path = getattr(args, "output", None)
    if path:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)


def _err(msg: str) -> None:
    print(f"condmon: {msg}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="condmon", description="Factorization invariants of conductor and zero-sum monoids.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, output=True):
        q.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
        if output:
            q.add_argument("-o", "--output", help="write the report here instead of stdout")

    q = sub.add_parser("validate", help="check a spec file")
    q.add_argument("spec")
    common(q)
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("invariants", help="invariant report for elements of a spec's monoid")
    q.add_argument("spec")
    q.add_argument("element", nargs="*", help="element literals; defaults to the spec's 'elements'")
    common(q)
    q.set_defaults(func=cmd_invariants)

    q = sub.add_parser("survey", help="invariant report for every element of a window")
    q.add_argument("spec")
    q.add_argument("--window", help="box upper corner for ideal specs, e.g. 5,5")
    q.add_argument("--max-length", type=int, help="longest sequence for zero-sum or labeled-prime specs")
    q.add_argument("--min-length", type=int, default=0)
    q.add_argument("--format", choices=("json", "csv"), default="json")
    common(q)
    q.set_defaults(func=cmd_survey)

    q = sub.add_parser("verify", help="run a theorem suite")
    q.add_argument("suite", help=", ".join(suites.SUITES))
    q.add_argument("--window", help="cube window, e.g. 6 or 6,6")
    q.add_argument("--families", choices=("default", "random"))
    q.add_argument("--m", help="cycle parameters, e.g. 3..5")
    q.add_argument("--negative", action="store_true", help="also run the non-conductor counterexample")
    q.add_argument("--seed", type=int)
    q.add_argument("--monoids", type=int)
    q.add_argument("--cap", type=int, help="factorization cap per element")
    q.add_argument("--max-ell", type=int)
    q.add_argument("--cross-check", action="store_true", help="also run the engine self-consistency checks")
    common(q)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("construct", help="emit the spec of an example family")
    q.add_argument("family", help=", ".join(cons.FAMILIES))
    q.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    common(q)
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("davenport", help="Davenport constant of a group or subset")
    q.add_argument("group", help='e.g. C2xC2')
    q.add_argument("--support", help='";"-separated elements, e.g. "(1,0);(0,1)"')
    q.add_argument("--method", choices=("dfs", "brute", "both"), default="dfs")
    common(q)
    q.set_defaults(func=cmd_davenport)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SPEC if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        _err(str(exc))
        return exc.code
    except GroupTooSmall as exc:
        _err(str(exc))
        return EXIT_SPEC
    except BudgetExceeded as exc:
        _err(str(exc))
        return EXIT_BUDGET
    except CondmonError as exc:
        _err(str(exc))
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
