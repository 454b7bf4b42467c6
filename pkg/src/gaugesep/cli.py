"""Command-line front end: problem files in, result documents out.

Subcommands cover every pipeline stage (gauge, conic, extend, separate,
roundtrip, verify), golden reproduction of the bundled instances (repro),
and SVG rendering of 2-D instances (render).

Exit codes: 0 ok, 2 missing file, 3 schema violation, 4 failed precondition,
5 solver failure.  Documents are deterministic for a fixed seed except for
the ``timings`` field; floats are serialized with 17 significant digits so
values round-trip exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

import numpy as np

from . import __version__
from ._svg import render_svg
from .convexsets import ConvexSet, HPolyhedron, OpenBall, build_D, conic_hull_membership, pick_interior_point
from .errors import (
    DegenerateError,
    EmptySetError,
    InputError,
    SchemaError,
    SolverError,
)
from .extension import domination_check, extend_full_state, functional_coefficients
from .fixtures import oracle_by_name
from .gauges import ExplicitMaxAbs, PolyhedralGauge, gauge, gauge_from_symmetrized
from .geometry import Hyperplane, Subspace, span_basis, zero_subspace
from .separation import (
    SeparationOptions,
    brute_force_2d_normals,
    extend_via_separation,
    separate,
    verify_separation,
    _span_functional,
)

_BUILTIN_PROBLEMS = ("example1", "example2", "example3_quotient")


# ---------------------------------------------------------------------------
# serialization

def _fmt_float(x: float) -> str:
    if np.isnan(x):
        return '"nan"'
    if np.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(float(x), ".17g")


def dumps(doc, indent: int = 0) -> str:
    """JSON with deterministic key order and 17-significant-digit floats."""
    pad = "  " * indent
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in doc.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(doc, (list, tuple, np.ndarray)):
        items = [dumps(v, indent + 1) for v in doc]
        if sum(len(s) for s in items) < 72 and all("\n" not in s for s in items):
            return "[" + ", ".join(items) + "]"
        inner = ",\n".join(f"{pad}  {s}" for s in items)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(doc, bool) or isinstance(doc, np.bool_):
        return "true" if doc else "false"
    if doc is None:
        return "null"
    if isinstance(doc, (int, np.integer)):
        return str(int(doc))
    if isinstance(doc, (float, np.floating)):
        return _fmt_float(float(doc))
    return json.dumps(doc)


def _vector(v) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=float)]


# ---------------------------------------------------------------------------
# problem files

def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(f"{path}: {message}")


def _number_list(node, path: str, length: int | None = None) -> list[float]:
    _require(isinstance(node, list), path, "expected an array of numbers")
    for i, x in enumerate(node):
        _require(isinstance(x, (int, float)) and not isinstance(x, bool), f"{path}[{i}]", "expected a number")
    if length is not None:
        _require(len(node) == length, path, f"expected {length} entries, got {len(node)}")
    return [float(x) for x in node]


def _parse_set(node, dim: int, path: str) -> ConvexSet:
    _require(isinstance(node, dict), path, "expected an object")
    kind = node.get("kind")
    _require(kind in ("ball", "hpoly", "oracle"), f"{path}.kind", "expected one of ball|hpoly|oracle")
    if kind == "ball":
        center = _number_list(node.get("center"), f"{path}.center", dim)
        radius = node.get("radius")
        _require(isinstance(radius, (int, float)) and radius > 0, f"{path}.radius", "expected a positive number")
        return OpenBall(np.array(center), float(radius))
    if kind == "hpoly":
        rows = node.get("rows")
        _require(isinstance(rows, list) and rows, f"{path}.rows", "expected a nonempty array")
        a, b = [], []
        for i, row in enumerate(rows):
            rpath = f"{path}.rows[{i}]"
            _require(isinstance(row, dict), rpath, "expected an object")
            a.append(_number_list(row.get("a"), f"{rpath}.a", dim))
            off = row.get("b")
            _require(isinstance(off, (int, float)) and not isinstance(off, bool), f"{rpath}.b", "expected a number")
            _require(row.get("strict") is True, f"{rpath}.strict", "must be true in version 1")
            b.append(float(off))
        witness = node.get("witness")
        wit = np.array(_number_list(witness, f"{path}.witness", dim)) if witness is not None else None
        try:
            return HPolyhedron(np.array(a), np.array(b), witness=wit)
        except InputError as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    name = node.get("name")
    _require(isinstance(name, str), f"{path}.name", "expected a fixture name string")
    try:
        a_set = oracle_by_name(name)
    except InputError as exc:
        raise SchemaError(f"{path}.name: {exc}") from exc
    _require(a_set.dim == dim, f"{path}.name", f"fixture {name!r} has dimension {a_set.dim}, problem says {dim}")
    return a_set


def _parse_seminorm(node, dim: int, path: str):
    _require(isinstance(node, dict), path, "expected an object")
    kind = node.get("kind")
    _require(kind in ("polyhedral", "explicit"), f"{path}.kind", "expected polyhedral|explicit")
    rows = node.get("rows")
    _require(isinstance(rows, list) and rows, f"{path}.rows", "expected a nonempty array")
    if kind == "polyhedral":
        a, b = [], []
        for i, row in enumerate(rows):
            rpath = f"{path}.rows[{i}]"
            _require(isinstance(row, dict), rpath, "expected an object")
            a.append(_number_list(row.get("a"), f"{rpath}.a", dim))
            off = row.get("b")
            _require(isinstance(off, (int, float)) and off > 0, f"{rpath}.b", "expected a positive number")
            b.append(float(off))
        return PolyhedralGauge(np.array(a), np.array(b))
    mat = [_number_list(row, f"{path}.rows[{i}]", dim) for i, row in enumerate(rows)]
    return ExplicitMaxAbs(np.array(mat))


class Problem:
    """Validated problem file: the set, the subspace, and the options."""

    def __init__(self, raw: dict):
        _require(isinstance(raw, dict), "$", "top level must be an object")
        _require(raw.get("version") == 1, "version", "must be the integer 1")
        dim = raw.get("dimension")
        _require(isinstance(dim, int) and dim >= 1, "dimension", "expected a positive integer")
        self.dimension: int = dim
        self.a_set = _parse_set(raw.get("A"), dim, "A")
        s_node = raw.get("S")
        _require(isinstance(s_node, dict), "S", "expected an object")
        basis = s_node.get("basis")
        _require(isinstance(basis, list), "S.basis", "expected an array of vectors")
        vectors = [np.array(_number_list(v, f"S.basis[{i}]", dim)) for i, v in enumerate(basis)]
        self.s: Subspace = span_basis(vectors, dim) if vectors else zero_subspace(dim)
        self.x = np.array(_number_list(raw["x"], "x", dim)) if raw.get("x") is not None else None
        self.seminorm = (
            _parse_seminorm(raw["seminorm"], dim, "seminorm") if raw.get("seminorm") is not None else None
        )
        options = raw.get("options", {})
        _require(isinstance(options, dict), "options", "expected an object")
        rule = options.get("gamma_rule", "upper")
        _require(rule in ("upper", "lower", "midpoint"), "options.gamma_rule", "expected upper|lower|midpoint")
        seed = options.get("seed", 0)
        _require(isinstance(seed, int), "options.seed", "expected an integer")
        self.gamma_rule: str = rule
        self.seed: int = seed

    def options(self, args) -> SeparationOptions:
        return SeparationOptions(
            x=self.x,
            gamma_rule=args.gamma_rule or self.gamma_rule,
            seed=args.seed if args.seed is not None else self.seed,
            gauge_tol=args.tol,
        )


def parse_problem(path: str) -> Problem:
    """Load and validate a problem file (or a bundled problem name)."""
    if path in _BUILTIN_PROBLEMS:
        text = resources.files("gaugesep").joinpath(f"problems/{path}.json").read_text()
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except FileNotFoundError:
            raise
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return Problem(raw)


# ---------------------------------------------------------------------------
# subcommand helpers

def _pipeline_gauge(problem: Problem, opts: SeparationOptions):
    if problem.seminorm is not None:
        return problem.seminorm
    x = problem.x if problem.x is not None else pick_interior_point(problem.a_set)
    return gauge_from_symmetrized(build_D(problem.a_set, x))


def _certificate_doc(cert) -> dict:
    return {
        "s_in_h_residual": cert.s_in_h_residual,
        "a_clearance": cert.a_clearance,
        "boundary_margin": cert.boundary_margin,
        "sign_constant": cert.sign_constant,
        "conic_disjoint_sampled": cert.conic_disjoint_sampled,
        "remark2_status": cert.remark2_status,
        "valid": cert.valid,
    }


def _history_doc(steps) -> list[dict]:
    return [
        {
            "direction": _vector(step.direction),
            "lo": step.interval.lo,
            "hi": step.interval.hi,
            "gamma": step.gamma,
        }
        for step in steps
    ]


def _base_doc(command: str, seed: int) -> dict:
    return {"version": 1, "command": command, "seed": seed, "tool_version": __version__}


def _parse_point(text: str, dim: int) -> np.ndarray:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--point must be a comma-separated number list: {exc}") from exc
    if len(values) != dim:
        raise InputError(f"--point has {len(values)} coordinates, problem dimension is {dim}")
    return np.array(values)


def _cmd_separate(problem: Problem, args) -> dict:
    opts = problem.options(args)
    start = time.perf_counter()
    result = separate(problem.a_set, problem.s, opts)
    doc = _base_doc("separate", opts.seed)
    doc["normal"] = _vector(result.hyperplane.normal)
    doc["g"] = _vector(result.g)
    doc["anchor"] = _vector(result.anchor_x) if result.anchor_x is not None else None
    doc["gamma_history"] = _history_doc(result.steps)
    doc["certificate"] = _certificate_doc(result.certificate)
    doc["timings"] = {"total_s": time.perf_counter() - start}
    return doc


def _cmd_gauge(problem: Problem, args) -> dict:
    if args.point is None:
        raise InputError("gauge requires --point")
    opts = problem.options(args)
    point = _parse_point(args.point, problem.dimension)
    p = _pipeline_gauge(problem, opts)
    doc = _base_doc("gauge", opts.seed)
    doc["point"] = _vector(point)
    doc["value"] = gauge(p, point)
    doc["timings"] = {"total_s": 0.0}
    return doc


def _cmd_conic(problem: Problem, args) -> dict:
    if args.point is None:
        raise InputError("conic requires --point")
    opts = problem.options(args)
    point = _parse_point(args.point, problem.dimension)
    doc = _base_doc("conic", opts.seed)
    doc["point"] = _vector(point)
    doc["member"] = conic_hull_membership(problem.a_set, point)
    doc["timings"] = {"total_s": 0.0}
    return doc


def _cmd_extend(problem: Problem, args) -> dict:
    opts = problem.options(args)
    start = time.perf_counter()
    x = problem.x if problem.x is not None else pick_interior_point(problem.a_set)
    p = _pipeline_gauge(problem, opts)
    _, functional = _span_functional(problem.s, x)
    state = extend_full_state(functional, p, opts.gamma_rule, seed=opts.seed)
    g = functional_coefficients(state)
    violation = domination_check(g, p, seed=opts.seed, trials=256)
    if violation > 1e-6:
        raise SolverError(f"extension violates domination by {violation:.3e}")
    doc = _base_doc("extend", opts.seed)
    doc["g"] = _vector(g)
    doc["gamma_history"] = _history_doc(state.history)
    doc["domination_violation"] = violation
    doc["timings"] = {"total_s": time.perf_counter() - start}
    return doc


def _cmd_roundtrip(problem: Problem, args) -> dict:
    opts = problem.options(args)
    start = time.perf_counter()
    x = problem.x if problem.x is not None else pick_interior_point(problem.a_set)
    p = _pipeline_gauge(problem, opts)
    _, functional = _span_functional(problem.s, x)
    direct = extend_full_state(functional, p, opts.gamma_rule, seed=opts.seed)
    g_direct = functional_coefficients(direct)
    g_geometric = extend_via_separation(functional, p, rule=opts.gamma_rule, seed=opts.seed)
    basis = functional.domain.basis
    doc = _base_doc("roundtrip", opts.seed)
    doc["g_direct"] = _vector(g_direct)
    doc["g_geometric"] = _vector(g_geometric)
    doc["domain_agreement"] = float(np.max(np.abs(basis @ g_geometric - functional.values)))
    doc["domination_violation"] = domination_check(g_geometric, p, seed=opts.seed, trials=256)
    doc["timings"] = {"total_s": time.perf_counter() - start}
    return doc


def _cmd_verify(problem: Problem, args) -> dict:
    opts = problem.options(args)
    if args.normal:
        normal = _parse_point(args.normal, problem.dimension)
        norm = float(np.linalg.norm(normal))
        if norm <= 1e-12:
            raise InputError("--normal must be nonzero")
        normal = normal / norm
    else:
        result = separate(problem.a_set, problem.s, opts)
        normal = np.asarray(result.hyperplane.normal)
    cert = verify_separation(problem.a_set, problem.s, Hyperplane(normal), seed=opts.seed)
    doc = _base_doc("verify", opts.seed)
    doc["normal"] = _vector(normal)
    doc["certificate"] = _certificate_doc(cert)
    doc["timings"] = {"total_s": 0.0}
    return doc


def _cmd_render(problem: Problem, args) -> dict:
    opts = problem.options(args)
    if problem.dimension != 2:
        raise InputError("render requires a 2-D problem")
    result = separate(problem.a_set, problem.s, opts)
    admissible = brute_force_2d_normals(problem.a_set, 360)
    svg = render_svg(
        problem.a_set,
        s_basis=np.asarray(problem.s.basis),
        normal=np.asarray(result.hyperplane.normal),
        admissible=admissible,
    )
    target = args.svg or "instance.svg"
    with open(target, "w", encoding="utf-8") as handle:
        handle.write(svg)
    doc = _base_doc("render", opts.seed)
    doc["svg"] = target
    doc["normal"] = _vector(result.hyperplane.normal)
    doc["timings"] = {"total_s": 0.0}
    return doc


def _strip_timings(doc):
    return {k: v for k, v in doc.items() if k != "timings"}


def _diff_docs(golden, actual, path="$"):
    """First diverging field between two documents, or None."""
    if isinstance(golden, dict) and isinstance(actual, dict):
        for key in sorted(set(golden) | set(actual)):
            if key not in golden or key not in actual:
                return f"{path}.{key}", golden.get(key, "<absent>"), actual.get(key, "<absent>")
            hit = _diff_docs(golden[key], actual[key], f"{path}.{key}")
            if hit:
                return hit
        return None
    if isinstance(golden, list) and isinstance(actual, list):
        if len(golden) != len(actual):
            return path, f"length {len(golden)}", f"length {len(actual)}"
        for i, (g_item, a_item) in enumerate(zip(golden, actual)):
            hit = _diff_docs(g_item, a_item, f"{path}[{i}]")
            if hit:
                return hit
        return None
    if isinstance(golden, (int, float)) and isinstance(actual, (int, float)) and not (
        isinstance(golden, bool) or isinstance(actual, bool)
    ):
        if abs(float(golden) - float(actual)) <= 1e-9 * max(1.0, abs(float(golden))):
            return None
        return path, golden, actual
    if golden != actual:
        return path, golden, actual
    return None


def _cmd_repro(args) -> int:
    """Re-run the bundled instances and diff against pinned goldens."""
    failures = 0
    for name in _BUILTIN_PROBLEMS:
        problem = parse_problem(name)
        doc = _strip_timings(_cmd_separate(problem, args))
        golden_text = resources.files("gaugesep").joinpath(f"goldens/{name}.json").read_text()
        golden = json.loads(golden_text)
        hit = _diff_docs(_strip_timings(golden), json.loads(dumps(doc)))
        if hit is None:
            print(f"REPRO {name}: PASS")
        else:
            failures += 1
            field, want, got = hit
            print(f"REPRO {name}: FAIL at {field}: golden={want!r} actual={got!r}")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# entry point

_HANDLERS = {
    "separate": _cmd_separate,
    "gauge": _cmd_gauge,
    "conic": _cmd_conic,
    "extend": _cmd_extend,
    "roundtrip": _cmd_roundtrip,
    "verify": _cmd_verify,
    "render": _cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaugesep",
        description="Separating hyperplanes for open convex sets via gauge functionals.",
    )
    parser.add_argument("command", choices=sorted([*_HANDLERS, "repro"]))
    parser.add_argument("--input", help="problem file path or bundled name (example1, example2, example3_quotient)")
    parser.add_argument("--point", help="comma-separated coordinates for gauge/conic")
    parser.add_argument("--normal", help="comma-separated hyperplane normal for verify")
    parser.add_argument("--gamma-rule", dest="gamma_rule", choices=["upper", "lower", "midpoint"])
    parser.add_argument("--seed", type=int)
    parser.add_argument("--tol", type=float, help="override the oracle gauge bisection tolerance")
    parser.add_argument("--output", help="write the result document here instead of stdout")
    parser.add_argument("--svg", help="SVG output path for render")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "repro":
            return _cmd_repro(args)
        if not args.input:
            raise InputError(f"{args.command} requires --input")
        problem = parse_problem(args.input)
        doc = _HANDLERS[args.command](problem, args)
    except FileNotFoundError as exc:
        print(f"error: missing file: {exc.filename or exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"error: schema: {exc}", file=sys.stderr)
        return 3
    except (InputError, DegenerateError, EmptySetError) as exc:
        print(f"error: precondition: {exc}", file=sys.stderr)
        return 4
    except (SolverError,) as exc:
        print(f"error: solver: {exc}", file=sys.stderr)
        return 5
    text = dumps(doc) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
