"""Command-line front end.

Matroid inputs are JSON files (``-`` or no path: stdin). Exit codes: 0 pass
(or plain output), 2 a check failed with a witness, 1 usage or data error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import matroid as matroid_mod
from .endo import check_fan_compatibility, maps_into_trop
from .errors import HypothesisError, MatroidError
from .fans import bergman_fan, fine_subdivision, matroid_polytope_vertices, nested_fan, polytope_dim
from .io import dumps, fan_to_json, map_from_json, matrix_to_json, matroid_from_json, matroid_to_json
from .lattice import flats, max_building_set, maximal_chains, maximal_nested_sets, min_building_set, nested_sets
from .matroid import ExactMatrix, braid_matrix, braid_matroid, lex_key, pg_matroid, pg_points, uniform_matroid
from .verify import (
    fans_equal_min_vs_bergman,
    fs_criterion,
    support_consistency,
    verify_distinct_spans,
    verify_refinement,
)

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _sets(xs) -> list[list[int]]:
    return [list(lex_key(x)) for x in xs]


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MatroidError(f"malformed JSON in {path}: {exc}") from None
    except OSError as exc:
        raise MatroidError(f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> matroid_mod.Matroid:
    return matroid_from_json(_read_json(args.matroid), args.cap)


def _building(args, lat):
    return min_building_set(lat) if args.building == "min" else max_building_set(lat)


# subcommand bodies return (document, exit code)


def cmd_gen(args):
    kind, params = args.kind, args.params
    expected = {"braid": 1, "pg": 2, "uniform": 2, "file": 1}
    if len(params) != expected[kind]:
        raise UsageError(f"gen {kind} takes {expected[kind]} argument(s)")
    if kind == "file":
        doc = _read_json(params[0])
        m = matroid_from_json(doc, args.cap)
        if doc.get("kind") == "matrix":
            return matrix_to_json(ExactMatrix.from_strings(doc["data"], doc.get("field", "Q"))), EXIT_OK
        return matroid_to_json(m), EXIT_OK
    try:
        nums = [int(x) for x in params]
    except ValueError:
        raise UsageError(f"gen {kind} needs integer arguments") from None
    if kind == "braid":
        braid_matroid(nums[0], args.cap)
        return matrix_to_json(braid_matrix(nums[0])), EXIT_OK
    if kind == "pg":
        d, p = nums
        pg_matroid(d, p, args.cap)
        pts = pg_points(d, p)
        mat = ExactMatrix(tuple(tuple(pt[i] for pt in pts) for i in range(d + 1)), p)
        return matrix_to_json(mat), EXIT_OK
    return matroid_to_json(uniform_matroid(nums[0], nums[1], args.cap)), EXIT_OK


def cmd_circuits(args):
    return _sets(_load(args).circuits()), EXIT_OK


def cmd_flats(args):
    return _sets(flats(_load(args)).flats), EXIT_OK


def cmd_chains(args):
    return [_sets(c) for c in maximal_chains(flats(_load(args)))], EXIT_OK


def cmd_nested(args):
    lat = flats(_load(args))
    g = _building(args, lat)
    found = maximal_nested_sets(lat, g) if args.maximal else list(nested_sets(lat, g))
    return [_sets(s) for s in found], EXIT_OK


def cmd_polytope(args):
    m = _load(args)
    dim = polytope_dim(m)
    return {"vertices": [list(v) for v in matroid_polytope_vertices(m)], "dim": dim,
            "components": m.num_components()}, EXIT_OK


def cmd_fine_fan(args):
    return fan_to_json(fine_subdivision(_load(args))), EXIT_OK


def cmd_nested_fan(args):
    m = _load(args)
    lat = flats(m)
    return fan_to_json(nested_fan(m, _building(args, lat), lat)), EXIT_OK


def cmd_bergman(args):
    return fan_to_json(bergman_fan(_load(args), threads=args.threads)), EXIT_OK


def _report(r):
    return r.to_json(), EXIT_OK if r.passed else EXIT_FAIL


def cmd_verify_spans(args):
    m = _load(args)
    fan = fine_subdivision(m) if args.fan == "fine" else None
    return _report(verify_distinct_spans(m, fan))


def cmd_verify_fs(args):
    return _report(fs_criterion(_load(args)))


def cmd_verify_fans(args):
    return _report(fans_equal_min_vs_bergman(_load(args)))


def cmd_verify_support(args):
    return _report(support_consistency(_load(args), args.box, args.samples, args.seed))


def cmd_verify_refine(args):
    return _report(verify_refinement(_load(args)))


_VERIFY = {
    "spans": cmd_verify_spans,
    "fs": cmd_verify_fs,
    "fans": cmd_verify_fans,
    "support": cmd_verify_support,
    "refine": cmd_verify_refine,
}


def cmd_check_endo(args):
    m = matroid_from_json(_read_json(args.matroid), args.cap)
    a, _lam = map_from_json(_read_json(args.map))
    compat = check_fan_compatibility(m, a)
    into = maps_into_trop(m, a)
    doc = compat.to_json()
    doc["into_trop"] = into.to_json()
    ok = compat.passed and into.passed
    doc["verdict"] = "pass" if ok else "fail"
    return doc, EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="ground-set size cap (default 20)")
    common.add_argument("--format", choices=["json", "summary"], default="json")
    common.add_argument("--threads", type=int, default=1, help="worker threads for per-chain work")

    parser = _Parser(prog="tropfan", description="Matroids, nested-set fans and Bergman fans in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="emit a matroid: braid N | pg D P | uniform R N | file PATH")
    p.add_argument("kind", choices=["braid", "pg", "uniform", "file"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    def with_matroid(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("matroid", nargs="?", default="-", help="matroid JSON file (default: stdin)")
        p.set_defaults(func=func)
        return p

    with_matroid("circuits", cmd_circuits, "all circuits, lexicographic")
    with_matroid("flats", cmd_flats, "all flats by rank")
    with_matroid("chains", cmd_chains, "maximal chains of flats")
    p = with_matroid("nested", cmd_nested, "nested sets of a building set")
    p.add_argument("--building", choices=["min", "max"], default="min")
    p.add_argument("--maximal", action="store_true", help="only maximal nested sets")
    with_matroid("polytope", cmd_polytope, "matroid polytope vertices and dimension")
    with_matroid("fine-fan", cmd_fine_fan, "fine subdivision")
    p = with_matroid("nested-fan", cmd_nested_fan, "nested-set fan")
    p.add_argument("--building", choices=["min", "max"], default="min")
    with_matroid("bergman", cmd_bergman, "Bergman fan")
    p = with_matroid("verify-spans", cmd_verify_spans, "distinct maximal cones span distinct spaces")
    p.add_argument("--fan", choices=["bergman", "fine"], default="bergman")
    with_matroid("verify-fs", cmd_verify_fs, "connectivity criterion for M[F, G]")
    with_matroid("verify-fans", cmd_verify_fans, "minimal nested fan vs Bergman fan")
    p = with_matroid("verify-support", cmd_verify_support, "circuit vs fan membership on samples")
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    with_matroid("verify-refine", cmd_verify_refine, "fine subdivision and minimal nested fan refine the Bergman fan")
    p = sub.add_parser("verify", parents=[common], help="run one check: spans | fs | fans | support | refine")
    checks = p.add_subparsers(dest="check", required=True, parser_class=_Parser)
    for name, help_ in (
        ("spans", "distinct maximal cones span distinct spaces"),
        ("fs", "connectivity criterion for M[F, G]"),
        ("fans", "minimal nested fan vs Bergman fan"),
        ("support", "circuit vs fan membership on samples"),
        ("refine", "fine subdivision and minimal nested fan refine the Bergman fan"),
    ):
        q = checks.add_parser(name, parents=[common], help=help_)
        q.add_argument("matroid", nargs="?", default="-", help="matroid JSON file (default: stdin)")
        q.set_defaults(func=_VERIFY[name])
        if name == "spans":
            q.add_argument("--fan", choices=["bergman", "fine"], default="bergman")
        if name == "support":
            q.add_argument("--box", type=int, default=3)
            q.add_argument("--samples", type=int, default=1000)
            q.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check-endo", parents=[common], help="fan compatibility of an integer linear map")
    p.add_argument("--matroid", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_check_endo)
    return parser


def _summary(doc: Any) -> str:
    if isinstance(doc, dict) and "verdict" in doc:
        lines = [f"{doc['check']}: {doc['verdict'].upper()}"]
        lines += [f"  {k} = {v}" for k, v in sorted(doc.get("stats", {}).items())]
        lines += [f"  witness: {json.dumps(w, sort_keys=True)}" for w in doc.get("witnesses", [])[:5]]
        return "\n".join(lines) + "\n"
    if isinstance(doc, dict) and "cones" in doc:
        return f"fan: {len(doc['cones'])} maximal cones, {len(doc['rays'])} rays, lineality {doc['lineality_dim']}\n"
    if isinstance(doc, list):
        return "".join(json.dumps(x) + "\n" for x in doc)
    return dumps(doc)


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cap is not None and args.cap < 1:
            raise UsageError("--cap must be positive")
        doc, code = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except MatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    stdout.write(_summary(doc) if args.format == "summary" else dumps(doc))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
