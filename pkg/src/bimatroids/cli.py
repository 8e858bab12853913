"""Command-line front end.

Exit codes: 0 when every verdict holds (validation verdicts are printed as
data), 1 for I/O or parse errors, 2 for contract violations and 3 when a
theorem check raises an alarm.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .bimatroid import (Bimatroid, RelativeRankTable, extended_labels, extended_matroid,
                        from_extended_matroid, from_rank_table, from_vertical_rectangles,
                        regular_rectangles, rank_table, validate_bimatroid,
                        validate_rank_axioms, validate_rectangle_axioms, laplace_property)
from .construct import (bond, from_map, from_matrix, from_relation, map_from_json,
                        relation_from_json)
from .errors import (BimatroidError, InternalConsistencyError, PreconditionError,
                     SchemaError, TheoremViolation)
from .exactnum import FieldMatrix
from .generate import (field_for, random_matrix_bimatroid, random_matroid,
                       random_realizable_morphism, trial_rng)
from .lorentzian import lorentzian_report
from .matroid import Matroid, bits, validate_bases
from .morphism import (MatroidMorphism, _indices, bases_of_morphism, basis_counts,
                       is_morphism_cocircuits, is_morphism_flats, is_morphism_rank,
                       nullity, tilde_matroid)
from .polynomial import (MultiPoly, basis_generating_poly, homogeneous_basis_poly,
                         independent_set_poly_homogenized, regular_minor_poly,
                         weak_basis_poly)
from .product import cauchy_binet_check, frenk_extended, product
from .verify import (check_mason, check_theorem_A, check_theorem_B, check_theorem_C,
                     check_thmC_pipeline, check_weak_basis_poly_lorentzian)

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_ALARM = 0, 1, 2, 3

THEOREMS = ("A", "B", "C", "mason", "c-pipeline", "e-lorentzian")
# per theorem: (default max rows, default max cols)
RANDOM_DEFAULTS = {"A": (5, 5), "B": (5, 5), "C": (3, 6), "mason": (0, 6),
                   "c-pipeline": (3, 6), "e-lorentzian": (3, 6)}


class ParseError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _load(path: str, loader):
    data = read_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    try:
        return loader(data)
    except SchemaError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"{path}: missing or mistyped field {exc}") from exc


def bimatroid_from_any(data: dict) -> Bimatroid:
    """Accept any of the four serialized views."""
    if "regular_minors" in data:
        return Bimatroid.from_json(data)
    if "table" in data:
        T = RelativeRankTable.from_json(data)
        return from_rank_table(T, data.get("rows"), data.get("cols"))
    if "vertical" in data:
        rows, cols = list(data["rows"]), list(data["cols"])
        fam = [(mask_from(rows, r["S"]), mask_from(cols, r["T"])) for r in data["vertical"]]
        return from_vertical_rectangles(fam, rows, cols)
    if "bases" in data and "E" in data:
        M = Matroid.from_json(data)
        labels = (data["rows"], data["cols"]) if "rows" in data else None
        return from_extended_matroid(M, [str(x) for x in data["E"]], labels)
    if "entries" in data:
        return from_matrix(FieldMatrix.from_json(data), data.get("row_labels"),
                           data.get("col_labels"))
    raise SchemaError("unrecognized bimatroid layout")


def mask_from(labels: list, items) -> int:
    out = 0
    for x in items:
        if str(x) not in labels:
            raise PreconditionError(f"unknown label {x!r}")
        out |= 1 << labels.index(str(x))
    return out


def view(B: Bimatroid, which: str) -> dict:
    if which == "minors":
        return B.to_json()
    if which == "extended":
        out = extended_matroid(B).to_json()
        out["E"] = list(extended_labels(B.rows, B.cols)[:B.m])
        out["rows"], out["cols"] = list(B.rows), list(B.cols)
        return out
    if which == "rank-table":
        out = rank_table(B).to_json()
        out["rows"], out["cols"] = list(B.rows), list(B.cols)
        return out
    if which == "rectangles":
        def fmt(pairs):
            return [{"S": [B.rows[i] for i in bits(S)], "T": [B.cols[j] for j in bits(T)]}
                    for S, T in pairs]
        return {"rows": list(B.rows), "cols": list(B.cols),
                "vertical": fmt(regular_rectangles(B, "vertical")),
                "horizontal": fmt(regular_rectangles(B, "horizontal"))}
    raise PreconditionError(f"unknown view {which!r}")


def morphism_parts(data: dict):
    src = Matroid.from_json(data["source"])
    tgt = Matroid.from_json(data["target"])
    phi = {str(k): str(v) for k, v in data["map"].items()}
    return src, tgt, phi


# -- subcommands ---------------------------------------------------------------------

def cmd_validate(args, out):
    B = _load(args.file, bimatroid_from_any)
    v = validate_bimatroid(B)
    res = v.to_json()
    res["views"] = {
        "rank_table": validate_rank_axioms(rank_table(B)).ok,
        "rectangles": validate_rectangle_axioms(regular_rectangles(B), B.m, B.n).ok,
        "extended_matroid": validate_bases(extended_matroid(B)).ok,
        "laplace": laplace_property(B).ok,
    }
    out.write(dumps(res))
    return EXIT_OK


def cmd_from_matrix(args, out):
    data = read_json(args.file)
    try:
        A = FieldMatrix.from_json(data)
    except SchemaError as exc:
        raise ParseError(str(exc)) from exc
    out.write(dumps(from_matrix(A, data.get("row_labels"), data.get("col_labels")).to_json()))
    return EXIT_OK


def cmd_from_relation(args, out):
    pairs, rows, cols = _load(args.file, relation_from_json)
    out.write(dumps(from_relation(pairs, rows, cols).to_json()))
    return EXIT_OK


def cmd_from_map(args, out):
    phi, domain, codomain = _load(args.file, map_from_json)
    out.write(dumps(from_map(phi, domain, codomain).to_json()))
    return EXIT_OK


def cmd_bond(args, out):
    M = _load(args.file, Matroid.from_json)
    basis = [x for x in args.basis.split(",") if x]
    out.write(dumps(bond(M, basis).to_json()))
    return EXIT_OK


def cmd_convert(args, out):
    B = _load(args.file, bimatroid_from_any)
    out.write(dumps(view(B, args.view)))
    return EXIT_OK


def cmd_product(args, out):
    A = _load(args.a, bimatroid_from_any)
    B = _load(args.b, bimatroid_from_any)
    out.write(dumps(product(A, B).to_json()))
    return EXIT_OK


def cmd_frenk_check(args, out):
    A = _load(args.a, bimatroid_from_any)
    B = _load(args.b, bimatroid_from_any)
    equal = frenk_extended(A, B) == extended_matroid(product(A, B))
    out.write(dumps({"equal": equal}))
    return EXIT_OK if equal else EXIT_ALARM


def cmd_cauchy_binet(args, out):
    A = _load(args.a, FieldMatrix.from_json)
    B = _load(args.b, FieldMatrix.from_json)
    res = cauchy_binet_check(A, B)
    out.write(dumps(res))
    return EXIT_OK if res["inclusion"] else EXIT_ALARM


def cmd_morphism(args, out):
    src, tgt, phi = _load(args.file, morphism_parts)
    if args.action == "check":
        p = _indices(src, tgt, phi)
        res = {"rank_condition": is_morphism_rank(src, tgt, p),
               "flat_preimages": is_morphism_flats(src, tgt, p),
               "cocircuit_preimages": is_morphism_cocircuits(src, tgt, p)}
        if len(set(res.values())) != 1:
            raise InternalConsistencyError(f"morphism characterizations disagree: {res}")
        res["morphism"] = res["rank_condition"]
        out.write(dumps(res))
        return EXIT_OK
    m = MatroidMorphism.from_labels(src, tgt, phi)
    if args.action == "bases":
        res = {"bases": [src.labels(T) for T in bases_of_morphism(m)],
               "counts": basis_counts(m), "nullity": nullity(m), "rank": src.rank}
    else:
        Mt = tilde_matroid(m)
        res = {"matroid": Mt.to_json(), "valid": validate_bases(Mt).ok}
    out.write(dumps(res))
    return EXIT_OK


POLY_KINDS = ("basis", "regular-minor", "independent-homogenized", "weak-basis",
              "homogeneous-basis")


def cmd_poly(args, out):
    kind = args.kind
    if kind in ("basis", "independent-homogenized"):
        M = _load(args.file, Matroid.from_json)
        p = basis_generating_poly(M) if kind == "basis" else independent_set_poly_homogenized(M)
    elif kind == "regular-minor":
        p = regular_minor_poly(_load(args.file, bimatroid_from_any))
    else:
        m = _load(args.file, MatroidMorphism.from_json)
        if kind == "homogeneous-basis":
            p = homogeneous_basis_poly(m)
        else:
            alpha = nullity(m) if args.alpha is None else args.alpha
            p = weak_basis_poly(m, alpha)
    out.write(dumps(p.to_json()))
    return EXIT_OK


def cmd_check_lorentzian(args, out):
    p = _load(args.file, MultiPoly.from_json)
    out.write(dumps(lorentzian_report(p)))
    return EXIT_OK


# -- theorem suites ------------------------------------------------------------------

def _alphas(m: MatroidMorphism, alpha) -> list[int]:
    if alpha is not None:
        return [alpha]
    return sorted({nullity(m), m.source.rank})


def _check(theorem: str, obj, instance: dict, seed, alpha=None) -> list[dict]:
    if theorem == "A":
        return [check_theorem_A(obj, instance, seed).to_json()]
    if theorem == "B":
        return [check_theorem_B(obj, instance, seed).to_json()]
    if theorem == "C":
        return [check_theorem_C(obj, instance, seed).to_json()]
    if theorem == "mason":
        return [check_mason(obj, instance, seed).to_json()]
    if theorem == "c-pipeline":
        return [check_thmC_pipeline(obj, instance, seed).to_json()]
    return [check_weak_basis_poly_lorentzian(obj, a, instance, seed).to_json()
            for a in _alphas(obj, alpha)]


def random_trial(task: tuple) -> list[dict]:
    """One seeded trial; module-level so worker processes can run it."""
    theorem, seed, trial, max_rows, max_cols, field_name, alpha = task
    field = field_for(field_name)
    if theorem in ("A", "B"):
        rng = trial_rng("matrix", seed, trial)
        A, B = random_matrix_bimatroid(rng, max_rows, max_cols, field)
        inst = {"trial": trial, "matrix": A.to_json(), "bimatroid": B.to_json()}
        return _check(theorem, B, inst, seed)
    if theorem == "mason":
        M = random_matroid(trial_rng("matroid", seed, trial), max_cols, field)
        return _check(theorem, M, {"trial": trial, "matroid": M.to_json()}, seed)
    rm = random_realizable_morphism(trial_rng("morphism", seed, trial), max_cols, max_rows,
                                    field=field)
    inst = {"trial": trial, "vectors": rm.vectors.to_json(),
            "target_vectors": rm.target_vectors.to_json(), "morphism": rm.morphism.to_json()}
    return _check(theorem, rm.morphism, inst, seed, alpha)


def _instance_loader(theorem: str):
    if theorem in ("A", "B"):
        return bimatroid_from_any
    if theorem == "mason":
        return Matroid.from_json
    return MatroidMorphism.from_json


def run_theorem(args) -> dict:
    if args.instance is not None:
        obj = _load(args.instance, _instance_loader(args.theorem))
        reports = _check(args.theorem, obj, None, None, args.alpha)
        seed = None
    else:
        if args.random is None or args.seed is None:
            raise PreconditionError("give an instance file or --random N --seed S")
        d_rows, d_cols = RANDOM_DEFAULTS[args.theorem]
        rows = d_rows if args.max_rows is None else args.max_rows
        cols = d_cols if args.max_cols is None else args.max_cols
        seed = args.seed
        tasks = [(args.theorem, seed, t, rows, cols, args.field, args.alpha)
                 for t in range(args.random)]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(random_trial, tasks))
        else:
            results = [random_trial(t) for t in tasks]
        reports = [r for batch in results for r in batch]
    return {"theorem": args.theorem, "seed": seed, "reports": reports,
            "verdict": all(r["verdict"] for r in reports)}


def csv_text(bundle: dict) -> str:
    buf = io.StringIO()
    fields = ["theorem", "seed", "trial", "report", "sequence", "k", "lhs", "rhs", "holds"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for n, rep in enumerate(bundle["reports"]):
        for c in rep["checks"]:
            w.writerow({"theorem": rep["theorem"], "seed": rep.get("seed"),
                        "trial": rep.get("instance", {}).get("trial"), "report": n,
                        "sequence": c.get("sequence", ""), "k": c["k"],
                        "lhs": c["lhs"], "rhs": c["rhs"], "holds": c["holds"]})
    return buf.getvalue()


def emit(bundle: dict, fmt: str, out):
    out.write(csv_text(bundle) if fmt == "csv" else dumps(bundle))


def cmd_theorem(args, out):
    bundle = run_theorem(args)
    emit(bundle, args.format, out)
    return EXIT_OK if bundle["verdict"] else EXIT_ALARM


def cmd_report(args, out):
    data = read_json(args.file)
    if isinstance(data, list):
        data = {"theorem": None, "seed": None, "reports": data,
                "verdict": all(r.get("verdict", False) for r in data)}
    if not isinstance(data, dict) or "reports" not in data:
        raise ParseError(f"{args.file}: expected a theorem report bundle")
    try:
        emit(data, args.format, out)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{args.file}: malformed report: {exc}") from exc
    return EXIT_OK if data.get("verdict", True) else EXIT_ALARM


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bimatroids",
                                 description="Bimatroids, matroid morphisms and log-concavity checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def file_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=fn)
        return p

    file_cmd("validate", cmd_validate, "check the bimatroid axioms")
    file_cmd("from-matrix", cmd_from_matrix, "bimatroid of nonvanishing minors")
    file_cmd("from-relation", cmd_from_relation, "bimatroid of matchings in a relation")
    file_cmd("from-map", cmd_from_map, "bimatroid of the graph of a map")
    p = file_cmd("bond", cmd_bond, "bond bimatroid of a matroid basis")
    p.add_argument("--basis", required=True, help="comma-separated basis labels")
    p = file_cmd("convert", cmd_convert, "print another view of a bimatroid")
    p.add_argument("--view", required=True, choices=["minors", "extended", "rank-table", "rectangles"])

    for name, fn in (("product", cmd_product), ("frenk-check", cmd_frenk_check),
                     ("cauchy-binet", cmd_cauchy_binet)):
        p = sub.add_parser(name)
        p.add_argument("a")
        p.add_argument("b")
        p.set_defaults(func=fn)

    p = sub.add_parser("morphism", help="morphism checks, bases and the padded matroid")
    p.add_argument("action", choices=["check", "bases", "tilde"])
    p.add_argument("file")
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("poly", help="generating polynomials")
    p.add_argument("kind", choices=POLY_KINDS)
    p.add_argument("file")
    p.add_argument("--alpha", type=int)
    p.set_defaults(func=cmd_poly)

    file_cmd("check-lorentzian", cmd_check_lorentzian, "classify a homogeneous polynomial")

    p = sub.add_parser("theorem", help="run a theorem check on an instance or a random corpus")
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("instance", nargs="?")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-rows", type=int)
    p.add_argument("--max-cols", type=int)
    p.add_argument("--field", choices=["Fp", "Q"], default="Fp")
    p.add_argument("--alpha", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_theorem)

    p = file_cmd("report", cmd_report, "re-emit a saved theorem bundle")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InternalConsistencyError, TheoremViolation) as exc:
        print(f"alarm: {exc}", file=sys.stderr)
        return EXIT_ALARM
    except (PreconditionError, BimatroidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
