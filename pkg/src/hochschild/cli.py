"""Command-line interface and JSON interchange format.

Commands: build | hh | gldim | verify <sub> | validate <sub>.

Input documents are JSON objects with a "kind" discriminator and a
"field" spec; rational scalars travel as strings like "3" or "-2/7".
Reports are emitted as canonical JSON (sorted keys, no whitespace) with a
SHA-256 digest of the canonically serialized input, so identical inputs
and flags produce byte-identical output.

Exit codes: 0 = success / positive verdict, 1 = negative verdict,
2 = any error (schema, construction, size guard, refused precondition).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    AlgebraError,
    Bimodule,
    FdAlgebra,
    UnsupportedFieldError,
    commutator_quotient_dim,
    make_algebra,
    make_bimodule,
)
from .constructors import (
    CategoryError,
    ConstructionError,
    ExactContextData,
    MoritaContextData,
    check_exact_context,
    check_homological_exact_context,
    ei_category_algebra,
    gls_algebra,
    make_cartan_triple,
    make_category,
    make_exact_context,
    make_morita_context,
    morita_context_ring,
    non_invertible_endomorphism,
    triangular_matrix,
    trivial_extension,
    validate_cartan_triple,
)
from .fields import Field, FieldError, GF, QQ
from .homology import check_stratifying, gldim, hh_dims
from .presentation import (
    QuiverError,
    RewritingError,
    SkewGentleTriple,
    ValidationReport,
    complete,
    enumerate_basis,
    make_quiver,
    make_rewriting_system,
    validate_gentle,
    validate_skew_gentle,
)
from .sparsemat import SizeGuardError, set_entry_cap
from .verify import (
    NotStratifyingError,
    verify_les_inequality,
    verify_morita_reduction,
    verify_splitting,
)

DEFAULT_MAX_DEGREE = 4
DEFAULT_BOUND = 12

ALGEBRA_KINDS = ("algebra-table", "presentation", "triangular", "morita",
                 "trivial-extension", "ei-category", "gls", "exact-context")


class SchemaError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


# -- schema helpers ----------------------------------------------------------

def _require(obj, key, ptr):
    if not isinstance(obj, dict):
        raise SchemaError(ptr, "expected an object")
    if key not in obj:
        raise SchemaError(ptr, f"missing required key {key!r}")
    return obj[key]


def _as_list(value, ptr):
    if not isinstance(value, list):
        raise SchemaError(ptr, "expected an array")
    return value


def parse_field(spec, ptr) -> Field:
    kind = _require(spec, "kind", ptr)
    if kind == "Q":
        return QQ
    if kind == "Fp":
        p = _require(spec, "p", ptr)
        if not isinstance(p, int):
            raise SchemaError(f"{ptr}/p", "p must be an integer")
        try:
            return GF(p)
        except FieldError:
            raise SchemaError(f"{ptr}/p", "p must be prime")
    raise SchemaError(f"{ptr}/kind", f"unknown field kind {kind!r}")


def parse_scalar(F: Field, value, ptr):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(ptr, f"scalar must be an int or string, got {value!r}")
    try:
        return F.parse(value)
    except (FieldError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(ptr, f"bad scalar {value!r}: {exc}")


def parse_vector(F: Field, value, ptr) -> List:
    return [parse_scalar(F, c, f"{ptr}/{i}")
            for i, c in enumerate(_as_list(value, ptr))]


def parse_matrix(F: Field, value, ptr) -> List[List]:
    return [parse_vector(F, row, f"{ptr}/{i}")
            for i, row in enumerate(_as_list(value, ptr))]


def parse_bimodule(obj, left: FdAlgebra, right: FdAlgebra, ptr) -> Bimodule:
    F = left.field
    dim = _require(obj, "dim", ptr)
    if not isinstance(dim, int) or dim < 0:
        raise SchemaError(f"{ptr}/dim", "dim must be a non-negative integer")
    left_action = [parse_matrix(F, m, f"{ptr}/left-action/{i}")
                   for i, m in enumerate(_as_list(
                       _require(obj, "left-action", ptr), f"{ptr}/left-action"))]
    right_action = [parse_matrix(F, m, f"{ptr}/right-action/{i}")
                    for i, m in enumerate(_as_list(
                        _require(obj, "right-action", ptr), f"{ptr}/right-action"))]
    return make_bimodule(left, right, dim, left_action, right_action)


# -- algebra construction from documents -------------------------------------

def doc_algebra(doc, F: Field, ptr: str = "") -> FdAlgebra:
    kind = _require(doc, "kind", ptr)
    if kind == "algebra-table":
        labels = _as_list(_require(doc, "labels", ptr), f"{ptr}/labels")
        structure = [
            parse_matrix(F, row, f"{ptr}/structure/{i}")
            for i, row in enumerate(_as_list(_require(doc, "structure", ptr),
                                             f"{ptr}/structure"))]
        unit = parse_vector(F, _require(doc, "unit", ptr), f"{ptr}/unit")
        idem = doc.get("idempotents")
        if idem is not None:
            idem = parse_matrix(F, idem, f"{ptr}/idempotents")
        rad = doc.get("radical")
        if rad is not None:
            rad = parse_matrix(F, rad, f"{ptr}/radical")
        return make_algebra(F, labels, structure, unit, idem, rad)
    if kind == "presentation":
        rs = doc_rewriting_system(doc, F, ptr)
        cap = doc.get("length-cap")
        return enumerate_basis(complete(rs, cap), cap)
    if kind == "triangular":
        B = doc_algebra(_require(doc, "B", ptr), F, f"{ptr}/B")
        C = doc_algebra(_require(doc, "C", ptr), F, f"{ptr}/C")
        M = parse_bimodule(_require(doc, "M", ptr), C, B, f"{ptr}/M")
        return triangular_matrix(B, C, M)
    if kind == "morita":
        return morita_context_ring(doc_morita(doc, F, ptr))
    if kind == "trivial-extension":
        R = doc_algebra(_require(doc, "R", ptr), F, f"{ptr}/R")
        M = parse_bimodule(_require(doc, "M", ptr), R, R, f"{ptr}/M")
        return trivial_extension(R, M)
    if kind == "ei-category":
        return ei_category_algebra(doc_category(doc, ptr), F)
    if kind == "gls":
        return gls_algebra(doc_cartan(doc, ptr), F,
                           doc.get("length-cap")).algebra
    if kind == "exact-context":
        d = doc_exact_context(doc, F, ptr)
        # the ring of the context: S and T on the diagonal, M in the corner
        return triangular_matrix(d.T, d.S, d.M)
    raise SchemaError(f"{ptr}/kind", f"unknown kind {kind!r}")


def doc_quiver(doc, ptr):
    vertices = _as_list(_require(doc, "vertices", ptr), f"{ptr}/vertices")
    arrows = []
    for i, a in enumerate(_as_list(_require(doc, "arrows", ptr), f"{ptr}/arrows")):
        if not (isinstance(a, list) and len(a) == 3):
            raise SchemaError(f"{ptr}/arrows/{i}", "arrow must be [id, source, target]")
        arrows.append(tuple(a))
    try:
        return make_quiver(vertices, arrows)
    except QuiverError as exc:
        raise SchemaError(f"{ptr}/arrows", str(exc))


def doc_relations(doc, ptr):
    rules = []
    for i, rel in enumerate(_as_list(doc.get("relations", []), f"{ptr}/relations")):
        lhs = _as_list(_require(rel, "lhs", f"{ptr}/relations/{i}"),
                       f"{ptr}/relations/{i}/lhs")
        rhs = []
        for j, term in enumerate(_as_list(rel.get("rhs", []),
                                          f"{ptr}/relations/{i}/rhs")):
            coeff = _require(term, "coeff", f"{ptr}/relations/{i}/rhs/{j}")
            path = _as_list(_require(term, "path", f"{ptr}/relations/{i}/rhs/{j}"),
                            f"{ptr}/relations/{i}/rhs/{j}/path")
            rhs.append((coeff, path))
        rules.append((lhs, rhs))
    return rules


def doc_rewriting_system(doc, F: Field, ptr):
    q = doc_quiver(doc, ptr)
    return make_rewriting_system(q, F, doc_relations(doc, ptr))


def doc_morita(doc, F: Field, ptr) -> MoritaContextData:
    B = doc_algebra(_require(doc, "B", ptr), F, f"{ptr}/B")
    C = doc_algebra(_require(doc, "C", ptr), F, f"{ptr}/C")
    N = parse_bimodule(_require(doc, "N", ptr), B, C, f"{ptr}/N")
    M = parse_bimodule(_require(doc, "M", ptr), C, B, f"{ptr}/M")
    alpha = [parse_matrix(F, row, f"{ptr}/alpha/{i}")
             for i, row in enumerate(_as_list(_require(doc, "alpha", ptr),
                                              f"{ptr}/alpha"))]
    beta = [parse_matrix(F, row, f"{ptr}/beta/{i}")
            for i, row in enumerate(_as_list(_require(doc, "beta", ptr),
                                             f"{ptr}/beta"))]
    return make_morita_context(B, C, N, M, alpha, beta)


def doc_category(doc, ptr):
    objects = _as_list(_require(doc, "objects", ptr), f"{ptr}/objects")
    morphisms = []
    for i, m in enumerate(_as_list(_require(doc, "morphisms", ptr),
                                   f"{ptr}/morphisms")):
        if not (isinstance(m, list) and len(m) == 3):
            raise SchemaError(f"{ptr}/morphisms/{i}",
                              "morphism must be [id, source, target]")
        morphisms.append(tuple(m))
    composition = {}
    for i, c in enumerate(_as_list(_require(doc, "composition", ptr),
                                   f"{ptr}/composition")):
        if not (isinstance(c, list) and len(c) == 3):
            raise SchemaError(f"{ptr}/composition/{i}",
                              "composition entry must be [g, f, g-after-f]")
        composition[(c[0], c[1])] = c[2]
    identities = {}
    for i, pair in enumerate(_as_list(_require(doc, "identities", ptr),
                                      f"{ptr}/identities")):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError(f"{ptr}/identities/{i}",
                              "identity entry must be [object, morphism]")
        identities[pair[0]] = pair[1]
    try:
        return make_category(objects, morphisms, composition, identities)
    except CategoryError as exc:
        raise SchemaError(ptr, str(exc))


def doc_cartan(doc, ptr):
    C = _as_list(_require(doc, "C", ptr), f"{ptr}/C")
    D = _as_list(_require(doc, "D", ptr), f"{ptr}/D")
    omega = [tuple(p) for p in _as_list(_require(doc, "Omega", ptr),
                                        f"{ptr}/Omega")]
    try:
        return make_cartan_triple(C, D, omega)
    except ValueError as exc:
        raise SchemaError(ptr, str(exc))


def doc_exact_context(doc, F: Field, ptr) -> ExactContextData:
    R = doc_algebra(_require(doc, "R", ptr), F, f"{ptr}/R")
    S = doc_algebra(_require(doc, "S", ptr), F, f"{ptr}/S")
    T = doc_algebra(_require(doc, "T", ptr), F, f"{ptr}/T")
    M = parse_bimodule(_require(doc, "M", ptr), S, T, f"{ptr}/M")
    lam = parse_matrix(F, _require(doc, "lambda", ptr), f"{ptr}/lambda")
    mu = parse_matrix(F, _require(doc, "mu", ptr), f"{ptr}/mu")
    m = parse_vector(F, _require(doc, "m", ptr), f"{ptr}/m")
    return make_exact_context(R, S, T, lam, mu, M, m)


def doc_idempotent(doc, a: FdAlgebra, ptr) -> Tuple:
    spec = doc.get("idempotent")
    if spec is None:
        raise SchemaError(ptr, 'missing "idempotent" (index or vector)')
    if isinstance(spec, int) and not isinstance(spec, bool):
        if not a.idempotents or not (0 <= spec < len(a.idempotents)):
            raise SchemaError(f"{ptr}/idempotent",
                              f"no designated idempotent with index {spec}")
        return a.idempotents[spec]
    return tuple(parse_vector(a.field, spec, f"{ptr}/idempotent"))


# -- serialization -----------------------------------------------------------

def jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def input_digest(doc) -> str:
    return hashlib.sha256(canonical(doc).encode("utf-8")).hexdigest()


def algebra_document(a: FdAlgebra, field_spec) -> dict:
    out = {
        "kind": "algebra-table",
        "field": field_spec,
        "labels": list(a.basis_labels),
        "structure": jsonable(a.structure),
        "unit": jsonable(a.unit),
    }
    if a.idempotents is not None:
        out["idempotents"] = jsonable(a.idempotents)
    if a.radical_basis is not None:
        out["radical"] = jsonable(a.radical_basis)
    return out


def make_report(command: str, doc, parameters: dict, results: dict,
                verdict) -> dict:
    return {
        "command": command,
        "input-digest": input_digest(doc),
        "parameters": jsonable(parameters),
        "results": jsonable(results),
        "verdict": verdict,
    }


def validation_results(report: ValidationReport) -> dict:
    return {
        "conditions": [
            {"name": c.name, "passed": c.passed, "witness": c.witness}
            for c in report.conditions
        ],
        "passed": report.passed,
    }


# -- commands ----------------------------------------------------------------

def _load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError("", f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON in {path}: {exc}")
    if not isinstance(doc, dict):
        raise SchemaError("", "input document must be a JSON object")
    return doc


def _field_of(doc, args) -> Tuple[Field, dict]:
    if getattr(args, "field", None):
        spec = args.field
        if spec == "q":
            return QQ, {"kind": "Q"}
        if spec.startswith("fp:"):
            try:
                p = int(spec[3:])
            except ValueError:
                raise SchemaError("", f"bad --field value {spec!r}")
            try:
                return GF(p), {"kind": "Fp", "p": p}
            except FieldError:
                raise SchemaError("", "--field fp:<p> requires a prime p")
        raise SchemaError("", f"bad --field value {spec!r} (use q or fp:<p>)")
    spec = _require(doc, "field", "")
    return parse_field(spec, "/field"), spec


def cmd_build(doc, args):
    F, field_spec = _field_of(doc, args)
    a = doc_algebra(doc, F)
    results = {
        "dimension": a.dim,
        "basis-labels": list(a.basis_labels),
        "idempotent-count": len(a.idempotents) if a.idempotents else 0,
        "radical-designated": a.radical_basis is not None,
        "validated": True,
        "algebra": algebra_document(a, field_spec),
    }
    return make_report("build", doc, {"field": field_spec}, results, True), 0


def cmd_hh(doc, args):
    F, field_spec = _field_of(doc, args)
    a = doc_algebra(doc, F)
    report = hh_dims(a, args.max_degree)
    results = {
        "dims": list(report.dims),
        "degree-0-commutator-check": commutator_quotient_dim(a),
    }
    params = {"field": field_spec, "max-degree": args.max_degree}
    return make_report("hh", doc, params, results, None), 0


def cmd_gldim(doc, args):
    F, field_spec = _field_of(doc, args)
    a = doc_algebra(doc, F)
    verdict = gldim(a, args.bound)
    results = {
        "value": verdict.value if not verdict.exceeded else "exceeds-bound",
        "bound": verdict.bound,
        "per-idempotent": list(verdict.per_idempotent),
    }
    params = {"field": field_spec, "bound": args.bound}
    return make_report("gldim", doc, params, results, None), 0


def cmd_verify(doc, args):
    F, field_spec = _field_of(doc, args)
    sub = args.subcommand
    cap, bound = args.max_degree, args.bound
    params = {"field": field_spec, "max-degree": cap, "bound": bound}

    if sub == "splitting":
        if doc.get("kind") != "triangular":
            raise SchemaError("/kind",
                              "verify splitting expects a triangular document")
        B = doc_algebra(_require(doc, "B", ""), F, "/B")
        C = doc_algebra(_require(doc, "C", ""), F, "/C")
        M = parse_bimodule(_require(doc, "M", ""), C, B, "/M")
        rep = verify_splitting(triangular_matrix(B, C, M), B, C, cap,
                               provenance="triangular")
        results = {"degrees": [list(row) for row in rep.degrees]}
        return (make_report("verify splitting", doc, params, results,
                            rep.overall), 0 if rep.overall else 1)

    if sub == "les":
        a = doc_algebra(doc, F)
        e = doc_idempotent(doc, a, "")
        rep = verify_les_inequality(a, e, cap, bound)
        results = {
            "degrees": [list(row) for row in rep.degrees],
            "stratifying": {
                "tensor-dim": rep.stratifying.tensor_dim,
                "ideal-dim": rep.stratifying.ideal_dim,
                "tor": list(rep.stratifying.tor),
            },
        }
        return (make_report("verify les", doc, params, results, rep.overall),
                0 if rep.overall else 1)

    if sub == "morita":
        d = doc_morita(doc, F, "")
        variant = doc.get("variant", 1)
        if variant not in (1, 2):
            raise SchemaError("/variant", "variant must be 1 or 2")
        rep = verify_morita_reduction(d, cap, bound, variant)
        results = {
            "variant": rep.variant,
            "pairing-injective": rep.pairing_injective,
            "tor": list(rep.tor),
            "first-nonzero-tor": rep.first_nonzero_tor,
            "projdim": (rep.projdim_value
                        if isinstance(rep.projdim_value, int)
                        else "exceeds-bound"),
            "hypotheses-pass": rep.hypotheses_pass,
            "splitting": (None if rep.splitting is None
                          else [list(row) for row in rep.splitting.degrees]),
        }
        return (make_report("verify morita", doc, params, results,
                            rep.overall), 0 if rep.overall else 1)

    if sub == "stratifying":
        a = doc_algebra(doc, F)
        e = doc_idempotent(doc, a, "")
        rep = check_stratifying(a, e, bound)
        results = {
            "tensor-dim": rep.tensor_dim,
            "ideal-dim": rep.ideal_dim,
            "injective": rep.injective,
            "surjective": rep.surjective,
            "tor": list(rep.tor),
        }
        return (make_report("verify stratifying", doc, params, results,
                            rep.verdict), 0 if rep.verdict else 1)

    if sub == "exact-context":
        d = doc_exact_context(doc, F, "")
        rep = check_exact_context(d)
        hom = check_homological_exact_context(d, bound)
        results = {
            "exact-at-source": rep.exact_at_source,
            "exact-at-middle": rep.exact_at_middle,
            "exact-at-target": rep.exact_at_target,
            "defects": list(rep.defects),
            "tor": list(hom.tor),
            "tor-vanishing-up-to-bound": hom.vanishing,
        }
        verdict = rep.exact and hom.vanishing
        return (make_report("verify exact-context", doc, params, results,
                            verdict), 0 if verdict else 1)
    raise SchemaError("", f"unknown verify subcommand {sub!r}")


def cmd_validate(doc, args):
    sub = args.subcommand
    params = {}
    if sub == "gentle":
        q = doc_quiver(doc, "")
        rels = []
        for i, rel in enumerate(doc.get("relations", [])):
            lhs = _require(rel, "lhs", f"/relations/{i}")
            if rel.get("rhs"):
                raise SchemaError(f"/relations/{i}",
                                  "gentle relations must be monomial")
            if len(lhs) != 2:
                raise SchemaError(f"/relations/{i}/lhs",
                                  "gentle relations must be paths of length 2")
            rels.append(tuple(lhs))
        report = validate_gentle(q, rels)
        results = validation_results(report)
        results["dimension"] = report.extra.get("dimension")
    elif sub == "skew-gentle":
        q = doc_quiver(doc, "")
        rels = []
        for i, rel in enumerate(doc.get("relations", [])):
            lhs = _require(rel, "lhs", f"/relations/{i}")
            rels.append(tuple(lhs))
        loops = []
        for i, pair in enumerate(_as_list(_require(doc, "special-loops", ""),
                                          "/special-loops")):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise SchemaError(f"/special-loops/{i}",
                                  "special loop must be [id, vertex]")
            loops.append(tuple(pair))
        try:
            triple = SkewGentleTriple(q, tuple(rels), tuple(loops))
            report = validate_skew_gentle(triple)
        except QuiverError as exc:
            raise SchemaError("/special-loops", str(exc))
        results = validation_results(report)
        results["dimension"] = report.extra.get("dimension")
    elif sub == "cartan":
        report = validate_cartan_triple(doc_cartan(doc, ""))
        results = validation_results(report)
    elif sub == "ei":
        cat = doc_category(doc, "")
        bad = non_invertible_endomorphism(cat)
        results = {
            "conditions": [{
                "name": "EI",
                "passed": bad is None,
                "witness": (None if bad is None
                            else f"endomorphism {bad} has no two-sided inverse"),
            }],
            "passed": bad is None,
        }
    else:
        raise SchemaError("", f"unknown validate subcommand {sub!r}")
    passed = results["passed"]
    return (make_report(f"validate {sub}", doc, params, results, passed),
            0 if passed else 1)


# -- entry point -------------------------------------------------------------

def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hochschild",
        description="Exact homological computations for finite-dimensional "
                    "algebras over Q or F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", help="path to a JSON input document")
        p.add_argument("--max-degree", type=int,
                       default=_env_int("HOCHSCHILD_MAX_DEGREE",
                                        DEFAULT_MAX_DEGREE),
                       help="top homological degree for dimension windows")
        p.add_argument("--bound", type=int,
                       default=_env_int("HOCHSCHILD_BOUND", DEFAULT_BOUND),
                       help="search bound for projective dimension and Tor")
        p.add_argument("--field", default=None,
                       help="override the input field: q or fp:<p>")
        p.add_argument("--cap-bytes", type=int, default=None,
                       help="override the matrix size guard (implied entries)")
        p.add_argument("--out", default=None,
                       help="also write the canonical JSON report here")
        p.add_argument("--json", action="store_true",
                       help="print the canonical JSON report to stdout")

    for name in ("build", "hh", "gldim"):
        add_common(sub.add_parser(name))
    pv = sub.add_parser("verify")
    pv.add_argument("subcommand", choices=["splitting", "les", "morita",
                                           "stratifying", "exact-context"])
    add_common(pv)
    pl = sub.add_parser("validate")
    pl.add_argument("subcommand", choices=["gentle", "skew-gentle", "cartan",
                                           "ei"])
    add_common(pl)
    return parser


HANDLERS = {
    "build": cmd_build,
    "hh": cmd_hh,
    "gldim": cmd_gldim,
    "verify": cmd_verify,
    "validate": cmd_validate,
}

_HANDLED_ERRORS = (SchemaError, AlgebraError, FieldError, QuiverError,
                   RewritingError, CategoryError, SizeGuardError,
                   NotStratifyingError, ConstructionError, ValueError)


def _summarize(report: dict) -> str:
    lines = [f"command: {report['command']}",
             f"input-digest: {report['input-digest']}"]
    for key, value in sorted(report["results"].items()):
        lines.append(f"{key}: {value}")
    if report["verdict"] is not None:
        lines.append("verdict: " + ("pass" if report["verdict"] else "FAIL"))
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap_bytes is not None:
        set_entry_cap(args.cap_bytes)
    try:
        doc = _load(args.input)
        report, code = HANDLERS[args.command](doc, args)
    except _HANDLED_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = canonical(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text if args.json else _summarize(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
