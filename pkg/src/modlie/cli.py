"""Command-line surface.

Commands: verify, restrictable, penv, jcd, env, induce, classify, oracle.
All input and output is JSON; reports serialize deterministically (sorted
keys, canonical coefficient strings).  Exit codes: 0 ok, 1 mathematical
failure / unmet precondition, 2 malformed input, 3 unsupported feature.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import (
    BadCoefficient,
    DegreeMismatch,
    DuplicateLabel,
    ModlieError,
    NonTrivialCenter,
    NotPrime,
    ReducibleModulus,
    ShapeMismatch,
)
from .gfp import FieldElement
from .liealg import LieAlgebra, LieElement, Subspace, lie_from_table, pmap_images_from_spec
from .pstruct import (
    PMapping,
    element_class,
    is_restrictable,
    jordan_chevalley,
    minimal_p_envelope,
    verify_pmap,
)
from .repmod import InducedSpec, induce, oracle_irreducibles, rep_from_json
from .pstruct import pmap_on_subalgebra
from .uenv import Character, pbw_mul, uls_make
from .classify import (
    classify_dim2,
    classify_dim3alpha,
    classify_dim4,
    classify_generic,
    classify_sl2,
)

_MALFORMED_MODLIE = (
    BadCoefficient,
    DegreeMismatch,
    DuplicateLabel,
    NotPrime,
    ReducibleModulus,
    ShapeMismatch,
)
_MALFORMED_STD = (json.JSONDecodeError, OSError, KeyError, ValueError)


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_algebra(args):
    spec = _load_json(args.algebra)
    L = lie_from_table(spec, field_degree=args.field_degree)
    images = pmap_images_from_spec(L, spec)
    P = PMapping(L, images) if images is not None else None
    return spec, L, P


def _load_character(L: LieAlgebra, path: str) -> Character:
    data = _load_json(path)
    return Character(L, {k: str(v) for k, v in data.get("values", {}).items()})


def _parse_vec(L: LieAlgebra, text: str) -> LieElement:
    fd = L.field
    parts = [s for s in str(text).split(";")]
    if len(parts) != L.n:
        raise ShapeMismatch(f"expected {L.n} coefficients, got {len(parts)}")
    return LieElement(L, [fd.parse(s).idx for s in parts])


def _fmt_vec(L: LieAlgebra, coeffs_idx) -> str:
    return ";".join(L.field.fmt(c) for c in coeffs_idx)


def _table_json(L: LieAlgebra) -> dict:
    fd = L.field
    out = {}
    for (i, j), vec in sorted(L.table.items()):
        terms = {L.basis[k]: fd.fmt(c) for k, c in enumerate(vec) if c}
        if terms:
            out[f"{L.basis[i]}|{L.basis[j]}"] = terms
    return out


def _pmap_json(P: PMapping) -> dict:
    L = P.algebra
    fd = L.field
    return {
        L.basis[i]: {L.basis[k]: fd.fmt(c)
                     for k, c in enumerate(P.images[i].coeffs_idx) if c}
        for i in range(L.n)
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> dict:
    spec, L, P = _load_algebra(args)
    result = {"jacobi": True, "dim": L.n, "p": L.field.p, "field_degree": L.field.m}
    if P is not None:
        report = verify_pmap(P)
        result["pmap"] = {"ok": report.ok}
        if not report.ok:
            result["pmap"]["violation"] = list(report.first_violation())
            raise _MathExit(result, "p-mapping axioms fail")
        result["restricted"] = True
    else:
        result["pmap"] = None
        result["restricted"] = False
    result["restrictable"] = P is not None or is_restrictable(L)[0]
    return result


def cmd_restrictable(args) -> dict:
    _, L, P = _load_algebra(args)
    if P is not None:
        return {"restrictable": True, "pmap": _pmap_json(P)}
    ok, images = is_restrictable(L)
    out = {"restrictable": ok, "pmap": None}
    if ok:
        out["pmap"] = _pmap_json(PMapping(L, images))
    return out


def cmd_penv(args) -> dict:
    _, L, P = _load_algebra(args)
    env = minimal_p_envelope(L)
    G = env.ambient
    return {
        "dim": G.n,
        "basis": list(G.basis),
        "brackets": _table_json(G),
        "pmap": _pmap_json(env.pmap),
        "embedding": [_fmt_vec(G, row) for row in env.embedding.data],
    }


def cmd_jcd(args) -> dict:
    _, L, P = _load_algebra(args)
    if P is None:
        raise ModlieError("jcd requires a restricted algebra (pmap in the file)")
    x = _parse_vec(L, args.element)
    cls = element_class(P, x)
    dec = jordan_chevalley(P, x)
    return {
        "element": _fmt_vec(L, x.coeffs_idx),
        "class": cls.kind,
        "order": cls.order,
        "semisimple_part": _fmt_vec(L, dec.x_s.coeffs_idx),
        "nilpotent_part": _fmt_vec(L, dec.x_n.coeffs_idx),
    }


def cmd_env(args) -> dict:
    _, L, P = _load_algebra(args)
    if P is None:
        raise ModlieError("env requires a restricted algebra (pmap in the file)")
    S = _load_character(L, args.character) if args.character else Character.zero(L)
    U = uls_make(L, P, S)
    out = {"dim": U.dim}
    if args.mul:
        u = U.parse_element(args.mul[0])
        v = U.parse_element(args.mul[1])
        out["product"] = pbw_mul(U, u, v).text()
    return out


def cmd_induce(args) -> dict:
    _, L, P = _load_algebra(args)
    if P is None:
        raise ModlieError("induce requires a restricted algebra (pmap in the file)")
    S = _load_character(L, args.character)
    spans = [_parse_vec(L, s) for s in args.span]
    H = Subspace.from_vectors(L, spans)
    H_alg, _, _ = pmap_on_subalgebra(P, H)
    M = rep_from_json(H_alg, _load_json(args.module))
    V = induce(L, P, S, InducedSpec(H, M))
    fd = L.field
    return {
        "dim": V.dim,
        "subalgebra_dim": H.dim,
        "module_dim": M.dim,
        "action": {lbl: [[fd.fmt(c) for c in row] for row in mat.data]
                   for lbl, mat in zip(L.basis, V.mats)},
    }


def _classify_one(args, L, P, values: dict) -> dict:
    family = args.family
    if family == "dim2":
        report = classify_dim2(Character(L, values))
    elif family == "sl2":
        report = classify_sl2(Character(L, values))
    elif family == "dim4":
        report = classify_dim4(Character(L, values))
    elif family == "dim3alpha":
        # alpha is the coefficient of y in [h,y]
        alpha = FieldElement(L.field, L.table[(0, 2)][2])
        if L.field.frob(alpha.idx) == alpha.idx:
            report = classify_dim3alpha(alpha, Character(L, values))
        else:
            G = minimal_p_envelope(L).ambient
            report = classify_dim3alpha(alpha, Character(G, values))
    elif family == "generic":
        if P is None:
            raise ModlieError("generic classification requires a pmap")
        report = classify_generic(L, P, Character(L, values))
    else:  # pragma: no cover - argparse restricts choices
        raise ModlieError(f"unknown family {family!r}")
    return report.to_json()


def cmd_classify(args) -> dict:
    _, L, P = _load_algebra(args)
    if args.characters:
        sweep = _load_json(args.characters)
        values_list = [{k: str(v) for k, v in entry.get("values", {}).items()}
                       for entry in sweep]
        if args.jobs and args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(lambda v: _classify_one(args, L, P, v),
                                        values_list))
        else:
            reports = [_classify_one(args, L, P, v) for v in values_list]
        return {"reports": reports}
    data = _load_json(args.character)
    values = {k: str(v) for k, v in data.get("values", {}).items()}
    return _classify_one(args, L, P, values)


def cmd_oracle(args) -> dict:
    _, L, P = _load_algebra(args)
    if P is None:
        raise ModlieError("oracle requires a restricted algebra (pmap in the file)")
    S = _load_character(L, args.character) if args.character else Character.zero(L)
    reps = oracle_irreducibles(L, P, S)
    fd = L.field
    return {
        "count": len(reps),
        "classes": [{
            "dim": r.dim,
            "matrices": {lbl: [[fd.fmt(c) for c in row] for row in mat.data]
                         for lbl, mat in zip(L.basis, r.mats)},
        } for r in reps],
    }


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

class _MathExit(Exception):
    """Partial result plus a mathematical failure (exit 1)."""

    def __init__(self, result, message):
        super().__init__(message)
        self.result = result


def _pretty_classify(result: dict) -> str:
    """Aligned class table for classify reports."""
    def table(report):
        rows = [("dim", "label")]
        rows += [(str(c["dim"]), c["label"]) for c in report.get("classes", [])]
        w = max(len(r[0]) for r in rows)
        lines = [f"{r[0]:>{w}}  {r[1]}" for r in rows]
        head = (f"algebra={report['algebra']} case={report['case']} "
                f"count={report['count']}")
        return "\n".join([head] + lines)

    if "reports" in result:
        return "\n\n".join(table(r) for r in result["reports"])
    return table(result)


def _emit(args, payload: dict):
    if args.pretty:
        if args.command == "classify" and "result" in payload and payload["result"]:
            text = _pretty_classify(payload["result"]) + "\n\n"
            text += json.dumps(payload, sort_keys=True, indent=2) + "\n"
        else:
            text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modlie",
        description="Restricted Lie algebras over GF(p^m): verification, "
                    "p-envelopes, reduced enveloping algebras, induced modules "
                    "and irreducible-module classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        sp = sub.add_parser(name)
        sp.add_argument("algebra", help="algebra JSON file")
        sp.add_argument("--field-degree", type=int, default=None,
                        help="override the file's field_degree (same p, default modulus)")
        sp.add_argument("--pretty", action="store_true")
        sp.add_argument("-o", "--output", default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.set_defaults(fn=fn)
        return sp

    add("verify", cmd_verify)
    add("restrictable", cmd_restrictable)
    add("penv", cmd_penv)

    sp = add("jcd", cmd_jcd)
    sp.add_argument("--element", required=True,
                    help='semicolon-joined coefficient strings, e.g. "1;0,2"')

    sp = add("env", cmd_env)
    sp.add_argument("--character", default=None)
    sp.add_argument("--dim", action="store_true")
    sp.add_argument("--mul", nargs=2, metavar=("U", "V"), default=None,
                    help="multiply two elements given in text form")

    sp = add("induce", cmd_induce)
    sp.add_argument("--character", required=True)
    sp.add_argument("--module", required=True, help="module JSON over the subalgebra")
    sp.add_argument("--span", action="append", required=True,
                    help="spanning vector of the subalgebra (repeatable)")

    sp = add("classify", cmd_classify)
    sp.add_argument("--character", default=None)
    sp.add_argument("--characters", default=None,
                    help="JSON array of character objects (sweep)")
    sp.add_argument("--family", required=True,
                    choices=["dim2", "sl2", "dim4", "dim3alpha", "generic"])

    sp = add("oracle", cmd_oracle)
    sp.add_argument("--character", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "classify" and not (args.character or args.characters):
        parser.error("classify requires --character or --characters")
    payload = {"command": args.command, "inputs": {}, "result": None,
               "diagnostics": []}
    try:
        payload["inputs"][args.algebra] = _digest(args.algebra)
        for attr in ("character", "characters", "module"):
            path = getattr(args, attr, None)
            if path:
                payload["inputs"][path] = _digest(path)
        payload["result"] = args.fn(args)
        _emit(args, payload)
        return 0
    except _MathExit as exc:
        payload["result"] = exc.result
        payload["diagnostics"].append({"error": "MathFailure", "message": str(exc)})
        _emit(args, payload)
        return 1
    except NonTrivialCenter as exc:
        payload["diagnostics"].append(
            {"error": type(exc).__name__, "message": str(exc)})
        _emit(args, payload)
        return 3
    except _MALFORMED_MODLIE as exc:
        payload["diagnostics"].append(
            {"error": type(exc).__name__, "message": str(exc)})
        _emit(args, payload)
        return 2
    except ModlieError as exc:
        payload["diagnostics"].append(
            {"error": type(exc).__name__, "message": str(exc)})
        _emit(args, payload)
        return 1
    except _MALFORMED_STD as exc:
        payload["diagnostics"].append(
            {"error": type(exc).__name__, "message": str(exc)})
        _emit(args, payload)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
