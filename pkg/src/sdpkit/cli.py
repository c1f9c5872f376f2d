"""Command-line front end.

Reports go to stdout as JSON (or text where a verb offers it).  Verdict
verbs exit 0 when the checked property holds and 1 when it fails.  Any
error, including a usage error, prints a JSON error object on stderr and
exits 2.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import experiments as ex
from .assoc import BRUTE_FORCE_CAP, PAIRWISE_CAP, brute_force_associative, check_all_elementary
from .errors import NotNormalized, PaperMismatch, SdpError
from .groups import FiniteGroup, load_group, validate_monoid
from .hom import HOM_BRUTE_CAP, assemble, brute_force_hom, check_commutator_criterion, check_hom_all, \
    component_failures, load_maps
from .internal import candidate_from_generators, check_internal_sdp, extract_total_system, roundtrip_verify
from .magma import CayleyTable, DEFAULT_TABLE_CAP
from .system import check_normalized, dump_system, load_system

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(SdpError):
    code = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, prog=self.prog)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _tuple_arg(text: str) -> list[int]:
    try:
        v = json.loads(text)
    except json.JSONDecodeError:
        v = None
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise UsageError(f"expected an index list like [0,1,2], got {text!r}")
    return v


def _check_tuple(S, t) -> tuple:
    if len(t) != S.r or any(not 0 <= x < len(S.group(i + 1)) for i, x in enumerate(t)):
        raise UsageError(f"{t} is not an element of the {S.r}-system with orders {list(S.orders())}")
    return tuple(t)


def _normalized(S):
    rep = check_normalized(S)
    if not rep.normalized:
        raise NotNormalized("system is not normalized", **rep.to_dict())
    return S


# verbs --------------------------------------------------------------------------

def cmd_validate_group(args) -> int:
    G = load_group(args.file)
    _emit({"valid": True, "name": G.name, "order": G.order, "identity": G.identity,
           "abelian": G.is_abelian()})
    return EXIT_OK


def cmd_check_system(args) -> int:
    S = load_system(args.file)
    rep = check_normalized(S)
    _emit({"r": S.r, "orders": list(S.orders()), "size": S.size(), **rep.to_dict()})
    return EXIT_OK if rep.normalized else EXIT_FAIL


def cmd_build_sdp(args) -> int:
    S = _normalized(load_system(args.system))
    T = CayleyTable(S, cap=args.cap)
    assoc = brute_force_associative(S, cap=args.cap, table=T).holds
    doc = {"r": S.r, "orders": list(S.orders()), "size": T.size, "associative": assoc,
           "elements": [list(T.decode(x)) for x in range(T.size)],
           "table": T.table.tolist()}
    Path(args.out).write_text(json.dumps(doc) + "\n")
    _emit({"out": str(args.out), "size": T.size, "associative": assoc})
    return EXIT_OK


def cmd_mul(args) -> int:
    from .magma import mu
    S = _normalized(load_system(args.system))
    u, v = _check_tuple(S, args.u), _check_tuple(S, args.v)
    _emit({"u": list(u), "v": list(v), "product": list(mu(S, u, v))})
    return EXIT_OK


def cmd_table(args) -> int:
    S = _normalized(load_system(args.system))
    k = S.r if args.level is None else args.level
    if not 1 <= k <= S.r:
        raise UsageError(f"--level must be in 1..{S.r}")
    T = CayleyTable(S, cap=args.cap)
    _emit({"level": k, "elements": [list(T.decode(x, k)[:k]) for x in range(T.level_size(k))],
           "table": T.levels[k - 1].tolist()})
    return EXIT_OK


def cmd_check_assoc(args) -> int:
    S = _normalized(load_system(args.system))
    T = CayleyTable(S, cap=args.cap)
    results = check_all_elementary(S, table=T)
    doc = {"elementary": [{"condition": c.label(), **res.to_dict()} for c, res in results]}
    holds = all(res.holds for _, res in results)
    doc["all_elementary_hold"] = holds
    if args.brute:
        bf = brute_force_associative(S, cap=args.brute_cap, table=T)
        doc["brute_force"] = bf.to_dict()
        if bf.holds != holds:
            doc["disagreement"] = True
    _emit(doc)
    return EXIT_OK if holds else EXIT_FAIL


def cmd_gen_axioms(args) -> int:
    from .symbolic.engine import all_index_triples, generate_conditions
    from .symbolic.notation import condition_to_json, render
    from .symbolic.reference import reference_ok, verify_reference
    from .symbolic.similarity import canonical_representatives, class_ids

    if args.max_k < 2:
        raise UsageError("--max-k must be at least 2")
    mode = "literal" if args.literal else "reduced"
    if args.all:
        forms = [c for k, j, i in all_index_triples(args.max_k) for c in generate_conditions(k, j, i, mode)]
    else:
        forms = canonical_representatives(args.max_k, mode)
    ids = class_ids(forms, mode)
    rows = None
    if args.verify_paper:
        if args.literal:
            raise UsageError("--verify-paper compares the reduced forms; drop --literal")
        rows = verify_reference(args.max_k, seed=args.seed)

    if args.format == "structured":
        doc = {"mode": mode, "max_k": args.max_k,
               "conditions": [{**condition_to_json(c), "class": cid} for c, cid in zip(forms, ids)]}
        if rows is not None:
            doc["verification"] = {"ok": reference_ok(rows), "rows": [r.to_dict() for r in rows]}
        _emit(doc)
    else:
        width = max(len(c.label()) for c in forms)
        for c, cid in zip(forms, ids):
            cls = f"  [{cid}]" if args.all else ""
            sys.stdout.write(f"{c.label():<{width}}  {render(c)}{cls}\n")
        if rows is not None:
            sys.stdout.write("\n")
            for r in rows:
                sys.stdout.write(f"{r.label():<{width}}  {r.status}\n")
    if rows is not None and not reference_ok(rows):
        bad = [r.to_dict() for r in rows if r.status not in ("exact", "equivalent", "reference-refuted")
               or (r.indices[0] <= 4 and not r.exact)]
        raise PaperMismatch("generated forms disagree with the bundled reference", rows=bad)
    return EXIT_OK


def _parse_factors(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";")]
    except ValueError:
        raise UsageError(f"--factors expects 'g1,g2;g3;...' element indices, got {text!r}") from None


def cmd_decompose(args) -> int:
    G = load_group(args.group)
    gens = _parse_factors(args.factors)
    for g in (x for level in gens for x in level):
        if not 0 <= g < G.order:
            raise UsageError(f"element {g} outside 0..{G.order - 1}")
    cand = candidate_from_generators(G, gens)
    rep = check_internal_sdp(cand)
    doc = {"report": rep.to_dict(), "orders": [len(h) for h in cand.factors]}
    if rep.is_sdp:
        S = extract_total_system(cand)
        doc["roundtrip"] = roundtrip_verify(cand, S)
        if args.out:
            dump_system(S, args.out)
            doc["out"] = str(args.out)
    _emit(doc)
    return EXIT_OK if rep.is_sdp else EXIT_FAIL


def cmd_check_hom(args) -> int:
    S = _normalized(load_system(args.system))
    target = validate_monoid(json.loads(Path(args.target).read_text())["table"])
    m = assemble(S, target, load_maps(args.maps))
    pairs = check_hom_all(m)
    doc = {"pairs": pairs.to_dict()}
    if S.size() <= args.cap:
        doc["brute_force"] = brute_force_hom(m, cap=args.cap).to_dict()
    bad = component_failures(m) if isinstance(target, FiniteGroup) else None
    if bad == []:
        doc["commutator"] = check_commutator_criterion(m).to_dict()
    elif bad:
        doc["commutator"] = {"skipped": f"f_{bad[0]} is not a homomorphism"}
    else:
        doc["commutator"] = {"skipped": "target is not a group"}
    _emit(doc)
    return EXIT_OK if pairs.holds else EXIT_FAIL


def cmd_experiment(args) -> int:
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    shape = args.shape or ex.DEFAULT_SHAPE
    if args.kind == "assoc":
        doc = ex.assoc_experiment(args.seed, args.count, shape, args.trivial_bias).to_dict(args.samples)
    elif args.kind == "hom":
        doc = ex.hom_experiment(args.seed, args.count).to_dict(args.samples)
    elif args.kind == "vacuous":
        doc = ex.vacuous_experiment(args.seed, args.count, shape)
    elif args.kind == "soundness":
        doc = ex.soundness_experiment(args.seed, args.count, shape, args.trivial_bias)
    else:
        shapes = (args.shape,) if args.shape else ("2|3,2|3,2|3", "2,2,2,2", "3,2|3")
        doc = ex.identities_experiment(args.seed, args.count, shapes)
    _emit(doc)
    return EXIT_OK if doc["ok"] else EXIT_FAIL


# parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sdpkit", description="Iterated semidirect products of finite groups.")
    p.add_argument("--timing", action="store_true", help="report elapsed time on stderr")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("validate-group", help="check a group table file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate_group)

    s = sub.add_parser("check-system", help="check the normalization conditions of a system file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_system)

    s = sub.add_parser("build-sdp", help="write the multiplication table of a system")
    s.add_argument("system")
    s.add_argument("--out", required=True)
    s.add_argument("--cap", type=int, default=DEFAULT_TABLE_CAP)
    s.set_defaults(func=cmd_build_sdp)

    s = sub.add_parser("mul", help="multiply two tuples")
    s.add_argument("system")
    s.add_argument("u", type=_tuple_arg)
    s.add_argument("v", type=_tuple_arg)
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("table", help="print the table of mu_k")
    s.add_argument("system")
    s.add_argument("--level", type=int)
    s.add_argument("--cap", type=int, default=DEFAULT_TABLE_CAP)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("check-assoc", help="check the elementary associativity conditions")
    s.add_argument("system")
    s.add_argument("--brute", action="store_true", help="also check every triple")
    s.add_argument("--cap", type=int, default=PAIRWISE_CAP)
    s.add_argument("--brute-cap", type=int, default=BRUTE_FORCE_CAP)
    s.set_defaults(func=cmd_check_assoc)

    s = sub.add_parser("gen-axioms", help="generate the componentwise associativity conditions")
    s.add_argument("--max-k", type=int, default=5)
    s.add_argument("--format", choices=("text", "structured"), default="text")
    s.add_argument("--all", action="store_true", help="every A[k,j,i;l] with its similarity class")
    s.add_argument("--verify-paper", action="store_true", help="compare with the bundled reference forms")
    s.add_argument("--literal", action="store_true", help="no rewriting modulo lower associativity")
    s.add_argument("--seed", type=int, default=0, help="seed for adjudication systems")
    s.set_defaults(func=cmd_gen_axioms)

    s = sub.add_parser("decompose", help="test a factorization of a group and extract its system")
    s.add_argument("--group", required=True)
    s.add_argument("--factors", required=True, help="generators per factor: 'g1,g2;g3;...'")
    s.add_argument("--out")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("check-hom", help="check a map assembled from per-factor maps")
    s.add_argument("--system", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--maps", required=True)
    s.add_argument("--cap", type=int, default=HOM_BRUTE_CAP)
    s.set_defaults(func=cmd_check_hom)

    s = sub.add_parser("experiment", help="seeded theorem-validation runs")
    s.add_argument("--kind", choices=("assoc", "hom", "vacuous", "soundness", "identities"), default="assoc")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--shape", help="factor choices per level, e.g. '2|3,2|3,2|3'")
    s.add_argument("--trivial-bias", type=float, default=0.5)
    s.add_argument("--samples", action="store_true", help="include per-sample records")
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    start = time.perf_counter()
    timing = False
    try:
        args = build_parser().parse_args(argv)
        timing = args.timing
        code = args.func(args)
    except SdpError as e:
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        code = EXIT_ERROR
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        sys.stderr.write(json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        code = EXIT_ERROR
    if timing:
        sys.stderr.write(json.dumps({"elapsed_s": round(time.perf_counter() - start, 3)}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
