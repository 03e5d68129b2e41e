"""Command surface: check, build-lie, catalog, search.

Exit codes: 0 when the requested checks pass (or every --expect assertion
matches), 1 when a check or expectation fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import forms as forms_mod
from .algebra import Algebra, ZornDataError
from .catalog import CATALOG_NAMES, PARAM_NAMES, catalog
from .fields import FieldError, PrimeField, QQ, field_from_tag
from .fileformat import ParseError, ParsedAlgebra, emit_algebra_text, parse_algebra
from .identities import (
    TrialityOps,
    identity_suite,
    is_pre_structurable,
    is_structurable,
)
from .liegen import NotStructurableError, build_lie, graded_report
from .randomgen import random_algebra
from .reports import (
    build_report,
    emit_human,
    emit_machine,
    forms_section,
    lie_section,
    verdict_dict,
)

SEARCH_DIM_LIMIT = 6


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default=None, metavar="rational|mod:<p>",
                   help="work over this field (rational input can be reduced mod p)")
    p.add_argument("--mode", default="auto",
                   choices=["auto", "exhaustive", "probabilistic"],
                   help="tuple scanning strategy (auto: exhaustive up to dim 16)")
    p.add_argument("--trials", type=int, default=200,
                   help="random tuples per identity in probabilistic mode")
    p.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    p.add_argument("--json", dest="json_path", default=None, metavar="PATH",
                   help="also write the machine report to this path")
    p.add_argument("--expect", default=None, metavar="k=v,...",
                   help="assert certification outcomes, e.g. "
                        "pre-structurable=yes,structurable=no")


def _convert_field(parsed: ParsedAlgebra, tag: str | None) -> ParsedAlgebra:
    if tag is None:
        return parsed
    target = field_from_tag(tag.replace("mod:", "mod "))
    alg = parsed.algebra
    if target == alg.field:
        return parsed
    if isinstance(target, PrimeField):
        if isinstance(alg.field, PrimeField):
            raise FieldError("cannot move between different prime fields")
        conv = alg.to_prime(target.p)
        form = parsed.form
        phi = parsed.phi
        if form is not None:
            from .linalg import Mat

            form = Mat(conv.field, [[conv.field.coerce(x) for x in r] for r in form.rows])
        if phi is not None:
            phi = [conv.field.coerce(x) for x in phi]
        return ParsedAlgebra(conv, form, phi)
    raise FieldError("cannot lift a prime-field table to the rationals")


def _parse_expect(text: str) -> dict[str, bool]:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"bad expectation {part!r}")
        key, val = part.split("=", 1)
        key = key.strip()
        val = val.strip().lower()
        if key not in ("pre-structurable", "structurable"):
            raise ValueError(f"unknown expectation key {key!r}")
        if val not in ("yes", "no"):
            raise ValueError(f"expectation value must be yes or no, got {val!r}")
        out[key] = val == "yes"
    return out


def _forms_part(alg: Algebra, parsed_form, parsed_phi, seed: int):
    gram = parsed_form
    derived_status = None
    if gram is None:
        split = alg.sh_split()
        if split.dim_s == 1:
            try:
                gram = forms_mod.derive_quadratic_form(alg)
                derived_status = "derived" if gram is not None else "not-quadratic"
            except ValueError as exc:
                derived_status = f"skipped: {exc}"
        else:
            derived_status = "skipped: fixed part is not one-dimensional"
    else:
        derived_status = "supplied"
    comp = assoc = rad = None
    if gram is not None:
        comp = forms_mod.composition_check(alg, gram, seed=seed)
        assoc = forms_mod.form_associativity_check(alg, gram)
        rad = forms_mod.radical(gram)
    phi_check = forms_mod.linear_composition_check(alg, parsed_phi) \
        if parsed_phi is not None else None
    section = forms_section(alg, gram=gram, derived_status=derived_status,
                            composition=comp, associativity=assoc,
                            radical_basis=rad, phi=parsed_phi, phi_check=phi_check)
    oks = [v for v in (comp, assoc, phi_check) if v is not None]
    return section, all(v.holds is not False for v in oks)


def cmd_check(args) -> int:
    parsed = _convert_field(parse_algebra(args.path), args.field)
    alg = parsed.algebra
    suites = set(args.suite.split(","))
    bad = suites - {"all", "validate", "certify", "identities", "forms"}
    if bad:
        raise ValueError(f"unknown suite selector {sorted(bad)}")
    run_all = "all" in suites

    validation = alg.validate()
    ops = TrialityOps(alg)
    certification = None
    identities = None
    forms_doc = None
    ok = validation.all_hold()

    if run_all or "certify" in suites or args.expect:
        pre = is_pre_structurable(ops, args.mode, args.trials, args.seed)
        st = is_structurable(ops, args.mode, args.trials, args.seed)
        certification = {"pre_structurable": pre, "structurable": st}
    if run_all or "identities" in suites:
        identities = identity_suite(ops, args.mode, args.trials, args.seed)
        ok = ok and identities.all_hold()
    # the polarised composition scan is quartic in the dimension, so "all"
    # only reaches for it when the file carries form data or the table is small
    want_forms = "forms" in suites or (
        run_all and (parsed.form is not None or parsed.phi is not None or alg.n <= 16))
    if want_forms:
        forms_doc, forms_ok = _forms_part(alg, parsed.form, parsed.phi, args.seed)
        ok = ok and forms_ok

    doc = build_report(alg, validation=validation, certification=certification,
                       identities=identities, forms=forms_doc)
    _write_outputs(doc, args)

    if args.expect:
        expectations = _parse_expect(args.expect)
        actual = {
            "pre-structurable": certification["pre_structurable"].holds is True,
            "structurable": certification["structurable"].holds is True,
        }
        for key, want in expectations.items():
            if actual[key] != want:
                print(f"expectation failed: {key}={'yes' if want else 'no'} "
                      f"but got {'yes' if actual[key] else 'no'}", file=sys.stderr)
                return 1
        return 0
    return 0 if ok else 1


def cmd_build_lie(args) -> int:
    parsed = _convert_field(parse_algebra(args.path), args.field)
    alg = parsed.algebra
    f = alg.field
    gammas = tuple(f.parse(tok) for tok in args.gamma.split(","))
    if len(gammas) != 3:
        raise ValueError("--gamma needs three comma-separated scalars")
    ops = TrialityOps(alg)
    try:
        L = build_lie(ops, gammas, args.mode, args.trials, args.seed)
    except NotStructurableError as exc:
        st = is_structurable(ops, args.mode, args.trials, args.seed)
        doc = build_report(alg, validation=alg.validate(),
                           certification={"structurable": st})
        _write_outputs(doc, args)
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    graded = graded_report(L, trials=args.jacobi_trials, seed=args.seed)
    doc = build_report(alg, validation=alg.validate(),
                       certification={"structurable": L.meta["certification"]},
                       lie=lie_section(f, L, graded))
    _write_outputs(doc, args)
    good = (graded.branch_closure.holds is True and graded.jacobi.holds is True
            and graded.z3.holds is not False)
    return 0 if good else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in CATALOG_NAMES:
            params = PARAM_NAMES.get(name)
            suffix = f"  (params: {', '.join(params)})" if params else ""
            print(f"{name}{suffix}")
        return 0
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise ValueError(f"--param needs key=value, got {item!r}")
        key, val = item.split("=", 1)
        params[key.strip()] = QQ.parse(val)
    entry = catalog(args.name, **params)
    text = emit_algebra_text(entry.algebra, entry.form, entry.phi)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_search(args) -> int:
    if args.dim > SEARCH_DIM_LIMIT:
        raise ValueError(f"search is limited to dimension {SEARCH_DIM_LIMIT}")
    rng = random.Random(f"search:{args.seed}")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    hits = []
    for trial in range(args.trials):
        alg = random_algebra(args.dim, rng, commutative=args.commutative)
        alg.name = f"search-d{args.dim}-s{args.seed}-t{trial}"
        ops = TrialityOps(alg)
        pre = is_pre_structurable(ops, "exhaustive")
        if pre.holds is not True:
            continue
        st = is_structurable(ops, "exhaustive")
        if st.holds is True:
            continue
        path = out_dir / f"{alg.name}.alg"
        path.write_text(emit_algebra_text(alg), encoding="utf-8")
        witness = st.witness.labels if st.witness else ()
        hits.append({"trial": trial, "file": str(path), "witness": list(witness)})
        print(f"hit at trial {trial}: pre-structurable, not structurable "
              f"(witness {', '.join(witness)}) -> {path}")
    print(f"searched {args.trials} samples of dimension {args.dim}"
          f"{' (commutative)' if args.commutative else ''}: {len(hits)} hit(s)")
    if args.json_path:
        import json

        doc = {"dim": args.dim, "commutative": args.commutative,
               "trials": args.trials, "seed": args.seed, "hits": hits}
        Path(args.json_path).write_text(json.dumps(doc, indent=2) + "\n",
                                        encoding="utf-8")
    return 0


def _write_outputs(doc: dict, args) -> None:
    sys.stdout.write(emit_human(doc))
    if args.json_path:
        Path(args.json_path).write_text(emit_machine(doc), encoding="utf-8")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triality",
        description="Certify unital involutive algebras through their triality "
                    "identities and synthesize the graded Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate and certify a definition file")
    p.add_argument("path")
    p.add_argument("--suite", default="all",
                   help="comma list of validate,certify,identities,forms (default all)")
    _common_flags(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("build-lie", help="construct the graded Lie algebra")
    p.add_argument("path")
    p.add_argument("--gamma", default="1,1,1", metavar="g0,g1,g2")
    p.add_argument("--jacobi-trials", type=int, default=2000,
                   help="sampled triples when the table is too big to scan")
    _common_flags(p)
    p.set_defaults(fn=cmd_build_lie)

    p = sub.add_parser("catalog", help="list built-in algebras or emit one as a file")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("search", help="random search for pre-structurable, "
                                      "non-structurable algebras")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--commutative", action="store_true",
                   help="commutative tables with the identity involution")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.add_argument("--json", dest="json_path", default=None)
    p.set_defaults(fn=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "emit" and not args.name:
        parser.error("catalog emit needs a name")
    try:
        return args.fn(args)
    except (ParseError, FieldError, ZornDataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
