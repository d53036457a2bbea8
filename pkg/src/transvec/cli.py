"""Command-line front end.

One binary, subcommand style::

    transvec verify --suite all --n 3
    transvec rewrite --theorem C --n 3 --r 2 --target "z(1,2; a1; c1)" --emit cert.json
    transvec check cert.json
    transvec ideal --ring z --circ 4 6
    transvec member --tree "((1 2) 3)" --monomial "i1 i3 i2"

All output is machine-readable JSON unless --pretty.  Exit codes: 0 full
success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ring import (
    IntRing,
    ModRing,
    ParseError,
    PrincipalInt,
    TriangRing,
    adapter_from_name,
    describe_ideal,
    free_tag_ideal,
    ideal_member,
    named_ideal,
    parse_poly,
    parse_tree,
    principal,
    sym_product,
    tree_level,
)
from .matgroup import DegreeMismatch, OppositePair, atoms_to_text, parse_word_atoms
from .identities import CATALOGUE_IDS, catalogue_entry
from .generate import (
    Certificate,
    MissingPresentationError,
    PositionSet,
    QuasiFiniteAssumptionRequired,
    UnreachablePositionError,
    UntaggedArgument,
    check_certificate,
    load_certificate,
    partial_relative_generators,
    save_certificate,
    theorem1_rewrite,
    theorem4_rewrite,
    theorem5_generators,
    theoremC_decompose,
)
from .verify import append_report, audit_levels, verify_numeric, verify_symbolic

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


def _emit(payload, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(json.dumps(payload))


def _numeric_bindings(adapter):
    """Fixed spot-check ideals per adapter family (documented in README)."""
    if isinstance(adapter, (IntRing, ModRing)):
        return {
            "a": principal(4, adapter),
            "b": principal(6, adapter),
            "c": principal(1, adapter),
            "d": principal(1, adapter),
            "r": principal(1, adapter),
        }
    if isinstance(adapter, TriangRing):
        su = named_ideal("strict_upper", adapter)
        full = named_ideal("full", adapter)
        return {"a": su, "b": su, "c": full, "d": full, "r": full}
    raise UsageError(f"no numeric bindings for ring {adapter.name!r}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    ids = [i for i in CATALOGUE_IDS if args.suite in ("all", i) or i.startswith(args.suite)]
    if not ids:
        raise UsageError(f"no catalogued identities match suite {args.suite!r}")
    adapter = None
    if args.ring and args.ring != "free":
        adapter = adapter_from_name(args.ring)
    entries = []
    all_ok = True
    for ident in ids:
        f = catalogue_entry(ident)
        lhs = f.target_word(args.n)
        rhs = f.factors_word(args.n)
        sym = verify_symbolic(lhs, rhs, subject=ident)
        lev = audit_levels(f, subject=ident)
        entry = {
            "id": ident,
            "symbolic": sym.to_json(),
            "levels_ok": lev.ok,
        }
        ok = sym.ok and lev.ok
        if adapter is not None:
            num = verify_numeric(
                lhs,
                rhs,
                adapter,
                _numeric_bindings(adapter),
                trials=args.trials,
                seed=args.seed,
                subject=ident,
            )
            entry["numeric"] = num.to_json()
            ok = ok and num.ok
            if args.log:
                append_report(num, args.log)
        if args.log:
            append_report(sym, args.log)
        all_ok = all_ok and ok
        entries.append(entry)
    if args.pretty:
        for e in entries:
            state = "PASS" if e["symbolic"]["failures"] == [] and e["levels_ok"] else "FAIL"
            deg = e["symbolic"]["max_degree"]
            print(f"{e['id']:<12} {state}  (n={args.n}, max degree {deg})")
    else:
        _emit(entries, pretty=False)
    return EXIT_OK if all_ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# rewrite
# ---------------------------------------------------------------------------


def _read_target(args) -> str:
    if args.target is not None:
        return args.target
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as e:
            raise UsageError(f"cannot read {args.input}: {e}") from e
    raise UsageError("need --target or --input")


def _parse_extra(text):
    try:
        s, t = (int(p) for p in text.split(","))
    except Exception as e:
        raise UsageError(f"--extra wants 's,t', got {text!r}") from e
    return (s, t)


def _ideal_list(args, adapter):
    if not args.ideals:
        raise UsageError("need --ideals d1,d2,...")
    specs = []
    for idx, piece in enumerate(args.ideals.split(","), start=1):
        piece = piece.strip()
        if isinstance(adapter, (IntRing, ModRing)):
            try:
                specs.append(principal(int(piece), adapter))
            except ValueError as e:
                raise UsageError(f"bad ideal generator {piece!r}") from e
        else:
            specs.append(free_tag_ideal("i", idx))
    return specs


def _cmd_rewrite(args) -> int:
    if args.theorem == "5":
        adapter = adapter_from_name(args.ring or "free")
        tree = parse_tree(args.tree) if args.tree else None
        if tree is None:
            raise UsageError("--theorem 5 needs --tree")
        ideals = _ideal_list(args, adapter)
        desc = theorem5_generators(
            args.n, tree, ideals, assume_quasi_finite=args.assume_quasi_finite
        )
        desc.pop("left_level_spec", None)
        desc.pop("right_level_spec", None)
        if args.emit:
            with open(args.emit, "w", encoding="utf-8") as fh:
                json.dump(desc, fh, indent=2)
                fh.write("\n")
        _emit(desc, args.pretty)
        return EXIT_OK

    atoms = parse_word_atoms(_read_target(args))
    if args.theorem == "C":
        if args.r is None:
            raise UsageError("--theorem C needs --r")
        if len(atoms) != 1:
            raise UsageError("--theorem C wants a single z(...) target")
        ps = PositionSet(
            args.n,
            args.r,
            mode=args.mode,
            h=args.fixed if args.mode == "rows" else None,
            k=args.fixed if args.mode == "cols" else None,
        )
        cert = theoremC_decompose(args.n, args.r, ps, atoms[0])
    elif args.theorem == "1":
        cert = theorem1_rewrite(atoms, args.n)
    elif args.theorem == "4":
        if args.r is None:
            raise UsageError("--theorem 4 needs --r")
        if len(atoms) != 1:
            raise UsageError("--theorem 4 wants a single y(...) target")
        extra = _parse_extra(args.extra) if args.extra else None
        ps = PositionSet(
            args.n,
            args.r,
            mode=args.mode,
            k=args.r,
            extra=extra or (1, args.r + 1),
            extra_kind=args.extra_kind or "z",
        )
        cert = theorem4_rewrite(args.n, args.r, ps, atoms[0])
    elif args.theorem == "2":
        certs = partial_relative_generators(args.n, atoms)
        payload = []
        rc = EXIT_OK
        for c in certs:
            checked, _ = check_certificate(c, trials=args.trials, seed=args.seed)
            payload.append(checked.to_json())
            if not checked.checks["ok"]:
                rc = EXIT_VERIFY
        if args.emit:
            with open(args.emit, "w", encoding="utf-8") as fh:
                json.dump(payload[0] if len(payload) == 1 else payload, fh, indent=2)
                fh.write("\n")
        _emit(payload[0] if len(payload) == 1 else payload, args.pretty)
        return rc
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown theorem {args.theorem!r}")

    checked, _ = check_certificate(cert, trials=args.trials, seed=args.seed)
    if args.emit:
        save_certificate(checked, args.emit)
    _emit(checked.to_json(), args.pretty)
    return EXIT_OK if checked.checks["ok"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# ideal / member
# ---------------------------------------------------------------------------


def _cmd_ideal(args) -> int:
    adapter = adapter_from_name(args.ring)
    if args.circ:
        if isinstance(adapter, (IntRing, ModRing)):
            left = principal(int(args.circ[0]), adapter)
            right = principal(int(args.circ[1]), adapter)
        else:
            raise UsageError("--circ wants an integer ring (z or zmod:<m>)")
        spec = sym_product(left, right)
    elif args.tree:
        tree = parse_tree(args.tree)
        spec = tree_level(tree, _ideal_list(args, adapter))
    else:
        raise UsageError("need --circ d1 d2 or --tree ... --ideals ...")
    if isinstance(spec.desc, PrincipalInt):
        _emit(spec.desc.d, args.pretty)
    else:
        _emit(describe_ideal(spec), args.pretty)
    return EXIT_OK


def _cmd_member(args) -> int:
    tree = parse_tree(args.tree)
    leaves = args.tree.replace("(", " ").replace(")", " ").split()
    ideals = [free_tag_ideal("i", k) for k in range(1, len(leaves) + 1)]
    spec = tree_level(tree, ideals)
    mono_text = args.monomial.strip()
    if not mono_text.startswith(("-", "+")) and not mono_text[:1].isdigit():
        mono_text = "1 " + mono_text
    value = parse_poly(mono_text)
    _emit(ideal_member(value, spec), args.pretty)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _cmd_check(args) -> int:
    try:
        cert = load_certificate(args.certificate)
    except OSError as e:
        raise UsageError(f"cannot read {args.certificate}: {e}") from e
    except (KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"malformed certificate: {e}") from e
    checked, _ = check_certificate(cert, trials=args.trials, seed=args.seed)
    _emit(checked.checks, args.pretty)
    return EXIT_OK if checked.checks["ok"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transvec",
        description="commutator calculus for elementary transvection groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pretty", action="store_true", help="human-readable output")
        p.add_argument("--trials", type=int, default=200, help="numeric trials")
        p.add_argument("--seed", type=int, default=0, help="sampling seed")

    p = sub.add_parser("verify", help="run the catalogued identity suite")
    common(p)
    p.add_argument("--suite", default="all", help="'all', an id, or an id prefix")
    p.add_argument("--n", type=int, default=3, help="matrix degree")
    p.add_argument("--ring", default=None, help="optional numeric ring (zmod:<m>, triang:<m>)")
    p.add_argument("--log", default=None, help="append reports to this JSONL run log")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rewrite", help="rewrite a target into a generator basis")
    common(p)
    p.add_argument("--theorem", required=True, choices=["C", "1", "2", "4", "5"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--mode", choices=["rows", "cols"], default="rows")
    p.add_argument("--fixed", type=int, default=None, help="pinned h (rows) or k (cols)")
    p.add_argument("--extra", default=None, help="extra position 's,t'")
    p.add_argument("--extra-kind", choices=["z", "y"], default=None)
    p.add_argument("--target", default=None, help="target word in the atom grammar")
    p.add_argument("--input", default=None, help="file containing the target word")
    p.add_argument("--tree", default=None, help="bracket tree (theorem 5)")
    p.add_argument("--ideals", default=None, help="comma-separated ideal generators")
    p.add_argument("--ring", default=None, help="ring for theorem 5 ideal lists")
    p.add_argument("--assume-quasi-finite", action="store_true")
    p.add_argument("--emit", default=None, help="write the certificate to this path")
    p.set_defaults(func=_cmd_rewrite)

    p = sub.add_parser("ideal", help="symmetrised products of ideals")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--ring", required=True)
    p.add_argument("--circ", nargs=2, metavar=("D1", "D2"), default=None)
    p.add_argument("--tree", default=None)
    p.add_argument("--ideals", default=None)
    p.set_defaults(func=_cmd_ideal)

    p = sub.add_parser("member", help="monomial membership in a tree level")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--tree", required=True)
    p.add_argument("--monomial", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("check", help="re-verify a certificate file")
    common(p)
    p.add_argument("certificate", help="path to a certificate JSON")
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as e:
        _emit({"error": str(e), "line": e.line, "col": e.col}, getattr(args, "pretty", False))
        return EXIT_USAGE
    except (UsageError, QuasiFiniteAssumptionRequired, DegreeMismatch, OppositePair) as e:
        _emit({"error": str(e)}, getattr(args, "pretty", False))
        return EXIT_USAGE
    except (UnreachablePositionError,) as e:
        _emit(
            {
                "error": str(e),
                "position": list(e.position),
                "reachable": [list(p) for p in e.reachable],
            },
            getattr(args, "pretty", False),
        )
        return EXIT_VERIFY
    except (MissingPresentationError, UntaggedArgument) as e:
        _emit({"error": str(e)}, getattr(args, "pretty", False))
        return EXIT_USAGE
    except ValueError as e:
        _emit({"error": str(e)}, getattr(args, "pretty", False))
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
