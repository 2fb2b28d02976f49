"""Command-line front end: radsub {enumerate,parity,census,f4,gfcoef}.

Exit codes: 0 all checks pass, 1 a verification mismatch, 2 bad input,
3 a brute-force cap was exceeded.  Output depends only on the flags.
"""

import argparse
import json
import sys

from . import basics, census, f4, parity
from .matgrp import CapExceeded, DEFAULT_CAP, deserialize, standard_space

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _emit(text, out):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required")


# ---------------------------------------------------------------------------


def cmd_enumerate(args):
    _need(args, "kind", "n", "q")
    cap = args.cap or DEFAULT_CAP
    labs = basics.enumerate_labels(args.kind, args.n, args.q, args.p, args.variant)
    result = {
        "kind": args.kind,
        "n": args.n,
        "q": args.q,
        "p": args.p,
        "variant": args.variant,
        "labels": [{"label": str(x), "order": x.order()} for x in labs],
    }
    ok = True
    if args.oracle:
        cmp = basics.compare_with_oracle(args.kind, args.n, args.q, args.p, args.variant, cap)
        result["oracle_orders"] = list(cmp.oracle_orders)
        result["label_orders"] = list(cmp.label_orders)
        result["all_radical"] = cmp.all_radical
        result["same_classes"] = cmp.same_classes
        result["match"] = cmp.match
        ok = cmp.match
    if args.format == "json":
        text = _dump(result)
    else:
        lines = [f"{x['label']}\t{x['order']}" for x in result["labels"]]
        if args.oracle:
            lines.append("oracle_orders: " + " ".join(map(str, result["oracle_orders"])))
            lines.append("label_orders: " + " ".join(map(str, result["label_orders"])))
            lines.append(f"match: {str(result['match']).lower()}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_parity(args):
    if args.fuzz:
        _need(args, "n", "q")
        space = standard_space("O", args.n, args.q, args.variant or "+")
        bad = parity.fuzz_homomorphism(space, args.fuzz, seed=args.seed)
        result = {"n": args.n, "q": args.q, "variant": space.variant, "words": args.fuzz, "seed": args.seed, "mismatches": bad}
        _emit(_dump(result) if args.format == "json" else f"mismatches: {bad} of {args.fuzz}", args.out)
        return EXIT_OK if bad == 0 else EXIT_MISMATCH
    if not args.element:
        raise InputError("parity needs an element file (or --fuzz)")
    text = sys.stdin.read() if args.element == "-" else open(args.element).read()
    try:
        M, q, kind, n = deserialize(text)
    except (KeyError, ValueError) as ex:
        raise InputError(f"cannot parse element: {ex}") from ex
    if kind not in ("O", "orthogonal"):
        raise InputError("parity is defined on orthogonal groups")
    space = standard_space("O", n, q, args.variant or "+")
    try:
        par = parity.parity_of(M, space)
    except ValueError as ex:
        raise InputError(str(ex)) from ex
    _emit(_dump({"parity": str(par)}) if args.format == "json" else str(par), args.out)
    return EXIT_OK


def cmd_census(args):
    w_max = 28 if args.wmax is None else args.wmax
    rows = census.verify_identities(w_max)
    if args.format == "json":
        text = _dump([{"w": r.w, "tag": r.tag, "gf_value": r.gf_value, "enum_value": r.enum_value, "pass": r.passed} for r in rows])
    else:
        text = census.report_csv(rows)
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_MISMATCH


def cmd_f4(args):
    _need(args, "q")
    if args.quasi:
        try:
            n = f4.count_alp_quasi(args.q)
        except ValueError as ex:
            raise InputError(str(ex)) from ex
        result = {"q": args.q, "alp_quasi": n}
        _emit(_dump(result) if args.format == "json" else str(n), args.out)
        return EXIT_OK if n == 9 else EXIT_MISMATCH
    rep = f4.report(args.q, closure_cap=args.cap)
    if args.format == "json":
        text = _dump(rep)
    else:
        lines = [f"alp1={rep['alp1']} alp2={rep['alp2']} ibr={rep['ibr']}"]
        for r in rep["rows"]:
            lines.append(f"{r['id']}\t{r['parity']}\t{r['log2_expected']}\t{r['log2_computed']}\t{r['pass']}")
        text = "\n".join(lines)
    _emit(text, args.out)
    ok = all(r["pass"] for r in rep["rows"]) and rep["alp1"] + rep["alp2"] == rep["ibr"]
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_gfcoef(args):
    _need(args, "series")
    w_max = 28 if args.wmax is None else args.wmax
    if args.series == "theta":
        s = census.theta_series("t", w_max)
    elif args.series in census.SERIES_IDS:
        s = census.series_named(args.series, w_max)
    else:
        raise InputError(f"unknown series {args.series!r}; choose from theta, {', '.join(census.SERIES_IDS)}")
    coeffs = [s[w] for w in range(w_max + 1)]
    if args.format == "json":
        text = _dump({"series": args.series, "coefficients": coeffs})
    else:
        text = "w,coefficient\n" + "\n".join(f"{w},{c}" for w, c in enumerate(coeffs))
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "parity": cmd_parity,
    "census": cmd_census,
    "f4": cmd_f4,
    "gfcoef": cmd_gfcoef,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="radsub", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int)
    common.add_argument("--p", type=int, default=2)
    common.add_argument("--kind", choices=["GL", "GU", "Sp", "O", "SL", "SU"])
    common.add_argument("--n", type=int)
    common.add_argument("--variant", choices=["+", "-"])
    common.add_argument("--cap", type=int)
    common.add_argument("--wmax", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    p = sub.add_parser("enumerate", parents=[common], help="radical subgroup labels, optionally against the oracle")
    p.add_argument("--labels", action="store_true", help="print the labels (the default)")
    p.add_argument("--oracle", action="store_true")
    p = sub.add_parser("parity", parents=[common], help="parity (t,t') of an orthogonal matrix")
    p.add_argument("element", nargs="?", help="file in the matrix serialization format, or - for stdin")
    p.add_argument("--fuzz", type=int, default=0, help="instead check the homomorphism on this many random words")
    sub.add_parser("census", parents=[common], help="generating functions against direct counts")
    p = sub.add_parser("f4", parents=[common], help="F4 weight counts and table verification")
    p.add_argument("--quasi", action="store_true")
    p = sub.add_parser("gfcoef", parents=[common], help="coefficients of a named series")
    p.add_argument("--series")
    return ap


_DEFAULT_FORMAT = {"enumerate": "text", "parity": "text", "census": "csv", "f4": "json", "gfcoef": "csv"}


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code == 0 else EXIT_INPUT
    if args.format is None:
        args.format = _DEFAULT_FORMAT[args.command]
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as ex:
        print(f"cap exceeded: {ex}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, basics.IllegalLabel, ValueError, NotImplementedError, OSError) as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
