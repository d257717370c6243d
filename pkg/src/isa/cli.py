"""Command-line entry point.

Exit codes: 0 success or feasible, 1 a valid input with a negative verdict,
2 an input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .algebra import ideal_I
from .cohomology import FiniteBimodule, h1_dimension
from .congruence import quotient_group
from .diagonal import DiagonalCertificate, find_classical_diagonal, find_module_diagonal, verify_diagonal
from .mean import SIDES, MeanCertificate, find_invariant_mean, verify_mean
from .semigroup import (
    MalformedTable,
    SemigroupError,
    gen_brandt,
    gen_clifford,
    gen_group,
    gen_product,
    gen_semilattice_chain,
    gen_symmetric_inverse,
    group_table_from_spec,
    identity_maps,
    load,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2
FAMILIES = ("group", "brandt", "symmetric-inverse", "semilattice-chain", "clifford", "product")
WHATS = ("mean", "diagonal-classical", "diagonal-module", "group-image", "h1", "all")


class InputError(Exception):
    pass


def _emit(obj, out=None):
    text = corpus_mod.dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_checked(path):
    try:
        S = load(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except SemigroupError as exc:
        raise InputError(str(exc)) from exc
    if S.order > corpus_mod.max_order():
        raise InputError(f"order {S.order} exceeds ISA_MAX_ORDER={corpus_mod.max_order()}")
    return S


def cmd_validate(args) -> int:
    try:
        S = load(args.path)
    except MalformedTable as exc:
        print(f"malformed: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except SemigroupError as exc:
        print(str(exc))
        return NEGATIVE
    if S.order > corpus_mod.max_order():
        print(f"error: order {S.order} exceeds ISA_MAX_ORDER", file=sys.stderr)
        return INPUT_ERROR
    print(f"valid inverse semigroup: order {S.order}, {len(S.idempotents)} idempotents")
    return OK


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name.replace('_', '-')} is required for family {args.family}")
    return value


def build_family(args):
    fam = args.family
    if fam == "group":
        return gen_group(_need(args, "group"))
    if fam == "brandt":
        spec = _need(args, "group")
        return gen_brandt(group_table_from_spec(spec), _need(args, "index"), name=f"brandt_{spec}_{args.index}")
    if fam == "symmetric-inverse":
        return gen_symmetric_inverse(_need(args, "n"))
    if fam == "semilattice-chain":
        return gen_semilattice_chain(_need(args, "n"))
    if fam == "clifford":
        G = group_table_from_spec(_need(args, "group"))
        levels = _need(args, "levels")
        if levels < 1:
            raise InputError("--levels must be >= 1")
        return gen_clifford([G] * levels, identity_maps(len(G), levels), name=f"clifford_{args.group}_{levels}")
    if fam == "product":
        factors = args.factor or []
        if len(factors) != 2:
            raise InputError("product needs exactly two --factor files")
        return gen_product(_load_checked(factors[0]), _load_checked(factors[1]))
    raise InputError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")


def cmd_gen(args) -> int:
    try:
        S = build_family(args)
    except (InputError, SemigroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    _emit(S.to_json(), args.out)
    return OK


def _mean_json(S, side):
    cert = find_invariant_mean(S, side=side)
    if cert is None:
        return {"feasible": False}, False
    return {"feasible": True, "side": side, **cert.to_json()}, True


def _diag_json(cert):
    if cert is None:
        return {"feasible": False}, False
    return {"feasible": True, **cert.to_json()}, cert.valid


def _h1_json(S, module):
    X = FiniteBimodule.regular(S) if module == "regular" else FiniteBimodule.zero_action(S)
    res = h1_dimension(S, X)
    return {"module": module, **res.to_json()}


def cmd_analyze(args) -> int:
    try:
        S = _load_checked(args.path)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    what = args.what
    if what == "mean":
        out, ok = _mean_json(S, args.side)
    elif what == "diagonal-module":
        out, ok = _diag_json(find_module_diagonal(S))
    elif what == "diagonal-classical":
        out, ok = _diag_json(find_classical_diagonal(S, one_sided=args.one_sided_omega))
    elif what == "group-image":
        out, ok = quotient_group(S).to_json(), True
    elif what == "h1":
        out, ok = _h1_json(S, args.module), True
    else:
        ideals = ideal_I(S)
        out = {
            "name": S.name,
            "order": S.order,
            "num_idempotents": len(S.idempotents),
            "group_image": quotient_group(S).to_json(),
            "ideal_dims": ideals.dims(),
            "mean": _mean_json(S, args.side)[0],
            "diagonal_module": _diag_json(find_module_diagonal(S, ideals))[0],
            "diagonal_classical": _diag_json(find_classical_diagonal(S, one_sided=args.one_sided_omega))[0],
            "h1": _h1_json(S, args.module),
        }
        ok = True
    _emit(out, args.out)
    return OK if ok else NEGATIVE


def cmd_check(args) -> int:
    """Re-verify a stored certificate by substitution alone."""
    try:
        S = _load_checked(args.path)
        data = json.loads(Path(args.certificate).read_text())
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    try:
        if "mu" in data:
            side = data.get("side", args.side)
            bad = [v.to_json() for v in verify_mean(S, MeanCertificate.from_json(data).mu, side=side)]
        elif "M" in data:
            cert = DiagonalCertificate.from_json(data, S.order)
            bad = [r.to_json() for r in verify_diagonal(S, cert.M, cert.kind, one_sided=args.one_sided_omega)]
        else:
            raise ValueError("certificate has neither 'mu' nor 'M'")
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return INPUT_ERROR
    _emit({"valid": not bad, "violations": bad}, args.out)
    return OK if not bad else NEGATIVE


def cmd_report(args) -> int:
    if args.corpus:
        if not Path(args.corpus).is_dir():
            print(f"error: {args.corpus} is not a directory", file=sys.stderr)
            return INPUT_ERROR
        rep = corpus_mod.report_directory(args.corpus, timings=args.timings, jobs=args.jobs)
    else:
        rep = corpus_mod.report_builtin(timings=args.timings)
    _emit(rep, args.out)
    return OK if rep["summary"]["ok"] else NEGATIVE


def cmd_corpus(args) -> int:
    corpus_mod.write_corpus(args.directory)
    return OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isa", description="Amenability certificates for finite inverse semigroups.")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="check the inverse-semigroup axioms of a table file")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("gen", help="write a generated semigroup as JSON")
    g.add_argument("family", help=", ".join(FAMILIES))
    g.add_argument("--group", help="trivial, cyclic:k, klein, symmetric:n, dihedral:k")
    g.add_argument("--index", type=int, help="Brandt index-set size")
    g.add_argument("--n", type=int, help="chain length or symmetric-inverse degree")
    g.add_argument("--levels", type=int, help="Clifford chain length")
    g.add_argument("--factor", action="append", help="semigroup file (twice, for product)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="decide and certify one semigroup")
    a.add_argument("path")
    a.add_argument("--what", choices=WHATS, default="all")
    a.add_argument("--side", choices=SIDES, default="both", help="mean sidedness")
    a.add_argument("--one-sided-omega", action="store_true", help="only require omega(M) to be a right unit")
    a.add_argument("--module", choices=("regular", "zero"), default="regular", help="coefficient module for h1")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="re-verify a mean or diagonal certificate")
    c.add_argument("path")
    c.add_argument("certificate")
    c.add_argument("--side", choices=SIDES, default="both")
    c.add_argument("--one-sided-omega", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("report", help="run the regression corpus")
    r.add_argument("--corpus", help="directory of semigroup files (default: built-in corpus)")
    r.add_argument("--timings", action="store_true", help="record wall time per semigroup")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)

    w = sub.add_parser("corpus", help="write the built-in corpus as files")
    w.add_argument("directory")
    w.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
