"""Command-line front end for the workbench.

Every verb validates its options, dispatches to the library, and prints
a deterministic report (text or JSON).  Exit status: 0 when the report
passes, 1 on a computational failure or diagnostic, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .algebra import AlgebraElement, act
from .errors import RejectedInputError, UqwbError
from .projectives import (
    build_projective_cover,
    build_via_tensor_summand,
    certify_projcover_structure,
    verify_dominant_generation,
)
from .repmod import (
    build_dual,
    build_generalized_verma,
    build_one_dim,
    build_simple,
    build_tensor,
    dump_module,
    load_module,
    verify_relations,
    weight_decomposition,
)
from .session import MODE_EXPONENTIAL, MODE_PAPER_LITERAL, Session
from .structure import (
    FiltrationCertificate,
    atypical_decompose,
    bgg_table,
    extract_costandard_filtration,
    extract_standard_filtration,
    format_simple_label,
    iso_test,
    jordan_holder,
    simple_label,
    socle_counts,
    standard_top_surjection,
    typicality,
    verify_filtration_certificate,
    verma_splitting_section,
)

USAGE_EXIT = 2
FAIL_EXIT = 1


class Reporter:
    """Ordered check collection with pass/fail aggregation."""

    def __init__(self):
        self.items = []
        self.start = time.time()

    def add(self, name, ok, witness=None):
        self.items.append({"check": name, "ok": bool(ok),
                           "witness": None if ok else witness})

    def extend(self, prefix, report):
        for it in report["items"]:
            self.add("%s: %s" % (prefix, it["check"]), it["ok"],
                     it["witness"])

    @property
    def status(self):
        return "pass" if all(it["ok"] for it in self.items) else "fail"

    def as_dict(self):
        return {"status": self.status, "items": self.items,
                "seconds": round(time.time() - self.start, 3)}


def emit_report(rep, fmt, stream=None):
    stream = stream or sys.stdout
    data = rep.as_dict()
    if fmt == "json":
        json.dump(data, stream, indent=1)
        stream.write("\n")
    else:
        stream.write("status: %s\n" % data["status"])
        for it in data["items"]:
            mark = "ok  " if it["ok"] else "FAIL"
            line = "  [%s] %s" % (mark, it["check"])
            if not it["ok"] and it["witness"]:
                line += " :: %s" % (it["witness"],)
            stream.write(line + "\n")
        stream.write("seconds: %s\n" % data["seconds"])
    return 0 if data["status"] == "pass" else FAIL_EXIT


def write_artifact(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise RejectedInputError("bad rational %r: %s" % (text, exc))


def make_session(args):
    if args.ell is None:
        raise RejectedInputError("--ell is required for this verb")
    return Session(args.ell, args.weight_denominator, args.mode)


def load_with_optional_session(path, args):
    with open(path) as fh:
        data = json.load(fh)
    session = None
    if args.ell is not None:
        session = make_session(args)
    return load_module(data, session)


# ---------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------

def cmd_build(args, rep):
    s = make_session(args)
    if args.kind == "verma":
        mod = build_generalized_verma(s, parse_fraction(args.weight),
                                      args.degree)
    elif args.kind == "simple":
        mod = build_simple(s, args.i)
    else:
        mod = build_one_dim(s, args.k)
    rep.add("build %s dim %d" % (mod.name, mod.dim), True)
    rep.extend("relations", verify_relations(mod))
    if args.out:
        write_artifact(args.out, dump_module(mod))
        rep.add("dump written to %s" % args.out, True)


def cmd_verify(args, rep):
    mod = load_with_optional_session(args.module, args)
    rep.add("loaded %s dim %d" % (args.module, mod.dim), True)
    rep.extend("relations", verify_relations(mod))


def cmd_decomp(args, rep):
    mod = load_with_optional_session(args.module, args)
    total = 0
    for w, deg, idx in weight_decomposition(mod):
        rep.add("weight %s: dim %d, degree %d" % (w, len(idx), deg), True)
        total += len(idx)
    rep.add("dimensions sum to %d" % mod.dim, total == mod.dim,
            "sum %d" % total)


def cmd_dual(args, rep):
    mod = load_with_optional_session(args.module, args)
    dual = build_dual(mod)
    rep.extend("relations of the dual", verify_relations(dual))
    if args.out:
        write_artifact(args.out, dump_module(dual))
        rep.add("dump written to %s" % args.out, True)


def cmd_tensor(args, rep):
    a = load_with_optional_session(args.left, args)
    with open(args.right) as fh:
        b = load_module(json.load(fh), a.session)
    mod = build_tensor(a, b)
    rep.add("tensor dim %d" % mod.dim, mod.dim == a.dim * b.dim)
    rep.extend("relations", verify_relations(mod))
    if args.out:
        write_artifact(args.out, dump_module(mod))
        rep.add("dump written to %s" % args.out, True)


def cmd_filtration(args, rep):
    mod = load_with_optional_session(args.module, args)
    if args.kind == "standard":
        cert = extract_standard_filtration(mod, args.degree)
    else:
        cert = extract_costandard_filtration(mod, args.degree)
    rep.add("%s filtration found" % args.kind, cert is not None,
            "extraction strategy found nothing at degree %d" % args.degree)
    if cert is None:
        return
    rep.add("quotient weights %s"
            % [str(w) for w in cert.quotient_weights()], True)
    rep.extend("certificate", verify_filtration_certificate(cert))
    if args.out:
        write_artifact(args.out, cert.to_json())
        rep.add("certificate written to %s" % args.out, True)


def cmd_jh(args, rep):
    mod = load_with_optional_session(args.module, args)
    factors = jordan_holder(mod)
    for lab in sorted(factors, key=str):
        rep.add("factor %s x %d" % (format_simple_label(lab), factors[lab]),
                True)
    total = sum(factors.values())
    rep.add("composition length %d" % total, total > 0 or mod.dim == 0)


def cmd_typical(args, rep):
    s = make_session(args)
    t = typicality(s, parse_fraction(args.weight))
    rep.add("weight %s is %s" % (args.weight,
                                 "typical" if t.typical else "atypical"),
            True)
    rep.add("criterion: %s" % t.witness, True)


def cmd_bgg(args, rep):
    s = make_session(args)
    if args.weights:
        weights = [parse_fraction(w) for w in args.weights.split(",")]
    else:
        r = s.r
        weights = [Fraction(w) for w in range(-(r - 1), 2 * r - 1)]
        weights += ([Fraction(1, 2), Fraction(5, 2)] if s.ell % 2 == 0
                    else [Fraction(3, 2), Fraction(4)])
    cells = bgg_table(s, args.m, weights, seed=args.seed)
    for (lam, mu), a, b, ok in cells:
        rep.add("cell (%s, %s): filtration %d, composition %d"
                % (lam, mu, a, b), ok, "counts differ")
    if args.out:
        write_artifact(args.out, [
            {"lam": str(lam), "mu": str(mu), "filtration": a,
             "composition": b, "equal": ok}
            for (lam, mu), a, b, ok in cells
        ])
        rep.add("table written to %s" % args.out, True)


def cmd_pcover(args, rep):
    s = make_session(args)
    p = build_projective_cover(s, args.i, args.m, args.twist)
    rep.add("built %s dim %d" % (p.name, p.dim), True)
    rep.extend("relations", verify_relations(p))
    rep.extend("generation",
               verify_dominant_generation(s, p, args.i, args.m, args.twist))
    if args.out:
        write_artifact(args.out, dump_module(p))
        rep.add("dump written to %s" % args.out, True)


def cmd_pcover_certify(args, rep):
    mod = load_with_optional_session(args.module, args)
    s = mod.session
    tops = socle_counts(build_dual(mod))
    if len(tops) != 1:
        rep.add("module has a unique simple top", False,
                "top data %s" % (tops,))
        return
    lo = next(iter(tops))
    i, twist = atypical_decompose(s, lo)
    if i is None:
        rep.add("top weight %s is linked to a cover index" % lo, False)
        return
    m = mod.max_degree
    rep.add("identified as cover (i=%d, m=%d, twist=%d)" % (i, m, twist),
            True)
    rep.extend("relations", verify_relations(mod))
    rep.extend("structure",
               certify_projcover_structure(s, i, m, twist, seed=args.seed,
                                           module=mod))


def cmd_verify_cert(args, rep):
    with open(args.certificate) as fh:
        data = json.load(fh)
    cert = FiltrationCertificate.from_json(data)
    rep.add("loaded %s certificate of degree %d"
            % (cert.kind, cert.degree), True)
    rep.extend("certificate", verify_filtration_certificate(cert))


def cmd_act(args, rep):
    mod = load_with_optional_session(args.module, args)
    x = AlgebraElement.parse_word(mod.session, args.word)
    mat = act(x, mod)
    rep.add("word %r evaluated on dim-%d module, %d nonzero entries"
            % (args.word, mod.dim, mat.nnz()), True)
    if args.out:
        s = mod.session
        write_artifact(args.out, [[s.format_scalar(v) for v in row]
                                  for row in mat.to_dense()])
        rep.add("matrix written to %s" % args.out, True)


# ---------------------------------------------------------------------
# the aggregated suite
# ---------------------------------------------------------------------

def cmd_suite(args, rep):
    s = make_session(args)
    r = s.r
    max_i = args.max_i if args.max_i is not None else r - 2
    max_m = args.max_m if args.max_m is not None else 1
    if not 0 <= max_i <= r - 2:
        raise RejectedInputError(
            "max-i %d out of the simple index range {0,...,%d}"
            % (max_i, r - 2))
    if max_m < 0:
        raise RejectedInputError("max-m must be nonnegative")
    top_dim = 2 * (max_m + 1) * r
    if top_dim > 256:
        raise RejectedInputError(
            "predicted top dimension %d exceeds the desk-scale guard 256; "
            "lower --max-m (each unit adds 2r)" % top_dim)

    # scalar properties
    rep.add("q has order ell", all(
        (s.q_power(n) == s.q_power(0)) == (n % s.ell == 0)
        for n in range(1, 2 * s.ell + 1)))
    rep.add("[n] vanishes exactly at multiples of r", all(
        s.quantum_integer(n).is_zero() == (n % r == 0)
        for n in range(1, 2 * r + 1)))

    # relation suites on the constructors
    mods = []
    for k in (0, 1):
        mods.append(build_one_dim(s, k))
    for i in range(0, max_i + 1):
        mods.append(build_simple(s, i))
    verma_weights = [Fraction(w) for w in range(-1, 3)]
    for lam in verma_weights:
        for m in range(0, max_m + 1):
            mods.append(build_generalized_verma(s, lam, m))
    for mod in list(mods):
        mods.append(build_dual(mod))
    for mod in mods:
        ok = verify_relations(mod)["status"] == "pass"
        rep.add("relations %s" % mod.name, ok)

    # duality properties
    probe = build_generalized_verma(s, Fraction(1), min(1, max_m))
    rep.add("dual of dual is isomorphic (V(1,%d))" % probe.max_degree,
            iso_test(build_dual(build_dual(probe)), probe,
                     seed=args.seed) is not None)
    li = build_simple(s, min(1, r - 2))
    rep.add("dual simple is isomorphic to the simple",
            iso_test(build_dual(li), li, seed=args.seed) is not None)

    # tensor standard filtrations
    for i in range(0, min(max_i, 2) + 1):
        big = build_tensor(build_generalized_verma(s, Fraction(1), max_m),
                           build_simple(s, i))
        cert = extract_standard_filtration(big, max_m)
        ok = cert is not None and len(cert.claims) == i + 1
        rep.add("standard filtration of V(1,%d) (x) L_%d" % (max_m, i), ok)

    # splitting sections on typical tops
    typ = Fraction(1, 2) if s.ell % 2 == 0 else Fraction(3, 2)
    base = build_generalized_verma(s, typ, max_m)
    big = build_tensor(base, build_simple(s, 0))
    f, lam = standard_top_surjection(big, max_m)
    try:
        verma_splitting_section(big, f, lam, max_m)
        rep.add("splitting section at typical %s" % lam, True)
    except UqwbError as exc:
        rep.add("splitting section at typical %s" % lam, False, str(exc))

    # projective covers
    for i in range(0, max_i + 1):
        for m in range(0, max_m + 1):
            p = build_projective_cover(s, i, m)
            rep.add("cover relations P(%d,%d)" % (i, m),
                    verify_relations(p)["status"] == "pass")
            rep.add("cover generation P(%d,%d)" % (i, m),
                    verify_dominant_generation(s, p, i, m)["status"]
                    == "pass")
    ci = min(1, max_i)
    cm = min(1, max_m)
    rep.extend("cover structure P(%d,%d)" % (ci, cm),
               certify_projcover_structure(s, ci, cm, seed=args.seed))
    try:
        build_via_tensor_summand(s, ci, cm, seed=args.seed)
        rep.add("tensor summand matches the cover (%d,%d)" % (ci, cm), True)
    except UqwbError as exc:
        rep.add("tensor summand matches the cover (%d,%d)" % (ci, cm),
                False, str(exc))

    # BGG sweep
    weights = [Fraction(w) for w in range(-(r - 1), 2 * r - 1)]
    weights += ([Fraction(1, 2), Fraction(5, 2)] if s.ell % 2 == 0
                else [Fraction(3, 2), Fraction(4)])
    for m in range(0, max_m + 1):
        cells = bgg_table(s, m, weights, seed=args.seed)
        bad = [c for c in cells if not c[3]]
        rep.add("bgg reciprocity m=%d over %d cells" % (m, len(cells)),
                not bad, "failing cells %s" % bad[:3])


# ---------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------

def _shared_flags(suppress):
    """The global flags, usable both before and after the verb."""
    d = argparse.SUPPRESS if suppress else None
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--ell", type=int,
                        default=d,
                        help="order of q (q = exp(2*pi*i/ell))")
    parent.add_argument("--weight-denominator", type=int,
                        default=argparse.SUPPRESS if suppress else 2,
                        help="weights live in (1/N)Z (default 2)")
    parent.add_argument("--mode",
                        default=argparse.SUPPRESS if suppress
                        else MODE_EXPONENTIAL,
                        choices=[MODE_EXPONENTIAL, MODE_PAPER_LITERAL])
    parent.add_argument("--seed", type=int,
                        default=argparse.SUPPRESS if suppress else 0,
                        help="seed for randomized certifications")
    parent.add_argument("--out",
                        default=d,
                        help="path for the JSON artifact, when the verb "
                             "emits one")
    parent.add_argument("--format",
                        default=argparse.SUPPRESS if suppress else "text",
                        choices=["text", "json"], dest="fmt",
                        help="report format")
    return parent


def build_parser():
    sub_parent = _shared_flags(suppress=True)
    ap = argparse.ArgumentParser(
        prog="uqwb",
        parents=[_shared_flags(suppress=False)],
        description="exact workbench for the unrolled restricted "
                    "quantum sl2 at a root of unity")
    sub = ap.add_subparsers(dest="verb", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[sub_parent], **kw))

    p = sub.add_parser("build", help="build a module and verify it")
    p.add_argument("kind", choices=["verma", "simple", "onedim"])
    p.add_argument("--weight", default="0", help="verma highest weight")
    p.add_argument("--degree", type=int, default=0, help="verma degree m")
    p.add_argument("--i", type=int, default=0, help="simple index")
    p.add_argument("--k", type=int, default=0, help="one-dim twist index")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="re-verify a serialized module")
    p.add_argument("module")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decomp", help="generalized weight decomposition")
    p.add_argument("module")
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("dual", help="dual of a serialized module")
    p.add_argument("module")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("tensor", help="tensor of two serialized modules")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("filtration",
                       help="extract and certify a filtration")
    p.add_argument("module")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--kind", default="standard",
                   choices=["standard", "costandard"])
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("jh", help="composition factors")
    p.add_argument("module")
    p.set_defaults(func=cmd_jh)

    p = sub.add_parser("typical", help="typicality of a weight")
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_typical)

    p = sub.add_parser("bgg", help="BGG reciprocity table")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--weights", default=None,
                   help="comma-separated weights (default: the atypical "
                        "integer window plus two typicals)")
    p.set_defaults(func=cmd_bgg)

    p = sub.add_parser("pcover", help="build a projective cover")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--twist", type=int, default=0)
    p.set_defaults(func=cmd_pcover)

    p = sub.add_parser("pcover-certify",
                       help="re-certify a serialized cover")
    p.add_argument("module")
    p.set_defaults(func=cmd_pcover_certify)

    p = sub.add_parser("verify-cert",
                       help="re-check a filtration certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("act", help="evaluate a generator word")
    p.add_argument("module")
    p.add_argument("--word", required=True,
                   help="whitespace-separated generators, leftmost "
                        "acts last")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("suite", help="the aggregated verification suite")
    p.add_argument("--max-i", type=int, default=None)
    p.add_argument("--max-m", type=int, default=None)
    p.set_defaults(func=cmd_suite)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code not in (0, None) else 0
    rep = Reporter()
    try:
        args.func(args, rep)
    except RejectedInputError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return USAGE_EXIT
    except (UqwbError, OSError, json.JSONDecodeError, KeyError) as exc:
        rep.add("diagnostic: %s" % exc, False, repr(exc))
        emit_report(rep, args.fmt)
        return FAIL_EXIT
    return emit_report(rep, args.fmt)


if __name__ == "__main__":
    sys.exit(main())
