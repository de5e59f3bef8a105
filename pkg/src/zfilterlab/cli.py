"""Command-line front end.

Three command groups:

* ``family`` - direct branch-family computations (elements, intersections,
  separators, covers, density, codec).
* ``verify`` - run a lemma engine, write its certificate, re-check it with
  the independent checker; or re-validate an existing certificate file.
* ``oracle`` - exhaustively evaluate a containment/emptiness/equality claim
  over the truncated point universe.

Exit codes: 0 verified/holds, 1 refuted/failed, 2 unknown, 3 usage error,
4 resource cap exceeded.  Certificates are written atomically and carry no
timestamps, so identical configurations reproduce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .branches import BranchError, BranchIndex, Registry
from .certificates import Certificate, CertificateError
from .checking import check_certificate, check_certificate_text
from .engines import (
    AFailure,
    AFailureVerificationError,
    EngineError,
    UnknownHypothesisError,
    check_extendibility_a,
    check_extendibility_b,
    containment_decreasing,
    containment_full_product,
    cover_certificate,
    decreasing_chain_engine,
    increasing_chain_engine,
    property_a_check,
    property_b_refute,
)
from .formats import (
    FormatError,
    parse_branch_literal,
    parse_registry,
    parse_setexpr,
)
from .space import (
    PI,
    SpaceError,
    Truncation,
    XI,
    class_points,
    eval_on_support,
    eval_setexpr,
    support_classes,
)
from .branches import (
    branch_elements,
    decode_code,
    density_count,
    encode_string,
    find_separator,
    intersection_exact,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3
EXIT_RESOURCE = 4

DEFAULT_T = 8
DEFAULT_V = 10
CAP_T = 12
CAP_V = 16

OUTPUT_DIR_ENV = "ZFILTERLAB_OUT"

LEMMAS = (
    "extendibility-a",
    "extendibility-b",
    "containment-dec",
    "containment-full",
    "property-a",
    "property-b",
    "chain-inc",
    "chain-dec",
)


class UsageError(Exception):
    pass


class ResourceCap(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FormatError, BranchError, SpaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCap as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except UnknownHypothesisError as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (EngineError, CertificateError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zfilterlab",
        description="almost-disjoint branch families and zero-set filter certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    family = sub.add_parser("family", help="branch-family computations")
    fam_sub = family.add_subparsers(dest="family_command", required=True)

    p = fam_sub.add_parser("elements", help="first elements of a branch's set")
    p.add_argument("branch")
    p.add_argument("--count", type=int, default=8)
    p.set_defaults(func=_cmd_family_elements)

    p = fam_sub.add_parser("intersect", help="exact intersection of two branches")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_cmd_family_intersect)

    p = fam_sub.add_parser("separator", help="least element escaping a group")
    p.add_argument("branch")
    p.add_argument("--group", action="append", default=[])
    p.set_defaults(func=_cmd_family_separator)

    p = fam_sub.add_parser("cover", help="rank-floored cover of an initial segment")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--gamma", type=int, default=0)
    p.add_argument("--base", action="append", default=[])
    _add_registry_options(p)
    _add_output_options(p)
    p.set_defaults(func=_cmd_family_cover)

    p = fam_sub.add_parser("density", help="branches through a position at a depth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=_cmd_family_density)

    p = fam_sub.add_parser("encode", help="code of a word")
    p.add_argument("word")
    p.set_defaults(func=_cmd_family_encode)

    p = fam_sub.add_parser("decode", help="word of a code")
    p.add_argument("code", type=int)
    p.set_defaults(func=_cmd_family_decode)

    verify = sub.add_parser("verify", help="run a lemma engine or re-check a certificate")
    verify.add_argument("lemma", nargs="?", choices=LEMMAS)
    verify.add_argument("--check", metavar="CERT", help="re-validate an existing certificate")
    _add_registry_options(verify)
    _add_truncation_options(verify)
    _add_output_options(verify)
    verify.add_argument("--zset", help="set expression (extendibility-b, property-a)")
    verify.add_argument("--alpha", help="distinguished entry label (extendibility-b)")
    verify.add_argument("--F", action="append", default=[], help="subtracted branches")
    verify.add_argument("--G", action="append", default=[], help="kept branches")
    verify.add_argument("--gamma", type=int, default=0, help="rank floor")
    verify.add_argument("--steps", type=int, default=2, help="chain length")
    verify.add_argument("--cover", help="putative cover file (property-b)")
    verify.add_argument("--max-group", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0, help="recorded in the certificate")
    verify.set_defaults(func=_cmd_verify)

    oracle = sub.add_parser("oracle", help="exhaustive truncated claim evaluation")
    oracle.add_argument("claim", help="claim file (JSON)")
    _add_registry_options(oracle)
    _add_truncation_options(oracle)
    oracle.add_argument("--max-counterexamples", type=int, default=3)
    oracle.set_defaults(func=_cmd_oracle)

    return parser


def _add_registry_options(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--registry",
        "-r",
        action="append",
        default=[],
        metavar="ENTRY",
        help="registry entry label=pre:period@rank (repeatable)",
    )


def _add_truncation_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--T", type=int, default=DEFAULT_T, help="max support position")
    p.add_argument("--V", type=int, default=DEFAULT_V, help="max finite value")
    p.add_argument("--cap-T", type=int, default=CAP_T, help="raise the position cap")
    p.add_argument("--cap-V", type=int, default=CAP_V, help="raise the value cap")
    p.add_argument("--ambient", choices=[XI, PI], default=XI)


def _add_output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="certificate output path")


def _registry(args) -> Registry:
    return parse_registry(args.registry)


def _truncation(args) -> Truncation:
    cap_t = getattr(args, "cap_T", CAP_T)
    cap_v = getattr(args, "cap_V", CAP_V)
    if args.T > cap_t or args.V > cap_v:
        raise ResourceCap(
            f"truncation ({args.T},{args.V}) exceeds caps ({cap_t},{cap_v}); "
            "raise --cap-T/--cap-V explicitly if you mean it"
        )
    return Truncation(args.T, args.V)


def _output_path(args, default_name: str) -> str:
    if getattr(args, "out", None):
        return args.out
    return os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), default_name)


def _resolve_branch(reg: Registry, text: str) -> BranchIndex:
    """Label lookup first, then branch literal; unseen literals get registered."""
    try:
        return reg.by_label(text)
    except BranchError:
        pass
    if ":" not in text:
        raise UsageError(f"{text!r} is not a registry label, and literals need a colon")
    branch = parse_branch_literal(text)
    for e in reg:
        if e == branch:
            return e
    return reg.add(BranchIndex(branch.pre, branch.period, reg.max_rank() + 1))


# ---------------------------------------------------------------------------
# family
# ---------------------------------------------------------------------------

def _cmd_family_elements(args) -> int:
    branch = parse_branch_literal(args.branch)
    print(",".join(str(x) for x in branch_elements(branch, args.count)))
    return EXIT_OK


def _cmd_family_intersect(args) -> int:
    a = parse_branch_literal(args.first)
    b = parse_branch_literal(args.second, rank=1)
    inter = sorted(intersection_exact(a, b))
    print("{" + ",".join(str(x) for x in inter) + "}")
    return EXIT_OK


def _cmd_family_separator(args) -> int:
    branch = parse_branch_literal(args.branch)
    group = [parse_branch_literal(g, rank=i + 1) for i, g in enumerate(args.group)]
    print(find_separator(branch, group))
    return EXIT_OK


def _cmd_family_cover(args) -> int:
    reg = _registry(args)
    base = [_resolve_branch(reg, b) for b in args.base]
    cover, cert = cover_certificate(args.l, args.gamma, reg, base)
    for c in cover:
        print(f"{c.label} {c.literal()} rank={c.rank}")
    path = _output_path(args, "cover.cert.json")
    cert.write(path)
    print(f"certificate: {path}")
    report = check_certificate(cert)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_family_density(args) -> int:
    print(density_count(args.n, args.depth))
    return EXIT_OK


def _cmd_family_encode(args) -> int:
    print(encode_string(args.word))
    return EXIT_OK


def _cmd_family_decode(args) -> int:
    print(decode_code(args.code))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    if args.check:
        with open(args.check, "rb") as fh:
            report = check_certificate_text(fh.read())
        for problem in report.problems:
            print(f"problem: {problem}", file=sys.stderr)
        print("verified" if report.ok else "rejected")
        return EXIT_OK if report.ok else EXIT_FAIL
    if not args.lemma:
        raise UsageError("give a lemma name or --check CERT")

    reg = _registry(args)
    trunc = _truncation(args)
    cert = _run_engine(args, reg, trunc)
    if args.seed:
        cert.params["seed"] = args.seed
    path = _output_path(args, f"{args.lemma}.cert.json")
    cert.write(path)
    report = check_certificate(cert)
    for problem in report.problems:
        print(f"problem: {problem}", file=sys.stderr)
    print(f"{cert.kind}: {'verified' if report.ok else 'rejected'} -> {path}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _run_engine(args, reg: Registry, trunc: Truncation) -> Certificate:
    lemma = args.lemma
    if lemma == "extendibility-a":
        return check_extendibility_a(reg, trunc, max_group_size=args.max_group)
    if lemma == "extendibility-b":
        if not args.zset or not args.alpha:
            raise UsageError("extendibility-b needs --zset and --alpha")
        zset = parse_setexpr(args.zset, reg, args.ambient)
        return check_extendibility_b(zset, _resolve_branch(reg, args.alpha), reg, trunc)
    if lemma == "containment-dec":
        subtracted = [_resolve_branch(reg, b) for b in args.F]
        kept = [_resolve_branch(reg, b) for b in args.G]
        return containment_decreasing(subtracted, kept, args.gamma, reg, trunc).certificate
    if lemma == "containment-full":
        kept = [_resolve_branch(reg, b) for b in args.F]
        subtracted = [_resolve_branch(reg, b) for b in args.G]
        return containment_full_product(kept, subtracted, trunc).certificate
    if lemma == "property-a":
        if not args.zset:
            raise UsageError("property-a needs --zset")
        zset = parse_setexpr(args.zset, reg, args.ambient)
        return property_a_check(zset, reg, trunc).certificate
    if lemma == "property-b":
        if not args.cover:
            raise UsageError("property-b needs --cover FILE")
        failures = _load_afailures(args.cover, reg, args.ambient)
        return property_b_refute(failures, args.gamma, reg, trunc)
    if lemma == "chain-inc":
        return increasing_chain_engine(reg, args.steps, trunc).certificate
    if lemma == "chain-dec":
        return decreasing_chain_engine(reg, args.steps, trunc).certificate
    raise UsageError(f"unknown lemma {lemma!r}")


def _load_afailures(path: str, reg: Registry, ambient: str) -> list[AFailure]:
    with open(path) as fh:
        doc = json.load(fh)
    failures = []
    for item in doc.get("afailures", []):
        zset = parse_setexpr(item["zset"], reg, ambient)
        constraining = tuple(reg.by_label(x) for x in item.get("constraining", []))
        absorbing = tuple(reg.by_label(x) for x in item.get("absorbing", []))
        failures.append(AFailure(zset, constraining, absorbing))
    return failures


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def _cmd_oracle(args) -> int:
    reg = _registry(args)
    trunc = _truncation(args)
    with open(args.claim) as fh:
        doc = json.load(fh)
    kind = doc.get("claim", "containment")
    ambient = doc.get("ambient", args.ambient)
    lhs = parse_setexpr(doc["lhs"], reg, ambient)
    rhs = parse_setexpr(doc["rhs"], reg, ambient) if "rhs" in doc else None

    if kind == "containment":
        if rhs is None:
            raise UsageError("containment claims need lhs and rhs")
        bad = _violations(lhs, rhs, trunc, ambient, args.max_counterexamples)
    elif kind == "equality":
        if rhs is None:
            raise UsageError("equality claims need lhs and rhs")
        bad = _violations(lhs, rhs, trunc, ambient, args.max_counterexamples)
        bad += _violations(rhs, lhs, trunc, ambient, args.max_counterexamples)
    elif kind == "emptiness":
        from .space import Union as _Union

        bad = _violations(lhs, _Union(()), trunc, ambient, args.max_counterexamples)
    else:
        raise UsageError(f"unknown claim kind {kind!r}")

    if not bad:
        print(f"holds on truncation ({trunc.T},{trunc.V})")
        return EXIT_OK
    for p in bad:
        print(f"counterexample: {p.literal()}")
    return EXIT_FAIL


def _violations(lhs, rhs, trunc, ambient, limit):
    out = []
    for support in support_classes(trunc):
        lv = eval_on_support(support, lhs)
        rv = eval_on_support(support, rhs)
        if lv is False or rv is True:
            continue
        for p in class_points(support, trunc, ambient):
            if eval_setexpr(p, lhs) and not eval_setexpr(p, rhs):
                out.append(p)
                if len(out) >= limit:
                    return out
    return out


if __name__ == "__main__":
    sys.exit(main())
