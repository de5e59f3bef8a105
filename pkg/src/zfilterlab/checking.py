"""Independent certificate checker.

Re-validates a certificate from its payload alone: digest first, then a
semantic replay that only uses point evaluation, exhaustive truncated
enumeration, and the branch codec.  Nothing here calls back into the
producing engines, so a certificate stands or falls on its own evidence.

`check_certificate` returns a `CheckReport`; `report.ok` is the verdict and
`report.problems` lists every failed obligation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .branches import BranchIndex, Registry, branch_member
from .certificates import Certificate, CertificateError
from .formats import FormatError, parse_branch_literal, parse_point_literal, parse_setexpr
from .space import (
    Ambient,
    Atom,
    Diff,
    Inter,
    SetExpr,
    Truncation,
    Union,
    XI,
    XiPoint,
    class_point_count,
    class_points,
    eval_on_support,
    eval_setexpr,
    inter_atoms,
    multi_escape_sequence,
    support_classes,
    union_atoms,
    validate_point,
)


@dataclass
class CheckReport:
    kind: str
    ok: bool = True
    problems: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.problems.append(message)


def check_certificate_text(text: str | bytes) -> CheckReport:
    """Parse (digest included) and semantically re-verify serialized data."""
    try:
        cert = Certificate.from_json(text)
    except CertificateError as exc:
        report = CheckReport(kind="unparseable")
        report.fail(str(exc))
        return report
    return check_certificate(cert)


def check_certificate(cert: Certificate) -> CheckReport:
    report = CheckReport(kind=cert.kind)
    try:
        ctx = _Context(cert, report)
        handler = {
            "SeparatorWitness": _check_separator_witness,
            "CoverSet": _check_cover_set,
            "ExceptionList": _check_exception_list,
            "InclusionChain": _check_inclusion_chain,
            "Contradiction": _check_contradiction,
            "CounterexamplePoint": _check_counterexample,
        }[cert.kind]
        handler(ctx)
    except (FormatError, CertificateError, KeyError, TypeError, ValueError) as exc:
        report.fail(f"malformed payload: {exc!r}")
    if report.ok:
        cert.verified = True
    return report


class _Context:
    def __init__(self, cert: Certificate, report: CheckReport) -> None:
        self.cert = cert
        self.report = report
        self.registry = _registry_from_params(cert.params)
        self.ambient: Ambient = cert.params.get("ambient", XI)
        trunc = cert.params.get("truncation")
        self.trunc = Truncation(trunc["T"], trunc["V"]) if trunc else None

    def branch(self, label: str) -> BranchIndex:
        return self.registry.by_label(label)

    def branches(self, labels: list[str]) -> list[BranchIndex]:
        return [self.branch(x) for x in labels]

    def branch_entries(self, payload: list[dict]) -> list[BranchIndex]:
        return [
            parse_branch_literal(e["branch"], e["rank"], e["label"]) for e in payload
        ]

    def point(self, literal: str) -> XiPoint:
        return parse_point_literal(literal, self.ambient)

    def expr(self, text: str) -> SetExpr:
        return parse_setexpr(text, self.registry, self.ambient)

    def need_trunc(self) -> Truncation:
        if self.trunc is None:
            raise CertificateError("certificate omits the truncation it relies on")
        return self.trunc


def _registry_from_params(params: dict) -> Registry:
    entries = [
        parse_branch_literal(e["branch"], e["rank"], e["label"])
        for e in params.get("registry", [])
    ]
    return Registry(entries)


def _contained_on(
    lhs: SetExpr, rhs: SetExpr, trunc: Truncation, ambient: Ambient
) -> XiPoint | None:
    for support in support_classes(trunc):
        lv = eval_on_support(support, lhs)
        rv = eval_on_support(support, rhs)
        if lv is False or rv is True:
            continue
        if lv is True and rv is False:
            for p in class_points(support, trunc, ambient):
                return p
            continue
        for p in class_points(support, trunc, ambient):
            if eval_setexpr(p, lhs) and not eval_setexpr(p, rhs):
                return p
    return None


# ---------------------------------------------------------------------------
# Kind-specific checks
# ---------------------------------------------------------------------------

def _check_separator_witness(ctx: _Context) -> None:
    payload = ctx.cert.payload
    if "entries" in payload:
        for e in payload["entries"]:
            point = ctx.point(e["point"])
            group = ctx.branches(e["group"])
            alpha = ctx.branch(e["alpha"])
            if not validate_point(point):
                ctx.report.fail(f"witness point {e['point']} is not a valid point")
            elif not eval_setexpr(point, Diff(inter_atoms(group), Atom(alpha))):
                ctx.report.fail(
                    f"point {e['point']} fails to separate {e['alpha']} from {e['group']}"
                )
    if "witnesses" in payload:
        for w in payload["witnesses"]:
            point = ctx.point(w["point"])
            f_set = ctx.branches(w["constraining"])
            beta = ctx.branch(w["beta"])
            if not (
                eval_setexpr(point, inter_atoms(f_set))
                and not eval_setexpr(point, Atom(beta))
            ):
                ctx.report.fail(
                    f"witness {w['point']} fails for ({w['constraining']}, {w['beta']})"
                )
    if "pairs" in payload:
        _check_chain_pairs(ctx, payload)


def _check_chain_pairs(ctx: _Context, payload: dict) -> None:
    direction = payload.get("direction")
    bases = payload.get("bases", [])
    steps = len(bases)
    for pair in payload["pairs"]:
        j_label, k = pair["alpha"], pair["base_index"]
        alpha = ctx.branch(j_label)
        position = next(
            i for i, e in enumerate(ctx.registry) if e.label == j_label
        )
        expected = position < k if direction == "increasing" else position >= k
        if pair["member"] != expected:
            ctx.report.fail(
                f"membership flag for ({j_label}, step {k}) contradicts the chain shape"
            )
            continue
        if pair["member"]:
            if direction == "increasing" and j_label not in bases[k]:
                ctx.report.fail(f"{j_label} missing from its generating base {k}")
            if direction == "decreasing" and j_label not in bases[k]:
                ctx.report.fail(f"{j_label} missing from its generating tail {k}")
        else:
            point = ctx.point(pair["point"])
            group = ctx.branches(pair["group"])
            if set(pair["group"]) != set(bases[k]) - {j_label}:
                ctx.report.fail(
                    f"separator group for ({j_label}, {k}) is not the stated base"
                )
            if not eval_setexpr(point, Diff(inter_atoms(group), Atom(alpha))):
                ctx.report.fail(
                    f"strictness point {pair['point']} fails for ({j_label}, step {k})"
                )


def _check_cover_set(ctx: _Context) -> None:
    payload = ctx.cert.payload
    gamma = ctx.cert.params["gamma"]
    depth = ctx.cert.params["depth"]
    base = ctx.branch_entries(payload["base"])
    cover = ctx.branch_entries(payload["cover"])
    _verify_cover(ctx, cover, base, depth, gamma)


def _verify_cover(
    ctx: _Context,
    cover: list[BranchIndex],
    base: list[BranchIndex],
    depth: int,
    gamma: int,
) -> None:
    for c in cover:
        if c.rank < gamma:
            ctx.report.fail(f"cover branch {c.label} has rank {c.rank} below {gamma}")
    for n in range(1, depth + 1):
        if not any(branch_member(b, n) for b in itertools.chain(base, cover)):
            ctx.report.fail(f"position {n} is not covered")


def _check_exception_list(ctx: _Context) -> None:
    payload = ctx.cert.payload
    trunc = ctx.need_trunc()
    zset = ctx.expr(payload["zset"])
    alpha = ctx.branch(payload["alpha"])
    hypothesis = ctx.branches(payload["hypothesis_group"])
    bad = _contained_on(
        inter_atoms(hypothesis), Union((zset, Atom(alpha))), trunc, ctx.ambient
    )
    if bad is not None:
        ctx.report.fail(f"hypothesis containment fails at {bad.literal()}")

    cover = ctx.branch_entries(payload["cover"])
    _verify_cover(ctx, cover, hypothesis, payload["separator"], 0)

    candidates = set(payload["candidates"])
    exceptions = set(payload["exceptions"])
    if not exceptions <= candidates:
        ctx.report.fail("exceptions stray outside the candidate set")
    member_labels = {m["beta"] for m in payload["members"]}
    expected_members = (
        {e.label for e in ctx.registry} - exceptions - {payload["alpha"]}
    )
    if member_labels != expected_members:
        ctx.report.fail("membership entries do not cover exactly the non-exceptions")
    for m in payload["members"]:
        beta = ctx.branch(m["beta"])
        through = ctx.branches(m["via_pairs"])
        lhs = Inter(tuple(Union((Atom(c), Atom(beta))) for c in through))
        rhs = Union((zset, Atom(beta)))
        bad = _contained_on(lhs, rhs, trunc, ctx.ambient)
        if bad is not None:
            ctx.report.fail(
                f"pair inclusion for {m['beta']} fails at {bad.literal()}"
            )


def _check_inclusion_chain(ctx: _Context) -> None:
    payload = ctx.cert.payload
    claim = payload.get("claim")
    if claim == "closure-containment-with-rank-floor":
        _check_closure_classes(ctx, require_cover=True)
    elif claim == "punctured-intersection-dense":
        _check_closure_classes(ctx, require_cover=False)
    elif claim == "absorption-failure":
        _check_absorption_failure(ctx)
    else:
        ctx.report.fail(f"unknown inclusion-chain claim {claim!r}")


def _check_closure_classes(ctx: _Context, *, require_cover: bool) -> None:
    payload = ctx.cert.payload
    trunc = ctx.need_trunc()
    kept = ctx.branch_entries(payload["kept"])
    subtracted = ctx.branch_entries(payload["subtracted"])
    cover = ctx.branch_entries(payload.get("cover", []))
    separators = payload["separators"]

    for label, l in separators.items():
        beta = ctx.branch(label)
        if not branch_member(beta, l):
            ctx.report.fail(f"separator {l} is not an element of {label}")
        if any(branch_member(b, l) for b in kept):
            ctx.report.fail(f"separator {l} for {label} collides with the kept set")

    if require_cover:
        gamma = ctx.cert.params["gamma"]
        _verify_cover(ctx, cover, kept, payload["depth"], gamma)

    shrunken = kept + cover
    listed = {frozenset(c["support"]) for c in payload["classes"]}
    for support in support_classes(trunc):
        in_lhs = not any(
            branch_member(b, p) for b in shrunken for p in support
        )
        if ctx.ambient == XI and class_point_count(support, trunc, XI) == 0:
            in_lhs = False
        if in_lhs != (support in listed):
            ctx.report.fail(
                f"class listing wrong at support {sorted(support)}"
            )

    for c in payload["classes"]:
        support = frozenset(c["support"])
        escapes = tuple(c["escapes"])
        term_support = support | set(escapes)
        inside = all(
            not any(branch_member(b, p) for p in term_support) for b in kept
        )
        escaped = all(
            any(branch_member(a, p) for p in term_support) for a in subtracted
        )
        if not (inside and escaped):
            ctx.report.fail(f"escape schema fails for support {sorted(support)}")
        if c["count"] != class_point_count(support, trunc, ctx.ambient):
            ctx.report.fail(f"point count wrong for support {sorted(support)}")
        if subtracted and bool(escapes) == bool(c["self_member"]):
            ctx.report.fail(
                f"self-membership flag inconsistent at {sorted(support)}"
            )
        # spot-check one concrete point per class with full evaluation
        target = Diff(inter_atoms(kept), union_atoms(subtracted))
        for p in class_points(support, trunc, ctx.ambient):
            if c["self_member"]:
                if not eval_setexpr(p, target):
                    ctx.report.fail(f"self-member point {p.literal()} not in target")
            else:
                seq = multi_escape_sequence(p, escapes, 3)
                if not all(eval_setexpr(t, target) for t in seq.terms()):
                    ctx.report.fail(f"witness terms fail at {p.literal()}")
            break


def _check_absorption_failure(ctx: _Context) -> None:
    payload = ctx.cert.payload
    trunc = ctx.need_trunc()
    af = payload["afailure"]
    zset = ctx.expr(af["zset"])
    constraining = ctx.branch_entries(af["constraining"])
    absorbing = ctx.branch_entries(af["absorbing"])
    _check_rank_shape(ctx, constraining, absorbing)
    lhs = Inter((zset, inter_atoms(constraining)))
    rhs = union_atoms(absorbing)
    bad = _contained_on(lhs, rhs, trunc, ctx.ambient)
    if bad is not None:
        ctx.report.fail(f"claimed absorption inclusion fails at {bad.literal()}")


def _check_rank_shape(
    ctx: _Context, constraining: list[BranchIndex], absorbing: list[BranchIndex]
) -> None:
    max_f = max((b.rank for b in constraining), default=-1)
    min_g = min((b.rank for b in absorbing), default=None)
    if min_g is not None and max_f >= min_g:
        ctx.report.fail("constraining ranks must stay below absorbing ranks")


def _check_contradiction(ctx: _Context) -> None:
    payload = ctx.cert.payload
    trunc = ctx.need_trunc()
    _check_refuter_inputs(ctx, trunc)
    af = payload["afailure"]
    zset = ctx.expr(af["zset"])
    constraining = ctx.branch_entries(af["constraining"])
    absorbing = ctx.branch_entries(af["absorbing"])
    point = ctx.point(payload["point"])
    if not validate_point(point):
        ctx.report.fail("contradiction point is invalid")
        return
    if not eval_setexpr(point, zset):
        ctx.report.fail("contradiction point misses the failing set")
    if not eval_setexpr(point, inter_atoms(constraining)):
        ctx.report.fail("contradiction point leaves the constraining intersection")
    if any(eval_setexpr(point, Atom(b)) for b in absorbing):
        ctx.report.fail("contradiction point still sits in an absorbing zero set")
    # the same inclusion must hold exhaustively within the truncation: the
    # certificate's force is exactly the clash between the two facts
    lhs = Inter((zset, inter_atoms(constraining)))
    bad = _contained_on(lhs, union_atoms(absorbing), trunc, ctx.ambient)
    if bad is not None:
        ctx.report.fail(
            f"claimed inclusion already fails on the truncation at {bad.literal()}"
        )


def _check_refuter_inputs(ctx: _Context, trunc: Truncation) -> None:
    """Shared obligations for refuter outputs: every claimed absorption failure
    verifies on the truncation and the rank floor clears every absorbing rank."""
    params = ctx.cert.params
    gamma = params.get("gamma")
    for af in params.get("afailures", []):
        zset = ctx.expr(af["zset"])
        constraining = ctx.branch_entries(af["constraining"])
        absorbing = ctx.branch_entries(af["absorbing"])
        _check_rank_shape(ctx, constraining, absorbing)
        if gamma is not None and absorbing and gamma <= max(b.rank for b in absorbing):
            ctx.report.fail("rank floor does not clear the absorbing ranks")
        lhs = Inter((zset, inter_atoms(constraining)))
        bad = _contained_on(lhs, union_atoms(absorbing), trunc, ctx.ambient)
        if bad is not None:
            ctx.report.fail(
                f"input absorption failure breaks at {bad.literal()} on the truncation"
            )


def _check_counterexample(ctx: _Context) -> None:
    payload = ctx.cert.payload
    point = ctx.point(payload["point"])
    if not validate_point(point):
        ctx.report.fail("counterexample point is invalid")
        return
    cover_texts = ctx.cert.params.get("cover", [])
    if not cover_texts:
        ctx.report.fail("no cover recorded to refute")
        return
    if ctx.trunc is not None:
        _check_refuter_inputs(ctx, ctx.trunc)
    for text in cover_texts:
        if eval_setexpr(point, ctx.expr(text)):
            ctx.report.fail(f"the point lies in cover set {text}")
