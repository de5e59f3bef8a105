"""Finitely generated zero-set filter bases with certified membership.

A filter base is a finite generator list; a set belongs to the generated
filter iff it contains the intersection of some finite generator subset.
Membership verdicts are three-valued: pure intersection forms are decided
exactly, everything else is settled by exhaustive evaluation on a truncated
sub-universe and stamped with the truncation used, and with no truncation at
hand the query stays unknown.  Refutations always carry a concrete point in
the intersection of all generators that misses the queried set, which rules
out every generator subset at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Sequence

from .branches import BranchIndex
from .space import (
    Atom,
    Diff,
    Inter,
    SetExpr,
    Truncation,
    Union,
    Whole,
    XiPoint,
    a_form_contained,
    a_form_witness,
    containment_counterexample,
    eval_setexpr,
    first_point_where,
    inter_of,
)


class FilterError(ValueError):
    """Raised for malformed bases or unsatisfied membership preconditions."""


@dataclass(frozen=True)
class FilterBase:
    """Finite generator list; the filter is all supersets of finite intersections."""

    generators: tuple[SetExpr, ...]
    ambient: str = "xi"

    def __post_init__(self) -> None:
        if not self.generators:
            raise FilterError("a filter base needs at least one generator (Whole is fine)")

    @classmethod
    def of(cls, generators: Iterable[SetExpr], ambient: str = "xi") -> "FilterBase":
        return cls(tuple(generators), ambient)

    @classmethod
    def trivial(cls, ambient: str = "xi") -> "FilterBase":
        return cls((Whole(),), ambient)

    def core(self) -> SetExpr:
        """Intersection of every generator: the smallest set in the filter."""
        return inter_of(self.generators)

    def is_proper(self, trunc: Truncation) -> bool:
        """Empirical properness: the core is nonempty on the truncation."""
        core = self.core()
        return (
            first_point_where(trunc, self.ambient, lambda p: eval_setexpr(p, core))
            is not None
        )


def pairwise_union_base(branches: Sequence[BranchIndex], ambient: str = "xi") -> FilterBase:
    """The base generated by all two-branch zero-set unions from the registry."""
    if len(branches) < 2:
        raise FilterError("need at least two branches for pairwise union generators")
    gens = [
        Union((Atom(a), Atom(b)))
        for a, b in itertools.combinations(sorted(branches, key=lambda x: x.rank), 2)
    ]
    return FilterBase.of(gens, ambient)


# ---------------------------------------------------------------------------
# Membership verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MemberVerdict:
    status: Literal["proven", "refuted", "unknown"]
    subset: tuple[int, ...] | None = None  # generator indices whose intersection works
    witness: XiPoint | None = None  # point in every generator but outside the query
    exact: bool = False
    truncation: Truncation | None = None

    @property
    def proven(self) -> bool:
        return self.status == "proven"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"


def _atoms_if_pure_intersection(expr: SetExpr) -> list[BranchIndex] | None:
    """Branch list when the expression is an intersection of atoms (or Whole)."""
    if isinstance(expr, Whole):
        return []
    if isinstance(expr, Atom):
        return [expr.branch]
    if isinstance(expr, Inter):
        out: list[BranchIndex] = []
        for part in expr.parts:
            sub = _atoms_if_pure_intersection(part)
            if sub is None:
                return None
            out.extend(sub)
        return out
    return None


def filter_member(
    base: FilterBase, zset: SetExpr, trunc: Truncation | None = None
) -> MemberVerdict:
    """Decide membership of ``zset`` in the filter generated by ``base``.

    Exact route: when the query and all generators are pure intersections of
    atoms, containment reduces to branch-set inclusion.  Truncated route: a
    point in the core outside the query refutes every subset at once;
    otherwise the smallest working generator subset is reported.
    """
    gens = base.generators
    gen_atoms = [_atoms_if_pure_intersection(g) for g in gens]
    z_atoms = _atoms_if_pure_intersection(zset)

    if z_atoms is not None and all(a is not None for a in gen_atoms):
        all_atoms = [a for sub in gen_atoms for a in sub]  # type: ignore[union-attr]
        if not a_form_contained(all_atoms, z_atoms):
            witness = a_form_witness(all_atoms, z_atoms)
            return MemberVerdict("refuted", witness=witness, exact=True)
        for size in range(0, len(gens) + 1):
            for combo in itertools.combinations(range(len(gens)), size):
                chosen = [a for i in combo for a in gen_atoms[i]]  # type: ignore[index]
                if a_form_contained(chosen, z_atoms):
                    return MemberVerdict("proven", subset=combo, exact=True)
        raise AssertionError("full subset must succeed when the whole family does")

    if trunc is None:
        return MemberVerdict("unknown")

    witness = containment_counterexample(base.core(), zset, trunc, base.ambient)
    if witness is not None:
        return MemberVerdict("refuted", witness=witness, truncation=trunc)
    for size in range(0, len(gens) + 1):
        for combo in itertools.combinations(range(len(gens)), size):
            lhs = inter_of(gens[i] for i in combo)
            if containment_counterexample(lhs, zset, trunc, base.ambient) is None:
                return MemberVerdict("proven", subset=combo, truncation=trunc)
    raise AssertionError("the full generator subset must succeed here")


def shifted_filter(base: FilterBase, alpha: BranchIndex) -> FilterBase:
    """The base whose members are the sets landing in ``base`` once the
    branch's zero set is glued on.

    Containing some intersection of the original generators after union with
    the zero set is the same as containing the intersection of the shaved
    generators, so shaving every generator realizes the shifted filter.
    """
    return FilterBase.of(
        (Diff(g, Atom(alpha)) for g in base.generators), base.ambient
    )


def pseudo_finite_exceptions(
    family: Sequence[FilterBase], zset: SetExpr, trunc: Truncation
) -> tuple[list[int], list[MemberVerdict]]:
    """Indices of family members whose filter misses ``zset``.

    The pseudo-finiteness shape: once the set belongs anywhere it should
    belong to all but finitely many members; this reports exactly the
    exceptional indices together with every per-index verdict.
    """
    verdicts = [filter_member(b, zset, trunc) for b in family]
    if not any(v.proven for v in verdicts):
        raise FilterError("the set belongs to no family member; nothing to except")
    exceptions = [i for i, v in enumerate(verdicts) if not v.proven]
    return exceptions, verdicts


@dataclass(frozen=True)
class CombineReport:
    combined: SetExpr
    per_base: dict[int, MemberVerdict]
    target_verdict: MemberVerdict


def combine_nonredundancy_witnesses(
    witnesses: Mapping[int, SetExpr],
    target: int,
    family: Sequence[FilterBase],
    trunc: Truncation,
) -> CombineReport:
    """Union the per-member witnesses into one set separating the target.

    Each witness lives in its own member filter, so the union does too by
    monotonicity (the same generator subset still works).  Against the target
    the union is refuted by a direct point check: a truncated point in the
    target's core avoiding every witness; if none shows up within the
    truncation the target verdict stays unknown.
    """
    if not witnesses:
        raise FilterError("no witnesses to combine")
    if target in witnesses:
        raise FilterError("the target index cannot carry a witness")
    for idx, w in witnesses.items():
        own = filter_member(family[idx], w, trunc)
        if not own.proven:
            raise FilterError(f"witness for index {idx} is not in its own filter")
        against = filter_member(family[target], w, trunc)
        if not against.refuted:
            raise FilterError(f"witness for index {idx} is not refuted at the target")

    ordered = [witnesses[i] for i in sorted(witnesses)]
    combined: SetExpr = ordered[0] if len(ordered) == 1 else Union(tuple(ordered))

    per_base: dict[int, MemberVerdict] = {}
    for i, base in enumerate(family):
        if i == target:
            continue
        per_base[i] = filter_member(base, combined, trunc)

    target_core = family[target].core()

    def refutes(p: XiPoint) -> bool:
        return eval_setexpr(p, target_core) and not any(
            eval_setexpr(p, w) for w in ordered
        )

    point = first_point_where(trunc, family[target].ambient, refutes)
    if point is None:
        target_verdict = MemberVerdict("unknown", truncation=trunc)
    else:
        target_verdict = MemberVerdict("refuted", witness=point, truncation=trunc)
    return CombineReport(combined, per_base, target_verdict)
