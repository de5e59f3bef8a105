"""Points and zero-set algebra over the compact sequence space and the full product.

Points live in the product of one-point-compactified copies of the positive
integers.  A point is stored by its finite support (position -> finite value);
coordinates off the support are the point at infinity.  Two ambients share the
representation:

* ``xi`` - the compact prototype subspace: a point is valid iff some level
  ``k`` bounds its support while every finite value is at least ``k``; with
  finite support this reduces to every value being at least the largest
  support position.
* ``pi`` - the full product, where any finite-support point is valid.  The
  finite-support points are dense in the full product, which is all the
  closure machinery needs.

Each branch ``alpha`` determines the zero set of points whose coordinates at
the branch's element positions are all infinite.  `SetExpr` is a small symbolic
algebra over these atoms plus singletons, with exhaustive evaluation on
truncated sub-universes as the ground-truth oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Sequence

from .branches import BranchIndex, branch_member, find_separator

Ambient = Literal["xi", "pi"]

XI: Ambient = "xi"
PI: Ambient = "pi"


class SpaceError(ValueError):
    """Raised for invalid points, bad ambients, or malformed expressions."""


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XiPoint:
    """Finite-support point: sorted ``(position, value)`` pairs, rest infinite."""

    support: tuple[tuple[int, int], ...]
    ambient: Ambient = XI

    def __post_init__(self) -> None:
        pairs = tuple(sorted(self.support))
        positions = [p for p, _ in pairs]
        if len(set(positions)) != len(positions):
            raise SpaceError("duplicate support positions")
        if any(p < 1 or v < 1 for p, v in pairs):
            raise SpaceError("positions and finite values are >= 1")
        if self.ambient not in (XI, PI):
            raise SpaceError(f"unknown ambient {self.ambient!r}")
        object.__setattr__(self, "support", pairs)

    @classmethod
    def of(cls, mapping: dict[int, int] | None = None, ambient: Ambient = XI) -> "XiPoint":
        return cls(tuple(sorted((mapping or {}).items())), ambient)

    def positions(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.support)

    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.support)

    def max_position(self) -> int:
        return self.support[-1][0] if self.support else 0

    def coordinate(self, position: int) -> int | None:
        """Finite value at ``position``, or None for the infinite coordinate."""
        for p, v in self.support:
            if p == position:
                return v
        return None

    def with_coordinate(self, position: int, value: int) -> "XiPoint":
        if self.coordinate(position) is not None:
            raise SpaceError(f"position {position} already in the support")
        return XiPoint(self.support + ((position, value),), self.ambient)

    def literal(self) -> str:
        inner = ",".join(f"{p}:{v}" for p, v in self.support)
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"XiPoint({self.literal()}, {self.ambient})"


def validate_point(point: XiPoint) -> bool:
    """Ambient validity: in ``xi`` every finite value bounds the support width."""
    if point.ambient == PI:
        return True
    m = point.max_position()
    return all(v >= m for _, v in point.support)


def _require_valid(point: XiPoint) -> None:
    if not validate_point(point):
        raise SpaceError(f"invalid {point.ambient} point {point.literal()}")


def in_zero_set(point: XiPoint, alpha: BranchIndex) -> bool:
    """Whether the point's support avoids the branch's element set."""
    _require_valid(point)
    return not any(branch_member(alpha, p) for p in point.positions())


# ---------------------------------------------------------------------------
# Symbolic set expressions
# ---------------------------------------------------------------------------

class SetExpr:
    """Base class; subclasses form a finite expression tree."""

    def atoms(self) -> tuple[BranchIndex, ...]:
        return ()

    def children(self) -> tuple["SetExpr", ...]:
        return ()

    def is_difference_free(self) -> bool:
        return all(c.is_difference_free() for c in self.children())

    def singleton_points(self) -> tuple[XiPoint, ...]:
        out: list[XiPoint] = []
        for c in self.children():
            out.extend(c.singleton_points())
        return tuple(out)


@dataclass(frozen=True)
class Whole(SetExpr):
    def __repr__(self) -> str:
        return "Whole()"


@dataclass(frozen=True)
class Atom(SetExpr):
    branch: BranchIndex

    def atoms(self) -> tuple[BranchIndex, ...]:
        return (self.branch,)

    def __repr__(self) -> str:
        return f"Atom({self.branch.literal()})"


@dataclass(frozen=True)
class Singleton(SetExpr):
    point: XiPoint

    def singleton_points(self) -> tuple[XiPoint, ...]:
        return (self.point,)

    def __repr__(self) -> str:
        return f"Singleton({self.point.literal()})"


@dataclass(frozen=True)
class Union(SetExpr):
    parts: tuple[SetExpr, ...]

    def atoms(self) -> tuple[BranchIndex, ...]:
        return tuple(a for p in self.parts for a in p.atoms())

    def children(self) -> tuple[SetExpr, ...]:
        return self.parts


@dataclass(frozen=True)
class Inter(SetExpr):
    parts: tuple[SetExpr, ...]

    def atoms(self) -> tuple[BranchIndex, ...]:
        return tuple(a for p in self.parts for a in p.atoms())

    def children(self) -> tuple[SetExpr, ...]:
        return self.parts


@dataclass(frozen=True)
class Diff(SetExpr):
    left: SetExpr
    right: SetExpr

    def atoms(self) -> tuple[BranchIndex, ...]:
        return self.left.atoms() + self.right.atoms()

    def children(self) -> tuple[SetExpr, ...]:
        return (self.left, self.right)

    def is_difference_free(self) -> bool:
        return False


def union_of(exprs: Iterable[SetExpr]) -> Union:
    return Union(tuple(exprs))


def inter_of(exprs: Iterable[SetExpr]) -> Inter:
    return Inter(tuple(exprs))


def inter_atoms(branches: Iterable[BranchIndex]) -> SetExpr:
    """Intersection of the branches' zero sets; empty input means the whole space."""
    parts = tuple(Atom(b) for b in branches)
    return Inter(parts) if parts else Whole()


def union_atoms(branches: Iterable[BranchIndex]) -> SetExpr:
    """Union of the branches' zero sets; empty input means the empty set."""
    return Union(tuple(Atom(b) for b in branches))


def empty_expr() -> SetExpr:
    return Union(())


def eval_setexpr(point: XiPoint, expr: SetExpr) -> bool:
    """Structural evaluation of membership; atoms defer to the branch oracle."""
    _require_valid(point)
    return _eval(point, expr)


def _eval(point: XiPoint, expr: SetExpr) -> bool:
    if isinstance(expr, Whole):
        return True
    if isinstance(expr, Atom):
        return not any(branch_member(expr.branch, p) for p in point.positions())
    if isinstance(expr, Singleton):
        return point.support == expr.point.support
    if isinstance(expr, Union):
        return any(_eval(point, p) for p in expr.parts)
    if isinstance(expr, Inter):
        return all(_eval(point, p) for p in expr.parts)
    if isinstance(expr, Diff):
        return _eval(point, expr.left) and not _eval(point, expr.right)
    raise SpaceError(f"unknown expression node {expr!r}")


def eval_on_support(support: frozenset[int], expr: SetExpr) -> bool | None:
    """Tri-valued evaluation from the support alone.

    Atom membership depends only on which positions carry finite values, so
    whole support classes can be decided at once; ``None`` means the verdict
    depends on the values (a nonempty singleton comparison).
    """
    if isinstance(expr, Whole):
        return True
    if isinstance(expr, Atom):
        return not any(branch_member(expr.branch, p) for p in support)
    if isinstance(expr, Singleton):
        target = frozenset(expr.point.positions())
        if support != target:
            return False
        return True if not support else None
    if isinstance(expr, Union):
        verdicts = [eval_on_support(support, p) for p in expr.parts]
        if any(v is True for v in verdicts):
            return True
        return False if all(v is False for v in verdicts) else None
    if isinstance(expr, Inter):
        verdicts = [eval_on_support(support, p) for p in expr.parts]
        if any(v is False for v in verdicts):
            return False
        return True if all(v is True for v in verdicts) else None
    if isinstance(expr, Diff):
        left = eval_on_support(support, expr.left)
        right = eval_on_support(support, expr.right)
        if left is False or right is True:
            return False
        if left is True and right is False:
            return True
        return None
    raise SpaceError(f"unknown expression node {expr!r}")


# ---------------------------------------------------------------------------
# Truncated enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Truncation:
    """Finite sub-universe: support positions <= T, finite values <= V."""

    T: int
    V: int

    def __post_init__(self) -> None:
        if self.T < 0 or self.V < 0:
            raise SpaceError("truncation bounds must be nonnegative")

    def to_payload(self) -> dict:
        return {"T": self.T, "V": self.V}


def _value_range(ambient: Ambient, max_pos: int, v: int) -> range:
    lo = max_pos if ambient == XI else 1
    return range(lo, v + 1)


def class_point_count(support: frozenset[int], trunc: Truncation, ambient: Ambient) -> int:
    """How many truncated points carry exactly this support."""
    if not support:
        return 1
    if max(support) > trunc.T:
        return 0
    choices = len(_value_range(ambient, max(support), trunc.V))
    return choices ** len(support)


def support_classes(trunc: Truncation) -> Iterator[frozenset[int]]:
    """All support sets within the truncation, smallest first, then lexicographic."""
    positions = range(1, trunc.T + 1)
    for size in range(0, trunc.T + 1):
        for combo in itertools.combinations(positions, size):
            yield frozenset(combo)


def class_points(
    support: frozenset[int], trunc: Truncation, ambient: Ambient
) -> Iterator[XiPoint]:
    """Truncated points with exactly this support, in deterministic value order."""
    if not support:
        yield XiPoint.of({}, ambient)
        return
    pos = sorted(support)
    if pos[-1] > trunc.T:
        return
    values = _value_range(ambient, pos[-1], trunc.V)
    for combo in itertools.product(values, repeat=len(pos)):
        yield XiPoint(tuple(zip(pos, combo)), ambient)


def enumerate_truncated(trunc: Truncation, ambient: Ambient = XI) -> list[XiPoint]:
    """All valid truncated points, ordered by (support size, positions, values)."""
    out: list[XiPoint] = []
    for support in support_classes(trunc):
        out.extend(class_points(support, trunc, ambient))
    return out


def first_point_where(
    trunc: Truncation,
    ambient: Ambient,
    predicate,
) -> XiPoint | None:
    """First truncated point (in enumeration order) satisfying the predicate."""
    for support in support_classes(trunc):
        for p in class_points(support, trunc, ambient):
            if predicate(p):
                return p
    return None


def containment_counterexample(
    lhs: SetExpr, rhs: SetExpr, trunc: Truncation, ambient: Ambient
) -> XiPoint | None:
    """First truncated point in ``lhs`` outside ``rhs``; None when contained.

    Whole support classes are settled at once when both sides are
    support-determined there; value-sensitive classes fall back to points.
    """
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
# Approximating sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproxSequence:
    """Coordinatewise approximation of a base point from inside a set.

    Terms agree with the base everywhere except at the varied positions, where
    term ``r`` carries the finite value ``start + r``.  As ``r`` grows the
    varied coordinates run off to infinity, so the terms converge to the base.
    The usual case varies a single position; escaping several zero sets at
    once needs one varied position per set, hence the tuple.
    """

    base: XiPoint
    varied: tuple[int, ...]
    start: int
    count: int

    def __post_init__(self) -> None:
        if not self.varied:
            raise SpaceError("at least one varied position is required")
        if len(set(self.varied)) != len(self.varied):
            raise SpaceError("varied positions must be distinct")
        if any(self.base.coordinate(p) is not None for p in self.varied):
            raise SpaceError("varied positions must be off the base support")
        if self.count < 1:
            raise SpaceError("a sequence needs at least one term")

    def term(self, r: int) -> XiPoint:
        if not 1 <= r <= self.count:
            raise SpaceError(f"term index {r} out of range 1..{self.count}")
        extra = tuple((p, self.start + r) for p in self.varied)
        return XiPoint(self.base.support + extra, self.base.ambient)

    def terms(self) -> list[XiPoint]:
        return [self.term(r) for r in range(1, self.count + 1)]

    def to_payload(self) -> dict:
        return {
            "base": self.base.literal(),
            "varied": sorted(self.varied),
            "start": self.start,
            "count": self.count,
        }


def sequence_start(base: XiPoint, varied: Sequence[int]) -> int:
    """Value offset making every term valid: at least every varied position,
    every support position, and every finite value of the base."""
    candidates = [*varied, *base.positions(), *base.values()]
    return max(candidates) if candidates else 1


def approx_sequence(point: XiPoint, position: int, count: int) -> ApproxSequence:
    """Single-position approximation of ``point`` varying ``position``."""
    _require_valid(point)
    if point.coordinate(position) is not None:
        raise SpaceError(f"position {position} lies in the support")
    if not escape_terms_valid(point, [position]):
        raise SpaceError(
            f"no level admits varying position {position} on {point.literal()}"
        )
    return ApproxSequence(point, (position,), sequence_start(point, [position]), count)


def escape_terms_valid(point: XiPoint, positions: Sequence[int]) -> bool:
    """Whether varying these positions keeps every term ambient-valid.

    The varied coordinates get values above everything in sight, so only the
    base's existing finite values can fall below the widened support.
    """
    if point.ambient == PI:
        return True
    new_max = max([point.max_position(), *positions])
    return all(v >= new_max for v in point.values())


def multi_escape_sequence(
    point: XiPoint, positions: Sequence[int], count: int
) -> ApproxSequence:
    """Approximation varying several positions at once (one per set to escape)."""
    _require_valid(point)
    if not escape_terms_valid(point, positions):
        raise SpaceError(
            f"varying {sorted(positions)} on {point.literal()} leaves the space"
        )
    return ApproxSequence(point, tuple(positions), sequence_start(point, positions), count)


# ---------------------------------------------------------------------------
# Closure membership (three-valued)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureVerdict:
    """Outcome of a bounded closure-membership check.

    ``proven`` carries a witness: the point itself when it satisfies the
    expression, else an approximating sequence all of whose listed terms do.
    ``refuted`` carries a finite neighborhood description (the fixed support
    coordinates) on which the expression was exhaustively empty within the
    truncation.  Anything else is unknown: the search is sound, not complete.
    """

    status: Literal["proven", "refuted", "unknown"]
    witness: ApproxSequence | XiPoint | None = None
    neighborhood: tuple[tuple[int, int], ...] | None = None
    truncation: Truncation | None = None


def closure_member(
    point: XiPoint,
    expr: SetExpr,
    trunc: Truncation,
    *,
    max_varied: int = 2,
    terms: int = 3,
    position_limit: int | None = None,
) -> ClosureVerdict:
    """Decide membership of ``point`` in the closure of ``expr``, boundedly.

    The proof search follows the one witness schema the constructions ever
    need: push finitely many off-support coordinates to large finite values
    and check that every term lands inside the set.  The refutation search
    fixes the point's support and exhaustively empties the expression on the
    truncated neighborhood.
    """
    _require_valid(point)
    if eval_setexpr(point, expr):
        return ClosureVerdict("proven", witness=point)

    limit = position_limit if position_limit is not None else max(trunc.T, 64)
    free = [p for p in range(1, limit + 1) if point.coordinate(p) is None]
    for size in range(1, max_varied + 1):
        for combo in itertools.combinations(free, size):
            if not escape_terms_valid(point, combo):
                continue
            seq = multi_escape_sequence(point, combo, terms)
            if all(eval_setexpr(t, expr) for t in seq.terms()):
                return ClosureVerdict("proven", witness=seq)

    fixed = point.support
    for q in enumerate_truncated(trunc, point.ambient):
        if all(q.coordinate(p) == v for p, v in fixed):
            if eval_setexpr(q, expr):
                return ClosureVerdict("unknown", truncation=trunc)
    return ClosureVerdict("refuted", neighborhood=fixed, truncation=trunc)


# ---------------------------------------------------------------------------
# Exact containment for pure intersection forms
# ---------------------------------------------------------------------------

def a_form_contained(
    u_generators: Iterable[BranchIndex], v_generators: Iterable[BranchIndex]
) -> bool:
    """Exact: is the intersection over ``u_generators`` inside the one over ``v_generators``?

    Intersections of branch zero sets are the sets of points whose support
    avoids the union of the branches' element sets, so containment holds iff
    every generator on the right already occurs on the left (after word
    canonicalization); a missing branch yields a one-coordinate witness point
    through its separator element.
    """
    u = set(u_generators)
    return set(v_generators) <= u


def a_form_witness(
    u_generators: Iterable[BranchIndex], v_generators: Iterable[BranchIndex]
) -> XiPoint | None:
    """A point inside the U-intersection but outside the V-intersection, if any."""
    u = list(u_generators)
    missing = [b for b in set(v_generators) if all(b != x for x in u)]
    if not missing:
        return None
    beta = min(missing, key=lambda b: b.rank)
    l = find_separator(beta, u)
    return XiPoint.of({l: l})
