"""Almost-disjoint families of integer sets built from binary-tree branches.

A *branch* is an infinite word over the alphabet ``{1, 2}``, presented as an
eventually periodic pair (preperiod, period).  Finite nonempty words over the
same alphabet are identified with the positive integers through a fixed
length-monotone codec, and the element set of a branch is the set of codes of
its finite prefixes.  Two distinct branches share exactly the codes of their
common prefixes, so the element sets of distinct branches have finite
intersection while each is infinite: an almost-disjoint family at desk scale.

Everything here is exact integer combinatorics; no enumeration is truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

ALPHABET = ("1", "2")


class BranchError(ValueError):
    """Raised for malformed words, duplicate branches, or bad arguments."""


# ---------------------------------------------------------------------------
# Word codec
# ---------------------------------------------------------------------------

def encode_string(word: str) -> int:
    """Code of a nonempty word over {1,2}.

    A word of length ``n`` lands in ``[2**n - 1, 2**(n+1) - 2]``; the codec is
    a bijection onto the positive integers and strictly increases with word
    length.
    """
    if not word:
        raise BranchError("cannot encode the empty word")
    offset = 0
    for ch in word:
        if ch not in ALPHABET:
            raise BranchError(f"bad symbol {ch!r}; alphabet is {{1,2}}")
        offset = (offset << 1) | (ord(ch) - ord("1"))
    return (1 << len(word)) - 1 + offset


def decode_code(code: int) -> str:
    """Inverse of :func:`encode_string`."""
    if code < 1:
        raise BranchError(f"codes start at 1, got {code}")
    length = (code + 1).bit_length() - 1
    offset = code - ((1 << length) - 1)
    return "".join(ALPHABET[(offset >> (length - 1 - i)) & 1] for i in range(length))


# ---------------------------------------------------------------------------
# Branches
# ---------------------------------------------------------------------------

def _canonicalize(pre: str, period: str) -> tuple[str, str]:
    """Minimal preperiod and minimal period for an eventually periodic word."""
    for d in range(1, len(period) + 1):
        if len(period) % d == 0 and period == period[:d] * (len(period) // d):
            period = period[:d]
            break
    while pre and pre[-1] == period[-1]:
        pre = pre[:-1]
        period = period[-1] + period[:-1]
    return pre, period


def _check_word(word: str, what: str) -> None:
    for ch in word:
        if ch not in ALPHABET:
            raise BranchError(f"bad symbol {ch!r} in {what}; alphabet is {{1,2}}")


@dataclass(frozen=True, eq=False)
class BranchIndex:
    """An eventually periodic branch with an ordinal stand-in rank.

    Equality and hashing are by the expanded infinite word (canonical form);
    rank and label are bookkeeping for the finite registry that stands in for
    the transfinite index set.
    """

    pre: str
    period: str
    rank: int
    label: str = ""

    def __post_init__(self) -> None:
        if not self.period:
            raise BranchError("period must be nonempty")
        _check_word(self.pre, "preperiod")
        _check_word(self.period, "period")
        if self.rank < 0:
            raise BranchError("rank must be a nonnegative integer")
        pre, period = _canonicalize(self.pre, self.period)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "period", period)
        if not self.label:
            object.__setattr__(self, "label", f"b{self.rank}")

    # word access -----------------------------------------------------------

    def symbol(self, i: int) -> str:
        """Symbol at 1-based position ``i`` of the expanded word."""
        if i < 1:
            raise BranchError("positions are 1-based")
        if i <= len(self.pre):
            return self.pre[i - 1]
        return self.period[(i - len(self.pre) - 1) % len(self.period)]

    def prefix(self, n: int) -> str:
        """First ``n`` symbols of the expanded word."""
        if n <= len(self.pre):
            return self.pre[:n]
        reps = (n - len(self.pre)) // len(self.period) + 1
        return (self.pre + self.period * reps)[:n]

    def literal(self) -> str:
        """Canonical ``pre:period`` text form."""
        return f"{self.pre}:{self.period}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BranchIndex):
            return NotImplemented
        return self.pre == other.pre and self.period == other.period

    def __hash__(self) -> int:
        return hash((self.pre, self.period))

    def __repr__(self) -> str:
        return f"BranchIndex({self.literal()!r}, rank={self.rank}, label={self.label!r})"

    # element set -----------------------------------------------------------

    def element(self, n: int) -> int:
        """The ``n``-th element of the branch's set: the code of its length-``n`` prefix."""
        return encode_string(self.prefix(n))

    def elements(self, count: int) -> list[int]:
        """First ``count`` elements, strictly increasing."""
        if count < 0:
            raise BranchError("count must be nonnegative")
        return [self.element(n) for n in range(1, count + 1)]

    def elements_upto(self, bound: int) -> list[int]:
        """All elements that are <= ``bound``.

        The length-``n`` prefix has code >= 2**n - 1, so only prefixes up to
        length ``bound.bit_length()`` can qualify.
        """
        out = []
        for n in range(1, max(bound, 1).bit_length() + 1):
            c = self.element(n)
            if c <= bound:
                out.append(c)
        return out

    def lcp(self, other: "BranchIndex") -> int:
        """Length of the longest common prefix; raises if the words are equal."""
        bound = max(len(self.pre), len(other.pre)) + _lcm(len(self.period), len(other.period))
        for i in range(1, bound + 1):
            if self.symbol(i) != other.symbol(i):
                return i - 1
        raise BranchError("branches are equal as infinite words")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def branch_member(alpha: BranchIndex, n: int) -> bool:
    """Whether code ``n`` belongs to the branch's element set."""
    word = decode_code(n)
    return alpha.prefix(len(word)) == word


def branch_elements(alpha: BranchIndex, count: int) -> list[int]:
    return alpha.elements(count)


def intersection_exact(alpha: BranchIndex, beta: BranchIndex) -> set[int]:
    """Exact intersection of two distinct branches' element sets.

    The shared elements are precisely the codes of the common prefixes, so
    the intersection has exactly ``lcp`` elements.
    """
    if alpha == beta:
        raise BranchError("branches coincide; the intersection is infinite")
    d = alpha.lcp(beta)
    return {alpha.element(n) for n in range(1, d + 1)}


def find_separator(alpha: BranchIndex, group: Iterable[BranchIndex]) -> int:
    """Least element of ``alpha``'s set avoiding every branch of ``group``.

    A length-``m`` prefix of ``alpha`` lies in another branch's set iff ``m``
    is at most their common-prefix length, so the answer is the prefix one
    symbol past the deepest agreement.
    """
    group = list(group)
    if any(beta == alpha for beta in group):
        raise BranchError("separator target must not belong to the excluded group")
    depth = max((alpha.lcp(beta) for beta in group), default=0)
    return alpha.element(depth + 1)


def density_count(n: int, depth: int) -> int:
    """Number of depth-``depth`` words extending the word coded by ``n``."""
    word = decode_code(n)
    if depth < len(word):
        raise BranchError(f"depth {depth} is below the word length {len(word)}")
    return 1 << (depth - len(word))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

@dataclass
class Registry:
    """Finite ordered stand-in for the transfinite branch index set.

    Entries keep strictly increasing ranks and pairwise distinct expanded
    words.  Fresh branches can always be minted through any requested word,
    which is the finite shadow of the fact that continuum-many branches pass
    through every tree node.
    """

    entries: list[BranchIndex] = field(default_factory=list)

    def __post_init__(self) -> None:
        seen_words: set[BranchIndex] = set()
        seen_labels: set[str] = set()
        prev_rank = -1
        for e in self.entries:
            if e.rank <= prev_rank:
                raise BranchError("registry ranks must be strictly increasing")
            if e in seen_words:
                raise BranchError(f"duplicate branch word {e.literal()}")
            if e.label in seen_labels:
                raise BranchError(f"duplicate label {e.label!r}")
            prev_rank = e.rank
            seen_words.add(e)
            seen_labels.add(e.label)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, branch: BranchIndex) -> bool:
        return any(e == branch for e in self.entries)

    def max_rank(self) -> int:
        return self.entries[-1].rank if self.entries else -1

    def by_label(self, label: str) -> BranchIndex:
        for e in self.entries:
            if e.label == label:
                return e
        raise BranchError(f"no branch labelled {label!r}")

    def add(self, branch: BranchIndex) -> BranchIndex:
        if branch.rank <= self.max_rank():
            raise BranchError("new entries must carry a rank above all existing ranks")
        if branch in self:
            raise BranchError(f"branch word {branch.literal()} already registered")
        if any(e.label == branch.label for e in self.entries):
            raise BranchError(f"label {branch.label!r} already registered")
        self.entries.append(branch)
        return branch

    def mint_through(self, word: str, min_rank: int) -> BranchIndex:
        """Register a fresh branch extending ``word`` with rank >= ``min_rank``.

        Candidate continuations are tried in a fixed order (all-1 tail, all-2
        tail, then 2...21-tails of growing length) until one differs from
        every registered word, so minting is deterministic.
        """
        _check_word(word, "word")
        if not word:
            raise BranchError("cannot mint a branch through the empty word")
        rank = max(min_rank, self.max_rank() + 1)
        candidates = itertools.chain(
            [(word, "1"), (word, "2")],
            ((word + "2" * j, "1") for j in itertools.count(1)),
        )
        for pre, period in candidates:
            branch = BranchIndex(pre, period, rank)
            if branch not in self:
                return self.add(branch)
        raise AssertionError("unreachable: infinitely many candidates")

    def to_payload(self) -> list[dict]:
        return [
            {"label": e.label, "branch": e.literal(), "rank": e.rank}
            for e in self.entries
        ]


def find_cover(
    l: int,
    gamma: int,
    registry: Registry,
    base: Iterable[BranchIndex] = (),
) -> list[BranchIndex]:
    """Finite branch set of rank >= ``gamma`` covering ``{1..l}`` jointly with ``base``.

    Every integer up to ``l`` is the code of some word, and some branch through
    that word either already exists at an admissible rank or can be minted, so
    the cover always succeeds.  Scanning ``n`` upward and reusing branches
    already chosen keeps the result deterministic.
    """
    if l < 1:
        raise BranchError("cover bound must be >= 1")
    base = list(base)
    cover: list[BranchIndex] = []

    def covered(n: int) -> bool:
        return any(branch_member(b, n) for b in itertools.chain(base, cover))

    for n in range(1, l + 1):
        if covered(n):
            continue
        word = decode_code(n)
        reusable = [
            e
            for e in registry
            if e.rank >= gamma
            and e.prefix(len(word)) == word
            and all(e != b for b in base)
            and all(e != c for c in cover)
        ]
        if reusable:
            cover.append(min(reusable, key=lambda e: e.rank))
        else:
            cover.append(registry.mint_through(word, gamma))
    return cover


def make_registry(specs: Sequence[tuple[str, str] | tuple[str, str, int] | tuple[str, str, int, str]]) -> Registry:
    """Build a registry from (pre, period[, rank[, label]]) tuples; ranks default to 0,1,2,..."""
    entries = []
    for i, spec in enumerate(specs):
        pre, period = spec[0], spec[1]
        rank = spec[2] if len(spec) > 2 else i
        label = spec[3] if len(spec) > 3 else ""
        entries.append(BranchIndex(pre, period, rank, label))
    return Registry(entries)
