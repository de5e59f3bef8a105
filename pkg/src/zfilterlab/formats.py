"""Text formats shared by the CLI and the certificate files.

* branch literal: ``pre:period`` over {1,2}, e.g. ``12:2`` or ``:1``
* registry entry: ``label=pre:period@rank`` (label and rank optional)
* point literal: ``{2:3,5:7}`` with ``{}`` for the all-infinite point
* set expression: s-expressions, e.g. ``(diff (inter N:a N:b) (union N:c))``
  with ``W`` for the whole space, ``N:<ref>`` for a branch atom (label or
  branch literal), and ``(pt {1:2})`` for a singleton
"""

from __future__ import annotations

import re

from .branches import BranchError, BranchIndex, Registry
from .space import (
    Ambient,
    Atom,
    Diff,
    Inter,
    SetExpr,
    Singleton,
    Union,
    Whole,
    XI,
    XiPoint,
)


class FormatError(ValueError):
    """Raised when a literal or expression fails to parse."""


# ---------------------------------------------------------------------------
# Branch literals and registry specs
# ---------------------------------------------------------------------------

def parse_branch_literal(text: str, rank: int = 0, label: str = "") -> BranchIndex:
    """Parse ``pre:period`` into a branch."""
    if ":" not in text:
        raise FormatError(f"branch literal needs a colon: {text!r}")
    pre, _, period = text.partition(":")
    try:
        return BranchIndex(pre, period, rank, label)
    except BranchError as exc:
        raise FormatError(str(exc)) from exc


_ENTRY_RE = re.compile(
    r"^(?:(?P<label>[A-Za-z_][A-Za-z0-9_]*)=)?(?P<lit>[12]*:[12]+)(?:@(?P<rank>\d+))?$"
)


def parse_registry_entry(text: str, default_rank: int) -> BranchIndex:
    """Parse ``label=pre:period@rank`` with optional label and rank."""
    m = _ENTRY_RE.match(text.strip())
    if not m:
        raise FormatError(f"bad registry entry {text!r}; expected label=pre:period@rank")
    rank = int(m.group("rank")) if m.group("rank") else default_rank
    return parse_branch_literal(m.group("lit"), rank, m.group("label") or "")


def parse_registry(entries: list[str]) -> Registry:
    """Build a registry from entry strings; unranked entries get 0,1,2,..."""
    branches = []
    next_rank = 0
    for text in entries:
        b = parse_registry_entry(text, next_rank)
        next_rank = b.rank + 1
        branches.append(b)
    try:
        return Registry(branches)
    except BranchError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Point literals
# ---------------------------------------------------------------------------

def parse_point_literal(text: str, ambient: Ambient = XI) -> XiPoint:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise FormatError(f"point literal must be braced: {text!r}")
    inner = text[1:-1].strip()
    mapping: dict[int, int] = {}
    if inner:
        for item in inner.split(","):
            pos_s, _, val_s = item.partition(":")
            try:
                pos, val = int(pos_s), int(val_s)
            except ValueError as exc:
                raise FormatError(f"bad coordinate {item!r} in {text!r}") from exc
            if pos in mapping:
                raise FormatError(f"repeated position {pos} in {text!r}")
            mapping[pos] = val
    try:
        return XiPoint.of(mapping, ambient)
    except Exception as exc:
        raise FormatError(str(exc)) from exc


def point_literal(point: XiPoint) -> str:
    return point.literal()


# ---------------------------------------------------------------------------
# Set-expression s-expressions
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\(|\)|\{[^{}]*\}|[^\s()]+")


def _tokenize(text: str) -> list[str]:
    tokens = _TOKEN_RE.findall(text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise FormatError(f"cannot tokenize {text!r}")
    return tokens


def _resolve_atom(ref: str, registry: Registry | None) -> BranchIndex:
    if registry is not None:
        try:
            return registry.by_label(ref)
        except BranchError:
            pass
    if ":" in ref:
        branch = parse_branch_literal(ref)
        if registry is not None:
            for e in registry:
                if e == branch:
                    return e
        return branch
    raise FormatError(f"unknown branch reference {ref!r}")


def parse_setexpr(text: str, registry: Registry | None = None, ambient: Ambient = XI) -> SetExpr:
    tokens = _tokenize(text.strip())
    pos = 0

    def parse_one() -> SetExpr:
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise FormatError("dangling '('")
            head = tokens[pos]
            pos += 1
            if head == "pt":
                if pos >= len(tokens) or not tokens[pos].startswith("{"):
                    raise FormatError("(pt ...) needs a point literal")
                point = parse_point_literal(tokens[pos], ambient)
                pos += 1
                _expect_close()
                return Singleton(point)
            parts: list[SetExpr] = []
            while pos < len(tokens) and tokens[pos] != ")":
                parts.append(parse_one())
            _expect_close()
            if head == "union":
                return Union(tuple(parts))
            if head == "inter":
                return Inter(tuple(parts))
            if head == "diff":
                if len(parts) != 2:
                    raise FormatError("(diff ...) takes exactly two arguments")
                return Diff(parts[0], parts[1])
            raise FormatError(f"unknown operator {head!r}")
        if tok == ")":
            raise FormatError("unexpected ')'")
        if tok == "W":
            return Whole()
        if tok.startswith("N:"):
            return Atom(_resolve_atom(tok[2:], registry))
        raise FormatError(f"unknown token {tok!r}")

    def _expect_close() -> None:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != ")":
            raise FormatError("missing ')'")
        pos += 1

    expr = parse_one()
    if pos != len(tokens):
        raise FormatError(f"trailing tokens in {text!r}")
    return expr


def setexpr_text(expr: SetExpr) -> str:
    """Canonical s-expression text; atoms print their branch literal."""
    if isinstance(expr, Whole):
        return "W"
    if isinstance(expr, Atom):
        return f"N:{expr.branch.literal()}"
    if isinstance(expr, Singleton):
        return f"(pt {expr.point.literal()})"
    if isinstance(expr, Union):
        return "(union" + "".join(" " + setexpr_text(p) for p in expr.parts) + ")"
    if isinstance(expr, Inter):
        return "(inter" + "".join(" " + setexpr_text(p) for p in expr.parts) + ")"
    if isinstance(expr, Diff):
        return f"(diff {setexpr_text(expr.left)} {setexpr_text(expr.right)})"
    raise FormatError(f"unknown expression node {expr!r}")
