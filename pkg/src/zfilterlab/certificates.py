"""Machine-checkable certificates with canonical serialization.

A certificate is a kind tag, the run parameters (registry, truncation,
ambient, command-specific knobs), a kind-specific payload, and an ordered step
list.  Serialization is canonical (sorted keys, fixed separators, no floats),
and a digest over the canonical body makes any byte-level tamper detectable
before semantic re-verification even starts.  The ``verified`` flag is only
ever set by the independent checker, never by a producer.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1

KINDS = (
    "SeparatorWitness",
    "CoverSet",
    "ExceptionList",
    "InclusionChain",
    "Contradiction",
    "CounterexamplePoint",
)


class CertificateError(ValueError):
    """Raised for malformed, unparseable, or tampered certificate data."""


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _body(kind: str, params: dict, payload: dict, steps: list) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "params": params,
        "payload": payload,
        "steps": steps,
    }


def body_digest(kind: str, params: dict, payload: dict, steps: list) -> str:
    blob = canonical_json(_body(kind, params, payload, steps)).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass
class Certificate:
    kind: str
    params: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)
    verified: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise CertificateError(f"unknown certificate kind {self.kind!r}")

    def digest(self) -> str:
        return body_digest(self.kind, self.params, self.payload, self.steps)

    def to_json(self) -> str:
        doc = _body(self.kind, self.params, self.payload, self.steps)
        doc["digest"] = self.digest()
        return canonical_json(doc)

    @classmethod
    def from_json(cls, text: str | bytes) -> "Certificate":
        try:
            doc = json.loads(text)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise CertificateError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise CertificateError("certificate document must be a JSON object")
        for key in ("schema", "kind", "params", "payload", "steps", "digest"):
            if key not in doc:
                raise CertificateError(f"missing field {key!r}")
        if doc["schema"] != SCHEMA_VERSION:
            raise CertificateError(f"unsupported schema version {doc['schema']!r}")
        cert = cls(doc["kind"], doc["params"], doc["payload"], doc["steps"])
        if cert.digest() != doc["digest"]:
            raise CertificateError("digest mismatch: certificate was altered")
        return cert

    def write(self, path: str) -> None:
        """Atomic write: temp file in the same directory, then rename."""
        directory = os.path.dirname(os.path.abspath(path)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.to_json())
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def read(cls, path: str) -> "Certificate":
        with open(path, "rb") as fh:
            return cls.from_json(fh.read())
