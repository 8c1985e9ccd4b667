"""Stored certificates and their re-verification.

A stored document records every parameter needed to rebuild it. Re-verifying
means recomputing the document from those parameters and comparing the
canonical forms for equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .arith import Effort, primes_up_to
from .construction import ConstructionParams, certify_monogenic
from .newton import NonMonogenicityReport, certify_non_monogenic
from .render import ascii_polygon, canonicalize

KINDS = ("monogenicity-certificate", "non-monogenicity-report")


class UnknownDocumentError(ValueError):
    pass


@dataclass(frozen=True)
class Reverification:
    path: str | None
    kind: str
    matches: bool
    differing_keys: tuple[str, ...]
    verdict: str

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "kind": self.kind,
            "matches": self.matches,
            "differing_keys": list(self.differing_keys),
            "verdict": self.verdict,
        }


def recompute(document: dict) -> dict:
    kind = document.get("kind")
    if kind == "monogenicity-certificate":
        effort = Effort(
            int(document["effort"]["trial_bound"]), int(document["effort"]["rho_iterations"])
        )
        params = ConstructionParams.from_json(document["params"])
        return certify_monogenic(params, effort).to_json()
    if kind == "non-monogenicity-report":
        witnesses = primes_up_to(int(document["witness_prime_bound"]))
        return non_monogenic_document(
            certify_non_monogenic(int(document["p"]), int(document["s"]), witnesses)
        )
    raise UnknownDocumentError(f"unknown document kind {kind!r}")


def non_monogenic_document(report: NonMonogenicityReport) -> dict:
    """Report JSON plus the ASCII plot of the single phi = x polygon."""
    out = report.to_json()
    if len(report.ore.factor_data) == 1:
        out["ascii"] = ascii_polygon(report.ore.factor_data[0].polygon)
    return out


def reverify(document: dict, path: str | None = None) -> Reverification:
    stored = canonicalize(document)
    fresh = canonicalize(recompute(document))
    keys = sorted(set(stored) | set(fresh))
    differing = tuple(k for k in keys if stored.get(k) != fresh.get(k))
    return Reverification(path, document["kind"], not differing, differing, fresh["verdict"])


def load_document(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


def corpus_files(root: str | Path) -> list[Path]:
    return sorted(Path(root).glob("*.json"))
