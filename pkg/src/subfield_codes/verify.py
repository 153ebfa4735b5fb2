"""Check a :class:`Prediction` against an enumerated code."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bounds import classify
from .defining_sets import DefiningSet, Prediction
from .engine import CodeSummary
from .structure import StructuralReport, structural_report

CONFIRMED = "confirmed"
REFUTED = "refuted"
UNCONFIRMED = "unconfirmed"


class ProvenanceMismatch(ValueError):
    pass


@dataclass
class Check:
    name: str
    status: str
    expected: object = None
    observed: object = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status,
               "expected": self.expected, "observed": self.observed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    structure: Optional[StructuralReport] = None

    @property
    def passed(self) -> bool:
        return not any(c.status == REFUTED for c in self.checks)

    def refuted(self) -> list:
        return [c for c in self.checks if c.status == REFUTED]

    def get(self, name) -> Optional[Check]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _status(ok) -> str:
    if ok is None:
        return UNCONFIRMED
    return CONFIRMED if ok else REFUTED


def _weight_diff(expected: dict, observed: dict) -> dict:
    "weight -> [expected, observed] for every weight where they differ"
    out = {}
    for w in sorted(set(expected) | set(observed)):
        a, b = expected.get(w, 0), observed.get(w, 0)
        if a != b:
            out[str(w)] = [a, b]
    return out


def verify_prediction(summary: CodeSummary, pred: Prediction,
                      dset: Optional[DefiningSet] = None,
                      structural: Optional[StructuralReport] = None) -> VerificationReport:
    """Confirm or refute every claim in ``pred``.

    Parameters and full distributions are compared exactly; value-only
    predictions by containment.  Optimality claims go through the Griesmer
    classifier; claims it cannot decide stay unconfirmed.  Structural claims
    need ``dset`` (or a precomputed ``structural`` report).
    """
    if summary.provenance and pred.provenance and summary.provenance != pred.provenance:
        raise ProvenanceMismatch("summary and prediction describe different constructions")
    rep = VerificationReport()
    add = rep.checks.append
    for name, exp, obs in (("n", pred.n, summary.n), ("k", pred.k, summary.dim),
                           ("d", pred.d, summary.d)):
        add(Check(name, _status(exp == obs), exp, obs))

    if pred.full:
        diff = _weight_diff(pred.weights, summary.wd)
        add(Check("weights", _status(not diff), pred.enumerator(), summary.enumerator(),
                  note=("mismatch at weights " + ", ".join(diff)) if diff else ""))
    if pred.weight_values is not None:
        extra = sorted(set(summary.wd) - set(pred.weight_values))
        add(Check("weight_values", _status(not extra), sorted(pred.weight_values),
                  sorted(summary.wd),
                  note=("unexpected weights %s" % extra) if extra else ""))

    verdict = classify(summary.n, summary.dim, summary.d, summary.q)
    for name, claim in sorted(pred.optimality.items()):
        got = getattr(verdict, name)
        if got is None:
            add(Check(name, UNCONFIRMED, claim, None,
                      note="not decidable from the Griesmer bound"))
        else:
            add(Check(name, _status(got == claim), claim, got, note=verdict.reason))

    if pred.structure:
        if structural is None and dset is not None:
            structural = structural_report(dset, summary)
        rep.structure = structural
        for name, claim in sorted(pred.structure.items()):
            if structural is None:
                add(Check(name, UNCONFIRMED, claim, None, note="no defining set given"))
            elif name == "self_orthogonal":
                add(Check(name, _status(structural.self_orthogonal == claim), claim,
                          structural.self_orthogonal))
            elif name == "minimal":
                m = structural.minimal
                ok = {"true": True, "true-by-sufficient-condition": True,
                      "false": False}.get(m)
                add(Check(name, _status(None if ok is None else ok == claim), claim, m))
            else:  # pragma: no cover
                raise KeyError(name)
    return rep
