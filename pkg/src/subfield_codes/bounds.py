"""Griesmer bound and the optimality taxonomy of linear codes."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional


class BoundViolation(ValueError):
    "Parameters n < g(k, d): no such linear code exists."


def griesmer_sum(k: int, d: int, q: int) -> int:
    """g(k, d) = sum_{i<k} ceil(d / q^i), exact."""
    if k < 1 or d < 1 or q < 2:
        raise ValueError(f"griesmer_sum needs k>=1, d>=1, q>=2 (got k={k}, d={d}, q={q})")
    total = 0
    qi = 1
    for _ in range(k):
        total += -(-d // qi)
        qi *= q
    return total


def griesmer_gap(k: int, d: int, q: int) -> int:
    "g(k,d+1) - g(k,d) - 1; zero iff no q^i (1 <= i < k) divides d"
    return griesmer_sum(k, d + 1, q) - griesmer_sum(k, d, q) - 1


@dataclass(frozen=True)
class OptimalityVerdict:
    """Where an [n, k, d]_q code sits relative to the Griesmer bound.

    ``distance_optimal`` and ``almost_distance_optimal`` are ``None`` when
    the bound cannot decide them.
    """

    n: int
    k: int
    d: int
    q: int
    g: int
    g_next: int
    griesmer: bool
    near_griesmer: bool
    distance_optimal: Optional[bool]
    almost_distance_optimal: Optional[bool]
    reason: str

    @property
    def label(self) -> str:
        if self.griesmer:
            return "griesmer"
        if self.near_griesmer:
            return "near-griesmer"
        if self.distance_optimal:
            return "distance-optimal"
        if self.almost_distance_optimal:
            return "almost-distance-optimal"
        return "undetermined"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["label"] = self.label
        return out


def classify(n: int, k: int, d: int, q: int) -> OptimalityVerdict:
    g = griesmer_sum(k, d, q)
    if n < g:
        raise BoundViolation(f"[{n},{k},{d}]_{q} violates the Griesmer bound g={g}")
    g_next = griesmer_sum(k, d + 1, q)
    griesmer = n == g
    near = n == g + 1
    distance_optimal = None
    almost = None
    reason = "griesmer bound silent"
    if near and k > 1:
        # for a near-Griesmer code, q | d iff g(k,d+1) > g(k,d) + 1 = n
        if d % q == 0:
            distance_optimal, almost = True, False
            reason = "near-griesmer with q | d"
        else:
            almost = True
            reason = "near-griesmer with q not dividing d"
    elif g_next > n:
        distance_optimal, almost = True, False
        reason = "g(k,d+1) > n"
    return OptimalityVerdict(n, k, d, q, g, g_next, griesmer, near,
                             distance_optimal, almost, reason)
