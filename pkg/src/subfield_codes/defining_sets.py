"""
Defining sets D for trace codes C_D, and the parameters each construction
is known to produce.

Four constructions, all over F_q with q = p^e:

1. D = F_{q^m} minus a union of subfields F_{q^{r_i}}.
2. D = F_{q^m} minus a union of additive cosets theta_i + F_{q^r} (theta_0 = 0).
3. D = F_{q^m} minus a union of multiplicative cosets theta_i * F_{q^r}.
4. D = (F_{q^m} minus F_{q^r}) x (F_{q^k} minus F_{q^s}), bivariate.

Every builder validates its preconditions, returns the point set and a
:class:`Prediction` carrying the closed-form length, dimension, minimum
distance, weight distribution (when known) and the optimality and
structural claims that hold for those parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy

from .field import FieldCtx, extension_field, subfield

# (q, t) pairs for which the subfield self-orthogonality argument fails
SO_EXCLUDED = {(2, 1), (2, 2), (3, 1)}


class PreconditionError(ValueError):
    """A construction precondition failed.

    ``name`` identifies the condition, ``values`` the offending inputs.
    """

    def __init__(self, name: str, message: str, **values):
        self.name = name
        self.values = values
        detail = ", ".join("%s=%s" % kv for kv in values.items())
        self.detail = message + (f" ({detail})" if detail else "")
        super().__init__(f"[{name}] {self.detail}")


@dataclass
class DefiningSet:
    """Ordered evaluation points of a trace code.

    Univariate points are element indices of ``ctx`` = F_{q^m}; bivariate
    points are rows (x, y) with x in ``ctx`` and y in ``ctx_k`` = F_{q^k}.
    """

    kind: str
    points: numpy.ndarray
    q: int
    m: int
    ctx: FieldCtx
    e: int
    k: Optional[int] = None
    ctx_k: Optional[FieldCtx] = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = numpy.asarray(self.points, dtype=numpy.int64)
        if self.kind == "univariate":
            pts = numpy.unique(pts)
        elif self.kind == "bivariate":
            pts = numpy.unique(pts.reshape(-1, 2), axis=0)
        else:
            raise ValueError(f"unknown kind {self.kind!r}")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def message_dim(self) -> int:
        return self.m + (self.k or 0)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "q": self.q,
            "m": self.m,
            "field": self.ctx.to_dict(),
            "points": self.points.tolist(),
            "provenance": self.provenance,
        }
        if self.kind == "bivariate":
            out["k"] = self.k
            out["field_k"] = self.ctx_k.to_dict()
        return out


@dataclass
class Prediction:
    """Closed-form claims for a construction.

    ``weights`` is the full nonzero weight distribution when known;
    otherwise ``weight_values`` lists the only weights that may occur.
    Claims map a property name to its claimed truth value and are present
    only when the construction guarantees them.
    """

    n: int
    k: int
    d: int
    q: int
    weights: Optional[dict] = None
    weight_values: Optional[frozenset] = None
    optimality: dict = field(default_factory=dict)
    structure: dict = field(default_factory=dict)
    basis: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def full(self) -> bool:
        return self.weights is not None

    def enumerator(self) -> Optional[str]:
        return weight_enumerator(self.weights) if self.full else None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "weights": {str(w): a for w, a in sorted(self.weights.items())} if self.full else None,
            "weight_values": sorted(self.weight_values) if self.weight_values is not None else None,
            "enumerator": self.enumerator(),
            "optimality": dict(sorted(self.optimality.items())),
            "structure": dict(sorted(self.structure.items())),
            "basis": dict(sorted(self.basis.items())),
        }


def weight_enumerator(wd: dict) -> str:
    "'1 + A1 z^w1 + A2 z^w2 + ...' ascending in w"
    terms = ["1"] + ["%d z^%d" % (a, w) for w, a in sorted(wd.items()) if a]
    return " + ".join(terms)


def _distribution(rows) -> dict:
    """Merge (weight, multiplicity) rows, drop zero rows, insist on integers."""
    out: dict = {}
    for w, a in rows:
        a = Fraction(a)
        if a.denominator != 1 or a < 0:
            raise ArithmeticError(f"non-integral multiplicity {a} at weight {w}")
        if a:
            out[int(w)] = out.get(int(w), 0) + int(a)
    return dict(sorted(out.items()))


def _qpow(q, x):
    return Fraction(q) ** x


# ---------------------------------------------------------------------------
# element parsing


def parse_element(ctx: FieldCtx, text: str) -> int:
    """Parse '1', 'a', 'a^k', '#idx' and '+'-joined sums of those.

    'a' is the canonical generator of ``ctx``; '#idx' a raw element index.
    """
    total = 0
    for term in str(text).replace(" ", "").split("+"):
        if not term:
            raise ValueError(f"bad element syntax {text!r}")
        if term.startswith("#"):
            v = int(term[1:])
            if not 0 <= v < ctx.order:
                raise ValueError(f"element index {v} out of range")
        elif term == "0":
            v = 0
        elif term == "1":
            v = 1
        elif term in ("a", "α", "alpha"):
            v = ctx.generator
        elif term.startswith(("a^", "α^", "alpha^")):
            v = ctx.gen_pow(int(term.split("^", 1)[1]))
        else:
            raise ValueError(f"bad element syntax {text!r}")
        total = ctx.add(total, v)
    return int(total)


def format_element(ctx: FieldCtx, x: int) -> str:
    if x == 0:
        return "0"
    if x == 1:
        return "1"
    j = int(ctx.log[x])
    return "a" if j == 1 else "a^%d" % j


# ---------------------------------------------------------------------------
# helpers shared by the builders


def omega1_size(q: int, rs: Sequence[int]) -> int:
    "|union of F_{q^r_i}| by inclusion-exclusion over gcds"
    total = 0
    for size in range(1, len(rs) + 1):
        for S in combinations(rs, size):
            total += (-1) ** (size - 1) * q ** math.gcd(*S)
    return total


def _require(cond, name, message, **values):
    if not cond:
        raise PreconditionError(name, message, **values)


def _complement(ctx: FieldCtx, removed: numpy.ndarray) -> numpy.ndarray:
    keep = numpy.ones(ctx.order, dtype=bool)
    keep[removed] = False
    return numpy.flatnonzero(keep).astype(numpy.int64)


def _check_m_r(m, r):
    _require(m > 1, "degree", "m must exceed 1", m=m)
    _require(1 <= r < m, "degree", "need 1 <= r < m", r=r, m=m)
    _require(m % r == 0, "divisibility", "r must divide m", r=r, m=m)


def _all_elements(ctx):
    return numpy.arange(ctx.order, dtype=numpy.int64)


# ---------------------------------------------------------------------------
# family 1: complement of a union of subfields


def theta1_members(ctx: FieldCtx, e: int, rs: Sequence[int]) -> numpy.ndarray:
    """All a with Tr to F_{q^r_i} nonzero for every i and Tr to
    F_{q^gcd(r_i,r_j)} zero for every pair."""
    ok = numpy.ones(ctx.order, dtype=bool)
    for r in rs:
        ok &= ctx.trace_table(r, e) != 0
    for ri, rj in combinations(rs, 2):
        ok &= ctx.trace_table(math.gcd(ri, rj), e) == 0
    return numpy.flatnonzero(ok)


def theta1_nonempty(ctx: FieldCtx, e: int, rs: Sequence[int]):
    "(True, witness) for the first member in index order, else (False, None)"
    members = theta1_members(ctx, e, rs)
    if len(members):
        return True, int(members[0])
    return False, None


def _check_family1(q, m, rs):
    _require(m > 1, "degree", "m must exceed 1", m=m)
    _require(len(rs) >= 1, "degree", "need at least one subfield degree", r=list(rs))
    _require(list(rs) == sorted(set(rs)), "ordering", "need r_1 < r_2 < ... < r_h", r=list(rs))
    _require(rs[0] >= 1 and rs[-1] < m, "degree", "need 1 <= r_i < m", r=list(rs), m=m)
    for r in rs:
        _require(m % r == 0, "divisibility", "every r_i must divide m", r=r, m=m)
    for ri, rj in combinations(rs, 2):
        _require(rj % ri != 0, "chain-divisibility", "r_i must not divide r_j for i < j",
                 r_i=ri, r_j=rj)


def family1_build(q: int, m: int, rs: Sequence[int]):
    """D = F_{q^m} minus the union of F_{q^r} for r in ``rs``."""
    rs = [int(r) for r in rs]
    _check_family1(q, m, rs)
    ctx, e = extension_field(q, m)
    ok, witness = theta1_nonempty(ctx, e, rs)
    _require(ok, "theta1-empty", "no element satisfies the trace conditions", q=q, m=m, r=rs)

    removed = numpy.unique(numpy.concatenate([subfield(ctx, e, r).elements for r in rs]))
    points = _complement(ctx, removed)
    h = len(rs)
    t = math.gcd(*rs)
    omega = len(removed)
    n = q**m - omega
    d = (q - 1) * (q ** (m - 1) - sum(q ** (r - 1) for r in rs))

    pred = Prediction(n=n, k=m, d=d, q=q)
    pred.weight_values = None
    if h == 1:
        r = rs[0]
        pred.weights = _distribution([
            (d, q**m - q ** (m - r)),
            ((q - 1) * q ** (m - 1), q ** (m - r) - 1),
        ])
        pred.basis["weights"] = "two-weight subfield complement"
        pred.optimality["griesmer"] = True
        pred.basis["griesmer"] = "single subfield removed"
    elif h == 2:
        r1, r2 = rs
        c = _qpow(q, m - r2 - r1 + t)
        pred.weights = _distribution([
            ((q - 1) * q ** (m - 1), c - 1),
            ((q - 1) * (q ** (m - 1) - q ** (r1 - 1)), _qpow(q, m - r2) - c),
            ((q - 1) * (q ** (m - 1) - q ** (r2 - 1)), _qpow(q, m - r1) - c),
            ((q - 1) * (q ** (m - 1) - q ** (r2 - 1) - q ** (r1 - 1) + q ** (t - 1)),
             q**m - q ** (m - t)),
            (d, _qpow(q, m - t) + c - _qpow(q, m - r2) - _qpow(q, m - r1)),
        ])
        pred.basis["weights"] = "five-weight two-subfield table"
        if (q, t) == (2, 1):
            pred.optimality["near_griesmer"] = True
            pred.basis["near_griesmer"] = "two subfields, (q,t)=(2,1)"
    if sum(q**r for r in rs) - omega < rs[0] + h - 1:
        pred.optimality["distance_optimal"] = True
        pred.basis["distance_optimal"] = "sum q^r_i - |Omega| < r_1 + h - 1"
    if (q, t) not in SO_EXCLUDED:
        pred.structure["self_orthogonal"] = True
        pred.basis["self_orthogonal"] = f"(q,t)=({q},{t}) not excluded"
    if q ** (m - 1) > sum(q**r for r in rs):
        pred.structure["minimal"] = True
        pred.basis["minimal"] = "q^(m-1) > sum q^r_i"

    prov = {"family": 1, "q": q, "m": m, "r": rs, "theta1_witness": witness}
    pred.provenance = prov
    dset = DefiningSet("univariate", points, q, m, ctx, e, provenance=prov)
    return dset, pred


def family1_special_build(q: int, m: int):
    """D = F_{q^m} minus {0, 1}, q > 2."""
    _require(q != 2, "q-not-two", "q = 2 is the single-subfield case with r = 1", q=q)
    _require(m > 1, "degree", "m must exceed 1", m=m)
    ctx, e = extension_field(q, m)
    points = _complement(ctx, numpy.array([0, 1]))
    d = (q - 1) * q ** (m - 1) - 1
    pred = Prediction(n=q**m - 2, k=m, d=d, q=q)
    pred.weights = _distribution([
        (d, q**m - q ** (m - 1)),
        (d + 1, q ** (m - 1) - 1),
    ])
    pred.basis["weights"] = "two-weight complement of {0,1}"
    pred.optimality["griesmer"] = True
    pred.structure["minimal"] = True
    pred.basis["griesmer"] = pred.basis["minimal"] = "complement of {0,1}, q > 2"
    prov = {"family": "1s", "q": q, "m": m}
    pred.provenance = prov
    return DefiningSet("univariate", points, q, m, ctx, e, provenance=prov), pred


# ---------------------------------------------------------------------------
# family 2: complement of a union of additive cosets


def theta2_members(ctx: FieldCtx, e: int, r: int, thetas: Sequence[int]) -> numpy.ndarray:
    allx = _all_elements(ctx)
    ok = ctx.trace_table(r, e) == 0
    tr = ctx.trace_table(1, e)
    for th in thetas:
        ok &= tr[ctx.mul(allx, th)] != 0
    return numpy.flatnonzero(ok)


def theta2_nonempty(ctx: FieldCtx, e: int, r: int, thetas: Sequence[int]):
    members = theta2_members(ctx, e, r, thetas)
    if len(members):
        return True, int(members[0])
    return False, None


def compute_tau(ctx: FieldCtx, e: int, r: int, theta1: int, theta2: int) -> int:
    "#{(u, v) in F_q^2 : u theta1 + v theta2 in F_{q^r}}"
    fq = subfield(ctx, e, 1).elements
    u = ctx.mul(fq, theta1)
    v = ctx.mul(fq, theta2)
    s = ctx.add(u[:, None], v[None, :])
    return int(ctx.in_subfield(s, e, r).sum())


def _family2_h_ok(q, m, r, h):
    if h + 1 <= q:
        return h + 1 < q ** (m - r)
    return h * q < (q - 1) * q ** (m - r)


def _coset_ok2(ctx, e, r, chosen, th):
    if th == 0:
        return False
    for c in [0] + chosen:
        if ctx.in_subfield(ctx.sub(th, c), e, r):
            return False
    return True


def _coset_ok3(ctx, e, r, chosen, th):
    if th == 0:
        return False
    for c in chosen:
        if ctx.in_subfield(ctx.div(th, c), e, r):
            return False
    return True


def _default_thetas(ctx, e, r, h, first_exps, ok):
    """Powers of the generator, skipping ahead past any exponent whose power
    clashes with the ones already chosen."""
    chosen, exps = [], []
    j = None
    for want in first_exps:
        j = want if j is None else max(want, j + 1)
        tried = 0
        while not ok(ctx, e, r, chosen, ctx.gen_pow(j)):
            j += 1
            tried += 1
            if tried > ctx.mult_order:
                raise PreconditionError("theta-default", "no valid default theta", h=h)
        chosen.append(ctx.gen_pow(j))
        exps.append(j)
    return chosen, exps


def family2_build(q: int, m: int, r: int, thetas: Optional[Sequence] = None, h: Optional[int] = None):
    """D = F_{q^m} minus the union of theta_i + F_{q^r}, theta_0 = 0.

    ``thetas`` are element indices or strings accepted by
    :func:`parse_element`; without them, theta_i = a^i for i = 1..h.
    """
    _check_m_r(m, r)
    ctx, e = extension_field(q, m)
    prov = {"family": 2, "q": q, "m": m, "r": r}
    if thetas is None:
        _require(h is not None and h >= 1, "h-range", "need h >= 1 or explicit thetas", h=h)
        thetas, exps = _default_thetas(ctx, e, r, h, list(range(1, h + 1)), _coset_ok2)
        if exps != list(range(1, h + 1)):
            prov["theta_repair"] = exps
    else:
        thetas = [parse_element(ctx, t) if isinstance(t, str) else int(t) for t in thetas]
    h = len(thetas)
    _require(h >= 1, "h-range", "need at least one theta", h=h)
    for i, th in enumerate(thetas):
        _require(th != 0, "theta-nonzero", "theta_i must be nonzero", i=i + 1)
    allth = [0] + list(thetas)
    for i, j in combinations(range(h + 1), 2):
        _require(not ctx.in_subfield(ctx.sub(allth[i], allth[j]), e, r), "coset-overlap",
                 "theta_i - theta_j lies in F_{q^r}", i=i, j=j)
    _require(_family2_h_ok(q, m, r, h), "h-range",
             "need h+1 < q^(m-r) if h+1 <= q, else h < (q-1) q^(m-r-1)", h=h, q=q, m=m, r=r)
    ok, witness = theta2_nonempty(ctx, e, r, thetas)
    _require(ok, "theta2-empty", "no element satisfies the trace conditions", q=q, m=m, r=r)
    prov["thetas"] = [format_element(ctx, t) for t in thetas]
    prov["theta_indices"] = list(map(int, thetas))
    prov["theta2_witness"] = witness

    sub = subfield(ctx, e, r).elements
    removed = numpy.concatenate([ctx.add(sub, th) for th in allth])
    points = _complement(ctx, removed)

    n = q**m - (h + 1) * q**r
    w_low = (q - 1) * (q ** (m - 1) - (h + 1) * q ** (r - 1))
    d = w_low if h + 1 <= q else (q - 1) * q ** (m - 1) - h * q**r
    pred = Prediction(n=n, k=m, d=d, q=q, provenance=prov)
    pred.weight_values = frozenset([w_low] + [(q - 1) * q ** (m - 1) - i * q**r for i in range(h + 1)])
    pred.basis["weight_values"] = "at most h+2 weights"
    top = (q - 1) * q ** (m - 1)
    if h == 1 and q ** (m - r) > 2:
        pred.weights = _distribution([
            (top, _qpow(q, m - r - 1) - 1),
            (top - q**r, (q - 1) * _qpow(q, m - r - 1)),
            (w_low, q ** (m - r) * (q**r - 1)),
        ])
        pred.basis["weights"] = "three-weight single-coset table"
    elif h == 2 and (q != 2 or m > r + 2) and (q != 3 or m > r + 1):
        tau = compute_tau(ctx, e, r, thetas[0], thetas[1])
        prov["tau"] = tau
        base = _qpow(q, m - r - 2)
        try:
            pred.weights = _distribution([
                (w_low, q ** (m - r) * (q**r - 1)),
                (top, tau * base - 1),
                (top - 2 * q**r, (q * q - 2 * q + tau) * base),
                (top - q**r, 2 * (q - tau) * base),
            ])
            pred.basis["weights"] = "two-coset table in tau"
        except ArithmeticError:
            pred.weights = None
    if h + 1 <= q:
        pred.optimality["griesmer"] = True
        pred.basis["griesmer"] = "h+1 <= q"
    else:
        rhs = 1 + Fraction(h * q * (q**r - 1), q - 1) + sum(
            (h * q**r - 1) // q**i for i in range(r, m))
        if (h + 1) * q**r + r > rhs:
            pred.optimality["distance_optimal"] = True
            pred.basis["distance_optimal"] = "coset griesmer inequality"
    if (q, r) not in SO_EXCLUDED:
        pred.structure["self_orthogonal"] = True
        pred.basis["self_orthogonal"] = f"(q,r)=({q},{r}) not excluded"
    if (h + 1 <= q and h + 1 < q ** (m - r - 1)) or (
            h + 1 > q and h * q * q < (q - 1) * q ** (m - r)):
        pred.structure["minimal"] = True
        pred.basis["minimal"] = "ratio condition on h"
    dset = DefiningSet("univariate", points, q, m, ctx, e, provenance=prov)
    return dset, pred


# ---------------------------------------------------------------------------
# family 3: complement of a union of multiplicative cosets


def theta3_members(ctx: FieldCtx, e: int, r: int, thetas: Sequence[int]) -> numpy.ndarray:
    allx = _all_elements(ctx)
    tr = ctx.trace_table(r, e)
    ok = numpy.ones(ctx.order, dtype=bool)
    for th in thetas:
        ok &= tr[ctx.mul(allx, th)] != 0
    return numpy.flatnonzero(ok)


def theta3_nonempty(ctx: FieldCtx, e: int, r: int, thetas: Sequence[int]):
    members = theta3_members(ctx, e, r, thetas)
    if len(members):
        return True, int(members[0])
    return False, None


def delta_in_subfield(ctx: FieldCtx, e: int, r: int, theta1: int, theta2: int, theta3: int) -> bool:
    """Is (u - u^(q^r)) / (v - v^(q^r)) in F_{q^r}, u = theta3/theta1,
    v = theta2/theta1?  Selects between the two three-coset distributions."""
    qr = ctx.p ** (e * r)
    u = ctx.div(theta3, theta1)
    v = ctx.div(theta2, theta1)
    num = ctx.sub(u, ctx.pow(u, qr))
    den = ctx.sub(v, ctx.pow(v, qr))
    if den == 0:
        raise PreconditionError("delta-denominator", "theta2/theta1 lies in F_{q^r}")
    return bool(ctx.in_subfield(ctx.div(num, den), e, r))


def family3_build(q: int, m: int, r: int, thetas: Optional[Sequence] = None, h: Optional[int] = None):
    """D = F_{q^m} minus the union of theta_i * F_{q^r}.

    Default thetas are 1, a, a^2, ..., a^(h-1).
    """
    _check_m_r(m, r)
    ctx, e = extension_field(q, m)
    prov = {"family": 3, "q": q, "m": m, "r": r}
    if thetas is None:
        _require(h is not None and h >= 1, "h-range", "need h >= 1 or explicit thetas", h=h)
        thetas, exps = _default_thetas(ctx, e, r, h, list(range(h)), _coset_ok3)
        if exps != list(range(h)):
            prov["theta_repair"] = exps
    else:
        thetas = [parse_element(ctx, t) if isinstance(t, str) else int(t) for t in thetas]
    h = len(thetas)
    _require(h >= 1, "h-range", "need at least one theta", h=h)
    for i, th in enumerate(thetas):
        _require(th != 0, "theta-nonzero", "theta_i must be nonzero", i=i + 1)
    for i, j in combinations(range(h), 2):
        _require(not ctx.in_subfield(ctx.div(thetas[i], thetas[j]), e, r), "coset-overlap",
                 "theta_i / theta_j lies in F_{q^r}", i=i + 1, j=j + 1)
    _require(h < q ** (m - r), "h-range", "need h < q^(m-r)", h=h, q=q, m=m, r=r)
    ok, witness = theta3_nonempty(ctx, e, r, thetas)
    _require(ok, "theta3-empty", "no element satisfies the trace conditions", q=q, m=m, r=r)
    prov["thetas"] = [format_element(ctx, t) for t in thetas]
    prov["theta_indices"] = list(map(int, thetas))
    prov["theta3_witness"] = witness

    sub = subfield(ctx, e, r).elements
    removed = numpy.unique(numpy.concatenate([ctx.mul(sub, th) for th in thetas]))
    points = _complement(ctx, removed)

    n = q**m - h * q**r + h - 1
    d = (q - 1) * (q ** (m - 1) - h * q ** (r - 1))
    pred = Prediction(n=n, k=m, d=d, q=q, provenance=prov)
    pred.weight_values = frozenset((q - 1) * (q ** (m - 1) - i * q ** (r - 1)) for i in range(h + 1))
    pred.basis["weight_values"] = "at most h+1 weights"
    w = [(q - 1) * (q ** (m - 1) - i * q ** (r - 1)) for i in range(h + 1)]
    try:
        if h == 1:
            pred.weights = _distribution([(w[1], q**m - q ** (m - r)), (w[0], q ** (m - r) - 1)])
            pred.basis["weights"] = "two-weight single coset"
        elif h == 2 and q ** (m - r) > 2:
            pred.weights = _distribution([
                (w[0], _qpow(q, m - 2 * r) - 1),
                (w[2], q**m - 2 * q ** (m - r) + _qpow(q, m - 2 * r)),
                (w[1], 2 * (q ** (m - r) - _qpow(q, m - 2 * r))),
            ])
            pred.basis["weights"] = "three-weight two-coset table"
        elif h == 3 and q ** (m - r) > 3:
            inside = delta_in_subfield(ctx, e, r, *thetas)
            prov["delta_in_subfield"] = inside
            if inside:
                pred.weights = _distribution([
                    (w[0], _qpow(q, m - 2 * r) - 1),
                    (w[2], 3 * _qpow(q, m - 2 * r) * (q**r - 1)),
                    (w[3], q**m - 3 * q ** (m - r) + 2 * _qpow(q, m - 2 * r)),
                ])
                pred.basis["weights"] = "three-coset table, ratio in subfield"
            else:
                pred.weights = _distribution([
                    (w[0], _qpow(q, m - 3 * r) - 1),
                    (w[1], 3 * (q**r - 1) * _qpow(q, m - 3 * r)),
                    (w[2], 3 * q ** (m - r) - 6 * _qpow(q, m - 2 * r) + 3 * _qpow(q, m - 3 * r)),
                    (w[3], q**m - 3 * q ** (m - r) + 3 * _qpow(q, m - 2 * r) - _qpow(q, m - 3 * r)),
                ])
                pred.basis["weights"] = "three-coset table, ratio outside subfield"
    except ArithmeticError:
        pred.weights = None
    pred.optimality["griesmer"] = h == 1
    pred.optimality["near_griesmer"] = h == 2 or (q, h) == (2, 3)
    pred.basis["griesmer"] = pred.basis["near_griesmer"] = "exact in h"
    if h > 1 and r > sum((h * (q - 1) * q ** (r - 1) - 1) // q**i for i in range(r, m)):
        pred.optimality["distance_optimal"] = True
        pred.basis["distance_optimal"] = "multiplicative-coset griesmer inequality"
    if (q, r) not in SO_EXCLUDED:
        pred.structure["self_orthogonal"] = True
        pred.basis["self_orthogonal"] = f"(q,r)=({q},{r}) not excluded"
    if q ** (m - r - 1) > h:
        pred.structure["minimal"] = True
        pred.basis["minimal"] = "q^(m-r-1) > h"
    dset = DefiningSet("univariate", points, q, m, ctx, e, provenance=prov)
    return dset, pred


# ---------------------------------------------------------------------------
# family 4: bivariate product of subfield complements


def family4_build(q: int, m: int, k: int, r: int, s: int):
    """D = (F_{q^m} minus F_{q^r}) x (F_{q^k} minus F_{q^s}).

    r = s = 0 means removing only zero from each factor.
    """
    prov = {"family": 4, "q": q, "m": m, "k": k, "r": r, "s": s}
    _require(m >= 1 and k >= 1, "degree", "need m, k >= 1", m=m, k=k)
    if r == 0 and s == 0:
        _require(k <= m, "degree", "need k <= m when r = s = 0", k=k, m=m)
        _require(q**m > q ** (m - k) + 1, "size", "need q^m > q^(m-k) + 1", q=q, m=m, k=k)
    else:
        _require(r >= 1 and s >= 1, "degree", "r and s must both be positive or both zero", r=r, s=s)
        _require(r < m and s < k, "degree", "need r < m and s < k", r=r, m=m, s=s, k=k)
        _require(m % r == 0, "divisibility", "r must divide m", r=r, m=m)
        _require(k % s == 0, "divisibility", "s must divide k", s=s, k=k)
        _require(m + s >= k + r, "size", "need m + s >= k + r", m=m, s=s, k=k, r=r)
        _require(q ** (m - r) > q ** (m - r + s - k) + 1, "size",
                 "need q^(m-r) > q^(m-r+s-k) + 1", q=q, m=m, r=r, s=s, k=k)
    ctx_m, e = extension_field(q, m)
    ctx_k, _ = extension_field(q, k)
    xs = _complement(ctx_m, subfield(ctx_m, e, r).elements)
    ys = _complement(ctx_k, subfield(ctx_k, e, s).elements)
    points = numpy.stack([numpy.repeat(xs, len(ys)), numpy.tile(ys, len(xs))], axis=1)

    n = (q**m - q**r) * (q**k - q**s) if (r, s) != (0, 0) else (q**m - 1) * (q**k - 1)
    dim = m + k
    if (r, s) != (0, 0):
        d = (q - 1) * (q ** (m + k - 1) - q ** (m + s - 1) - q ** (k + r - 1))
        pred = Prediction(n=n, k=dim, d=d, q=q, provenance=prov)
        pred.weights = _distribution([
            ((q - 1) * (q ** (m + k - 1) - q ** (k + r - 1)), q ** (k - s) - 1),
            ((q - 1) * (q ** (m + k - 1) - q ** (m + s - 1)), q ** (m - r) - 1),
            (d, (q ** (k - s) - 1) * (q ** (m - r) - 1)),
            (d + (q - 1) * q ** (r + s - 1), q ** (m + k) - q ** (m + k - r - s)),
        ])
        pred.basis["weights"] = "four-weight product table"
        if m + s == k + r and q != 2:
            good = k + r > q ** (r + s)
        else:
            good = 1 + k + r > q ** (r + s)
        if good:
            pred.optimality["distance_optimal"] = True
            pred.basis["distance_optimal"] = "product griesmer inequality"
        if (q, r + s) not in SO_EXCLUDED:
            pred.structure["self_orthogonal"] = True
            pred.basis["self_orthogonal"] = f"(q,r+s)=({q},{r + s}) not excluded"
        if q ** (m + k) > q ** (m + s + 1) + q ** (k + r):
            pred.structure["minimal"] = True
            pred.basis["minimal"] = "q^(m+k) > q^(m+s+1) + q^(k+r)"
    else:
        d = (q - 1) * (q ** (m + k - 1) - q ** (m - 1) - q ** (k - 1))
        pred = Prediction(n=n, k=dim, d=d, q=q, provenance=prov)
        pred.weights = _distribution([
            ((q - 1) * (q ** (m + k - 1) - q ** (k - 1)), q**k - 1),
            ((q - 1) * (q ** (m + k - 1) - q ** (m - 1)), q**m - 1),
            (d, q ** (m + k) - q**m - q**k + 1),
        ])
        pred.basis["weights"] = "three-weight punctured product table"
        pred.optimality["griesmer"] = m != k
        pred.optimality["near_griesmer"] = m == k
        pred.basis["griesmer"] = pred.basis["near_griesmer"] = "m != k vs m == k"
        if m == k and m + 2 // q > 1:
            pred.optimality["distance_optimal"] = True
            pred.basis["distance_optimal"] = "near-griesmer with q | d"
        if (q, k) not in SO_EXCLUDED:
            pred.structure["self_orthogonal"] = True
            pred.basis["self_orthogonal"] = f"(q,k)=({q},{k}) not excluded"
        if q ** (m + k) > q ** (m + 1) + q**k:
            pred.structure["minimal"] = True
            pred.basis["minimal"] = "q^(m+k) > q^(m+1) + q^k"
    dset = DefiningSet("bivariate", points, q, m, ctx_m, e, k=k, ctx_k=ctx_k, provenance=prov)
    return dset, pred


def build(family, q: int, m: int, **params):
    """Dispatch on family id: 1, '1s', 2, 3, 4."""
    fam = str(family)
    if fam == "1":
        return family1_build(q, m, params["r"])
    if fam in ("1s", "special"):
        return family1_special_build(q, m)
    if fam == "2":
        return family2_build(q, m, params["r"], params.get("thetas"), params.get("h"))
    if fam == "3":
        return family3_build(q, m, params["r"], params.get("thetas"), params.get("h"))
    if fam == "4":
        return family4_build(q, m, params["k"], params["r"], params["s"])
    raise PreconditionError("family", "unknown family", family=family)
