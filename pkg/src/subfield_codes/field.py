"""
Finite fields F_{p^n} with dense integer indexing and log/antilog tables.

An element is an integer in [0, p^n) whose base-p digits (low to high) are
the coefficients of its polynomial representative modulo a fixed monic
irreducible.  A field F_{q^m} with q = p^e is always realised as a single
context of degree n = e*m; the pair (e, m) is an interpretation supplied by
the caller, so F_q and every intermediate subfield are exponent tests on the
discrete log rather than separate objects.

Vectorised ops take numpy integer arrays as well as python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy

# log/antilog tables plus cached traces cost tens of bytes per element
MAX_FIELD_ORDER = 1 << 20


# ---------------------------------------------------------------------------
# small integer helpers


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    "distinct prime factors of n, ascending"
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    "Split q = p^e; raises ValueError if q is not a prime power."
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise ValueError(f"q={q} is not a prime power")
    p = fs[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists low-to-high


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p) if p > 2 else 1
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _polymulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _polymod(out, f, p)


def _polypowmod(a, e, f, p):
    result = [1]
    base = _polymod(a, f, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _polysub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _polygcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic f (coefficients low-to-high) over F_p."""
    f = _trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^i) mod f for i = 0..n
    frob = [x]
    for _ in range(n):
        frob.append(_polypowmod(frob[-1], p, f, p))
    if _polysub(frob[n], x, p):
        return False
    for l in prime_factors(n):
        g = _polygcd(f, _polysub(frob[n // l], x, p), p)
        if len(g) != 1:
            return False
    return True


def index_to_coeffs(i: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(i % p)
        i //= p
    return out


def coeffs_to_index(c, p: int) -> int:
    i = 0
    for ci in reversed(list(c)):
        i = i * p + ci
    return i


def smallest_irreducible(p: int, n: int) -> list[int]:
    """Monic irreducible of degree n whose low coefficients, read as a base-p
    integer, are smallest."""
    for tail in range(p**n):
        f = index_to_coeffs(tail, p, n) + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class FieldError(ValueError):
    pass


@dataclass(eq=False)
class FieldCtx:
    """A concrete F_{p^n}.

    Use :func:`build_field`; the constructor only wires precomputed tables.
    ``antilog[j]`` is the index of ``generator**j`` for 0 <= j < p^n - 1 and
    ``log`` inverts it (``log[0] == -1``).
    """

    p: int
    n: int
    modulus: tuple
    generator: int
    antilog: numpy.ndarray = dc_field(repr=False)
    log: numpy.ndarray = dc_field(repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def mult_order(self) -> int:
        return self.p**self.n - 1

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.n, self.modulus, self.generator) == (
            other.p, other.n, other.modulus, other.generator)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus, self.generator))

    def __str__(self):
        return "GF(%d^%d)" % (self.p, self.n)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus),
            "generator": self.generator,
        }

    # -- elements ---------------------------------------------------------

    def element(self, i) -> "FieldElement":
        i = int(i)
        if not 0 <= i < self.order:
            raise FieldError(f"index {i} out of range for {self}")
        return FieldElement(self, i)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def gen_pow(self, j) -> int:
        "index of generator**j"
        return int(self.antilog[j % self.mult_order])

    def digits(self, x) -> numpy.ndarray:
        x = numpy.asarray(x, dtype=numpy.int64)
        pw = self.p ** numpy.arange(self.n, dtype=numpy.int64)
        return (x[..., None] // pw) % self.p

    def from_digits(self, d) -> numpy.ndarray:
        pw = self.p ** numpy.arange(self.n, dtype=numpy.int64)
        return (numpy.asarray(d, dtype=numpy.int64) * pw).sum(axis=-1)

    # -- arithmetic (ints or arrays of indices) --------------------------

    def add(self, x, y):
        if self.p == 2:
            return numpy.bitwise_xor(x, y)
        r = self.from_digits((self.digits(x) + self.digits(y)) % self.p)
        return r if numpy.ndim(r) else int(r)

    def neg(self, x):
        if self.p == 2:
            return x
        r = self.from_digits((-self.digits(x)) % self.p)
        return r if numpy.ndim(r) else int(r)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def sum(self, x, axis=-1):
        "Field sum of an index array along ``axis``."
        x = numpy.asarray(x, dtype=numpy.int64)
        if self.p == 2:
            return numpy.bitwise_xor.reduce(x, axis=axis)
        d = self.digits(x).sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return self.from_digits(d)

    def mul(self, x, y):
        xa = numpy.asarray(x, dtype=numpy.int64)
        ya = numpy.asarray(y, dtype=numpy.int64)
        zero = (xa == 0) | (ya == 0)
        lx = self.log[xa]
        ly = self.log[ya]
        r = numpy.where(zero, 0, self.antilog[(lx + ly) % self.mult_order])
        return r if r.ndim else int(r)

    def inv(self, x):
        xa = numpy.asarray(x, dtype=numpy.int64)
        if numpy.any(xa == 0):
            raise ZeroDivisionError("inverse of zero")
        r = self.antilog[(-self.log[xa]) % self.mult_order]
        return r if r.ndim else int(r)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        xa = numpy.asarray(x, dtype=numpy.int64)
        if e == 0:
            r = numpy.ones_like(xa)
        else:
            ee = e % self.mult_order
            if e < 0:
                if numpy.any(xa == 0):
                    raise ZeroDivisionError("negative power of zero")
            r = numpy.where(xa == 0, 0, self.antilog[(self.log[xa] * ee) % self.mult_order])
        return r if r.ndim else int(r)

    # -- subfields and traces --------------------------------------------

    def _degree_over(self, e: int) -> int:
        if e < 1 or self.n % e:
            raise FieldError(f"e={e} does not divide n={self.n}")
        return self.n // e

    def in_subfield(self, x, e: int, r: int):
        """x in F_{q^r} with q = p^e, i.e. x^(q^r) == x."""
        m = self._degree_over(e)
        if r < 0 or (r and m % r):
            raise FieldError(f"r={r} does not divide m={m}")
        xa = numpy.asarray(x, dtype=numpy.int64)
        if r == 0:
            return xa == 0
        step = self.mult_order // (self.p ** (e * r) - 1)
        return (xa == 0) | (self.log[xa] % step == 0)

    def relative_trace(self, x, r: int, e: int = 1):
        """Tr_{q^r}^{q^m}(x) = sum_{i < m/r} x^(q^(r i)), q = p^e, m = n/e."""
        m = self._degree_over(e)
        if r < 1 or m % r:
            raise FieldError(f"target degree r={r} does not divide m={m}")
        table = self.trace_table(r, e)
        r_ = table[numpy.asarray(x, dtype=numpy.int64)]
        return r_ if r_.ndim else int(r_)

    def trace_table(self, r: int, e: int = 1) -> numpy.ndarray:
        "relative trace to F_{q^r} of every element, indexed by element"
        key = ("trace", r, e)
        if key not in self._cache:
            m = self._degree_over(e)
            if r < 1 or m % r:
                raise FieldError(f"target degree r={r} does not divide m={m}")
            allx = numpy.arange(self.order, dtype=numpy.int64)
            acc = numpy.zeros(self.order, dtype=numpy.int64)
            qr = self.p ** (e * r)
            for i in range(m // r):
                acc = self.add(acc, self.pow(allx, pow(qr, i, self.mult_order) or self.mult_order))
            acc.setflags(write=False)
            self._cache[key] = acc
        return self._cache[key]

    def trace_log_table(self, r: int, e: int = 1) -> numpy.ndarray:
        "``t[j] = Tr_{q^r}^{q^m}(g^j)`` for 0 <= j < p^n - 1"
        key = ("tracelog", r, e)
        if key not in self._cache:
            t = self.trace_table(r, e)[self.antilog]
            t.setflags(write=False)
            self._cache[key] = t
        return self._cache[key]

    def subfield(self, e: int, r: int) -> "SubfieldHandle":
        return subfield(self, e, r)

    # -- base symbols -----------------------------------------------------

    def base_symbol(self, x, e: int):
        """Portable symbol in [0, q) for x in F_q (q = p^e).

        0 -> 0 and g^(j (p^n-1)/(q-1)) -> 1 + j.
        """
        q = self.p**e
        self._degree_over(e)
        xa = numpy.asarray(x, dtype=numpy.int64)
        if not numpy.all(self.in_subfield(xa, e, 1)):
            raise FieldError("element not in the base subfield F_q")
        step = self.mult_order // (q - 1)
        r = numpy.where(xa == 0, 0, 1 + (self.log[xa] // step) % (q - 1))
        return r if r.ndim else int(r)

    def symbol_element(self, s, e: int):
        "inverse of :meth:`base_symbol`"
        q = self.p**e
        sa = numpy.asarray(s, dtype=numpy.int64)
        if numpy.any((sa < 0) | (sa >= q)):
            raise FieldError("symbol out of range")
        step = self.mult_order // (q - 1)
        r = numpy.where(sa == 0, 0, self.antilog[((sa - 1) * step) % self.mult_order])
        return r if r.ndim else int(r)

    def symbol_tables(self, e: int) -> tuple[numpy.ndarray, numpy.ndarray]:
        "(add, mul) tables of F_q on base symbols, derived from ambient arithmetic"
        key = ("symtab", e)
        if key not in self._cache:
            q = self.p**e
            elems = self.symbol_element(numpy.arange(q), e)
            a = self.base_symbol(self.add(elems[:, None], elems[None, :]), e)
            m = self.base_symbol(self.mul(elems[:, None], elems[None, :]), e)
            a.setflags(write=False)
            m.setflags(write=False)
            self._cache[key] = (a, m)
        return self._cache[key]


class FieldElement:
    """An element of a :class:`FieldCtx`, supporting the usual operators."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldCtx, index: int):
        self.ctx = ctx
        self.index = int(index)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError(f"mixing elements of {self.ctx} and {other.ctx}")
            return other.index
        if isinstance(other, (int, numpy.integer)) and other in (0, 1):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.index, o))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.index))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.index, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.index, o))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.index, e))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.index))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.index == other.index
        if isinstance(other, (int, numpy.integer)):
            return self.index == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.index))

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index

    def __repr__(self):
        return "FieldElement(%s, #%d)" % (self.ctx, self.index)


@dataclass(frozen=True)
class SubfieldHandle:
    ctx: FieldCtx
    e: int
    r: int
    elements: numpy.ndarray

    @property
    def q(self) -> int:
        return self.ctx.p**self.e

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return bool(self.ctx.in_subfield(int(x), self.e, self.r))

    def intersect(self, other: "SubfieldHandle") -> "SubfieldHandle":
        if other.ctx != self.ctx or other.e != self.e:
            raise FieldError("subfields of different fields")
        return subfield(self.ctx, self.e, math.gcd(self.r, other.r))


def subfield(ctx: FieldCtx, e: int, r: int) -> SubfieldHandle:
    """F_{q^r} inside ctx, q = p^e; r = 0 gives {0}."""
    m = ctx._degree_over(e)
    if r < 0 or (r and m % r):
        raise FieldError(f"e*r={e * r} does not divide n={ctx.n}")
    key = ("subfield", e, r)
    if key not in ctx._cache:
        if r == 0:
            els = numpy.zeros(1, dtype=numpy.int64)
        else:
            step = ctx.mult_order // (ctx.p ** (e * r) - 1)
            els = numpy.concatenate([[0], ctx.antilog[::step]]).astype(numpy.int64)
            els.sort()
        els.setflags(write=False)
        ctx._cache[key] = SubfieldHandle(ctx, e, r, els)
    return ctx._cache[key]


def relative_trace(ctx: FieldCtx, x, r: int, e: int = 1):
    return ctx.relative_trace(x, r, e)


def base_symbol(ctx: FieldCtx, x, e: int = 1):
    return ctx.base_symbol(x, e)


# ---------------------------------------------------------------------------
# construction


def _mul_matrix(c, f, p, n) -> numpy.ndarray:
    "matrix M with digits(c*y) = M @ digits(y) (mod p)"
    M = numpy.zeros((n, n), dtype=numpy.int64)
    for j in range(n):
        col = _polymulmod(c, [0] * j + [1], f, p)
        M[: len(col), j] = col
    return M


def _is_primitive(c, f, p, n) -> bool:
    N1 = p**n - 1
    if not _trim(c):
        return False
    if _trim(_polypowmod(c, N1, f, p)) != [1]:
        return False
    for l in prime_factors(N1):
        if _trim(_polypowmod(c, N1 // l, f, p)) == [1]:
            return False
    return True


def _build_field(p: int, n: int, cap: int = MAX_FIELD_ORDER) -> FieldCtx:
    if not is_prime(p):
        raise FieldError(f"characteristic p={p} is not prime")
    if n < 1:
        raise FieldError(f"degree n={n} must be positive")
    N = p**n
    if N > cap:
        raise FieldError(f"field order {p}^{n}={N} exceeds cap {cap}")
    f = smallest_irreducible(p, n)
    for g in range(1, N):
        if _is_primitive(index_to_coeffs(g, p, n), f, p, n):
            break
    else:  # pragma: no cover
        raise AssertionError("no primitive element")

    # powers of g by doubling: block of g^0..g^(L-1) times g^L
    pw = p ** numpy.arange(n, dtype=numpy.int64)
    block = numpy.zeros((1, n), dtype=numpy.int64)
    block[0, 0] = 1
    step = _mul_matrix(index_to_coeffs(g, p, n), f, p, n)
    while len(block) < N - 1:
        block = numpy.concatenate([block, (block @ step.T) % p])
        step = (step @ step) % p
    antilog = (block[: N - 1] * pw).sum(axis=1)
    log = numpy.full(N, -1, dtype=numpy.int64)
    log[antilog] = numpy.arange(N - 1, dtype=numpy.int64)
    if (log[1:] < 0).any():  # pragma: no cover
        raise AssertionError("generator does not have full order")
    antilog.setflags(write=False)
    log.setflags(write=False)
    return FieldCtx(p=p, n=n, modulus=tuple(f), generator=g, antilog=antilog, log=log)


@lru_cache(maxsize=None)
def _cached_field(p: int, n: int) -> FieldCtx:
    return _build_field(p, n)


def build_field(p: int, n: int, cap: int = MAX_FIELD_ORDER, cache: bool = True) -> FieldCtx:
    """Build F_{p^n} deterministically.

    The modulus is the monic irreducible of degree n with the smallest
    lower-coefficient index; the generator is the smallest index of full
    multiplicative order.
    """
    if not cache or (is_prime(p) and n >= 1 and p**n > MAX_FIELD_ORDER):
        return _build_field(p, n, cap)
    if is_prime(p) and n >= 1 and p**n > cap:
        raise FieldError(f"field order {p}^{n}={p**n} exceeds cap {cap}")
    return _cached_field(p, n)


def extension_field(q: int, m: int, cap: int = MAX_FIELD_ORDER) -> tuple[FieldCtx, int]:
    "F_{q^m} as (ctx, e) with q = p^e"
    p, e = prime_power(q)
    return build_field(p, e * m, cap), e


def base_isomorphism(src: FieldCtx, dst: FieldCtx, e: int) -> numpy.ndarray:
    """Symbol map sigma with sigma[s] the dst base symbol of the image of
    src's F_q element with symbol s, for some field isomorphism of F_q.

    Both contexts must share the characteristic; brute force over the
    q-1 exponent maps, which is cheap for any q in reach of the caps.
    """
    if src.p != dst.p:
        raise FieldError("different characteristics")
    q = src.p**e
    add_s, _ = src.symbol_tables(e)
    add_d, _ = dst.symbol_tables(e)
    for c in range(1, max(q - 1, 1) + 1):
        if math.gcd(c, q - 1) != 1:
            continue
        sigma = numpy.zeros(q, dtype=numpy.int64)
        if q > 1:
            sigma[1:] = 1 + ((numpy.arange(q - 1) * c) % (q - 1))
        if numpy.array_equal(sigma[add_s], add_d[sigma[:, None], sigma[None, :]]):
            return sigma
    raise AssertionError("no isomorphism found")  # pragma: no cover
