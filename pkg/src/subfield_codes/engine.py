"""
Materialise trace codes by exhaustive message enumeration.

For a univariate defining set the codeword of message a is
``(Tr(a x))_{x in D}``; its weight only needs the zero pattern of the
absolute trace, which is a table lookup in the discrete-log domain:
``Tr(g^(i+j))`` for a = g^i, x = g^j.  Bivariate sets add a second trace
over F_{q^k}, with the two copies of F_q identified by a fixed isomorphism.

Message ranges are processed in independent chunks whose per-message
weights are written back in message order, so the result does not depend
on the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy

from .defining_sets import DefiningSet, weight_enumerator
from .field import base_isomorphism

MAX_MESSAGES = 1 << 20
MAX_WORK = 1 << 36
CHUNK_CELLS = 1 << 22


class CapExceeded(ValueError):
    pass


@dataclass
class CodeSummary:
    """Parameters and exact weight distribution of an enumerated code.

    ``wd`` maps weight -> number of nonzero codewords of that weight.
    """

    n: int
    dim: int
    d: int
    q: int
    wd: dict
    message_space_size: int
    injective: bool = True
    provenance: dict = field(default_factory=dict)

    @property
    def params(self):
        return (self.n, self.dim, self.d)

    def enumerator(self) -> str:
        return weight_enumerator(self.wd)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.dim,
            "d": self.d,
            "q": self.q,
            "weights": {str(w): a for w, a in sorted(self.wd.items())},
            "enumerator": self.enumerator(),
            "message_space_size": self.message_space_size,
            "injective": self.injective,
        }


@dataclass
class GeneratorMatrix:
    """Rows are codewords of an F_q-basis of the message space, reduced to
    an independent set; entries are base symbols in [0, q)."""

    rows: numpy.ndarray
    q: int

    @property
    def shape(self):
        return self.rows.shape

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.rows) + "\n"

    def to_dict(self) -> dict:
        return {"q": self.q, "rows": int(self.rows.shape[0]),
                "cols": int(self.rows.shape[1]), "entries": self.rows.tolist()}


def _check_caps(dset: DefiningSet, max_messages, max_work):
    if dset.n == 0:
        raise ValueError("empty defining set")
    total = dset.q ** dset.message_dim
    if total > max_messages:
        raise CapExceeded(f"message space {total} exceeds cap {max_messages}")
    if total * dset.n > max_work:
        raise CapExceeded(f"work {total}*{dset.n} exceeds cap {max_work}")
    return total


def _trace_symbols(ctx, e) -> numpy.ndarray:
    "base symbol of Tr_q(x) for every element x"
    key = ("trsym", e)
    if key not in ctx._cache:
        t = ctx.base_symbol(ctx.trace_table(1, e), e)
        t.setflags(write=False)
        ctx._cache[key] = t
    return ctx._cache[key]


def _run_chunks(fn, bounds, workers):
    if workers <= 1 or len(bounds) <= 1:
        return [fn(b) for b in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, bounds))


def _split(total, per_chunk):
    per_chunk = max(1, per_chunk)
    return [(lo, min(total, lo + per_chunk)) for lo in range(0, total, per_chunk)]


def message_weights(dset: DefiningSet, workers: int = 1,
                    max_messages: int = MAX_MESSAGES, max_work: int = MAX_WORK) -> numpy.ndarray:
    """Hamming weight of the codeword of every message.

    Univariate messages are indexed by element index a; bivariate ones by
    ``a * q^k + b``.
    """
    total = _check_caps(dset, max_messages, max_work)
    if dset.kind == "univariate":
        return _weights_univariate(dset, workers, total)
    return _weights_bivariate(dset, workers, total)


def _weights_univariate(dset, workers, total):
    ctx, e = dset.ctx, dset.e
    N1 = ctx.mult_order
    pts = dset.points[dset.points != 0]
    lx = ctx.log[pts].astype(numpy.int32)
    nz = ctx.trace_log_table(1, e) != 0
    nz2 = numpy.concatenate([nz, nz])

    def chunk(b):
        lo, hi = b
        if len(lx) == 0:
            return numpy.zeros(hi - lo, dtype=numpy.int64)
        j = numpy.arange(lo, hi, dtype=numpy.int32)
        return nz2[j[:, None] + lx[None, :]].sum(axis=1, dtype=numpy.int64)

    parts = _run_chunks(chunk, _split(N1, CHUNK_CELLS // max(1, len(lx))), workers)
    out = numpy.zeros(total, dtype=numpy.int64)
    out[ctx.antilog] = numpy.concatenate(parts) if parts else []
    return out


def _bivariate_tables(dset):
    ctx_m, ctx_k, e = dset.ctx, dset.ctx_k, dset.e
    sigma = base_isomorphism(ctx_k, ctx_m, e)
    add_tab, _ = ctx_m.symbol_tables(e)
    xs, xinv = numpy.unique(dset.points[:, 0], return_inverse=True)
    ys, yinv = numpy.unique(dset.points[:, 1], return_inverse=True)
    a_all = numpy.arange(ctx_m.order, dtype=numpy.int64)
    b_all = numpy.arange(ctx_k.order, dtype=numpy.int64)
    S1 = _trace_symbols(ctx_m, e)[ctx_m.mul(a_all[:, None], xs[None, :])][:, xinv]
    S2 = sigma[_trace_symbols(ctx_k, e)[ctx_k.mul(b_all[:, None], ys[None, :])]][:, yinv]
    return S1, S2, add_tab


def _weights_bivariate(dset, workers, total):
    S1, S2, add_tab = _bivariate_tables(dset)
    nb = len(S2)
    n = dset.n

    def chunk(b):
        lo, hi = b
        cw = add_tab[S1[lo:hi, None, :], S2[None, :, :]]
        return (cw != 0).sum(axis=2, dtype=numpy.int64).reshape(-1)

    parts = _run_chunks(chunk, _split(len(S1), CHUNK_CELLS // (nb * n)), workers)
    return numpy.concatenate(parts)


def enumerate_code(dset: DefiningSet, workers: int = 1,
                   max_messages: int = MAX_MESSAGES, max_work: int = MAX_WORK) -> CodeSummary:
    """Exact (n, dim, d, weight distribution) of C_D.

    The map message -> codeword is F_q-linear, so the messages of weight
    zero form its kernel; dim is measured from the kernel size and each
    nonzero codeword is counted once.
    """
    w = message_weights(dset, workers, max_messages, max_work)
    total = len(w)
    q = dset.q
    kernel = int((w == 0).sum())
    dim = dset.message_dim - round(math.log(kernel, q))
    if q**(dset.message_dim - dim) != kernel:  # pragma: no cover
        raise AssertionError("kernel size is not a power of q")
    counts = numpy.bincount(w, minlength=dset.n + 1)
    wd = {int(i): int(c) // kernel for i, c in enumerate(counts) if i and c}
    d = min(wd) if wd else 0
    return CodeSummary(n=dset.n, dim=dim, d=d, q=q, wd=wd,
                       message_space_size=total, injective=kernel == 1,
                       provenance=dict(dset.provenance))


def codewords(dset: DefiningSet, messages) -> numpy.ndarray:
    """Codeword symbols for the given messages.

    Univariate messages are element indices; bivariate ones (a, b) rows.
    """
    if dset.kind == "univariate":
        a = numpy.asarray(messages, dtype=numpy.int64).reshape(-1)
        ctx = dset.ctx
        return _trace_symbols(ctx, dset.e)[ctx.mul(a[:, None], dset.points[None, :])]
    ab = numpy.asarray(messages, dtype=numpy.int64).reshape(-1, 2)
    ctx_m, ctx_k, e = dset.ctx, dset.ctx_k, dset.e
    sigma = base_isomorphism(ctx_k, ctx_m, e)
    add_tab, _ = ctx_m.symbol_tables(e)
    s1 = _trace_symbols(ctx_m, e)[ctx_m.mul(ab[:, :1], dset.points[None, :, 0])]
    s2 = sigma[_trace_symbols(ctx_k, e)[ctx_k.mul(ab[:, 1:], dset.points[None, :, 1])]]
    return add_tab[s1, s2]


def all_codewords(dset: DefiningSet, max_messages: int = 1 << 14) -> numpy.ndarray:
    "codeword of every message, in message order (duplicates when not injective)"
    total = _check_caps(dset, max_messages, MAX_WORK)
    if dset.kind == "univariate":
        return codewords(dset, numpy.arange(total))
    a = numpy.arange(dset.ctx.order)
    b = numpy.arange(dset.ctx_k.order)
    msgs = numpy.stack([numpy.repeat(a, len(b)), numpy.tile(b, len(a))], axis=1)
    return codewords(dset, msgs)


# ---------------------------------------------------------------------------
# linear algebra over F_q on base symbols


class SymbolField:
    "F_q arithmetic on base symbols, tables taken from an ambient context"

    def __init__(self, ctx, e):
        self.q = ctx.p**e
        self.add, self.mul = ctx.symbol_tables(e)
        self.neg = numpy.argmin(self.add, axis=1)
        inv = numpy.zeros(self.q, dtype=numpy.int64)
        for s in range(1, self.q):
            inv[s] = int(numpy.flatnonzero(self.mul[s] == 1)[0])
        self.inv = inv

    def combine(self, coeffs, rows):
        "sum_i coeffs[:, i] * rows[i] for a batch of coefficient vectors"
        coeffs = numpy.asarray(coeffs, dtype=numpy.int64)
        acc = numpy.zeros((len(coeffs), rows.shape[1]), dtype=numpy.int64)
        for i in range(rows.shape[0]):
            acc = self.add[acc, self.mul[coeffs[:, i:i + 1], rows[i][None, :]]]
        return acc

    def echelon(self, rows):
        "row-reduced copy of rows and the list of pivot columns"
        A = numpy.array(rows, dtype=numpy.int64, copy=True)
        pivots = []
        row = 0
        for col in range(A.shape[1]):
            if row == A.shape[0]:
                break
            nzr = numpy.flatnonzero(A[row:, col])
            if not len(nzr):
                continue
            piv = row + nzr[0]
            A[[row, piv]] = A[[piv, row]]
            A[row] = self.mul[self.inv[A[row, col]], A[row]]
            for i in range(A.shape[0]):
                if i != row and A[i, col]:
                    f = self.neg[A[i, col]]
                    A[i] = self.add[A[i], self.mul[f, A[row]]]
            pivots.append(col)
            row += 1
        return A, pivots

    def rank(self, rows) -> int:
        return len(self.echelon(rows)[1])


def all_vectors(q: int, k: int) -> numpy.ndarray:
    "every vector of F_q^k as symbol rows, first coordinate slowest"
    if k == 0:
        return numpy.zeros((1, 0), dtype=numpy.int64)
    grids = numpy.indices((q,) * k).reshape(k, -1).T
    return grids.astype(numpy.int64)


def basis_messages(dset: DefiningSet) -> numpy.ndarray:
    """Polynomial basis 1, g, ..., g^(m-1) of F_{q^m} over F_q (g the
    field generator); bivariate sets use (g^i, 0) then (0, h^j)."""
    ctx = dset.ctx
    if dset.kind == "univariate":
        return numpy.array([ctx.gen_pow(i) for i in range(dset.m)], dtype=numpy.int64)
    ctx_k = dset.ctx_k
    rows = [(ctx.gen_pow(i), 0) for i in range(dset.m)]
    rows += [(0, ctx_k.gen_pow(j)) for j in range(dset.k)]
    return numpy.array(rows, dtype=numpy.int64)


def generator_matrix(dset: DefiningSet) -> GeneratorMatrix:
    """Codewords of the basis messages, keeping each row that raises the
    rank so the result has exactly dim rows."""
    rows = codewords(dset, basis_messages(dset))
    F = SymbolField(dset.ctx, dset.e)
    keep = []
    for i in range(len(rows)):
        if F.rank(rows[keep + [i]]) == len(keep) + 1:
            keep.append(i)
    return GeneratorMatrix(rows[keep], dset.q)


def span(G: GeneratorMatrix, F: SymbolField) -> numpy.ndarray:
    "all q^dim codewords of the row space, coefficient vectors in all_vectors order"
    return F.combine(all_vectors(G.q, G.rows.shape[0]), G.rows)
