import math

import numpy
import pytest
from hypothesis import given, settings, strategies as st

from oracles import PolyField, irreducible_by_trial_division, smallest_irreducible_bruteforce
from subfield_codes.field import (FieldError, base_symbol, build_field, extension_field,
                                  is_irreducible, prime_power, relative_trace, subfield)

GOLDEN = {
    (2, 1): ((0, 1), 1),
    (3, 1): ((0, 1), 2),
    (2, 4): ((1, 1, 0, 0, 1), 2),
    (2, 6): ((1, 1, 0, 0, 0, 0, 1), 2),
    (3, 4): ((2, 1, 0, 0, 1), 3),
    (5, 2): ((2, 0, 1), 6),
}


@pytest.mark.parametrize("pn", sorted(GOLDEN))
def test_golden_modulus_and_generator(pn):
    ctx = build_field(*pn)
    assert (ctx.modulus, ctx.generator) == GOLDEN[pn]


def test_prime_fields():
    f2 = build_field(2, 1)
    assert f2.order == 2 and f2.generator == 1
    assert build_field(3, 1).generator == 2


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 5)])
def test_modulus_matches_bruteforce_search(p, n):
    assert list(build_field(p, n).modulus) == smallest_irreducible_bruteforce(p, n)


def test_f16_exhaustive():
    # all 16 monic quartics by trial division, then orders of all 16 elements
    irreducible = [t for t in range(16)
                   if irreducible_by_trial_division([(t >> i) & 1 for i in range(4)] + [1], 2)]
    assert irreducible == [3, 9, 15]
    ctx = build_field(2, 4)
    F = PolyField(2, 4, ctx.modulus)
    orders = [F.order_of(x) for x in range(16)]
    assert ctx.generator == min(x for x in range(16) if orders[x] == 15)


def test_rabin_agrees_with_trial_division():
    for p, n in [(2, 5), (3, 3), (2, 6)]:
        for t in range(p**n):
            f = [(t // p**i) % p for i in range(n)] + [1]
            assert is_irreducible(f, p) == irreducible_by_trial_division(f, p), f


def test_tables_are_inverse():
    for p, n in [(2, 6), (3, 4), (5, 2), (2, 12)]:
        ctx = build_field(p, n)
        nz = numpy.arange(1, ctx.order)
        assert numpy.array_equal(ctx.antilog[ctx.log[nz]], nz)
        assert sorted(ctx.log[nz]) == list(range(ctx.mult_order))


def test_rebuild_is_deterministic():
    a = build_field(3, 4, cache=False)
    b = build_field(3, 4, cache=False)
    assert a == b and a is not b
    assert numpy.array_equal(a.log, b.log) and numpy.array_equal(a.antilog, b.antilog)
    assert a.to_dict() == {"p": 3, "n": 4, "modulus": [2, 1, 0, 0, 1], "generator": 3}


def test_bad_construction():
    with pytest.raises(FieldError):
        build_field(4, 2)
    with pytest.raises(FieldError):
        build_field(2, 25)
    with pytest.raises(FieldError):
        build_field(2, 10, cap=512)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2)])
def test_mul_matches_polynomial_arithmetic(p, n):
    ctx = build_field(p, n)
    F = PolyField(p, n, ctx.modulus)
    x = numpy.arange(ctx.order)
    table = ctx.mul(x[:, None], x[None, :])
    for a in range(ctx.order):
        for b in range(ctx.order):
            assert table[a, b] == F.mul(a, b)
            assert ctx.add(a, b) == F.add(a, b)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 4), (3, 3), (2, 6), (5, 2), (3, 4)]), st.data())
def test_field_axioms(pn, data):
    ctx = build_field(*pn)
    el = st.integers(0, ctx.order - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert ctx.mul(x, 1) == x
    assert ctx.add(x, ctx.neg(x)) == 0
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    if x:
        assert ctx.mul(x, ctx.inv(x)) == 1
        assert ctx.pow(x, ctx.mult_order) == 1
        assert ctx.pow(x, -1) == ctx.inv(x)


def test_field_element_operators():
    ctx = build_field(2, 4)
    g = ctx.alpha
    assert g * g.inverse() == ctx.one
    assert g - g == ctx.zero
    assert (g + 1) - 1 == g
    assert g**15 == ctx.one
    assert int(g / g) == 1
    assert -g == g
    other = build_field(2, 6)
    with pytest.raises(FieldError):
        g + other.alpha
    with pytest.raises(ZeroDivisionError):
        ctx.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)
    with pytest.raises(FieldError):
        ctx.element(16)


def test_f4_trace_table():
    ctx, e = extension_field(2, 2)
    assert list(ctx.trace_table(1, e)) == [0, 0, 1, 1]
    F = PolyField(2, 2, ctx.modulus)
    assert [F.add(x, F.mul(x, x)) for x in range(4)] == [0, 0, 1, 1]


def _qmr_cases():
    for q in (2, 3, 4):
        for m in range(1, 7):
            if q**m <= 4096:
                for r in range(1, m + 1):
                    if m % r == 0:
                        yield q, m, r


@pytest.mark.parametrize("q,m,r", list(_qmr_cases()))
def test_trace_fibres_and_transitivity(fields, q, m, r):
    ctx, e = fields[q, m]
    t_r = ctx.trace_table(r, e)
    # lands in F_{q^r} with uniform fibres of size q^(m-r)
    assert ctx.in_subfield(t_r, e, r).all()
    values, counts = numpy.unique(t_r, return_counts=True)
    assert len(values) == q**r and set(counts) == {q ** (m - r)}
    # Tr_q^{q^m} = Tr_q^{q^r} o Tr_{q^r}^{q^m}, outer trace as a power sum
    qv = ctx.p**e
    inner = numpy.zeros_like(t_r)
    for i in range(r):
        inner = ctx.add(inner, ctx.pow(t_r, qv**i))
    assert numpy.array_equal(inner, ctx.trace_table(1, e))


@pytest.mark.parametrize("q,m", [(2, 4), (3, 2), (4, 2), (2, 3), (4, 3)])
def test_relative_trace_against_power_sums(q, m):
    ctx, e = extension_field(q, m)
    F = PolyField(ctx.p, ctx.n, ctx.modulus)
    for r in [r for r in range(1, m + 1) if m % r == 0]:
        got = relative_trace(ctx, numpy.arange(ctx.order), r, e)
        assert list(got) == [F.trace(x, q, m, r) for x in range(ctx.order)]


@pytest.mark.parametrize("q,m", [(q, m) for q in (2, 3, 4) for m in range(1, 7) if q**m <= 4096])
def test_trace_kernel_is_image_of_artin_schreier(fields, q, m):
    # Tr(x) = 0 iff x = b^q - b for some b
    ctx, e = fields[q, m]
    allx = numpy.arange(ctx.order)
    kernel = set(numpy.flatnonzero(ctx.trace_table(1, e) == 0).tolist())
    image = set(ctx.sub(ctx.pow(allx, q), allx).tolist())
    assert kernel == image and len(kernel) == q ** (m - 1)


def test_relative_trace_errors():
    ctx, e = extension_field(2, 6)
    with pytest.raises(FieldError):
        relative_trace(ctx, 5, 4, e)
    assert relative_trace(ctx, 0, 2, e) == 0


def test_subfield_handles():
    ctx, e = extension_field(2, 6)
    assert list(subfield(ctx, e, 1).elements) == [0, 1]
    assert len(subfield(ctx, e, 6)) == 64
    f4, f8 = subfield(ctx, e, 2), subfield(ctx, e, 3)
    assert len(set(f4.elements) & set(f8.elements)) == 2
    assert list(f4.intersect(f8).elements) == [0, 1]
    with pytest.raises(FieldError):
        subfield(ctx, e, 4)
    for x in f8.elements:
        assert ctx.pow(int(x), 8) == x


@pytest.mark.parametrize("q,m", [(2, 6), (3, 4), (4, 3), (2, 12)])
def test_subfield_lattice(q, m):
    ctx, e = extension_field(q, m)
    divs = [r for r in range(1, m + 1) if m % r == 0]
    for a in divs:
        for b in divs:
            inter = set(subfield(ctx, e, a).elements) & set(subfield(ctx, e, b).elements)
            assert inter == set(subfield(ctx, e, math.gcd(a, b)).elements)


def test_base_symbol():
    ctx, e = extension_field(2, 6)
    assert base_symbol(ctx, 0, e) == 0 and base_symbol(ctx, 1, e) == 1
    with pytest.raises(FieldError):
        base_symbol(ctx, ctx.generator, e)
    ctx4, e4 = extension_field(4, 3)
    f4 = subfield(ctx4, e4, 1).elements
    syms = base_symbol(ctx4, f4, e4)
    assert sorted(syms.tolist()) == [0, 1, 2, 3]
    assert base_symbol(ctx4, 1, e4) == base_symbol(ctx4, 1, e4) == 1
    assert numpy.array_equal(ctx4.symbol_element(syms, e4), f4)


def test_prime_power():
    assert prime_power(4) == (2, 2) and prime_power(27) == (3, 3)
    with pytest.raises(ValueError):
        prime_power(6)
