"""
Fields, subfields and traces
============================

A first look at the arithmetic layer: build GF(3^6), find its subfields and
watch the relative trace collapse it onto GF(9).
"""

import numpy as np

from subfield_codes import extension_field, relative_trace, subfield

# F_{3^6} viewed as an extension of F_3; e is the degree of F_3 over the prime field
ctx, e = extension_field(3, 6)
print(ctx, "modulus (low to high):", ctx.modulus, "generator index:", ctx.generator)

a = ctx.element(ctx.generator)
print("a^728 =", a**728, " a * a^-1 =", a * a.inverse())

# F_9 sits inside as the elements whose log is a multiple of 728/8
f9 = subfield(ctx, e, 2)
print("|F_9| =", len(f9.elements))

# Tr_{9}^{729} lands in F_9 and every fibre has 81 points
t = relative_trace(ctx, np.arange(ctx.order), 2, e)
values, sizes = np.unique(t, return_counts=True)
print("trace image size", len(values), "fibre sizes", set(sizes.tolist()))
assert set(values.tolist()) == set(f9.elements.tolist())

# the absolute trace factors through the relative one; on F_9, Tr_3^9(y) = y + y^3
outer = ctx.add(t, ctx.pow(t, 3))
assert np.array_equal(outer, relative_trace(ctx, np.arange(ctx.order), 1, e))
print("Tr_3^729 = Tr_3^9 o Tr_9^729 holds on all", ctx.order, "elements")
