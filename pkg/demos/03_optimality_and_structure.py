"""
Optimality and structure
========================

The Griesmer bound certifies most of the codes here.  For the rest we look
at near-Griesmer codes, self-orthogonality and minimality.
"""

from subfield_codes import build, classify, enumerate_code, griesmer_sum, structural_report

for n, k, d, q in [(720, 6, 480, 3), (54, 6, 26, 2), (58, 6, 28, 2), (60, 6, 29, 2)]:
    v = classify(n, k, d, q)
    print(f"[{n},{k},{d}]_{q}  g={v.g}  g(d+1)={v.g_next}  {v.label:<24} {v.reason}")

print("g(12, 2032) over F_2 =", griesmer_sum(12, 2032, 2))

# the zero-one complement code over F_3 is minimal with weight ratio 161/162
dset, _ = build("1s", 3, 5)
rep = structural_report(dset)
print("minimal:", rep.minimal, "wmin/wmax:", rep.wmin_wmax_ratio)

# self-orthogonality by Gram matrix, for a self-orthogonal and a non self-orthogonal code
for fam, q, m, params in [(2, 4, 3, {"r": 1, "h": 1}), (1, 2, 6, {"r": [2, 3]})]:
    dset, _ = build(fam, q, m, **params)
    print(enumerate_code(dset).params, "self-orthogonal:", structural_report(dset).self_orthogonal)
