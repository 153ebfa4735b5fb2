"""
Reproducing the reference examples
==================================

The bundled fixtures list seventeen constructions with their expected
parameters and weight enumerators.  The same run is available on the command
line as ``subfield-codes reproduce-paper``.
"""

import time

from subfield_codes.report import manifest_lines, reproduce_paper

t0 = time.perf_counter()
manifest = reproduce_paper(workers=2)
for line in manifest_lines(manifest):
    print(line)
print(f"{time.perf_counter() - t0:.2f}s")

# narrower runs select by fixture id or group
small = reproduce_paper(only=["three-multiplicative-cosets"])
print([ex["id"] for ex in small["examples"]])
