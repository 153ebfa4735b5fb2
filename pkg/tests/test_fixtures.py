import json
from importlib import resources

import pytest

from subfield_codes import report
from subfield_codes.defining_sets import build
from subfield_codes.engine import enumerate_code
from subfield_codes.field import extension_field

# x^12 + x^7 + x^6 + x^5 + x^3 + x + 1, the Conway polynomial for F_{2^12}
CONWAY_2_12 = [1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]


def _poly_at(ctx, coeffs, x):
    acc = 0
    for i, c in enumerate(coeffs):
        if c:
            acc = ctx.add(acc, ctx.pow(x, i))
    return int(acc)


def test_fixture_file_shape():
    data = json.loads(resources.files("subfield_codes").joinpath("data/fixtures.json").read_text())
    fixtures = data["fixtures"]
    assert len(fixtures) == 17 and len({f["id"] for f in fixtures}) == 17
    for f in fixtures:
        assert set(f) >= {"id", "group", "family", "params", "expected"}
        assert set(f["expected"]) == {"n", "k", "d", "enumerator", "claims"}


def test_groups_of_two():
    fixtures = report.load_fixtures()
    assert [f["id"] for f in report.select(fixtures, ["three-multiplicative-cosets"])] == [
        "multiplicative-q2-m6-r2-h3", "multiplicative-q3-m8-r2-h3"]
    assert len(report.select(fixtures, ["zero-one-q3-m5", "punctured-product"])) == 3
    assert report.select(fixtures, []) == fixtures


def test_conway_root_exponent():
    # the 4032 example uses powers of a^167, a root of the Conway polynomial
    ctx, e = extension_field(4, 6)
    beta = ctx.pow(ctx.generator, 167)
    assert _poly_at(ctx, CONWAY_2_12, beta) == 0
    roots = sorted(ctx.log[x] for x in range(1, ctx.order) if _poly_at(ctx, CONWAY_2_12, x) == 0)
    assert len(roots) == 12 and roots[0] == 167
    assert all(r * 2 % 4095 in roots for r in roots)


def test_enumerator_depends_on_primitive_element():
    # same construction with powers of the canonical generator: a different code
    fx = next(f for f in report.load_fixtures() if f["id"] == "additive-q4-m6-r2-h3")
    assert fx["params"]["thetas"] == ["a^167", "a^334", "a^501"]
    dset, _ = build(2, 4, 6, r=2, thetas=["a", "a^2", "a^3"])
    s = enumerate_code(dset)
    assert s.params == (4032, 6, 3024)
    assert s.enumerator() != fx["expected"]["enumerator"]
    assert sum(s.wd.values()) == 4**6 - 1


@pytest.mark.parametrize("only", [["single-subfield"], ["additive-q2-m6-r2-h1"]])
def test_manifest_is_self_describing(only):
    m = report.reproduce_paper(only=only)
    assert m["total"] == 1 and m["all_passed"]
    ex = m["examples"][0]
    assert ex["observed"]["enumerator"] == ex["expected"]["enumerator"]
    assert set(ex["claims"]) == set(ex["expected"]["claims"])
