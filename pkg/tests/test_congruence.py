import itertools
import random

import pytest

from parnum import congruence as cg
from parnum import poly, ring
from parnum.errors import InputError


def test_conclusion_congruences(golden_ctx):
    cs = cg.CongruenceStructure(golden_ctx.element((0, -2)))
    e = golden_ctx.from_int
    assert cg.congruent(e(-2), e(0), cs)
    assert cg.congruent(e(0), e(2), cs)
    assert cg.congruent(e(-1), e(1), cs)
    assert cg.congruent(e(1), e(3), cs)
    assert not cg.congruent(e(0), e(1), cs)


def test_reflexive(golden_ctx):
    cs = cg.CongruenceStructure(golden_ctx.element((1, -2)))
    x = golden_ctx.element((3, 4))
    assert cg.congruent(x, x, cs)


def test_parity():
    ctx = ring.make_context((-2, 1))
    cs = cg.CongruenceStructure(ctx.from_int(2))
    assert not cg.congruent(ctx.from_int(1), ctx.from_int(2), cs)
    assert cg.class_count(cs) == 2
    assert cg.canonical_form(ctx.from_int(7), cs) == cg.canonical_form(ctx.from_int(1), cs)


def test_class_counts(golden_ctx):
    assert cg.class_count(cg.CongruenceStructure(golden_ctx.element((1, -2)))) == 5
    assert cg.class_count(cg.CongruenceStructure(golden_ctx.element((0, -2)))) == 4


def test_zero_modulus_rejected(golden_ctx):
    with pytest.raises(InputError):
        cg.CongruenceStructure(golden_ctx.zero())


def test_canonical_form_constant_shift(golden_ctx):
    rng = random.Random(17)
    alpha = golden_ctx.element((0, -2))
    cs = cg.CongruenceStructure(alpha)
    for _ in range(100):
        x = golden_ctx.element((rng.randint(-20, 20), rng.randint(-20, 20)))
        z = golden_ctx.element((rng.randint(-20, 20), rng.randint(-20, 20)))
        assert cg.canonical_form(x + alpha * z, cs) == cg.canonical_form(x, cs)


def test_canonical_collapse(golden_ctx):
    cs = cg.CongruenceStructure(golden_ctx.element((0, -2)))
    forms = {cg.canonical_form(golden_ctx.from_int(n), cs) for n in range(-2, 4)}
    assert len(forms) == 2


def test_representatives(golden_ctx):
    cs = cg.CongruenceStructure(golden_ctx.element((1, -2)))
    reps = cg.representatives(cs)
    assert len(reps) == 5
    for a, b in itertools.combinations(reps, 2):
        assert not cg.congruent(a, b, cs)
    for i, j in itertools.combinations(range(5), 2):
        assert not cg.congruent(golden_ctx.from_int(i), golden_ctx.from_int(j), cs)
    unit = cg.CongruenceStructure(golden_ctx.element((2, -1)))  # det -1
    assert cg.class_count(unit) == 1
    assert [r.coords for r in cg.representatives(unit)] == [(0, 0)]


def test_equivalence_relation(golden_ctx):
    rng = random.Random(23)
    cs = cg.CongruenceStructure(golden_ctx.element((2, 1)))
    elems = [
        golden_ctx.element((rng.randint(-8, 8), rng.randint(-8, 8))) for _ in range(40)
    ]
    for x, y in itertools.combinations(elems, 2):
        assert cg.congruent(x, y, cs) == cg.congruent(y, x, cs)
        assert cg.congruent(x, y, cs) == (
            cg.canonical_form(x, cs) == cg.canonical_form(y, cs)
        )
    for x, y, z in itertools.combinations(elems[:20], 3):
        if cg.congruent(x, y, cs) and cg.congruent(y, z, cs):
            assert cg.congruent(x, z, cs)


def _brute_force_count(ctx, cs):
    n = cg.class_count(cs)
    side = range(n + 1)
    forms = set()
    for coords in itertools.product(side, repeat=ctx.degree):
        forms.add(cg.canonical_form(ctx.element(coords), cs))
    return len(forms)


def test_brute_force_box_equals_class_count(golden_ctx):
    for coords in ((1, -2), (0, -2), (2, 1), (3, 1)):
        cs = cg.CongruenceStructure(golden_ctx.element(coords))
        assert _brute_force_count(golden_ctx, cs) == cg.class_count(cs)


def test_count_matches_minimal_polynomial_constant(golden_ctx):
    rng = random.Random(5)
    for _ in range(40):
        coords = (rng.randint(-5, 5), rng.randint(-5, 5))
        u = golden_ctx.element(coords)
        if u.is_zero() or ring.multiplication_matrix(u).det() == 0:
            continue
        cs = cg.CongruenceStructure(u)
        m = ring.minimal_polynomial(u)
        if poly.degree(m) == golden_ctx.degree:
            assert cg.class_count(cs) == abs(m[0])


def test_base_minus_one_count_is_m_at_one(golden_ctx):
    """class count mod (u - 1) equals |m_u(1)| for full-degree u."""
    rng = random.Random(31)
    one = golden_ctx.one()
    for _ in range(40):
        u = golden_ctx.element((rng.randint(-5, 5), rng.randint(-5, 5)))
        m = ring.minimal_polynomial(u)
        if poly.degree(m) != golden_ctx.degree:
            continue
        shifted = u - one
        if ring.multiplication_matrix(shifted).det() == 0:
            continue
        cs = cg.CongruenceStructure(shifted)
        assert cg.class_count(cs) == abs(poly.evaluate(m, 1))
