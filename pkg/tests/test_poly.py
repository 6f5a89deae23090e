import random
from fractions import Fraction

import mpmath
import pytest

from parnum import poly, roots


def test_normalize_and_degree():
    assert poly.normalize([1, 2, 0, 0]) == (1, 2)
    assert poly.normalize([0, 0]) == ()
    assert poly.degree(()) == -1
    assert poly.degree((3,)) == 0


def test_arithmetic_roundtrip():
    rng = random.Random(42)
    for _ in range(200):
        p = poly.normalize([rng.randint(-9, 9) for _ in range(rng.randint(0, 5))])
        q = poly.normalize([rng.randint(-9, 9) for _ in range(rng.randint(0, 5))])
        assert poly.sub(poly.add(p, q), q) == p
        if q:
            quot, rem = poly.divmod_frac(p, q)
            back = poly.add(poly.mul(quot, tuple(Fraction(c) for c in q)), rem)
            assert poly.normalize(back) == tuple(Fraction(c) for c in p)


def test_evaluate_horner():
    p = (-5, 0, 1)
    assert poly.evaluate(p, 3) == 4
    assert poly.evaluate(p, Fraction(1, 2)) == Fraction(-19, 4)


def test_gcd_and_squarefree():
    p = poly.mul((1, 1), (1, 1))  # (x+1)^2
    q = poly.mul((1, 1), (-1, 1))
    assert poly.poly_gcd(p, q) == (1, 1)
    assert poly.squarefree_part(p) == (1, 1)
    assert poly.is_squarefree((-1, -1, 1))
    assert not poly.is_squarefree(p)


def test_count_positive_real_roots_examples():
    assert poly.count_positive_real_roots((-5, 0, 1)) == 1
    assert poly.count_positive_real_roots((-1, -1, 1)) == 1
    assert poly.count_positive_real_roots((1, 1, 1)) == 0


def test_count_positive_handles_zero_roots():
    # x^3 - x = x(x-1)(x+1)
    assert poly.count_positive_real_roots((0, -1, 0, 1)) == 1


def test_unit_circle_examples():
    assert poly.count_unit_circle_roots((1, 0, 1)) == 2
    assert poly.count_unit_circle_roots((-5, 0, 1)) == 0
    assert poly.count_unit_circle_roots((1, -1, -1, -1, 1)) == 2


def test_unit_circle_pm_one():
    # (x-1)(x+1)(x-3)
    p = poly.mul(poly.mul((-1, 1), (1, 1)), (-3, 1))
    assert poly.count_unit_circle_roots(p) == 2


def test_half_trace_transform_quartic():
    assert poly._half_trace_transform((1, -1, -1, -1, 1)) == (-3, -1, 1)


_CORPUS = [
    (-2, 1),
    (1, 0, 1),
    (-5, 0, 1),
    (-1, -1, 1),
    (1, -1, -1, -1, 1),
    (-1, -1, 0, 1),
    (2, 0, 0, 1),
    poly.mul((1, 0, 1), (-3, 1)),
    poly.mul((-1, 1), (1, 1)),
]


def _numeric_circle_count(p):
    with mpmath.workdps(60):
        rts = mpmath.polyroots([mpmath.mpf(c) for c in reversed(p)], maxsteps=200)
        return sum(1 for r in rts if abs(abs(mpmath.mpc(r)) - 1) < mpmath.mpf("1e-30"))


@pytest.mark.parametrize("p", _CORPUS)
def test_unit_circle_against_numeric_oracle(p):
    assert poly.count_unit_circle_roots(p) == _numeric_circle_count(p)


@pytest.mark.parametrize("p", _CORPUS)
def test_root_counting_consistency(p):
    """inside + outside + on-circle = degree of the squarefree part."""
    sf = poly.squarefree_part(p)
    boxes = roots.isolate_roots(sf)
    tags = roots.on_circle_tags(sf, boxes)
    inside = outside = 0
    for box, on in zip(boxes, tags):
        if on:
            continue
        for _ in range(256):
            a2 = box.box().abs2()
            if a2.lo > 1:
                outside += 1
                break
            if a2.hi < 1:
                inside += 1
                break
            box.refine(boxes)
        else:
            raise AssertionError("undecided root")
    assert inside + outside + sum(tags) == poly.degree(sf)


def test_real_root_isolation_sorted_disjoint():
    p = poly.mul(poly.mul((-1, 1), (1, 1)), (-4, 1))  # roots -1, 1, 4
    locs = roots.isolate_real_roots(p)
    assert len(locs) == 3
    centers = [loc.center()[0] for loc in locs]
    assert centers == sorted(centers)
    for loc, expect in zip(locs, (-1, 1, 4)):
        assert loc.box().contains_point(expect, 0)


def test_certify_irreducible():
    assert poly.certify_irreducible((-1, -1, 1)) is True
    assert poly.certify_irreducible((1, 0, 1)) is True
    assert poly.certify_irreducible((-1, 0, 1)) is False  # (x-1)(x+1)
    assert poly.certify_irreducible((-2, 1)) is True


def test_integer_roots():
    assert poly.integer_roots((-2, 1)) == [2]
    assert poly.integer_roots(poly.mul((-2, 1), (3, 1))) == [-3, 2]
    assert poly.integer_roots((-1, -1, 1)) == []


def test_reverse():
    assert poly.reverse((1, 2, 3)) == (3, 2, 1)
    assert poly.reverse((0, 1)) == (1,)
