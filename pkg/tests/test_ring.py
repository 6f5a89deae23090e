import random
from fractions import Fraction

import pytest

from parnum import poly, ring
from parnum.errors import (
    ContextMismatchError,
    DivisorZeroError,
    NotMonicError,
    NotSquarefreeError,
)
from parnum.intmat import IntegerMatrix


def _mul_oracle(ctx, u, v):
    """Multiply coordinate polynomials and reduce modulo the generator."""
    prod = poly.mul(poly.normalize(u.coords), poly.normalize(v.coords))
    _, rem = poly.divmod_frac(prod, ctx.min_poly)
    coords = [0] * ctx.degree
    for i, c in enumerate(rem):
        assert Fraction(c).denominator == 1
        coords[i] = int(c)
    return tuple(coords)


def test_make_context_companion_layout():
    ctx = ring.make_context((-1, -1, 1))
    assert ctx.companion == IntegerMatrix([[0, 1], [1, 1]])
    ctx1 = ring.make_context((-2, 1))
    assert ctx1.companion == IntegerMatrix([[2]])
    assert ctx1.roots[0].box().contains_point(2, 0)
    assert ctx1.roots[0].half_width() == 0
    ctxi = ring.make_context((1, 0, 1))
    assert ctxi.companion == IntegerMatrix([[0, -1], [1, 0]])
    assert ctxi.roots[0].box().contains_point(0, -1)
    assert ctxi.roots[1].box().contains_point(0, 1)


def test_make_context_rejections():
    with pytest.raises(NotMonicError):
        ring.make_context((-1, 2))
    with pytest.raises(NotSquarefreeError):
        ring.make_context(poly.mul((1, 1), (1, 1)))


def test_context_certifies_irreducibility():
    assert ring.make_context((-1, -1, 1)).irreducibility_certified
    assert not ring.make_context((-1, -1, 1)).warnings


def test_cayley_hamilton():
    for p in ((-2, 1), (-1, -1, 1), (1, 0, 1), (-1, -1, 0, 1)):
        ctx = ring.make_context(p)
        acc = IntegerMatrix.zeros(ctx.degree, ctx.degree)
        ident = IntegerMatrix.identity(ctx.degree)
        for c in reversed(p):
            acc = acc * ctx.companion + ident.scaled(c)
        assert acc == IntegerMatrix.zeros(ctx.degree, ctx.degree)


def test_ring_arith_examples(golden_ctx):
    w = golden_ctx.element((0, 1))
    assert ring.ring_arith("mul", w, w).coords == (1, 1)
    one = golden_ctx.one()
    v = golden_ctx.element((7, -3))
    assert ring.ring_arith("mul", one, v) == v
    beta = golden_ctx.element((1, -2))
    assert ring.ring_arith("mul", beta, beta).coords == (5, 0)
    assert ring.ring_arith("neg", beta).coords == (-1, 2)
    assert ring.ring_arith("add", beta, one).coords == (2, -2)
    assert ring.ring_arith("sub", beta, one).coords == (0, -2)


def test_ring_axioms_against_oracle():
    rng = random.Random(2024)
    contexts = [
        ring.make_context((-1, -1, 1)),
        ring.make_context((-5, 0, 1)),
        ring.make_context((-1, -1, 0, 1)),
    ]
    for _ in range(1000):
        ctx = rng.choice(contexts)
        u, v, w = (
            ctx.element([rng.randint(-9, 9) for _ in range(ctx.degree)])
            for _ in range(3)
        )
        assert (u * v).coords == _mul_oracle(ctx, u, v)
        assert u * v == v * u
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w


def test_context_mismatch():
    a = ring.make_context((-1, -1, 1))
    b = ring.make_context((-1, -1, 1))
    with pytest.raises(ContextMismatchError):
        a.element((1, 0)) + b.element((1, 0))


def test_multiplication_matrix_examples(golden_ctx):
    assert ring.multiplication_matrix(golden_ctx.one()) == IntegerMatrix.identity(2)
    assert ring.multiplication_matrix(golden_ctx.element((0, 1))) == golden_ctx.companion
    m = ring.multiplication_matrix(golden_ctx.element((0, -2)))
    assert m == IntegerMatrix([[0, -2], [-2, -2]])
    assert m.det() == -4


def test_exact_divide(golden_ctx):
    y = ring.exact_divide(golden_ctx.element((4, 0)), golden_ctx.element((0, -2)))
    assert y.coords == (2, -2)
    rng = random.Random(7)
    for _ in range(100):
        u = golden_ctx.element((rng.randint(-9, 9), rng.randint(-9, 9)))
        v = golden_ctx.element((rng.randint(-9, 9), rng.randint(-9, 9)))
        if u.is_zero():
            continue
        assert ring.exact_divide(u * v, u) == v
    ctz = ring.make_context((-2, 1))
    assert ring.exact_divide(ctz.from_int(3), ctz.from_int(2)) is None
    with pytest.raises(DivisorZeroError):
        ring.exact_divide(golden_ctx.one(), golden_ctx.zero())


def test_minimal_polynomial(golden_ctx):
    assert ring.minimal_polynomial(golden_ctx.element((0, 1))) == (-1, -1, 1)
    assert ring.minimal_polynomial(golden_ctx.element((1, -2))) == (-5, 0, 1)
    assert ring.minimal_polynomial(golden_ctx.element((5, 0))) == (-5, 1)


def test_norm_identity():
    """|det of the multiplication matrix| relates to the constant term of the
    minimal polynomial through the degree quotient."""
    rng = random.Random(11)
    for p in ((-1, -1, 1), (-5, 0, 1), (-1, -1, 0, 1)):
        ctx = ring.make_context(p)
        d = ctx.degree
        for _ in range(60):
            u = ctx.element([rng.randint(-6, 6) for _ in range(d)])
            m = ring.minimal_polynomial(u)
            deg = poly.degree(m)
            det = ring.multiplication_matrix(u).det()
            assert d % deg == 0
            assert abs(det) == abs(m[0]) ** (d // deg)


def test_embedding_values(golden_ctx):
    vals = ring.embedding_values(golden_ctx.element((7, 0)), Fraction(1, 1000))
    for b in vals:
        assert b.contains_point(7, 0)
    beta = golden_ctx.element((1, -2))
    vals = ring.embedding_values(beta, Fraction(1, 10**6))
    assert all(b.half_width() <= Fraction(1, 10**6) for b in vals)
    # embeddings enclose +sqrt5 and -sqrt5, in canonical root order
    assert vals[0].re.lo > 0 > vals[1].re.hi
    for b in vals:
        a2 = b.abs2()
        assert a2.lo <= 5 <= a2.hi
    zero_vals = ring.embedding_values(golden_ctx.zero(), Fraction(1, 10**9))
    for b in zero_vals:
        assert b.width() == 0 and b.contains_point(0, 0)


def test_embedding_decisions(golden_ctx):
    w = golden_ctx.element((0, 1))
    assert ring.embedding_modulus_vs_one(golden_ctx, w.coords, 0) == "lt"
    assert ring.embedding_modulus_vs_one(golden_ctx, w.coords, 1) == "gt"
    ctxi = ring.make_context((1, 0, 1))
    assert ring.embedding_modulus_vs_one(ctxi, (0, 1), 0) == "eq"
    assert ring.embedding_is_real(golden_ctx, w.coords, 0)
    assert not ring.embedding_is_real(ctxi, (0, 1), 0)
    assert ring.embedding_sign_real(golden_ctx, w.coords, 0) == -1
    assert ring.embedding_sign_real(golden_ctx, w.coords, 1) == 1
    assert ring.compare_real_embeddings(golden_ctx, (0, 1), (1, 0), 1) == 1


def test_pow(golden_ctx):
    beta = golden_ctx.element((1, -2))
    assert (beta**2).coords == (5, 0)
    assert (beta**0) == golden_ctx.one()
    assert (beta**3) == beta * beta * beta
