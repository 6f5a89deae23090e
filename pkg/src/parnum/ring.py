"""Exact arithmetic in Z[w] for a monic squarefree generator polynomial.

Elements are integer coordinate vectors in the power basis 1, w, ..,
w^(d-1); multiplication goes through the companion matrix, so all ring
arithmetic stays integer-exact.  Embeddings into C are certified interval
enclosures derived from the isolated roots of the generator polynomial,
and every embedding-based yes/no answer is either certified or refused.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly, roots
from .errors import (
    ContextMismatchError,
    DivisorZeroError,
    InputError,
    NotMonicError,
    NotSquarefreeError,
    PrecisionExhaustedError,
)
from .intervals import Box
from .intmat import IntegerMatrix, solve_fraction

DEFAULT_PRECISION = Fraction(1, 10**6)


class RingContext:
    """The ambient ring Z[w], its companion matrix and isolated roots."""

    def __init__(self, min_poly, companion, root_boxes, precision, certified, warnings):
        self.min_poly = min_poly
        self.degree = poly.degree(min_poly)
        self.companion = companion
        self.roots = root_boxes
        self.precision = precision
        self.irreducibility_certified = certified
        self.warnings = tuple(warnings)
        self._generation = 0
        self._pow_cache = {}
        self._iso_cache = {}
        self._embed_id_cache = {}

    def element(self, coords) -> "RingElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise InputError(
                f"expected {self.degree} coordinates, got {len(coords)}"
            )
        return RingElement(coords, self)

    def zero(self):
        return self.element((0,) * self.degree)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return self.element((int(n),) + (0,) * (self.degree - 1))

    def generator(self):
        if self.degree == 1:
            return self.element((-self.min_poly[0],))
        return self.element((0, 1) + (0,) * (self.degree - 2))

    def refine_roots(self):
        for b in self.roots:
            b.refine(self.roots)
        self._generation += 1
        self._pow_cache.clear()
        self._embed_id_cache.clear()

    def _powers(self, j, upto):
        key = j
        cached = self._pow_cache.get(key)
        if cached is None:
            cached = [Box.point(1)]
            self._pow_cache[key] = cached
        base = self.roots[j].box()
        while len(cached) <= upto:
            cached.append(cached[-1] * base)
        return cached

    def embedding_box(self, coords, j) -> Box:
        """Certified enclosure of the j-th embedding of the element with the
        given coordinates."""
        pw = self._powers(j, len(coords) - 1)
        out = Box.point(0)
        for k, c in enumerate(coords):
            if c:
                out = out + pw[k].scaled(c)
        return out

    def __repr__(self):
        return f"RingContext(min_poly={list(self.min_poly)})"


class RingElement:
    """An element of Z[w] as an integer coordinate vector."""

    __slots__ = ("coords", "context")

    def __init__(self, coords, context):
        self.coords = tuple(coords)
        self.context = context

    def _check(self, other):
        if not isinstance(other, RingElement):
            raise TypeError("ring element expected")
        if other.context is not self.context:
            raise ContextMismatchError("elements from different ring contexts")

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        self._check(other)
        return RingElement(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.context
        )

    def __sub__(self, other):
        self._check(other)
        return RingElement(
            tuple(a - b for a, b in zip(self.coords, other.coords)), self.context
        )

    def __neg__(self):
        return RingElement(tuple(-a for a in self.coords), self.context)

    def __mul__(self, other):
        self._check(other)
        m = multiplication_matrix(self)
        return RingElement(m.apply(other.coords), self.context)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        out = self.context.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and other.context is self.context
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"RingElement{self.coords}"


def make_context(min_poly, precision=DEFAULT_PRECISION) -> RingContext:
    """Build the ambient ring for a monic squarefree integer polynomial.

    Root boxes are isolated to the requested precision.  Irreducibility is
    certified by bounded factor enumeration for degree <= 6; when the
    certificate cannot be produced the context carries an explicit warning
    that is propagated into every report."""
    p = poly.normalize(min_poly)
    if poly.degree(p) < 1:
        raise InputError("generator polynomial must have degree >= 1")
    if not poly.is_monic(p):
        raise NotMonicError("generator polynomial must be monic")
    if not poly.is_squarefree(p):
        raise NotSquarefreeError("generator polynomial must be squarefree")
    precision = Fraction(precision)
    if precision <= 0:
        raise InputError("precision must be positive")
    d = poly.degree(p)

    entries = [[0] * d for _ in range(d)]
    for i in range(d):
        entries[i][d - 1] = -p[i]
    for i in range(1, d):
        entries[i][i - 1] += 1
    companion = IntegerMatrix(entries)

    acc = IntegerMatrix.zeros(d, d)
    ident = IntegerMatrix.identity(d)
    for c in reversed(p):
        acc = acc * companion + ident.scaled(c)
    if acc != IntegerMatrix.zeros(d, d):
        raise AssertionError("companion matrix does not annihilate the polynomial")

    boxes = roots.isolate_roots(p, min(precision, Fraction(1, 16)))

    warnings = []
    certified = False
    if d <= 6:
        verdict = poly.certify_irreducible(p)
        if verdict is False:
            raise InputError("generator polynomial is reducible")
        certified = verdict is True
    if not certified:
        warnings.append(
            "irreducibility of the generator polynomial was not certified; "
            "results assume it is irreducible"
        )
    return RingContext(p, companion, boxes, precision, certified, warnings)


def ring_arith(op, u: RingElement, v: RingElement = None) -> RingElement:
    """Dispatch helper mirroring the four ring operations by name."""
    if op == "neg":
        return -u
    if v is None:
        raise InputError(f"operation {op!r} needs two operands")
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    raise InputError(f"unknown ring operation {op!r}")


def multiplication_matrix(u: RingElement) -> IntegerMatrix:
    """The matrix of multiplication by u in the power basis."""
    ctx = u.context
    acc = IntegerMatrix.zeros(ctx.degree, ctx.degree)
    ident = IntegerMatrix.identity(ctx.degree)
    for c in reversed(u.coords):
        acc = acc * ctx.companion + ident.scaled(c)
    return acc


def exact_divide(x: RingElement, u: RingElement):
    """y with u*y = x when one exists in the ring, else None.

    The solution is unique because multiplication by nonzero u is injective
    (its matrix has nonzero determinant in an integral domain)."""
    x._check(u)
    if u.is_zero():
        raise DivisorZeroError("division by the zero element")
    m = multiplication_matrix(u)
    if m.det() == 0:
        raise InputError(
            "divisor is a zero divisor; the ambient polynomial is not irreducible"
        )
    sol = solve_fraction(m, x.coords)
    if sol is None or any(f.denominator != 1 for f in sol):
        return None
    return x.context.element(f.numerator for f in sol)


def _solve_dependency(columns, rhs):
    """Solve sum_i c_i * columns[i] = rhs over Q, or None."""
    rows = len(rhs)
    k = len(columns)
    a = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    for col in range(k):
        piv = None
        for i in range(len(pivots), rows):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        r = len(pivots)
        a[r], a[piv] = a[piv], a[r]
        f = a[r][col]
        a[r] = [x / f for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col] != 0:
                g = a[i][col]
                a[i] = [x - g * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
    for i in range(len(pivots), rows):
        if a[i][k] != 0:
            return None
    x = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        x[col] = a[r][k]
    return x


def minimal_polynomial(u: RingElement):
    """Monic least-degree integer polynomial annihilating the multiplication
    matrix of u."""
    ctx = u.context
    d = ctx.degree
    m = multiplication_matrix(u)
    powers = [IntegerMatrix.identity(d)]
    for _ in range(d):
        powers.append(powers[-1] * m)
    vecs = [
        tuple(pm.entries[i][j] for i in range(d) for j in range(d)) for pm in powers
    ]
    for k in range(1, d + 1):
        sol = _solve_dependency(vecs[:k], vecs[k])
        if sol is not None:
            coeffs = []
            for f in sol:
                if f.denominator != 1:
                    raise AssertionError("matrix annihilator is not integral")
                coeffs.append(-f.numerator)
            return poly.normalize(tuple(coeffs) + (1,))
    raise AssertionError("no annihilator found up to the ring degree")


def embedding_values(u: RingElement, precision) -> list:
    """Certified enclosures of every embedding of u, in canonical root order,
    refined until each half-width is at most the requested precision."""
    ctx = u.context
    precision = Fraction(precision)
    for _ in range(512):
        out = [ctx.embedding_box(u.coords, j) for j in range(ctx.degree)]
        if all(b.half_width() <= precision for b in out):
            return out
        ctx.refine_roots()
    raise PrecisionExhaustedError("embedding enclosures did not reach precision")


def _element_isolation(ctx: RingContext, coords):
    """Cached isolation (and lazy tags) of the roots of an element's minimal
    polynomial."""
    key = tuple(coords)
    entry = ctx._iso_cache.get(key)
    if entry is None:
        m = minimal_polynomial(ctx.element(key))
        boxes = roots.isolate_roots(m)
        entry = {"poly": m, "boxes": boxes, "circle_tags": None}
        ctx._iso_cache[key] = entry
    return entry


def identify_embedding(ctx: RingContext, coords, j) -> int:
    """Which root of the element's minimal polynomial the j-th embedding is."""
    key = (tuple(coords), j)
    hit = ctx._embed_id_cache.get(key)
    if hit is not None:
        return hit
    entry = _element_isolation(ctx, coords)
    idx = roots.identify_box(
        lambda: ctx.embedding_box(coords, j), ctx.refine_roots, entry["boxes"]
    )
    ctx._embed_id_cache[key] = idx
    return idx


def embedding_modulus_vs_one(ctx: RingContext, coords, j, budget=512) -> str:
    """Compare |sigma_j(u)| with 1 exactly; returns 'gt', 'lt' or 'eq'."""
    entry = _element_isolation(ctx, coords)
    m = entry["poly"]
    if poly.count_unit_circle_roots(m) > 0:
        if entry["circle_tags"] is None:
            entry["circle_tags"] = roots.on_circle_tags(m, entry["boxes"])
        idx = identify_embedding(ctx, coords, j)
        if entry["circle_tags"][idx]:
            return "eq"
    for _ in range(budget):
        a2 = ctx.embedding_box(coords, j).abs2()
        if a2.lo > 1:
            return "gt"
        if a2.hi < 1:
            return "lt"
        ctx.refine_roots()
    raise PrecisionExhaustedError("modulus comparison did not converge")


def embedding_is_real(ctx: RingContext, coords, j) -> bool:
    """Whether the j-th embedding of the element is a real number."""
    if all(c == 0 for c in coords[1:]):
        return True
    entry = _element_isolation(ctx, coords)
    idx = identify_embedding(ctx, coords, j)
    return entry["boxes"][idx].is_real


def embedding_sign_real(ctx: RingContext, coords, j, budget=512) -> int:
    """Sign of the j-th embedding of an element known to be real there."""
    if all(c == 0 for c in coords):
        return 0
    for _ in range(budget):
        b = ctx.embedding_box(coords, j).re
        if b.lo > 0:
            return 1
        if b.hi < 0:
            return -1
        ctx.refine_roots()
    raise PrecisionExhaustedError("sign determination did not converge")


def compare_real_embeddings(ctx: RingContext, cu, cv, j, budget=512) -> int:
    """Order two elements by a shared real embedding: -1, 0 or 1."""
    if tuple(cu) == tuple(cv):
        return 0
    diff = tuple(a - b for a, b in zip(cu, cv))
    return embedding_sign_real(ctx, diff, j, budget)
