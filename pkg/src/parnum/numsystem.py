"""Numeration systems (base, alphabet) over an ambient ring Z[w]:
construction, representation semantics, admissibility analysis, base
classification, membership search and k-block transformation.

The ambient ring is always explicit.  Congruence verdicts are computed in
Z[w], never silently in the possibly smaller Z[base]; reports name the
ambient so the two are never conflated.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from . import congruence as cg
from . import poly, ring, roots
from .errors import (
    BaseNotExpandingError,
    DuplicateDigitError,
    InputError,
    PrecisionExhaustedError,
    ZeroMissingError,
)


class PositionedWord:
    """Finite-support digit string: a map from exponent to alphabet index.

    Unmapped exponents denote the zero digit.  Which alphabet the indices
    point into is owned by the caller (a numeration system or a conversion
    rule), not by the word itself.
    """

    __slots__ = ("digits",)

    def __init__(self, digits=()):
        d = dict(digits)
        for e, i in d.items():
            if not isinstance(e, int) or not isinstance(i, int) or i < 0:
                raise InputError("word digits must map int exponents to indices")
        self.digits = d

    def support(self):
        return sorted(self.digits)

    def is_empty(self):
        return not self.digits

    def digit_at(self, e, zero_index):
        return self.digits.get(e, zero_index)

    def __eq__(self, other):
        return isinstance(other, PositionedWord) and self.digits == other.digits

    def __hash__(self):
        return hash(tuple(sorted(self.digits.items())))

    def __repr__(self):
        items = ", ".join(f"{e}:{i}" for e, i in sorted(self.digits.items(), reverse=True))
        return f"PositionedWord({{{items}}})"


class NumerationSystem:
    """A base and finite digit set inside an explicit ambient ring.

    Constructing directly performs only structural validation; use
    build_system to also certify |sigma(base)| > 1 at the chosen embedding.
    """

    def __init__(self, context, base, alphabet, embedding_index):
        self.context = context
        self.base = base
        self.alphabet = tuple(alphabet)
        self.embedding_index = int(embedding_index)
        if base.context is not context or any(a.context is not context for a in self.alphabet):
            raise InputError("base and digits must live in the given context")
        if not 0 <= self.embedding_index < context.degree:
            raise InputError("embedding index out of range")
        seen = set()
        for a in self.alphabet:
            if a.coords in seen:
                raise DuplicateDigitError(f"duplicate digit {list(a.coords)}")
            seen.add(a.coords)
        if context.zero().coords not in seen:
            raise ZeroMissingError("alphabet must contain 0")
        self._digit_index = {a.coords: i for i, a in enumerate(self.alphabet)}
        self._cache = {}

    @property
    def zero_digit_index(self):
        return self._digit_index[self.context.zero().coords]

    def digit_index(self, element):
        return self._digit_index.get(element.coords)

    def base_minus_one(self):
        return self.base - self.context.one()

    def base_min_poly(self):
        if "mpoly" not in self._cache:
            self._cache["mpoly"] = ring.minimal_polynomial(self.base)
        return self._cache["mpoly"]

    def congruence_base(self):
        if "cs_base" not in self._cache:
            self._cache["cs_base"] = cg.CongruenceStructure(self.base)
        return self._cache["cs_base"]

    def congruence_base_minus_one(self):
        if "cs_bm1" not in self._cache:
            self._cache["cs_bm1"] = cg.CongruenceStructure(self.base_minus_one())
        return self._cache["cs_bm1"]

    def __repr__(self):
        return (
            f"NumerationSystem(base={list(self.base.coords)}, "
            f"alphabet={len(self.alphabet)} digits, "
            f"min_poly={list(self.context.min_poly)}, "
            f"embedding={self.embedding_index})"
        )


def build_system(
    min_poly,
    base_coords,
    alphabet_coords,
    embedding_index=0,
    precision=ring.DEFAULT_PRECISION,
) -> NumerationSystem:
    """Validated numeration system with |sigma(base)| > 1 certified at the
    chosen embedding."""
    ctx = ring.make_context(min_poly, precision)
    base = ctx.element(base_coords)
    alphabet = [ctx.element(c) for c in alphabet_coords]
    sys = NumerationSystem(ctx, base, alphabet, embedding_index)
    from .errors import BaseNotGreaterThanOneError

    if ring.embedding_modulus_vs_one(ctx, base.coords, sys.embedding_index) != "gt":
        raise BaseNotGreaterThanOneError(
            "the chosen embedding of the base has modulus <= 1"
        )
    return sys


def value_of_word(w: PositionedWord, sys: NumerationSystem):
    """Exact value of a word as (v, shift): v equals the word value times
    base^shift, with shift = max(0, -lowest exponent)."""
    exps = sorted(w.digits, reverse=True)
    zero = sys.context.zero()
    if not exps:
        return zero, 0
    for e in exps:
        if not 0 <= w.digits[e] < len(sys.alphabet):
            raise InputError(f"digit index {w.digits[e]} out of range")
    shift = max(0, -exps[-1])
    acc = zero
    prev = None
    for e in exps:
        if prev is None:
            acc = sys.alphabet[w.digits[e]]
        else:
            acc = acc * sys.base ** (prev - e) + sys.alphabet[w.digits[e]]
        prev = e
    acc = acc * sys.base ** (exps[-1] + shift)
    return acc, shift


def words_equal_value(wa, sys_a, wb, sys_b) -> bool:
    """Shift-aligned exact value equality for words over bases that share an
    ambient ring."""
    va, sa = value_of_word(wa, sys_a)
    vb, sb = value_of_word(wb, sys_b)
    return va * sys_b.base**sb == vb * sys_a.base**sa


def check_expanding(sys: NumerationSystem) -> bool:
    """Whether every conjugate of the base has modulus strictly above 1,
    decided exactly."""
    m = sys.base_min_poly()
    if poly.count_unit_circle_roots(m) > 0:
        return False
    entry = ring._element_isolation(sys.context, sys.base.coords)
    boxes = entry["boxes"]
    for b in boxes:
        for _ in range(512):
            a2 = b.box().abs2()
            if a2.lo > 1:
                break
            if a2.hi < 1:
                return False
            b.refine(boxes)
        else:
            raise PrecisionExhaustedError("conjugate modulus comparison stalled")
    return True


@dataclass(frozen=True)
class ParallelAdditionVerdict:
    possible: bool
    unit_circle_roots: int
    note: str | None = None


def parallel_addition_possible(sys: NumerationSystem) -> ParallelAdditionVerdict:
    """Yes iff no conjugate of the base lies on the unit circle."""
    n = poly.count_unit_circle_roots(sys.base_min_poly())
    if n == 0:
        return ParallelAdditionVerdict(
            True,
            0,
            "an integer alphabet admitting 1-block parallel addition also exists "
            "for this base",
        )
    return ParallelAdditionVerdict(False, n, None)


@dataclass(frozen=True)
class LowerBoundReport:
    abs_m_at_zero: int
    abs_m_at_one: int
    positive_real_conjugate: bool
    bound: int
    caveat: str = (
        "the bound applies to alphabets whose nonnegative-power closure equals "
        "the whole ring of the base (checkable via ring_equality)"
    )


def lower_bound(sys: NumerationSystem) -> LowerBoundReport:
    """Alphabet-size lower bound max(|m(0)|, |m(1)| [+2 with a positive real
    conjugate]) from the base's minimal polynomial."""
    m = sys.base_min_poly()
    m0 = abs(poly.evaluate(m, 0))
    m1 = abs(poly.evaluate(m, 1))
    pos = poly.count_positive_real_roots(m) > 0
    bound = max(m0, m1 + 2) if pos else max(m0, m1)
    return LowerBoundReport(m0, m1, pos, bound)


@dataclass(frozen=True)
class ModulusCoverage:
    modulus_name: str
    class_count: int
    hits: dict
    missing: tuple
    passed: bool


@dataclass(frozen=True)
class CoverageReport:
    base: ModulusCoverage
    base_minus_one: ModulusCoverage

    @property
    def passed(self):
        return self.base.passed and self.base_minus_one.passed


def _coverage(sys, cs, name) -> ModulusCoverage:
    hits = {}
    for idx, a in enumerate(sys.alphabet):
        hits.setdefault(cg.canonical_form(a, cs), []).append(idx)
    missing = []
    for r in itertools.product(*[range(d) for d in cs._diag]):
        if r not in hits:
            missing.append(r)
    return ModulusCoverage(
        name,
        cg.class_count(cs),
        {k: tuple(v) for k, v in hits.items()},
        tuple(missing),
        not missing,
    )


def check_representatives(sys: NumerationSystem) -> CoverageReport:
    """Which congruence classes modulo base and base-1 (in the ambient ring)
    the alphabet hits; passes only when no class is missed for either
    modulus."""
    return CoverageReport(
        _coverage(sys, sys.congruence_base(), "base"),
        _coverage(sys, sys.congruence_base_minus_one(), "base_minus_one"),
    )


def _positive_real_embedding(sys: NumerationSystem, digits):
    """Embedding index where the base lands on its largest positive real
    conjugate and every digit is real, or (None, reason)."""
    ctx = sys.context
    m = sys.base_min_poly()
    if poly.count_positive_real_roots(m) == 0:
        return None, "base has no positive real conjugate"
    entry = ring._element_isolation(ctx, sys.base.coords)
    boxes = entry["boxes"]
    positive_real = []
    for i, b in enumerate(boxes):
        if not b.is_real:
            continue
        for _ in range(512):
            iv = b.box().re
            if iv.lo > 0:
                positive_real.append(i)
                break
            if iv.hi < 0:
                break
            b.refine(boxes)
        else:
            raise PrecisionExhaustedError("root sign determination stalled")
    target = positive_real[-1]
    for j in range(ctx.degree):
        if ring.identify_embedding(ctx, sys.base.coords, j) != target:
            continue
        if all(ring.embedding_is_real(ctx, a.coords, j) for a in digits):
            return j, None
    return None, "digits are not all real under the positive real embeddings of the base"


def order_digits_by_embedding(sys: NumerationSystem, digits, j):
    """Digits sorted by their (real) values under embedding j."""
    ctx = sys.context

    def cmp(a, b):
        return ring.compare_real_embeddings(ctx, a.coords, b.coords, j)

    return sorted(digits, key=cmp_to_key(cmp))


@dataclass(frozen=True)
class ExtremalReport:
    status: str  # "pass" | "fail" | "not_applicable"
    reason: str | None = None
    minimal_digit: tuple | None = None
    maximal_digit: tuple | None = None
    witnesses: tuple = ()


def check_extremal_digit_conditions(sys: NumerationSystem) -> ExtremalReport:
    """When the base has a positive real conjugate, the extremal digits'
    classes modulo base-1 must contain companion digits; see lint_rule for
    the matching constant-window prohibitions."""
    if len(sys.alphabet) < 2:
        return ExtremalReport("not_applicable", "alphabet has fewer than two digits")
    j, reason = _positive_real_embedding(sys, sys.alphabet)
    if j is None:
        return ExtremalReport("not_applicable", reason)
    ordered = order_digits_by_embedding(sys, sys.alphabet, j)
    lam, big = ordered[0], ordered[-1]
    cs = sys.congruence_base_minus_one()
    if cg.congruent(lam, big, cs):
        for c in sys.alphabet:
            if c not in (lam, big) and cg.congruent(c, lam, cs):
                return ExtremalReport(
                    "pass", None, lam.coords, big.coords, (c.coords,)
                )
        return ExtremalReport(
            "fail",
            "extremal digits share a class with no third companion digit",
            lam.coords,
            big.coords,
        )
    a = next(
        (c for c in sys.alphabet if c != lam and cg.congruent(c, lam, cs)), None
    )
    b = next(
        (c for c in sys.alphabet if c != big and cg.congruent(c, big, cs)), None
    )
    if a is not None and b is not None:
        return ExtremalReport(
            "pass", None, lam.coords, big.coords, (a.coords, b.coords)
        )
    side = "minimal" if a is None else "maximal"
    return ExtremalReport(
        "fail",
        f"the {side} digit is alone in its class modulo base-1",
        lam.coords,
        big.coords,
    )


def _certified_base_lower_bounds(sys: NumerationSystem):
    """Per-embedding rational lower bounds on |sigma_j(base)|, each > 1.

    Requires an expanding base; refuses otherwise."""
    ctx = sys.context
    out = []
    for j in range(ctx.degree):
        for _ in range(512):
            lb = ctx.embedding_box(sys.base.coords, j).abs_lower()
            if lb > 1:
                out.append(lb)
                break
            ctx.refine_roots()
        else:
            raise PrecisionExhaustedError("base modulus bound did not converge")
    return out


def _attractor_radii(sys: NumerationSystem):
    """Upper bounds on max|sigma_j(digit)| / (|sigma_j(base)| - 1)."""
    ctx = sys.context
    lows = _certified_base_lower_bounds(sys)
    radii = []
    for j in range(ctx.degree):
        dmax = max(ctx.embedding_box(a.coords, j).abs_upper() for a in sys.alphabet)
        radii.append(dmax / (lows[j] - 1))
    return radii


def _certified_outside(ctx, coords, bounds, budget=40) -> bool:
    """True only when some embedding of the element provably exceeds its
    bound; inconclusive cases return False (safe for completeness)."""
    for _ in range(budget):
        widest = Fraction(0)
        for j, bound in enumerate(bounds):
            box = ctx.embedding_box(coords, j)
            if box.abs2().lo > bound * bound:
                return True
            widest = max(widest, box.width())
        if widest <= 1:
            return False
        ctx.refine_roots()
    return False


def member_representation(sys: NumerationSystem, x):
    """Word with nonnegative exponents representing x, or None.

    Breadth-first search over the exact division graph: from state s, each
    digit congruent to s modulo the base steps to (s - digit)/base.  The
    state space is confined to certified embedding balls, which makes the
    search provably terminating and the None answer meaningful for the
    searched system."""
    if x.context is not sys.context:
        raise InputError("element from a different ring context")
    if not check_expanding(sys):
        raise BaseNotExpandingError("membership search requires an expanding base")
    ctx = sys.context
    if x.is_zero():
        return PositionedWord()
    radii = _attractor_radii(sys)
    x_up = [ctx.embedding_box(x.coords, j).abs_upper() for j in range(ctx.degree)]
    bounds = [max(r, xu) + 1 for r, xu in zip(radii, x_up)]

    cs = sys.congruence_base()
    by_class = {}
    for idx, a in enumerate(sys.alphabet):
        by_class.setdefault(cg.canonical_form(a, cs), []).append(idx)

    zero = ctx.zero().coords
    start = x.coords
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        elem = ctx.element(s)
        for idx in by_class.get(cg.canonical_form(elem, cs), ()):
            succ = ring.exact_divide(elem - sys.alphabet[idx], sys.base)
            assert succ is not None
            sc = succ.coords
            if sc in parent:
                continue
            parent[sc] = (s, idx)
            if sc == zero:
                digits = []
                cur = zero
                while parent[cur] is not None:
                    prev, didx = parent[cur]
                    digits.append(didx)
                    cur = prev
                word = {}
                for e, didx in enumerate(reversed(digits)):
                    if didx != sys.zero_digit_index:
                        word[e] = didx
                return PositionedWord(word)
            if not _certified_outside(ctx, sc, bounds):
                queue.append(sc)
    return None


@dataclass(frozen=True)
class RingEqualityReport:
    equal: bool
    witness_kind: str | None = None  # "uncovered_class" | "stuck_state"
    witness: tuple | None = None


def _box_det(mat):
    """Determinant of a matrix of complex boxes by cofactor expansion."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    from .intervals import Box

    acc = Box.point(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = mat[0][j] * _box_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _coordinate_bounds(sys: NumerationSystem, radii):
    """Integer bounds C_k with: |sigma_j(y)| <= radii[j] for all j implies
    |y_k| <= C_k.  Derived from a certified interval inverse of the
    root-power matrix."""
    ctx = sys.context
    d = ctx.degree
    if d == 1:
        return [radii[0]]
    for _ in range(512):
        mat = [[ctx.embedding_box((0,) * k + (1,) + (0,) * (d - 1 - k), j) for k in range(d)] for j in range(d)]
        det = _box_det(mat)
        dlo = det.abs_lower()
        if dlo > 0:
            bounds = []
            for k in range(d):
                total = Fraction(0)
                for j in range(d):
                    minor = [
                        [mat[r][c] for c in range(d) if c != k]
                        for r in range(d)
                        if r != j
                    ]
                    total += _box_det(minor).abs_upper() * radii[j]
                bounds.append(total / dlo)
            return bounds
        ctx.refine_roots()
    raise PrecisionExhaustedError("root-power matrix inversion stalled")


def ring_equality(sys: NumerationSystem) -> RingEqualityReport:
    """Equal iff the alphabet covers all classes modulo the base and every
    state of the finite attractor ball reaches 0 in the division graph."""
    if not check_expanding(sys):
        raise BaseNotExpandingError("ring equality requires an expanding base")
    ctx = sys.context
    cs = sys.congruence_base()
    covered = {cg.canonical_form(a, cs) for a in sys.alphabet}
    for r in itertools.product(*[range(d) for d in cs._diag]):
        if r not in covered:
            rep = ctx.element(cs._uinv_matrix().apply(r))
            return RingEqualityReport(False, "uncovered_class", rep.coords)

    radii = _attractor_radii(sys)
    coord_bounds = _coordinate_bounds(sys, radii)
    limits = [int(c) + 1 for c in coord_bounds]
    total = 1
    for c in limits:
        total *= 2 * c + 1
    if total > 2_000_000:
        raise PrecisionExhaustedError(
            f"attractor ball enumeration too large ({total} candidate states)"
        )
    ball = set()
    for y in itertools.product(*[range(-c, c + 1) for c in limits]):
        if not _certified_outside(ctx, y, radii):
            ball.add(y)

    zero = ctx.zero().coords
    reached = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for z in frontier:
            ze = ctx.element(z)
            for a in sys.alphabet:
                y = (sys.base * ze + a).coords
                if y in ball and y not in reached:
                    reached.add(y)
                    new.append(y)
        frontier = new
    stuck = sorted(ball - reached)
    if stuck:
        return RingEqualityReport(False, "stuck_state", stuck[0])
    return RingEqualityReport(True)


def k_block(sys: NumerationSystem, k: int) -> NumerationSystem:
    """Same ambient ring, base raised to the k-th power, and the alphabet of
    all k-digit combinations (duplicates merged, first occurrence kept)."""
    if k < 1:
        raise InputError("k must be a positive integer")
    if k == 1:
        return sys
    base_k = sys.base**k
    seen = {}
    for combo in itertools.product(range(len(sys.alphabet)), repeat=k):
        acc = sys.context.zero()
        for idx in combo:
            acc = acc * sys.base + sys.alphabet[idx]
        if acc.coords not in seen:
            seen[acc.coords] = acc
    return NumerationSystem(
        sys.context, base_k, list(seen.values()), sys.embedding_index
    )


def block_words(w: PositionedWord, sys: NumerationSystem, k: int) -> PositionedWord:
    """Regroup a word into k-digit blocks aligned at exponent 0; the value is
    preserved in the k-blocked system."""
    kb = k_block(sys, k)
    if k == 1:
        return w
    groups = {}
    for e, idx in w.digits.items():
        groups.setdefault(e // k, []).append((e, idx))
    out = {}
    for block_exp, items in groups.items():
        acc = sys.context.zero()
        for e, idx in items:
            acc = acc + sys.alphabet[idx] * sys.base ** (e - k * block_exp)
        bidx = kb.digit_index(acc)
        assert bidx is not None
        if bidx != kb.zero_digit_index:
            out[block_exp] = bidx
    return PositionedWord(out)


@dataclass(frozen=True)
class AnalysisReport:
    expanding: bool | None
    unit_modulus_conjugate: bool
    positive_real_conjugate: bool
    parallel_addition: ParallelAdditionVerdict
    class_count_base: int
    class_count_base_minus_one: int
    lower_bound: LowerBoundReport
    representative_coverage: CoverageReport
    extremal: ExtremalReport
    warnings: tuple = ()


def analyze(sys: NumerationSystem) -> AnalysisReport:
    """Run the whole admissibility analysis for one system."""
    warnings = list(sys.context.warnings)
    pa = parallel_addition_possible(sys)
    try:
        expanding = check_expanding(sys)
    except PrecisionExhaustedError:
        expanding = None
        warnings.append("expanding check hit the precision budget; left undecided")
    m = sys.base_min_poly()
    return AnalysisReport(
        expanding=expanding,
        unit_modulus_conjugate=pa.unit_circle_roots > 0,
        positive_real_conjugate=poly.count_positive_real_roots(m) > 0,
        parallel_addition=pa,
        class_count_base=cg.class_count(sys.congruence_base()),
        class_count_base_minus_one=cg.class_count(sys.congruence_base_minus_one()),
        lower_bound=lower_bound(sys),
        representative_coverage=check_representatives(sys),
        extremal=check_extremal_digit_conditions(sys),
        warnings=tuple(warnings),
    )
