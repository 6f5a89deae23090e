"""Certified isolation of the complex roots of squarefree integer polynomials.

Real roots are isolated by exact Sturm bisection.  Non-real roots start
from high-precision numeric hints, but every enclosure that leaves this
module is certified by an exact Pellet test (a rational-arithmetic proof
that a disk holds exactly one root), so numeric error can make isolation
fail loudly, never silently succeed with a wrong box.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from . import poly
from .errors import PrecisionExhaustedError
from .intervals import Box, Interval, interval_sqrt

_DPS_LADDER = (60, 120, 240, 480)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, bc = mpmath.mpf(x)._mpf_
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("non-finite numeric hint")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _complex_shift(p, cx, cy):
    """Coefficients of p(c + w) in w, for c = cx + i*cy, as (re, im) pairs."""
    b = [(Fraction(c), Fraction(0)) for c in p]
    out = []
    for _ in range(len(p)):
        accs = []
        ar, ai = Fraction(0), Fraction(0)
        for br, bi in reversed(b):
            ar, ai = ar * cx - ai * cy + br, ar * cy + ai * cx + bi
            accs.append((ar, ai))
        out.append(accs[-1])
        b = list(reversed(accs[:-1]))
    return out


def _pellet_one(shifted, rho) -> bool:
    """True when the shifted polynomial provably has exactly one root in the
    closed disk of radius rho around 0 (a sufficient rational test)."""
    if len(shifted) < 2:
        return False
    b1r, b1i = shifted[1]
    low1 = max(abs(b1r), abs(b1i))
    if low1 == 0:
        return False
    rhs = Fraction(0)
    rk = Fraction(1)
    for k, (br, bi) in enumerate(shifted):
        if k != 1:
            rhs += (abs(br) + abs(bi)) * rk
        rk *= rho
    return low1 * rho > rhs


def _round_to_grid(x: Fraction, grid: Fraction) -> Fraction:
    return Fraction(round(x / grid)) * grid


def _pow2_at_most(x: Fraction) -> Fraction:
    """Largest power of two <= x, for dyadic radius hygiene."""
    if x <= 0:
        raise ValueError("positive value required")
    r = Fraction(1)
    while r > x:
        r /= 2
    while r * 2 <= x:
        r *= 2
    return r


class RootBox:
    """Refinable certified enclosure of one root of a fixed polynomial."""

    __slots__ = ("p", "is_real", "_point", "_lo", "_hi", "_chain", "_cx", "_cy", "_rho")

    def __init__(self):
        raise TypeError("use the factory constructors")

    @classmethod
    def exact(cls, p, value):
        self = object.__new__(cls)
        self.p = p
        self.is_real = True
        self._point = Fraction(value)
        self._lo = self._hi = self._chain = None
        self._cx = self._cy = self._rho = None
        return self

    @classmethod
    def real_interval(cls, p, lo, hi, chain):
        self = object.__new__(cls)
        self.p = p
        self.is_real = True
        self._point = None
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        self._chain = chain
        self._cx = self._cy = self._rho = None
        return self

    @classmethod
    def disk(cls, p, cx, cy, rho):
        self = object.__new__(cls)
        self.p = p
        self.is_real = False
        self._point = None
        self._lo = self._hi = self._chain = None
        self._cx = Fraction(cx)
        self._cy = Fraction(cy)
        self._rho = Fraction(rho)
        return self

    def box(self) -> Box:
        if self._point is not None:
            return Box.point(self._point)
        if self.is_real:
            return Box(Interval(self._lo, self._hi), Interval.point(0))
        return Box(
            Interval(self._cx - self._rho, self._cx + self._rho),
            Interval(self._cy - self._rho, self._cy + self._rho),
        )

    def half_width(self) -> Fraction:
        if self._point is not None:
            return Fraction(0)
        if self.is_real:
            return (self._hi - self._lo) / 2
        return self._rho

    def center(self):
        if self._point is not None:
            return (self._point, Fraction(0))
        if self.is_real:
            return ((self._lo + self._hi) / 2, Fraction(0))
        return (self._cx, self._cy)

    def refine(self, siblings=()):
        """Shrink the enclosure while provably keeping the same root."""
        if self._point is not None:
            return
        if self.is_real:
            self._refine_real()
        else:
            self._refine_disk(siblings)

    def _refine_real(self):
        m = (self._lo + self._hi) / 2
        if poly.evaluate(self.p, m) == 0:
            self._point = m
            self._lo = self._hi = self._chain = None
            return
        left = poly._variations(self._chain, self._lo) - poly._variations(self._chain, m)
        if left == 1:
            self._hi = m
        else:
            self._lo = m

    def _accept_candidate(self, ax, ay, rnew, siblings) -> bool:
        if not _pellet_one(_complex_shift(self.p, ax, ay), rnew):
            return False
        dist_up = abs(ax - self._cx) + abs(ay - self._cy)
        if dist_up + rnew <= self._rho:
            self._cx, self._cy, self._rho = ax, ay, rnew
            return True
        if siblings:
            cand = Box(
                Interval(ax - rnew, ax + rnew), Interval(ay - rnew, ay + rnew)
            )
            if all(not cand.overlaps(s.box()) for s in siblings if s is not self):
                self._cx, self._cy, self._rho = ax, ay, rnew
                return True
        return False

    def _refine_disk(self, siblings):
        rho = self._rho
        centers = [(self._cx, self._cy)]
        sh = _complex_shift(self.p, self._cx, self._cy)
        (b0r, b0i), (b1r, b1i) = sh[0], sh[1]
        den = b1r * b1r + b1i * b1i
        if den != 0:
            grid = rho / 32
            nx = _round_to_grid(self._cx - (b0r * b1r + b0i * b1i) / den, grid)
            ny = _round_to_grid(self._cy - (b0i * b1r - b0r * b1i) / den, grid)
            centers.insert(0, (nx, ny))
        for rnew in (rho / 2, rho * 3 / 4):
            for ax, ay in centers:
                if self._accept_candidate(ax, ay, rnew, siblings):
                    return
        for dps in _DPS_LADDER[1:]:
            hint = _nearest_hint(self.p, self._cx, self._cy, dps)
            if hint is None:
                continue
            grid = rho / 64
            ax = _round_to_grid(hint[0], grid)
            ay = _round_to_grid(hint[1], grid)
            for rnew in (rho / 2, rho / 4, rho / 8):
                if self._accept_candidate(ax, ay, rnew, siblings):
                    return
        raise PrecisionExhaustedError(
            "could not refine a certified root enclosure"
        )


def _hint_list(p, dps):
    coeffs = [mpmath.mpf(c) for c in reversed(p)]
    with mpmath.workdps(dps):
        try:
            rts = mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * dps)
        except Exception:
            return None
        out = []
        for r in rts:
            r = mpmath.mpc(r)
            try:
                out.append((_mpf_to_fraction(r.real), _mpf_to_fraction(r.imag)))
            except ValueError:
                return None
        return out


def _nearest_hint(p, cx, cy, dps):
    hints = _hint_list(p, dps)
    if not hints:
        return None
    return min(hints, key=lambda h: (h[0] - cx) ** 2 + (h[1] - cy) ** 2)


def _sturm_count(chain, a, b):
    return poly._variations(chain, a) - poly._variations(chain, b)


def isolate_real_roots(p):
    """Disjoint certified enclosures of every real root of squarefree p,
    sorted in increasing order.  Exact rational roots found along the way
    become point enclosures."""
    q = poly.primitive(poly.normalize(p))
    if poly.degree(q) < 1:
        return []
    if poly.degree(q) == 1:
        return [RootBox.exact(q, Fraction(-q[0], q[1]))]
    chain = poly.sturm_chain(q)
    m = poly.cauchy_bound(q)
    out = []
    stack = [(-m, m, _sturm_count(chain, -m, m))]
    guard = 0
    while stack:
        guard += 1
        if guard > 100_000:
            raise PrecisionExhaustedError("real root isolation did not converge")
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append(RootBox.real_interval(q, a, b, chain))
            continue
        mid = (a + b) / 2
        if poly.evaluate(q, mid) == 0:
            out.append(RootBox.exact(q, mid))
            delta = (b - a) / 8
            while (
                poly.evaluate(q, mid - delta) == 0
                or poly.evaluate(q, mid + delta) == 0
                or _sturm_count(chain, mid - delta, mid + delta) != 1
            ):
                delta /= 2
            stack.append((a, mid - delta, _sturm_count(chain, a, mid - delta)))
            stack.append((mid + delta, b, _sturm_count(chain, mid + delta, b)))
        else:
            left = _sturm_count(chain, a, mid)
            stack.append((a, mid, left))
            stack.append((mid, b, cnt - left))
    out.sort(key=lambda r: r.center()[0])
    return out


def _min_l1_separation(points):
    best = None
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = abs(points[i][0] - points[j][0]) + abs(points[i][1] - points[j][1])
            if best is None or d < best:
                best = d
    return best


def isolate_roots(p, target_halfwidth=Fraction(1, 64)):
    """Certified pairwise-disjoint enclosures of all d roots of squarefree p,
    in ascending (Re, Im) order of enclosure centers."""
    q = poly.primitive(poly.normalize(p))
    d = poly.degree(q)
    if d < 1:
        return []
    if not poly.is_squarefree(q):
        raise ValueError("polynomial must be squarefree")

    exact_boxes = []
    work = q
    if poly.is_monic(q) and d > 1:
        ints = poly.integer_roots(q)
        for r in ints or []:
            exact_boxes.append(RootBox.exact(q, r))
            work = poly.div_exact_int(work, (-r, 1))

    reals = isolate_real_roots(work) if poly.degree(work) >= 1 else []
    n_complex = poly.degree(work) - len(reals)
    assert n_complex % 2 == 0

    boxes = None
    for dps in _DPS_LADDER:
        if n_complex == 0:
            boxes = exact_boxes + reals
            break
        hints = _hint_list(work, dps)
        if hints is None:
            continue
        upper = sorted([h for h in hints if h[1] > 0], key=lambda h: (h[0], h[1]))
        if len(upper) != n_complex // 2:
            continue
        anchor_pts = (
            [(h[0], h[1]) for h in upper]
            + [(h[0], -h[1]) for h in upper]
            + [r.center() for r in reals]
            + [b.center() for b in exact_boxes]
        )
        sep = _min_l1_separation(anchor_pts) if len(anchor_pts) > 1 else Fraction(1)
        if sep is None or sep <= 0:
            continue
        r0 = _pow2_at_most(max(sep / 8, Fraction(1, 2 ** (2 * dps))))
        disks = []
        ok = True
        for cx, cy in upper:
            grid = r0 / 64
            ax, ay = _round_to_grid(cx, grid), _round_to_grid(cy, grid)
            rho = r0
            placed = False
            for _ in range(12):
                if _pellet_one(_complex_shift(work, ax, ay), rho):
                    disks.append(RootBox.disk(work, ax, ay, rho))
                    disks.append(RootBox.disk(work, ax, -ay, rho))
                    placed = True
                    break
                rho /= 2
            if not placed:
                ok = False
                break
        if not ok:
            continue
        boxes = exact_boxes + reals + disks
        break
    if boxes is None:
        raise PrecisionExhaustedError("root isolation failed at maximum precision")

    for _ in range(400):
        overlap = False
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if boxes[i].box().overlaps(boxes[j].box()):
                    overlap = True
                    target = boxes[i] if boxes[i].half_width() >= boxes[j].half_width() else boxes[j]
                    if target.half_width() == 0:
                        target = boxes[j] if target is boxes[i] else boxes[i]
                    target.refine()
        if not overlap:
            break
    else:
        raise PrecisionExhaustedError("root enclosures could not be separated")

    for b in boxes:
        while b.half_width() > target_halfwidth:
            b.refine(boxes)
    boxes.sort(key=lambda r: r.center())
    return boxes


def identify_box(get_box, refine, boxes, budget=256):
    """Index of the isolated root that a refinable enclosure converges to.

    get_box() must always enclose the same fixed root of the polynomial the
    boxes isolate; refine() must shrink it.
    """
    for _ in range(budget):
        e = get_box()
        cands = [i for i, b in enumerate(boxes) if e.overlaps(b.box())]
        if len(cands) == 1:
            return cands[0]
        if not cands:
            raise AssertionError("enclosure drifted away from every root")
        refine()
    raise PrecisionExhaustedError("could not attribute the value to a root")


def on_circle_tags(p, boxes):
    """For the isolation `boxes` of squarefree p, mark which enclosed roots
    lie exactly on the unit circle."""
    q = poly.primitive(poly.normalize(p))
    tags = [False] * len(boxes)
    for pt in (1, -1):
        if poly.evaluate(q, pt) == 0:
            hit = [i for i, b in enumerate(boxes) if b.box().contains_point(pt, 0)]
            assert len(hit) == 1
            tags[hit[0]] = True
    g = poly.poly_gcd(q, poly.reverse(q))
    for lin in ((-1, 1), (1, 1)):
        while True:
            quot = poly.div_exact_int(g, lin)
            if quot is None:
                break
            g = quot
    if poly.degree(g) < 2:
        return tags
    t = poly.squarefree_part(poly._half_trace_transform(g))
    for wroot in isolate_real_roots(t):
        inside = None
        for _ in range(256):
            wb = wroot.box().re
            if -2 < wb.lo and wb.hi < 2:
                inside = True
                break
            if wb.hi < -2 or wb.lo > 2:
                inside = False
                break
            wroot.refine()
        if inside is None:
            raise PrecisionExhaustedError("could not localize a circle parameter")
        if not inside:
            continue
        for sign in (1, -1):
            def get_box(wroot=wroot, sign=sign):
                iv = wroot.box().re
                re = iv.scaled(Fraction(1, 2))
                s = (Interval.point(4) - iv.square()).scaled(Fraction(1, 4))
                im = interval_sqrt(s)
                if sign < 0:
                    im = -im
                return Box(re, im)

            idx = identify_box(get_box, wroot.refine, boxes)
            tags[idx] = True
    return tags
