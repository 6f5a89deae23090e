"""Constructors for the bundled reference systems and rules.

Each rule here is built from an explicit carry function through the
telescoping identity, so the returned certificate verifies by
construction; the constructors still run the verifier as a guard.
"""

from __future__ import annotations

import itertools

from .conversion import (
    CERTIFIED_CORRECT,
    CarryCertificate,
    LocalRule,
    _pairwise_sums,
    verify_certificate,
)
from .errors import InputError
from .numsystem import NumerationSystem, build_system


def rule_from_carry(sys: NumerationSystem, r, t, carry_of):
    """Rule and certificate induced by a carry function on windows of r+t
    digit sums.

    carry_of receives a tuple of ring elements (the window, leading digit
    first) and must return a ring element with carry 0 on the all-zero
    window; the induced outputs must all land in the alphabet."""
    b_elems = _pairwise_sums(sys.alphabet)
    a_idx = {a.coords: i for i, a in enumerate(sys.alphabet)}
    m = r + t
    psi = {}
    for win in itertools.product(range(len(b_elems)), repeat=m):
        psi[win] = carry_of(tuple(b_elems[i] for i in win))
    table = {}
    for win in itertools.product(range(len(b_elems)), repeat=m + 1):
        front = psi[win[:m]]
        back = psi[win[1:]]
        z = b_elems[win[t]] - sys.base * front + back
        oi = a_idx.get(z.coords)
        if oi is None:
            raise InputError(
                f"carry function leaves the alphabet on window {win}: "
                f"{list(z.coords)}"
            )
        table[win] = oi
    rule = LocalRule(b_elems, sys.alphabet, r, t, table)
    cert = CarryCertificate(psi, m)
    verdict = verify_certificate(rule, cert, sys.base)
    assert verdict.status == CERTIFIED_CORRECT
    return rule, cert


def avizienis_base10():
    """Base 10 over digits -6..6 with the classic threshold carry at +-6;
    memory 1, no anticipation."""
    sys = build_system((-10, 1), (10,), [(i,) for i in range(-7, 7) if i != -7])
    ctx = sys.context

    def carry(window):
        w = window[0].coords[0]
        if w >= 6:
            return ctx.one()
        if w <= -6:
            return -ctx.one()
        return ctx.zero()

    rule, cert = rule_from_carry(sys, 1, 0, carry)
    return sys, rule, cert


def sqrt5_interleaved():
    """Base sqrt(5) (generator of x^2 - 5) over integer digits -3..3.

    Carries live in Z[sqrt(5)]: the component along sqrt(5) forwards the
    integer threshold carry of the base-5 system running on every other
    position, so the digit stream interleaves two base-5 threshold
    conversions."""
    sys = build_system(
        (-5, 0, 1), (0, 1), [(i, 0) for i in range(-3, 4)], embedding_index=1
    )
    ctx = sys.context

    def h(x):
        if x >= 3:
            return 1
        if x <= -3:
            return -1
        return 0

    def carry(window):
        w1, w2 = window
        return ctx.element((h(w2.coords[0]), h(w1.coords[0])))

    rule, cert = rule_from_carry(sys, 2, 0, carry)
    return sys, rule, cert
