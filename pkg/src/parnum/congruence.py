"""Congruence modulo a ring element: membership tests, class counting,
canonical forms and representative enumeration.

Two elements are congruent modulo u when their difference is u times a
ring element, i.e. when the coordinate difference lies in the lattice
spanned by the columns of the multiplication matrix of u.  The Smith
normal form of that matrix turns lattice membership into independent
scalar divisibility checks.
"""

from __future__ import annotations

import itertools

from .errors import ContextMismatchError, InputError
from .intmat import inverse_unimodular, smith_normal_form
from .ring import RingElement, minimal_polynomial, multiplication_matrix
from . import poly


class CongruenceStructure:
    """Precomputed data for congruence tests modulo a fixed nonzero element."""

    def __init__(self, modulus: RingElement):
        if modulus.is_zero():
            raise InputError("congruence modulus must be nonzero")
        self.modulus = modulus
        self.mult_matrix = multiplication_matrix(modulus)
        self.snf = smith_normal_form(self.mult_matrix)
        diag = self.snf.diagonal()
        if any(d == 0 for d in diag):
            raise InputError(
                "modulus is a zero divisor: the quotient has infinitely many classes"
            )
        self._diag = diag
        self._count = 1
        for d in diag:
            self._count *= d
        det = self.mult_matrix.det()
        assert abs(det) == self._count
        m = minimal_polynomial(modulus)
        if poly.degree(m) == modulus.context.degree:
            assert abs(m[0]) == self._count, "class count disagrees with |m(0)|"
        self._uinv = None

    @property
    def context(self):
        return self.modulus.context

    def _check(self, x: RingElement):
        if x.context is not self.context:
            raise ContextMismatchError("element from a different ring context")

    def _uinv_matrix(self):
        if self._uinv is None:
            self._uinv = inverse_unimodular(self.snf.U)
        return self._uinv


def congruent(x: RingElement, y: RingElement, cs: CongruenceStructure) -> bool:
    """Whether x - y is divisible by the modulus in the ambient ring."""
    cs._check(x)
    cs._check(y)
    diff = tuple(a - b for a, b in zip(x.coords, y.coords))
    w = cs.snf.U.apply(diff)
    return all(wi % di == 0 for wi, di in zip(w, cs._diag))


def class_count(cs: CongruenceStructure) -> int:
    """Number of congruence classes modulo the modulus (= |det| of its
    multiplication matrix)."""
    return cs._count


def canonical_form(x: RingElement, cs: CongruenceStructure) -> tuple:
    """Canonical residue vector; equal for x and y iff they are congruent."""
    cs._check(x)
    w = cs.snf.U.apply(x.coords)
    return tuple(wi % di for wi, di in zip(w, cs._diag))


def representatives(cs: CongruenceStructure) -> list:
    """One representative per class, in lexicographic order of the canonical
    residue vectors."""
    uinv = cs._uinv_matrix()
    out = []
    for r in itertools.product(*[range(d) for d in cs._diag]):
        out.append(cs.context.element(uinv.apply(r)))
    return out
