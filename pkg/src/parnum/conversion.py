"""p-local digit set conversion: rules, carry certificates, verification,
exhaustive and randomized testing, necessary-condition lints, conjugate
transfer, and bounded rule synthesis.

A rule maps every window of p = r + t + 1 input digits to one output
digit.  A carry certificate is a table psi on windows of length p - 1
satisfying, for every window u,

    table(u) = u_0 - base * psi(front) + psi(back)

exactly in the ring, where front and back are the leading and trailing
p - 1 digits of the window.  Summing that identity over all positions of
a finite-support word telescopes, so a verified certificate proves value
preservation for every input, not just the tested ones.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import congruence as cg
from . import poly, ring
from .errors import (
    DigitNotInInputAlphabetError,
    InputAlphabetTooSmallError,
    InputError,
    PrecisionExhaustedError,
    ShapeMismatchError,
    TargetEmbeddingNotGreaterThanOneError,
)
from .numsystem import (
    NumerationSystem,
    PositionedWord,
    _positive_real_embedding,
    order_digits_by_embedding,
    value_of_word,
)

CERTIFIED_CORRECT = "CertifiedCorrect"
REFUTED = "RefutedWithWitness"
PASSED_BOUNDED = "PassedBoundedTests"


class LocalRule:
    """A total window-to-digit table with memory r and anticipation t.

    Windows are ordered most-anticipatory digit first: the window at
    position j reads (w[j+t], ..., w[j], ..., w[j-r]).  Keys and values are
    indices into the input and output alphabets.
    """

    def __init__(self, input_alphabet, output_alphabet, r, t, table):
        self.input_alphabet = tuple(input_alphabet)
        self.output_alphabet = tuple(output_alphabet)
        self.r = int(r)
        self.t = int(t)
        if self.r < 0 or self.t < 0:
            raise InputError("memory and anticipation must be nonnegative")
        self.table = dict(table)
        ctx = self.input_alphabet[0].context
        self.context = ctx
        for a in self.input_alphabet + self.output_alphabet:
            if a.context is not ctx:
                raise InputError("rule alphabets must share one ring context")
        self._in_index = {a.coords: i for i, a in enumerate(self.input_alphabet)}
        self._out_index = {a.coords: i for i, a in enumerate(self.output_alphabet)}
        if len(self._in_index) != len(self.input_alphabet):
            raise InputError("duplicate digit in the input alphabet")
        if len(self._out_index) != len(self.output_alphabet):
            raise InputError("duplicate digit in the output alphabet")
        zero = ctx.zero().coords
        if zero not in self._in_index or zero not in self._out_index:
            raise InputError("both alphabets must contain 0")
        self.zero_in = self._in_index[zero]
        self.zero_out = self._out_index[zero]
        p = self.p
        if len(self.table) != len(self.input_alphabet) ** p:
            raise InputError("table must be total over all input windows")
        for win, out in self.table.items():
            if len(win) != p or any(
                not 0 <= i < len(self.input_alphabet) for i in win
            ):
                raise InputError(f"bad window {win}")
            if not 0 <= out < len(self.output_alphabet):
                raise InputError(f"bad output index {out}")
        if self.table[(self.zero_in,) * p] != self.zero_out:
            raise InputError("all-zero window must map to the zero digit")

    @property
    def p(self):
        return self.r + self.t + 1

    def input_index(self, element):
        return self._in_index.get(element.coords)

    def output_index(self, element):
        return self._out_index.get(element.coords)

    def __repr__(self):
        return (
            f"LocalRule(|B|={len(self.input_alphabet)}, "
            f"|A|={len(self.output_alphabet)}, r={self.r}, t={self.t})"
        )


class CarryCertificate:
    """Carry table psi on windows of length p - 1 (the empty window for
    p = 1), with psi(0, ..., 0) = 0."""

    def __init__(self, psi, window_length):
        self.window_length = int(window_length)
        self.psi = dict(psi)
        for win, carry in self.psi.items():
            if len(win) != self.window_length:
                raise ShapeMismatchError(
                    f"carry window {win} has length {len(win)}, "
                    f"expected {self.window_length}"
                )
            if not isinstance(carry, ring.RingElement):
                raise InputError("carries must be ring elements")

    def carry(self, window):
        return self.psi[window]

    def __repr__(self):
        return f"CarryCertificate(window_length={self.window_length}, entries={len(self.psi)})"


@dataclass(frozen=True)
class VerificationVerdict:
    status: str
    witness_word: PositionedWord | None = None
    witness_window: tuple | None = None
    checked_window_count: int = 0
    word_count: int = 0

    @property
    def ok(self):
        return self.status in (CERTIFIED_CORRECT, PASSED_BOUNDED)


def apply_rule(rule: LocalRule, w: PositionedWord) -> PositionedWord:
    """Slide the rule's window over the input word; output indices point
    into the rule's output alphabet."""
    for e, i in w.digits.items():
        if not 0 <= i < len(rule.input_alphabet):
            raise DigitNotInInputAlphabetError(
                f"digit index {i} at exponent {e} is not in the input alphabet"
            )
    if w.is_empty():
        return PositionedWord()
    lo = min(w.digits)
    hi = max(w.digits)
    out = {}
    for j in range(lo - rule.t, hi + rule.r + 1):
        window = tuple(
            w.digit_at(j + rule.t - k, rule.zero_in) for k in range(rule.p)
        )
        oi = rule.table[window]
        if oi != rule.zero_out:
            out[j] = oi
    return PositionedWord(out)


def _sum_word(rule: LocalRule, x: PositionedWord, y: PositionedWord) -> PositionedWord:
    digits = {}
    for e in set(x.digits) | set(y.digits):
        a = rule.output_alphabet[x.digit_at(e, rule.zero_out)]
        b = rule.output_alphabet[y.digit_at(e, rule.zero_out)]
        s = a + b
        bi = rule.input_index(s)
        if bi is None:
            raise InputAlphabetTooSmallError(
                f"digit sum {list(s.coords)} is outside the input alphabet"
            )
        if bi != rule.zero_in:
            digits[e] = bi
    return PositionedWord(digits)


def parallel_add(rule: LocalRule, x: PositionedWord, y: PositionedWord) -> PositionedWord:
    """Digitwise exact sum followed by the digit set conversion.

    Requires the rule's input alphabet to contain every pairwise sum of
    output digits."""
    for a in rule.output_alphabet:
        for b in rule.output_alphabet:
            if rule.input_index(a + b) is None:
                raise InputAlphabetTooSmallError(
                    "input alphabet does not contain the sums of output digits"
                )
    return apply_rule(rule, _sum_word(rule, x, y))


def _certificate_output(rule, cert, base, window):
    u0 = rule.input_alphabet[window[rule.t]]
    front = cert.carry(window[: rule.p - 1]) if rule.p > 1 else cert.carry(())
    back = cert.carry(window[1:]) if rule.p > 1 else cert.carry(())
    return u0 - base * front + back


def verify_certificate(rule: LocalRule, cert: CarryCertificate, base) -> VerificationVerdict:
    """Check the telescoping identity on every window.

    CertifiedCorrect proves exact value preservation for every finite
    input.  A violated identity refutes the certificate; the witness word
    is attached only when it also refutes the rule's value preservation."""
    if cert.window_length != rule.p - 1:
        raise ShapeMismatchError(
            f"certificate windows have length {cert.window_length}, "
            f"rule needs {rule.p - 1}"
        )
    n = len(rule.input_alphabet)
    needed = itertools.product(range(n), repeat=rule.p - 1)
    for win in needed:
        if win not in cert.psi:
            raise ShapeMismatchError(f"certificate misses carry window {win}")
    if not cert.carry((rule.zero_in,) * (rule.p - 1)).is_zero():
        return _refute_window(rule, cert, base, (rule.zero_in,) * rule.p, 0)
    checked = 0
    for window in itertools.product(range(n), repeat=rule.p):
        checked += 1
        expected = _certificate_output(rule, cert, base, window)
        actual = rule.output_alphabet[rule.table[window]]
        if expected != actual:
            return _refute_window(rule, cert, base, window, checked)
    return VerificationVerdict(CERTIFIED_CORRECT, checked_window_count=checked)


def _refute_window(rule, cert, base, window, checked):
    word = PositionedWord(
        {
            rule.t - k: idx
            for k, idx in enumerate(window)
            if idx != rule.zero_in
        }
    )
    sys_in = _system_over(rule.input_alphabet, base)
    sys_out = _system_over(rule.output_alphabet, base)
    converted = apply_rule(rule, word)
    vw, sw = value_of_word(word, sys_in)
    vz, sz = value_of_word(converted, sys_out)
    witness = word if vw * base**sz != vz * base**sw else None
    return VerificationVerdict(
        REFUTED,
        witness_word=witness,
        witness_window=window,
        checked_window_count=checked,
    )


def _system_over(alphabet, base):
    # internal value-computation shell; |sigma(base)| > 1 was certified by
    # whoever built the surrounding system
    return NumerationSystem(base.context, base, alphabet, 0)


def _prune_bounds(rule: LocalRule, base):
    """Per-embedding (lower bound of |sigma(base)|, defect ceiling) pairs for
    embeddings where the base provably exceeds 1 in modulus."""
    ctx = base.context
    out = []
    for j in range(ctx.degree):
        lb = None
        for _ in range(64):
            cand = ctx.embedding_box(base.coords, j).abs_lower()
            if cand > 1:
                lb = cand
                break
            if ctx.embedding_box(base.coords, j).abs2().hi <= 1:
                break
            ctx.refine_roots()
        if lb is None:
            continue
        amax = max(
            ctx.embedding_box(a.coords, j).abs_upper() for a in rule.output_alphabet
        )
        bmax = max(
            ctx.embedding_box(b.coords, j).abs_upper() for b in rule.input_alphabet
        )
        out.append((j, lb, (amax + bmax) / (lb - 1)))
    return out


def _defect_too_large(ctx, coords, prune, budget=24):
    for _ in range(budget):
        hit = False
        for j, _, ceiling in prune:
            box = ctx.embedding_box(coords, j)
            a2 = box.abs2()
            if a2.lo > ceiling * ceiling:
                return True
            if a2.hi > ceiling * ceiling:
                hit = True
        if not hit:
            return False
        ctx.refine_roots()
    return False


def test_rule(rule: LocalRule, base, max_len, sample_count=200, seed=20260809):
    """Decide value preservation for every word over the input alphabet with
    support in [0, max_len), plus random longer samples.

    All bounded words are covered exactly through the reachable-state space
    of (window suffix, running value defect): two prefixes reaching the
    same state have identical futures, and a defect certified to exceed
    the recovery ceiling in an expanding embedding can never telescope back
    to zero, which refutes the rule with the current prefix."""
    ctx = base.context
    nB = len(rule.input_alphabet)
    p = rule.p
    sys_in = _system_over(rule.input_alphabet, base)
    sys_out = _system_over(rule.output_alphabet, base)

    def word_from_prefix(prefix):
        return PositionedWord(
            {
                max_len - 1 - k: idx
                for k, idx in enumerate(prefix)
                if idx != rule.zero_in
            }
        )

    def value_refuted(word):
        converted = apply_rule(rule, word)
        vw, sw = value_of_word(word, sys_in)
        vz, sz = value_of_word(converted, sys_out)
        return vw * base**sz != vz * base**sw

    prune = _prune_bounds(rule, base)
    zero = ctx.zero()
    start = ((rule.zero_in,) * (p - 1), zero.coords)
    level = {start: None}
    history = [level]
    for depth in range(max_len):
        nxt = {}
        for state in level:
            suffix, defect = state
            delem = ctx.element(defect)
            for digit in range(nB):
                window = suffix + (digit,)
                out = rule.table[window]
                delta = rule.output_alphabet[out] - rule.input_alphabet[window[rule.t]]
                ndef = (base * delem + delta).coords
                nstate = (window[1:], ndef)
                if nstate in nxt:
                    continue
                nxt[nstate] = (state, digit)
                if any(c != 0 for c in ndef) and _defect_too_large(ctx, ndef, prune):
                    word = word_from_prefix(
                        _reconstruct(history + [nxt], nstate, depth + 1)
                        + (rule.zero_in,) * (max_len - depth - 1)
                    )
                    if value_refuted(word):
                        return VerificationVerdict(
                            REFUTED,
                            witness_word=word,
                            word_count=0,
                        )
        history.append(nxt)
        level = nxt
        if len(level) > 500_000:
            raise PrecisionExhaustedError("state space exploded during testing")

    for state in level:
        suffix, defect = state
        delem = ctx.element(defect)
        for _ in range(rule.r + rule.t):
            window = suffix + (rule.zero_in,)
            out = rule.table[window]
            delta = rule.output_alphabet[out] - rule.input_alphabet[window[rule.t]]
            delem = base * delem + delta
            suffix = window[1:]
        if not delem.is_zero():
            word = word_from_prefix(_reconstruct(history, state, max_len))
            assert value_refuted(word)
            return VerificationVerdict(REFUTED, witness_word=word)

    rng = random.Random(seed)
    for _ in range(sample_count):
        length = rng.randint(max_len + 1, max_len + 4)
        word = PositionedWord(
            {
                e: d
                for e in range(length)
                if (d := rng.randrange(nB)) != rule.zero_in
            }
        )
        if value_refuted(word):
            return VerificationVerdict(REFUTED, witness_word=word)
    return VerificationVerdict(
        PASSED_BOUNDED, word_count=nB**max_len + sample_count
    )


def _reconstruct(maps, state, levels):
    digits = []
    cur = state
    for lvl in range(levels, 0, -1):
        cur, digit = maps[lvl][cur]
        digits.append(digit)
    return tuple(reversed(digits))


@dataclass(frozen=True)
class LintFinding:
    kind: str  # "constant_window_congruence" | "extremal" | "notice"
    detail: str
    window_digit: tuple | None = None
    output_digit: tuple | None = None


def lint_rule(rule: LocalRule, sys: NumerationSystem):
    """Necessary-condition findings for a parallel-addition rule.

    (i) On every constant window over a pairwise digit sum b, the output
    must be congruent to b modulo base-1.  (ii) With a positive real
    conjugate of the base, the extremal output digits are forbidden as
    outputs of the quoted constant windows.  A certificate-verified rule
    can never produce a type (i) finding."""
    if sys.context is not rule.context:
        raise InputError("rule and system live in different ring contexts")
    findings = []
    sums = {}
    for a in rule.output_alphabet:
        for b in rule.output_alphabet:
            s = a + b
            sums.setdefault(s.coords, s)
    order = sorted(sums)
    cs = sys.congruence_base_minus_one()
    missing_inputs = False
    for coords in order:
        s = sums[coords]
        bi = rule.input_index(s)
        if bi is None:
            missing_inputs = True
            continue
        out = rule.output_alphabet[rule.table[(bi,) * rule.p]]
        if not cg.congruent(out, s, cs):
            findings.append(
                LintFinding(
                    "constant_window_congruence",
                    "constant window output lands in a different class modulo base-1",
                    coords,
                    out.coords,
                )
            )
    if missing_inputs:
        findings.append(
            LintFinding(
                "notice",
                "input alphabet does not contain every pairwise sum of output "
                "digits; such windows were skipped",
            )
        )

    j, reason = _positive_real_embedding(
        sys, rule.output_alphabet + rule.input_alphabet
    )
    if j is None:
        findings.append(
            LintFinding("notice", f"extremal checks skipped: {reason}")
        )
        return findings
    ordered = order_digits_by_embedding(sys, rule.output_alphabet, j)
    lam, big = ordered[0], ordered[-1]
    ctx = sys.context

    def sign_of(elem):
        return ring.embedding_sign_real(ctx, elem.coords, j)

    for coords in order:
        s = sums[coords]
        bi = rule.input_index(s)
        if bi is None:
            continue
        out = rule.output_alphabet[rule.table[(bi,) * rule.p]]
        cmp_lam = ring.compare_real_embeddings(ctx, s.coords, lam.coords, j)
        cmp_big = ring.compare_real_embeddings(ctx, s.coords, big.coords, j)
        sgn = sign_of(s)
        if out == lam and cmp_lam > 0 and (sgn >= 0 or rule.t == 0):
            findings.append(
                LintFinding(
                    "extremal",
                    "constant window above the minimal digit may not output it",
                    coords,
                    out.coords,
                )
            )
        if out == big and cmp_big < 0 and (sgn <= 0 or rule.t == 0):
            findings.append(
                LintFinding(
                    "extremal",
                    "constant window below the maximal digit may not output it",
                    coords,
                    out.coords,
                )
            )
    for extremal, name in ((big, "maximal"), (lam, "minimal")):
        if extremal.is_zero():
            continue
        bi = rule.input_index(extremal)
        if bi is None:
            continue
        out = rule.output_alphabet[rule.table[(bi,) * rule.p]]
        if out == extremal:
            findings.append(
                LintFinding(
                    "extremal",
                    f"the nonzero {name} digit maps its own constant window to itself",
                    extremal.coords,
                    out.coords,
                )
            )
    return findings


def conjugate_transfer(rule: LocalRule, sys: NumerationSystem, new_embedding_index):
    """Rebind the rule to another embedding of the same ring.

    Field conjugation fixes integer coordinates, so the table transfers
    verbatim; the target embedding of the base must still certify as
    greater than 1 in modulus, and any certificate must be re-verified by
    the caller."""
    ctx = sys.context
    new_embedding_index = int(new_embedding_index)
    if not 0 <= new_embedding_index < ctx.degree:
        raise InputError("embedding index out of range")
    verdict = ring.embedding_modulus_vs_one(ctx, sys.base.coords, new_embedding_index)
    if verdict != "gt":
        raise TargetEmbeddingNotGreaterThanOneError(
            "target embedding of the base does not exceed 1 in modulus"
        )
    new_sys = NumerationSystem(ctx, sys.base, sys.alphabet, new_embedding_index)
    return rule, new_sys


def _pairwise_sums(alphabet):
    sums = {}
    for a in alphabet:
        for b in alphabet:
            s = a + b
            sums.setdefault(s.coords, s)
    return [sums[c] for c in sorted(sums)]


def search_rule(sys: NumerationSystem, r_max, t_max, carry_coord_bound):
    """Deterministic backtracking search for a certified parallel-addition
    rule over the doubled alphabet, trying (r, t) in increasing
    (r + t, r) order.

    Carries range over ring elements with coordinates bounded by
    carry_coord_bound.  NotFound (None) only states that the searched
    bounds hold no certificate, never that no rule exists."""
    ctx = sys.context
    alphabet = sys.alphabet
    b_elems = _pairwise_sums(alphabet)
    a_index = {a.coords: i for i, a in enumerate(alphabet)}
    bound = int(carry_coord_bound)
    if bound < 0 or r_max < 0 or t_max < 0:
        raise InputError("search bounds must be nonnegative")
    carry_pool = [
        ctx.element(c)
        for c in itertools.product(range(-bound, bound + 1), repeat=ctx.degree)
    ]
    zero_q = next(i for i, q in enumerate(carry_pool) if q.is_zero())
    base_times = [sys.base * q for q in carry_pool]

    for s in range(r_max + t_max + 1):
        for r in range(min(s, r_max) + 1):
            t = s - r
            if t > t_max:
                continue
            found = _search_fixed(
                sys, b_elems, a_index, carry_pool, base_times, zero_q, r, t
            )
            if found is not None:
                return found
    return None


def _search_fixed(sys, b_elems, a_index, carry_pool, base_times, zero_q, r, t):
    ctx = sys.context
    nB = len(b_elems)
    nQ = len(carry_pool)
    zero_b = next(i for i, b in enumerate(b_elems) if b.is_zero())
    m = r + t
    keys = list(itertools.product(range(nB), repeat=m))
    key_pos = {k: i for i, k in enumerate(keys)}
    nvars = len(keys)

    # feasible(u0, qf, qb): u0 - base*carry[qf] + carry[qb] lands in the alphabet
    out_of = [
        [
            [
                a_index.get((b_elems[u0] - base_times[qf] + carry_pool[qb]).coords)
                for qb in range(nQ)
            ]
            for qf in range(nQ)
        ]
        for u0 in range(nB)
    ]

    domains = [list(range(nQ)) for _ in keys]
    if m > 0:
        domains[key_pos[(zero_b,) * m]] = [zero_q]
    if m == 0:
        # a single empty-window carry pinned at zero: the rule is the identity
        # restricted to digits already in the alphabet
        table = {}
        for u0 in range(nB):
            oi = out_of[u0][zero_q][zero_q]
            if oi is None:
                return None
            table[(u0,)] = oi
        rule = LocalRule(b_elems, sys.alphabet, 0, 0, table)
        cert = CarryCertificate({(): ctx.zero()}, 0)
        assert verify_certificate(rule, cert, sys.base).status == CERTIFIED_CORRECT
        return rule, cert

    constraints = []
    for window in itertools.product(range(nB), repeat=m + 1):
        front = key_pos[window[:m]]
        back = key_pos[window[1:]]
        constraints.append((window[t], front, back))

    # arc consistency: drop carry values with no compatible partner anywhere
    changed = True
    while changed:
        changed = False
        for u0, front, back in constraints:
            feas = out_of[u0]
            dom_f = domains[front]
            dom_b = domains[back]
            keep_f = [
                qf for qf in dom_f if any(feas[qf][qb] is not None for qb in dom_b)
            ]
            if len(keep_f) != len(dom_f):
                domains[front] = keep_f
                changed = True
                if not keep_f:
                    return None
            dom_f = domains[front]
            keep_b = [
                qb for qb in dom_b if any(feas[qf][qb] is not None for qf in dom_f)
            ]
            if len(keep_b) != len(dom_b):
                domains[back] = keep_b
                changed = True
                if not keep_b:
                    return None

    by_latest = [[] for _ in keys]
    for u0, front, back in constraints:
        by_latest[max(front, back)].append((u0, front, back))

    assignment = [None] * nvars

    def consistent(i):
        for u0, front, back in by_latest[i]:
            if out_of[u0][assignment[front]][assignment[back]] is None:
                return False
        return True

    def backtrack(i):
        if i == nvars:
            return True
        for q in domains[i]:
            assignment[i] = q
            if consistent(i) and backtrack(i + 1):
                return True
        assignment[i] = None
        return False

    if not backtrack(0):
        return None

    table = {}
    for window in itertools.product(range(nB), repeat=m + 1):
        front = assignment[key_pos[window[:m]]]
        back = assignment[key_pos[window[1:]]]
        table[window] = out_of[window[t]][front][back]
    rule = LocalRule(b_elems, sys.alphabet, r, t, table)
    cert = CarryCertificate(
        {k: carry_pool[assignment[i]] for i, k in enumerate(keys)}, m
    )
    assert verify_certificate(rule, cert, sys.base).status == CERTIFIED_CORRECT
    return rule, cert
