"""JSON schemas for systems, words, rules and reports.

All ring integers (polynomial coefficients, coordinates, matrix entries,
class counts) are serialized as decimal strings so consumers without big
integers cannot silently overflow.  Small structural integers (exponents,
indices, window entries, r, t, k) stay JSON numbers.  Unknown keys are
rejected everywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .conversion import CarryCertificate, LocalRule
from .errors import InputError
from .numsystem import NumerationSystem, PositionedWord, build_system
from .ring import DEFAULT_PRECISION


def _require_mapping(obj, what, required, optional=()):
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise InputError(f"{what} has unknown keys: {sorted(unknown)}")
    missing = set(required) - set(obj)
    if missing:
        raise InputError(f"{what} is missing keys: {sorted(missing)}")


def _to_int(v, what):
    if isinstance(v, bool):
        raise InputError(f"{what} must be an integer")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            raise InputError(f"{what} is not a decimal integer: {v!r}") from None
    raise InputError(f"{what} must be an integer or decimal string")


def _to_index(v, what):
    n = _to_int(v, what)
    if n < 0:
        raise InputError(f"{what} must be nonnegative")
    return n


def int_str(n) -> str:
    return str(int(n))


def ints_to_json(seq):
    return [int_str(c) for c in seq]


def ints_from_json(obj, what):
    if not isinstance(obj, list):
        raise InputError(f"{what} must be a JSON array")
    return tuple(_to_int(v, what) for v in obj)


def fraction_to_json(f: Fraction) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def fraction_from_json(obj, what) -> Fraction:
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{what} is not a rational: {obj!r}") from None
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    raise InputError(f"{what} must be a rational string like '1/1000000'")


def matrix_to_json(m):
    return [[int_str(x) for x in row] for row in m.entries]


def system_to_json(sys: NumerationSystem) -> dict:
    return {
        "min_poly": ints_to_json(sys.context.min_poly),
        "base": ints_to_json(sys.base.coords),
        "alphabet": [ints_to_json(a.coords) for a in sys.alphabet],
        "embedding_index": sys.embedding_index,
        "precision": fraction_to_json(sys.context.precision),
    }


def system_from_json(obj, precision=None) -> NumerationSystem:
    _require_mapping(
        obj,
        "system file",
        ("min_poly", "base", "alphabet"),
        ("embedding_index", "precision"),
    )
    if precision is None:
        precision = (
            fraction_from_json(obj["precision"], "precision")
            if "precision" in obj
            else DEFAULT_PRECISION
        )
    if not isinstance(obj["alphabet"], list):
        raise InputError("alphabet must be an array of coordinate arrays")
    return build_system(
        ints_from_json(obj["min_poly"], "min_poly"),
        ints_from_json(obj["base"], "base"),
        [ints_from_json(a, "alphabet digit") for a in obj["alphabet"]],
        _to_index(obj.get("embedding_index", 0), "embedding_index"),
        precision,
    )


def word_to_json(w: PositionedWord) -> dict:
    return {
        "digits": [
            {"exp": e, "digit": i} for e, i in sorted(w.digits.items(), reverse=True)
        ]
    }


def word_from_json(obj) -> PositionedWord:
    _require_mapping(obj, "word file", ("digits",))
    if not isinstance(obj["digits"], list):
        raise InputError("digits must be an array")
    digits = {}
    for item in obj["digits"]:
        _require_mapping(item, "word digit", ("exp", "digit"))
        e = _to_int(item["exp"], "exp")
        digits[e] = _to_index(item["digit"], "digit")
    return PositionedWord(digits)


def rule_to_json(rule: LocalRule, cert: CarryCertificate | None = None) -> dict:
    out = {
        "r": rule.r,
        "t": rule.t,
        "input_alphabet": [ints_to_json(a.coords) for a in rule.input_alphabet],
        "output_alphabet": [ints_to_json(a.coords) for a in rule.output_alphabet],
        "table": [
            {"window": list(win), "out": rule.table[win]}
            for win in sorted(rule.table)
        ],
    }
    if cert is not None:
        out["certificate"] = {
            "psi": [
                {"window": list(win), "carry": ints_to_json(cert.psi[win].coords)}
                for win in sorted(cert.psi)
            ]
        }
    return out


def rule_from_json(obj, context):
    """Parse a rule file against an existing ring context; returns
    (rule, certificate or None)."""
    _require_mapping(
        obj,
        "rule file",
        ("r", "t", "input_alphabet", "output_alphabet", "table"),
        ("certificate",),
    )
    r = _to_index(obj["r"], "r")
    t = _to_index(obj["t"], "t")
    input_alphabet = [
        context.element(ints_from_json(a, "input digit")) for a in obj["input_alphabet"]
    ]
    output_alphabet = [
        context.element(ints_from_json(a, "output digit"))
        for a in obj["output_alphabet"]
    ]
    if not isinstance(obj["table"], list):
        raise InputError("table must be an array")
    table = {}
    for item in obj["table"]:
        _require_mapping(item, "table entry", ("window", "out"))
        if not isinstance(item["window"], list):
            raise InputError("window must be an array of digit indices")
        win = tuple(_to_index(i, "window index") for i in item["window"])
        if win in table:
            raise InputError(f"duplicate table window {list(win)}")
        table[win] = _to_index(item["out"], "out")
    rule = LocalRule(input_alphabet, output_alphabet, r, t, table)
    cert = None
    if "certificate" in obj:
        _require_mapping(obj["certificate"], "certificate", ("psi",))
        if not isinstance(obj["certificate"]["psi"], list):
            raise InputError("psi must be an array")
        psi = {}
        for item in obj["certificate"]["psi"]:
            _require_mapping(item, "carry entry", ("window", "carry"))
            win = tuple(_to_index(i, "carry window index") for i in item["window"])
            if win in psi:
                raise InputError(f"duplicate carry window {list(win)}")
            psi[win] = context.element(ints_from_json(item["carry"], "carry"))
        cert = CarryCertificate(psi, rule.p - 1)
    return rule, cert


def word_is_valid_for(word: PositionedWord, alphabet_len: int):
    for e, i in word.digits.items():
        if i >= alphabet_len:
            raise InputError(
                f"digit index {i} at exponent {e} exceeds the alphabet size"
            )
