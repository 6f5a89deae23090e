"""Command-line front end: loads system/rule/word files, dispatches the
analyses and emits machine-readable JSON reports.

Exit codes: 0 pass/found, 1 fail/refuted/not-found, 2 invalid input,
3 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
import time

from . import __version__
from . import congruence as cg
from . import conversion as cv
from . import numsystem as ns
from . import serialize as io
from .errors import InputError, ParnumError, PrecisionExhaustedError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_PRECISION = 3


def _load_json(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: parse error at byte {exc.pos}: {exc.msg}") from None


def _load_system(args):
    precision = None
    if getattr(args, "precision", None):
        precision = io.fraction_from_json(args.precision, "--precision")
    return io.system_from_json(_load_json(args.system), precision)


def _load_rule(args, sys):
    return io.rule_from_json(_load_json(args.rule), sys.context)


def _coverage_json(mc):
    return {
        "modulus": mc.modulus_name,
        "class_count": io.int_str(mc.class_count),
        "hits": [
            {"class": list(k), "digits": list(v)} for k, v in sorted(mc.hits.items())
        ],
        "missing_classes": [list(m) for m in mc.missing],
        "passed": mc.passed,
    }


def _extremal_json(ex):
    out = {"status": ex.status}
    if ex.reason:
        out["reason"] = ex.reason
    if ex.minimal_digit is not None:
        out["minimal_digit"] = io.ints_to_json(ex.minimal_digit)
        out["maximal_digit"] = io.ints_to_json(ex.maximal_digit)
    if ex.witnesses:
        out["witnesses"] = [io.ints_to_json(w) for w in ex.witnesses]
    return out


def _verdict_json(v):
    out = {"status": v.status}
    if v.witness_word is not None:
        out["witness_word"] = io.word_to_json(v.witness_word)
    if v.witness_window is not None:
        out["witness_window"] = list(v.witness_window)
    if v.checked_window_count:
        out["checked_windows"] = v.checked_window_count
    if v.word_count:
        out["covered_words"] = io.int_str(v.word_count)
    return out


def _cmd_analyze(args):
    system = _load_system(args)
    rep = ns.analyze(system)
    verdicts = {
        "expanding": rep.expanding,
        "unit_modulus_conjugate": rep.unit_modulus_conjugate,
        "positive_real_conjugate": rep.positive_real_conjugate,
        "parallel_addition_possible": rep.parallel_addition.possible,
        "unit_circle_root_count": rep.parallel_addition.unit_circle_roots,
        "class_count_base": io.int_str(rep.class_count_base),
        "class_count_base_minus_one": io.int_str(rep.class_count_base_minus_one),
        "lower_bound": {
            "abs_m_at_zero": io.int_str(rep.lower_bound.abs_m_at_zero),
            "abs_m_at_one": io.int_str(rep.lower_bound.abs_m_at_one),
            "bound": io.int_str(rep.lower_bound.bound),
            "caveat": rep.lower_bound.caveat,
        },
        "representative_coverage": {
            "base": _coverage_json(rep.representative_coverage.base),
            "base_minus_one": _coverage_json(rep.representative_coverage.base_minus_one),
            "passed": rep.representative_coverage.passed,
        },
        "extremal_digit_conditions": _extremal_json(rep.extremal),
    }
    if rep.parallel_addition.note:
        verdicts["note"] = rep.parallel_addition.note
    ok = rep.representative_coverage.passed and rep.extremal.status != "fail"
    return verdicts, list(rep.warnings), EXIT_PASS if ok else EXIT_FAIL


def _cmd_classes(args):
    system = _load_system(args)
    cs = (
        system.congruence_base()
        if args.modulus == "base"
        else system.congruence_base_minus_one()
    )
    reps = cg.representatives(cs)
    verdicts = {
        "modulus": args.modulus,
        "modulus_coords": io.ints_to_json(cs.modulus.coords),
        "class_count": io.int_str(cg.class_count(cs)),
        "representatives": [io.ints_to_json(r.coords) for r in reps],
    }
    return verdicts, list(system.context.warnings), EXIT_PASS


def _cmd_verify_rule(args):
    system = _load_system(args)
    rule, cert = _load_rule(args, system)
    if cert is None:
        raise InputError("rule file carries no certificate to verify")
    verdict = cv.verify_certificate(rule, cert, system.base)
    code = EXIT_PASS if verdict.status == cv.CERTIFIED_CORRECT else EXIT_FAIL
    return {"verification": _verdict_json(verdict)}, list(system.context.warnings), code


def _cmd_test_rule(args):
    system = _load_system(args)
    rule, _ = _load_rule(args, system)
    verdict = cv.test_rule(rule, system.base, args.max_len, args.samples)
    code = EXIT_PASS if verdict.status == cv.PASSED_BOUNDED else EXIT_FAIL
    return {"bounded_test": _verdict_json(verdict)}, list(system.context.warnings), code


def _cmd_lint_rule(args):
    system = _load_system(args)
    rule, _ = _load_rule(args, system)
    findings = cv.lint_rule(rule, system)
    real = [f for f in findings if f.kind != "notice"]
    out = []
    for f in findings:
        item = {"kind": f.kind, "detail": f.detail}
        if f.window_digit is not None:
            item["window_digit"] = io.ints_to_json(f.window_digit)
        if f.output_digit is not None:
            item["output_digit"] = io.ints_to_json(f.output_digit)
        out.append(item)
    code = EXIT_PASS if not real else EXIT_FAIL
    return {"findings": out}, list(system.context.warnings), code


def _cmd_search_rule(args):
    system = _load_system(args)
    found = cv.search_rule(system, args.r_max, args.t_max, args.carry_bound)
    if found is None:
        verdicts = {
            "found": False,
            "note": "no certificate within the searched bounds; not a nonexistence proof",
        }
        return verdicts, list(system.context.warnings), EXIT_FAIL
    rule, cert = found
    verdicts = {"found": True, "rule": io.rule_to_json(rule, cert)}
    return verdicts, list(system.context.warnings), EXIT_PASS


def _cmd_add(args):
    system = _load_system(args)
    rule, _ = _load_rule(args, system)
    x = io.word_from_json(_load_json(args.x))
    y = io.word_from_json(_load_json(args.y))
    io.word_is_valid_for(x, len(rule.output_alphabet))
    io.word_is_valid_for(y, len(rule.output_alphabet))
    z = cv.parallel_add(rule, x, y)
    out_sys = ns.NumerationSystem(
        system.context, system.base, rule.output_alphabet, system.embedding_index
    )
    vx, sx = ns.value_of_word(x, out_sys)
    vy, sy = ns.value_of_word(y, out_sys)
    vz, sz = ns.value_of_word(z, out_sys)
    b = system.base
    exact = vz * b ** (sx + sy) == (vx * b**sy + vy * b**sx) * b**sz
    verdicts = {"sum_word": io.word_to_json(z), "value_preserved": exact}
    return verdicts, list(system.context.warnings), EXIT_PASS if exact else EXIT_FAIL


def _cmd_convert(args):
    system = _load_system(args)
    rule, _ = _load_rule(args, system)
    w = io.word_from_json(_load_json(args.word))
    io.word_is_valid_for(w, len(rule.input_alphabet))
    z = cv.apply_rule(rule, w)
    return (
        {"converted_word": io.word_to_json(z)},
        list(system.context.warnings),
        EXIT_PASS,
    )


def _cmd_kblock(args):
    system = _load_system(args)
    kb = ns.k_block(system, args.k)
    verdicts = {"k": args.k, "system": io.system_to_json(kb)}
    return verdicts, list(system.context.warnings), EXIT_PASS


def _cmd_member(args):
    system = _load_system(args)
    try:
        coords = tuple(int(c) for c in args.coords.split(","))
    except ValueError:
        raise InputError(f"--coords must be comma-separated integers: {args.coords!r}")
    x = system.context.element(coords)
    word = ns.member_representation(system, x)
    if word is None:
        return (
            {"representable": False, "element": io.ints_to_json(coords)},
            list(system.context.warnings),
            EXIT_FAIL,
        )
    verdicts = {
        "representable": True,
        "element": io.ints_to_json(coords),
        "word": io.word_to_json(word),
    }
    return verdicts, list(system.context.warnings), EXIT_PASS


def _cmd_ring_eq(args):
    system = _load_system(args)
    rep = ns.ring_equality(system)
    verdicts = {"equal": rep.equal}
    if not rep.equal:
        verdicts["witness_kind"] = rep.witness_kind
        verdicts["witness"] = io.ints_to_json(rep.witness)
    return verdicts, list(system.context.warnings), EXIT_PASS if rep.equal else EXIT_FAIL


def _cmd_transfer(args):
    system = _load_system(args)
    rule, cert = _load_rule(args, system)
    rule2, sys2 = cv.conjugate_transfer(rule, system, args.embedding_index)
    verdicts = {
        "system": io.system_to_json(sys2),
        "rule": io.rule_to_json(rule2, cert),
    }
    code = EXIT_PASS
    if cert is not None:
        verdict = cv.verify_certificate(rule2, cert, sys2.base)
        verdicts["reverification"] = _verdict_json(verdict)
        if verdict.status != cv.CERTIFIED_CORRECT:
            code = EXIT_FAIL
    warnings = list(system.context.warnings)
    if cert is None:
        warnings.append("rule has no certificate; transfer was not re-verified")
    return verdicts, warnings, code


_COMMANDS = {
    "analyze": _cmd_analyze,
    "classes": _cmd_classes,
    "verify-rule": _cmd_verify_rule,
    "test-rule": _cmd_test_rule,
    "lint-rule": _cmd_lint_rule,
    "search-rule": _cmd_search_rule,
    "add": _cmd_add,
    "convert": _cmd_convert,
    "kblock": _cmd_kblock,
    "member": _cmd_member,
    "ring-eq": _cmd_ring_eq,
    "transfer": _cmd_transfer,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="parnum",
        description="Exact analysis of redundant numeration systems and "
        "parallel-addition rules.",
    )
    parser.add_argument("--version", action="version", version=f"parnum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, rule=False, opts=()):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--system", required=True, help="system JSON file")
        p.add_argument("--precision", help="interval half-width, e.g. 1/1000000")
        p.add_argument("--out", help="write the report to this path instead of stdout")
        if rule:
            p.add_argument("--rule", required=True, help="rule JSON file")
        for args_, kwargs in opts:
            p.add_argument(*args_, **kwargs)
        return p

    add("analyze", "run the full admissibility analysis")
    add(
        "classes",
        "list congruence class representatives",
        opts=[
            (
                ("--modulus",),
                {"choices": ("base", "base-minus-one"), "default": "base"},
            )
        ],
    )
    add("verify-rule", "check a rule's carry certificate exactly", rule=True)
    add(
        "test-rule",
        "exhaustive bounded + random value-preservation tests",
        rule=True,
        opts=[
            (("--max-len",), {"type": int, "default": 6}),
            (("--samples",), {"type": int, "default": 200}),
        ],
    )
    add("lint-rule", "necessary-condition lints for a rule", rule=True)
    add(
        "search-rule",
        "bounded deterministic search for a certified rule",
        opts=[
            (("--r-max",), {"type": int, "default": 2}),
            (("--t-max",), {"type": int, "default": 2}),
            (("--carry-bound",), {"type": int, "default": 2}),
        ],
    )
    add(
        "add",
        "parallel addition of two words over the rule's output alphabet",
        rule=True,
        opts=[
            (("--x",), {"required": True, "help": "first word JSON file"}),
            (("--y",), {"required": True, "help": "second word JSON file"}),
        ],
    )
    add(
        "convert",
        "apply a digit set conversion to a word",
        rule=True,
        opts=[(("--word",), {"required": True, "help": "word JSON file"})],
    )
    add("kblock", "k-block transformation", opts=[(("--k",), {"type": int, "required": True})])
    add(
        "member",
        "search for a nonnegative-power representation of an element",
        opts=[(("--coords",), {"required": True, "help": "comma-separated coordinates"})],
    )
    add("ring-eq", "decide whether the representable set is the whole ring")
    add(
        "transfer",
        "rebind a rule to another embedding and re-verify",
        rule=True,
        opts=[(("--embedding-index",), {"type": int, "required": True})],
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    report = {"command": args.command, "version": __version__}
    try:
        verdicts, warnings, code = _COMMANDS[args.command](args)
        report["verdicts"] = verdicts
        report["warnings"] = warnings
    except PrecisionExhaustedError as exc:
        report["error"] = {"type": "PrecisionExhausted", "message": str(exc)}
        report["warnings"] = []
        code = EXIT_PRECISION
    except InputError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["warnings"] = []
        code = EXIT_INVALID
    except ParnumError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["warnings"] = []
        code = EXIT_FAIL
    report["timing_seconds"] = round(time.perf_counter() - started, 6)
    text = json.dumps(report, indent=2, sort_keys=False)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def entry():
    _sys.exit(main())


if __name__ == "__main__":
    entry()
