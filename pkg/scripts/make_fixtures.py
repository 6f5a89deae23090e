"""Regenerate the JSON fixtures bundled with the repository."""

import json
import pathlib

from parnum import conversion as cv
from parnum import numsystem as ns
from parnum import rules
from parnum import serialize as io

HERE = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def dump(name, obj):
    path = HERE / name
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
    print("wrote", path)


def main():
    HERE.mkdir(exist_ok=True)

    sys10, rule10, cert10 = rules.avizienis_base10()
    dump("base10_threshold.system.json", io.system_to_json(sys10))
    dump("base10_threshold.rule.json", io.rule_to_json(rule10, cert10))

    sys5, rule5, cert5 = rules.sqrt5_interleaved()
    dump("sqrt5_interleaved.system.json", io.system_to_json(sys5))
    dump("sqrt5_interleaved.rule.json", io.rule_to_json(rule5, cert5))

    golden = ns.build_system(
        (-1, -1, 1),
        (1, -2),
        [(-2, 0), (-1, 0), (0, 0), (1, 0), (2, 0), (3, 0)],
        embedding_index=1,
    )
    dump("conclusion_sqrt5.system.json", io.system_to_json(golden))

    salem = ns.build_system(
        (1, -1, -1, -1, 1), (0, 1, 0, 0), [(0, 0, 0, 0), (1, 0, 0, 0), (-1, 0, 0, 0)],
        embedding_index=3,
    )
    dump("salem.system.json", io.system_to_json(salem))

    s012 = ns.build_system((-2, 1), (2,), [(0,), (1,), (2,)])
    dump("base2_zero_one_two.system.json", io.system_to_json(s012))
    found = cv.search_rule(s012, 2, 2, 2)
    assert found
    dump("base2_zero_one_two.rule.json", io.rule_to_json(*found))

    sgn = ns.build_system((-2, 1), (2,), [(-1,), (0,), (1,)])
    dump("base2_signed.system.json", io.system_to_json(sgn))
    found = cv.search_rule(sgn, 2, 2, 1)
    assert found
    dump("base2_signed.rule.json", io.rule_to_json(*found))

    # demo words over the base-10 alphabet (digit values 6 and -4: 6 = index
    # of value 0 shifts with the alphabet order, so look indices up)
    six = next(i for i, a in enumerate(rule10.output_alphabet) if a.coords == (6,))
    minus4 = next(i for i, a in enumerate(rule10.output_alphabet) if a.coords == (-4,))
    dump("word_66.word.json", io.word_to_json(ns.PositionedWord({1: six, 0: six})))
    dump("word_m4.word.json", io.word_to_json(ns.PositionedWord({0: minus4})))


if __name__ == "__main__":
    main()
