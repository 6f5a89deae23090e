"""Exact analysis of redundant positional numeration systems: companion
matrix arithmetic in Z[w], congruence class counting, parallel-addition
rule verification and synthesis, and k-block transforms."""

__version__ = "0.1.0"

from .congruence import CongruenceStructure, canonical_form, class_count, congruent, representatives
from .conversion import (
    CERTIFIED_CORRECT,
    PASSED_BOUNDED,
    REFUTED,
    CarryCertificate,
    LocalRule,
    VerificationVerdict,
    apply_rule,
    conjugate_transfer,
    lint_rule,
    parallel_add,
    search_rule,
    test_rule,
    verify_certificate,
)
from .errors import ParnumError
from .intmat import IntegerMatrix, SNFDecomposition, char_poly, smith_normal_form
from .numsystem import (
    AnalysisReport,
    NumerationSystem,
    PositionedWord,
    analyze,
    block_words,
    build_system,
    check_expanding,
    check_extremal_digit_conditions,
    check_representatives,
    k_block,
    lower_bound,
    member_representation,
    parallel_addition_possible,
    ring_equality,
    value_of_word,
    words_equal_value,
)
from .poly import count_positive_real_roots, count_unit_circle_roots
from .ring import (
    RingContext,
    RingElement,
    embedding_values,
    exact_divide,
    make_context,
    minimal_polynomial,
    multiplication_matrix,
    ring_arith,
)
