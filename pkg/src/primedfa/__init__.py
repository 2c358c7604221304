"""Regular-language primality toolkit.

Decides whether a DFA's language can be written as an intersection of
languages of strictly smaller DFAs (composite) or not (prime), constructs
explicit decompositions for the composite minimal linear safety ADFA+s,
and compiles CNF satisfiability into the primality question.  A
brute-force oracle provides independent verification at desk scale.
"""

from . import errors
from .classify import ClassReport, LinearProfile, classify, linear_profile
from .decompose import (
    Decomposition,
    PumpGadget,
    PumpIndices,
    SkipState,
    VerifyReport,
    build_a_i_plus,
    build_a_w_i_j,
    choose_pump_indices,
    decompose_mls,
    safetyfy,
    verify_decomposition,
)
from .dfa import (
    Dfa,
    accepts,
    dfa_from_json,
    index,
    language_equal,
    language_subset,
    load_dfa,
    minimize,
    product_intersection,
    run,
    run_from,
    save_dfa,
    separating_word,
    to_canonical_json,
)
from .oracle import (
    GENERAL,
    SAFETY_RESTRICTED,
    GenConfig,
    OracleConfig,
    brute_force_composite,
    generate_adfa_plus,
    generate_mls,
    qualifying_candidates,
)
from .primality import (
    COMPOSITE,
    PRIME,
    PrimalityVerdict,
    Pumping,
    breaks_pp,
    decide_primality_mls,
    l_prime,
    max_visiting_words,
    pp_condition_holds,
    pump,
)
from .reduction import (
    TRIVIALLY_SAT,
    TRIVIALLY_UNSAT,
    Assignment,
    CnfFormula,
    NormalizedCnf,
    TriviallySat,
    TriviallyUnsat,
    build_cnf_dfa,
    clause_row_check,
    eval_formula,
    normalize,
    parse_dimacs,
    solve_sat_via_primality,
)

__version__ = "0.1.0"
