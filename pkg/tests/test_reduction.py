import itertools

import pytest

import helpers
from primedfa import (
    Assignment,
    CnfFormula,
    TriviallySat,
    accepts,
    build_cnf_dfa,
    classify,
    clause_row_check,
    eval_formula,
    minimize,
    normalize,
    parse_dimacs,
    run,
    solve_sat_via_primality,
)
from primedfa.errors import (
    ClauseCountMismatch,
    IndexOutOfRange,
    LiteralOutOfRange,
    MalformedHeader,
    NoVariables,
    VariableOutOfRange,
)

PHI0 = CnfFormula(2, ((1, -2), (2,)))
CONTRADICTION = CnfFormula(1, ((1,), (-1,)))


# -- DIMACS parsing -------------------------------------------------------------

def test_parse_dimacs_phi0():
    formula = parse_dimacs("p cnf 2 2\n1 -2 0\n2 0\n")
    assert formula == PHI0


def test_parse_dimacs_contradiction():
    assert parse_dimacs("p cnf 1 2\n1 0\n-1 0\n") == CONTRADICTION


def test_parse_dimacs_duplicate_literal_kept():
    formula = parse_dimacs("p cnf 2 1\n1 1 0\n")
    assert formula.clauses == ((1, 1),)


def test_parse_dimacs_comments_and_multiline_clauses():
    formula = parse_dimacs("c header comment\np cnf 3 1\n1 2\n3 0\n")
    assert formula.clauses == ((1, 2, 3),)


def test_parse_dimacs_errors():
    with pytest.raises(MalformedHeader):
        parse_dimacs("p dnf 1 1\n1 0\n")
    with pytest.raises(MalformedHeader):
        parse_dimacs("1 0\n")
    with pytest.raises(LiteralOutOfRange):
        parse_dimacs("p cnf 1 1\n2 0\n")
    with pytest.raises(ClauseCountMismatch):
        parse_dimacs("p cnf 1 2\n1 0\n")
    with pytest.raises(ClauseCountMismatch):
        parse_dimacs("p cnf 1 1\n1\n")


# -- normalization ----------------------------------------------------------------

def test_normalize_phi0():
    n = normalize(PHI0)
    assert (n.r, n.s) == (2, 2)
    assert n.grid == ((1, 0), (None, 1))
    assert n.kappa == 11


def test_normalize_tautology_is_trivially_sat():
    assert isinstance(normalize(CnfFormula(1, ((1, -1),))), TriviallySat)


def test_normalize_contradiction():
    n = normalize(CONTRADICTION)
    assert (n.r, n.s) == (1, 2)
    assert n.grid == ((1,), (0,))
    assert n.kappa == 7


def test_normalize_deduplicates_and_keeps_empty_rows():
    n = normalize(CnfFormula(2, ((1, 1), ())))
    assert n.grid == ((1, None), (None, None))


def test_normalize_requires_variables():
    with pytest.raises(NoVariables):
        normalize(CnfFormula(0, ((),)))


def test_literal_out_of_range_on_construction():
    with pytest.raises(LiteralOutOfRange):
        CnfFormula(1, ((2,),))


# -- automaton construction -------------------------------------------------------

def test_build_phi0_shape():
    dfa = build_cnf_dfa(normalize(PHI0))
    assert dfa.num_states == 16
    report = classify(dfa)
    assert report.is_mls_adfa_plus
    assert report.lin == 13
    assert dfa.alphabet == ("0", "1", "c", "d")
    assert minimize(dfa).num_states == 16


def test_build_contradiction_shape():
    dfa = build_cnf_dfa(normalize(CONTRADICTION))
    assert dfa.num_states == 11


def test_build_phi0_assignment_device_runs():
    dfa = build_cnf_dfa(normalize(PHI0))
    assert dfa.name_of(run(dfa, "11")) == "p2"
    assert dfa.name_of(run(dfa, "11d")) == "pc0"


def test_built_dfa_is_minimal_by_table_filling():
    dfa = build_cnf_dfa(normalize(PHI0))
    assert helpers.table_filling_state_count(dfa) == dfa.num_states


def test_kappa_matches_lin():
    for formula in helpers.cnf_corpus(40, seed=5):
        n = normalize(formula)
        if isinstance(n, TriviallySat):
            continue
        dfa = build_cnf_dfa(n)
        report = classify(dfa)
        assert report.is_mls_adfa_plus
        assert report.lin == n.r + 1 + n.s * (2 * n.r + 1)
        assert n.kappa == report.lin - n.r


# -- clause rows -------------------------------------------------------------------

def test_clause_row_check_examples():
    n = normalize(PHI0)
    dfa = build_cnf_dfa(n)
    assert clause_row_check(dfa, n, Assignment("11"), 1) == (True, True)
    assert clause_row_check(dfa, n, Assignment("10"), 2) == (False, False)
    assert clause_row_check(dfa, n, Assignment("01"), 1) == (False, False)


def test_clause_row_check_lands_on_negative_target():
    n = normalize(PHI0)
    dfa = build_cnf_dfa(n)
    start = dfa.state_names.index("ph2_1")
    from primedfa import run_from

    assert dfa.name_of(run_from(dfa, start, "10")) == "p2_2"


def test_clause_row_check_index_error():
    n = normalize(PHI0)
    dfa = build_cnf_dfa(n)
    with pytest.raises(IndexOutOfRange):
        clause_row_check(dfa, n, Assignment("11"), 3)


def test_clause_row_agreement_exhaustive_small():
    for formula in helpers.cnf_corpus(30, seed=6):
        n = normalize(formula)
        if isinstance(n, TriviallySat):
            continue
        dfa = build_cnf_dfa(n)
        for bits in itertools.product("01", repeat=n.r):
            u = Assignment("".join(bits))
            for k in range(1, n.s + 1):
                automaton, semantic = clause_row_check(dfa, n, u, k)
                assert automaton == semantic


# -- evaluation and solving ---------------------------------------------------------

def test_eval_formula_examples():
    assert eval_formula(PHI0, {1: 1, 2: 1})
    assert not eval_formula(PHI0, {1: 0, 2: 1})
    assert not eval_formula(CONTRADICTION, {1: 0})
    assert not eval_formula(CONTRADICTION, {1: 1})


def test_eval_formula_variable_out_of_range():
    with pytest.raises(VariableOutOfRange):
        eval_formula(PHI0, {1: 1})
    with pytest.raises(VariableOutOfRange):
        eval_formula(PHI0, Assignment("1"))


def test_solve_phi0():
    assert solve_sat_via_primality(PHI0) == Assignment("11")


def test_solve_contradiction():
    assert solve_sat_via_primality(CONTRADICTION) is None


def test_solve_tautology_short_circuits():
    assignment = solve_sat_via_primality(CnfFormula(1, ((1, -1),)))
    assert assignment == Assignment("0")


def test_solver_agrees_with_truth_table_small():
    for formula in helpers.cnf_corpus(40, seed=7):
        got = solve_sat_via_primality(formula)
        expected = helpers.brute_sat(formula)
        assert (got is None) == (expected is None)
        if got is not None:
            bits = tuple(int(b) for b in got.bits)
            assert all(
                helpers.clause_satisfied(clause, bits) for clause in formula.clauses
            )


def test_assignment_literals():
    assert Assignment("11").to_literals() == [1, 2]
    assert Assignment("10").to_literals() == [1, -2]
