import itertools
import random

import pytest

import helpers
from primedfa import (
    CnfFormula,
    GenConfig,
    PumpGadget,
    SkipState,
    accepts,
    build_a_i_plus,
    build_a_w_i_j,
    build_cnf_dfa,
    choose_pump_indices,
    classify,
    decide_primality_mls,
    decompose_mls,
    generate_mls,
    index,
    language_equal,
    language_subset,
    minimize,
    normalize,
    pump,
    safetyfy,
    verify_decomposition,
)
from primedfa.errors import (
    EqualPumpSymbols,
    IndexOutOfRange,
    IsPrime,
    NoPumpablePair,
    UnaryPowerWord,
)


def canonical_tables(dfa):
    m = minimize(dfa)
    return (m.num_states, m.initial, m.accepting, m.transitions)


def contradiction_dfa():
    return build_cnf_dfa(normalize(CnfFormula(1, ((1,), (-1,)))))


# -- skip-state gadgets -----------------------------------------------------------

def test_build_a_i_plus_fig4a(fig4a, fig4c_parts):
    skip1, skip2, _ = fig4c_parts
    assert canonical_tables(build_a_i_plus(fig4a, 1)) == canonical_tables(skip1)
    assert canonical_tables(build_a_i_plus(fig4a, 2)) == canonical_tables(skip2)


def test_build_a_i_plus_size_and_superset(fig4a):
    for i in (1, 2):
        part = build_a_i_plus(fig4a, i)
        assert part.num_states == fig4a.num_states - 1
        assert language_subset(fig4a, part)


def test_build_a_i_plus_cnf():
    dfa = build_cnf_dfa(normalize(CnfFormula(2, ((1, -2), (2,)))))
    part = build_a_i_plus(dfa, 1)
    assert part.num_states == 15
    assert language_subset(dfa, part)


def test_build_a_i_plus_range(fig4a):
    with pytest.raises(IndexOutOfRange):
        build_a_i_plus(fig4a, 0)
    with pytest.raises(IndexOutOfRange):
        build_a_i_plus(fig4a, 3)


# -- pump-position selection --------------------------------------------------------

def test_choose_pump_indices_fig4a(fig4a):
    chosen = choose_pump_indices(fig4a, "abb")
    assert (chosen.i, chosen.j) == (1, 2)
    assert chosen.word[chosen.i - 1] != chosen.word[chosen.j - 1]


def test_choose_pump_indices_contradiction_words():
    dfa = contradiction_dfa()
    for bit in "01":
        word = bit + "d" + "c" * 7
        chosen = choose_pump_indices(dfa, word)
        assert (chosen.i, chosen.j) == (1, 2)


def test_choose_pump_indices_prime_word_fails(fig4b):
    with pytest.raises(NoPumpablePair):
        choose_pump_indices(fig4b, "abb")


def test_choose_pump_indices_symbols_differ_on_generated():
    found = 0
    for seed in range(40):
        dfa = generate_mls(GenConfig(lin=1 + seed % 3, alphabet_size=2, seed=seed))
        if decide_primality_mls(dfa).verdict != "Composite":
            continue
        for word in max_visiting_words_list(dfa):
            chosen = choose_pump_indices(dfa, word)
            assert word[chosen.i - 1] != word[chosen.j - 1]
            found += 1
    assert found > 10


def max_visiting_words_list(dfa):
    from primedfa import max_visiting_words

    return list(max_visiting_words(dfa))


# -- pump gadgets ---------------------------------------------------------------------

def test_build_a_w_i_j_fig4c(fig4c_parts):
    _, _, expected = fig4c_parts
    gadget = build_a_w_i_j("abb", 1, 2, helpers.AB)
    assert canonical_tables(gadget) == canonical_tables(expected)


def test_build_a_w_i_j_membership():
    gadget = build_a_w_i_j("abb", 1, 2, helpers.AB)
    assert not accepts(gadget, "aabb")
    assert not accepts(gadget, "bb")
    assert accepts(gadget, "ba")


def test_build_a_w_i_j_final_position():
    gadget = build_a_w_i_j("ab", 1, 2, helpers.AB)
    assert gadget.num_states == 3
    for l in range(4):
        for tail in helpers.words_up_to(helpers.AB, 2):
            assert not accepts(gadget, "a" * l + "b" + tail)
    assert accepts(gadget, "a")
    assert accepts(gadget, "ba")


def test_build_a_w_i_j_errors():
    with pytest.raises(EqualPumpSymbols):
        build_a_w_i_j("aba", 1, 3, helpers.AB)
    with pytest.raises(UnaryPowerWord):
        build_a_w_i_j("aaa", 1, 2, helpers.AB)
    with pytest.raises(IndexOutOfRange):
        build_a_w_i_j("ab", 2, 2, helpers.AB)
    with pytest.raises(IndexOutOfRange):
        build_a_w_i_j("a", 1, 2, helpers.AB)


def rejected_by_construction(word, i, j, candidate):
    """Membership oracle for the gadget language equation.

    Rejected means the candidate extends some pumping of the word; pump
    lengths grow strictly with the repetition count, bounding the search.
    """
    l = 0
    while True:
        pumped = pump(word, i, j, l)
        if len(pumped) > len(candidate):
            return False
        if candidate.startswith(pumped):
            return True
        l += 1


def test_pump_gadget_language_equation_random_triples():
    rng = random.Random(99)
    checked = 0
    while checked < 40:
        length = rng.randint(2, 6)
        word = "".join(rng.choice(helpers.AB) for _ in range(length))
        pairs = [
            (i, j)
            for i in range(1, length)
            for j in range(i + 1, length + 1)
            if word[i - 1] != word[j - 1]
        ]
        if not pairs:
            continue
        i, j = rng.choice(pairs)
        gadget = build_a_w_i_j(word, i, j, helpers.AB)
        for candidate in helpers.words_up_to(helpers.AB, 2 * len(word)):
            expected_rejected = rejected_by_construction(word, i, j, candidate)
            assert accepts(gadget, candidate) == (not expected_rejected)
        checked += 1


# -- full decomposition -----------------------------------------------------------------

def test_decompose_fig4a(fig4a, fig4c_parts):
    decomposition = decompose_mls(fig4a)
    assert decomposition.verified
    assert decomposition.provenance == [
        SkipState(1),
        SkipState(2),
        PumpGadget("abb", 1, 2),
    ]
    for part, expected in zip(decomposition.parts, fig4c_parts):
        assert canonical_tables(part) == canonical_tables(expected)


def test_decompose_prime_input_raises(fig4b):
    with pytest.raises(IsPrime):
        decompose_mls(fig4b)


def test_decompose_contradiction_cnf():
    dfa = contradiction_dfa()
    lin = classify(dfa).lin
    decomposition = decompose_mls(dfa)
    assert len(decomposition.parts) == lin + 2
    assert decomposition.verified
    skip_tags = [t for t in decomposition.provenance if isinstance(t, SkipState)]
    pump_tags = [t for t in decomposition.provenance if isinstance(t, PumpGadget)]
    assert len(skip_tags) == lin
    assert len(pump_tags) == 2


def test_decompose_generated_composites_verify():
    verified = 0
    for seed in range(60):
        dfa = generate_mls(
            GenConfig(lin=1 + seed % 4, alphabet_size=2 + seed % 2, seed=seed)
        )
        if decide_primality_mls(dfa).verdict != "Composite":
            continue
        decomposition = decompose_mls(dfa)
        assert decomposition.verified
        for part in decomposition.parts:
            assert index(part) < index(dfa)
        verified += 1
    assert verified >= 15


# -- verification ------------------------------------------------------------------------

def test_verify_decomposition_fig4c(fig4a, fig4c_parts):
    report = verify_decomposition(fig4a, fig4c_parts)
    assert report.ok
    assert report.languages_equal
    assert report.oversized_parts == []


def test_verify_rejects_source_as_part(fig4a):
    report = verify_decomposition(fig4a, [fig4a])
    assert not report.ok
    assert report.oversized_parts == [0]


def test_verify_two_part_decomposition(fig4a, fig4c_parts):
    _, skip2, pump_part = fig4c_parts
    assert verify_decomposition(fig4a, [skip2, pump_part]).ok


def test_verify_reports_separating_word(fig4a, fig4c_parts):
    skip1, skip2, _ = fig4c_parts
    report = verify_decomposition(fig4a, [skip1, skip2])
    assert not report.ok and not report.languages_equal
    word = report.separating_word
    inter_accepts = accepts(skip1, word) and accepts(skip2, word)
    assert inter_accepts != accepts(fig4a, word)


# -- safety-fication ------------------------------------------------------------------------

def test_safetyfy_even_parity():
    result = safetyfy(helpers.even_as())
    assert classify(result).is_safety
    assert helpers.accepted_set(result, 6) == helpers.prefix_closed_accepted_set(
        helpers.even_as(), 6
    )
    # b* exactly
    assert accepts(result, "bbb")
    assert not accepts(result, "a")


def test_safetyfy_fixed_point_on_safety_input(fig4a):
    assert language_equal(safetyfy(fig4a), fig4a)


def test_safetyfy_empty_language():
    result = safetyfy(helpers.all_rejecting_one_state())
    assert result.num_states == 1
    assert result.accepting == frozenset()


def test_safetyfy_random_small_dfas():
    rng = random.Random(123)
    for _ in range(60):
        dfa = helpers.random_dfa(rng, max_states=5)
        result = safetyfy(dfa)
        assert classify(result).is_safety
        assert language_subset(result, dfa)
        assert helpers.accepted_set(result, 6) == helpers.prefix_closed_accepted_set(
            dfa, 6
        )
        assert language_equal(safetyfy(result), result)
