"""Brute-force compositionality checking at desk scale, plus instance generators.

The oracle enumerates candidate automata strictly smaller than the input's
minimal DFA, keeps the ones whose language contains the input's language,
and decides compositeness from them.  Two modes:

* general: every complete DFA up to the size bound (initial state pinned
  to 0, which covers every language up to relabeling).  The qualifying
  languages are folded by intersection; the input is composite iff the
  fold collapses to its own language.  Guarded to tiny inputs.
* safety-restricted: only safety-shaped candidates (a chain-free block of
  accepting non-sinks plus one accepting and one rejecting sink).  Sound
  for minimal safety automata with an accepting sink and acyclic interior,
  because any containing language can be shrunk to such a safety language
  without losing states, and a witness's first rejected prefix is itself a
  witness, bounding the search to words of length lin+1.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .classify import classify
from .dfa import (
    Dfa,
    language_equal,
    minimize,
    product_intersection,
    separating_word,
)
from .errors import BudgetExceeded, ModeUnsound, RetriesExhausted
from .primality import COMPOSITE, PRIME, PrimalityVerdict

GENERAL = "general"
SAFETY_RESTRICTED = "safety-restricted"

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class OracleConfig:
    """Limits for the brute-force search.

    ``size_bound`` is the maximum candidate size and equals index(input)-1
    for a faithful compositeness check.  ``word_length_bound`` overrides
    the witness search depth in safety-restricted mode (default lin+1).
    """

    mode: str
    size_bound: int
    candidate_budget: int = 5_000_000
    word_length_bound: int | None = None

    def __post_init__(self):
        if self.mode not in (GENERAL, SAFETY_RESTRICTED):
            raise ValueError(f"unknown oracle mode {self.mode!r}")
        if self.size_bound < 1:
            raise ValueError("size_bound must be at least 1")
        if self.candidate_budget < 1:
            raise ValueError("candidate_budget must be positive")


@dataclass(frozen=True)
class GenConfig:
    """Seeded random-instance parameters for the MLS generator."""

    lin: int
    alphabet_size: int
    seed: int
    max_retries: int = 1000

    def __post_init__(self):
        if self.lin < 1:
            raise ValueError("lin must be at least 1")
        if not 2 <= self.alphabet_size <= len(_LETTERS):
            raise ValueError("alphabet_size must be between 2 and 26")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")


def _covers(m: Dfa, rows, acc_mask: int, cand_n: int) -> bool:
    """True iff L(m) is contained in the candidate's language."""
    nsym = len(m.alphabet)
    m_trans = m.transitions
    m_acc = m.accepting
    seen = bytearray(m.num_states * cand_n)
    sa, sb = m.initial, 0
    if sa in m_acc and not (acc_mask >> sb) & 1:
        return False
    seen[sa * cand_n + sb] = 1
    stack = [(sa, sb)]
    while stack:
        sa, sb = stack.pop()
        ra = m_trans[sa]
        rb = rows[sb]
        for k in range(nsym):
            na = ra[k]
            nb = rb[k]
            code = na * cand_n + nb
            if not seen[code]:
                if na in m_acc and not (acc_mask >> nb) & 1:
                    return False
                seen[code] = 1
                stack.append((na, nb))
    return True


def _accepts_encoded(rows, acc_mask: int, symbols) -> bool:
    state = 0
    for k in symbols:
        state = rows[state][k]
    return bool((acc_mask >> state) & 1)


def _mask_to_set(mask: int, n: int) -> frozenset[int]:
    return frozenset(s for s in range(n) if (mask >> s) & 1)


def _all_accepting(alphabet) -> Dfa:
    return Dfa(
        num_states=1,
        alphabet=alphabet,
        initial=0,
        accepting=frozenset({0}),
        transitions=((0,) * len(alphabet),),
    )


# ---------------------------------------------------------------------------
# General mode
# ---------------------------------------------------------------------------

def _general_total(nsym: int, k_max: int) -> int:
    return sum(k ** (k * nsym) * 2**k for k in range(1, k_max + 1))


def _iter_general_qualifying(m: Dfa, k_max: int) -> Iterator[Dfa]:
    nsym = len(m.alphabet)
    for k in range(1, k_max + 1):
        for assign in itertools.product(range(k), repeat=k * nsym):
            rows = tuple(assign[s * nsym : (s + 1) * nsym] for s in range(k))
            for acc_mask in range(1 << k):
                if _covers(m, rows, acc_mask, k):
                    yield Dfa(
                        num_states=k,
                        alphabet=m.alphabet,
                        initial=0,
                        accepting=_mask_to_set(acc_mask, k),
                        transitions=rows,
                    )


def _brute_general(m: Dfa, cfg: OracleConfig) -> PrimalityVerdict:
    nsym = len(m.alphabet)
    if m.num_states > 5 or nsym > 2:
        raise BudgetExceeded(
            "general mode is limited to index at most 5 over at most 2 symbols"
        )
    k_max = min(cfg.size_bound, m.num_states - 1)
    if _general_total(nsym, k_max) > cfg.candidate_budget:
        raise BudgetExceeded("general-mode candidate count exceeds the budget")

    fold: Dfa | None = None
    for candidate in _iter_general_qualifying(m, k_max):
        if fold is None:
            fold = minimize(candidate)
        else:
            fold = minimize(product_intersection([fold, candidate]))
        # The fold only shrinks and always contains L(m); once it matches,
        # the full intersection matches as well.
        if language_equal(fold, m):
            return PrimalityVerdict(COMPOSITE, method="brute-general")
    if fold is None:
        fold = _all_accepting(m.alphabet)
    witness = separating_word(fold, m)
    return PrimalityVerdict(PRIME, witness=witness, method="brute-general")


# ---------------------------------------------------------------------------
# Safety-restricted mode
# ---------------------------------------------------------------------------

def _safety_total(nsym: int, max_non_sinks: int) -> int:
    return sum((n + 2) ** (n * nsym) for n in range(1, max_non_sinks + 1))


def _safety_rows(assign, n: int, nsym: int):
    q_plus, q_minus = n, n + 1
    return tuple(assign[s * nsym : (s + 1) * nsym] for s in range(n)) + (
        (q_plus,) * nsym,
        (q_minus,) * nsym,
    )


def _safety_acc_mask(n: int) -> int:
    # Everything accepting except the rejecting sink (the last state).
    return ((1 << (n + 2)) - 1) ^ (1 << (n + 1))


def _safety_filter_worker(args):
    m, n, nsym, chunk = args
    acc_mask = _safety_acc_mask(n)
    kept = []
    for assign in chunk:
        rows = _safety_rows(assign, n, nsym)
        if _covers(m, rows, acc_mask, n + 2):
            kept.append(rows)
    return kept


def _chunked(iterable, size):
    it = iter(iterable)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def _safety_qualifying_rows(m: Dfa, max_non_sinks: int, jobs: int) -> list[tuple]:
    """Transition tables (with implied all-but-last accepting) covering L(m)."""
    nsym = len(m.alphabet)
    kept: list[tuple] = []
    for n in range(1, max_non_sinks + 1):
        assignments = itertools.product(range(n + 2), repeat=n * nsym)
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=jobs) as pool:
                tasks = ((m, n, nsym, chunk) for chunk in _chunked(assignments, 4096))
                for partial in pool.map(_safety_filter_worker, tasks):
                    kept.extend(partial)
        else:
            acc_mask = _safety_acc_mask(n)
            for assign in assignments:
                rows = _safety_rows(assign, n, nsym)
                if _covers(m, rows, acc_mask, n + 2):
                    kept.append(rows)
    return kept


def _check_safety_mode_input(m: Dfa) -> int:
    """Validate the safety-restricted preconditions; returns lin."""
    report = classify(m)
    if not (report.is_safety and report.is_adfa_plus):
        raise ModeUnsound(
            "safety-restricted mode needs a minimal safety DFA with an accepting "
            "sink and no cycles outside the sinks"
        )
    return report.lin


def _brute_safety(m: Dfa, cfg: OracleConfig, jobs: int) -> PrimalityVerdict:
    lin = _check_safety_mode_input(m)
    nsym = len(m.alphabet)
    bound = cfg.word_length_bound if cfg.word_length_bound is not None else lin + 1
    max_non_sinks = min(cfg.size_bound, m.num_states - 1) - 2
    if _safety_total(nsym, max_non_sinks) > cfg.candidate_budget:
        raise BudgetExceeded("safety-mode candidate count exceeds the budget")

    qualifying = [
        (rows, _safety_acc_mask(len(rows) - 2))
        for rows in _safety_qualifying_rows(m, max_non_sinks, jobs)
    ]

    m_trans = m.transitions
    m_acc = m.accepting
    for length in range(bound + 1):
        for symbols in itertools.product(range(nsym), repeat=length):
            state = m.initial
            for k in symbols:
                state = m_trans[state][k]
            if state in m_acc:
                continue
            if all(
                _accepts_encoded(rows, acc_mask, symbols)
                for rows, acc_mask in qualifying
            ):
                word = "".join(m.alphabet[k] for k in symbols)
                return PrimalityVerdict(PRIME, witness=word, method="brute-safety")
    return PrimalityVerdict(COMPOSITE, method="brute-safety")


def qualifying_candidates(dfa: Dfa, cfg: OracleConfig, jobs: int = 1) -> list[Dfa]:
    """All enumerated candidates whose language contains the input's language.

    Introspection helper for replaying verdicts; shares the enumeration and
    budgets of brute_force_composite.
    """
    m = minimize(dfa)
    nsym = len(m.alphabet)
    if cfg.mode == GENERAL:
        k_max = min(cfg.size_bound, m.num_states - 1)
        if _general_total(nsym, k_max) > cfg.candidate_budget:
            raise BudgetExceeded("general-mode candidate count exceeds the budget")
        return list(_iter_general_qualifying(m, k_max))
    _check_safety_mode_input(m)
    max_non_sinks = min(cfg.size_bound, m.num_states - 1) - 2
    if _safety_total(nsym, max_non_sinks) > cfg.candidate_budget:
        raise BudgetExceeded("safety-mode candidate count exceeds the budget")
    result = []
    for rows in _safety_qualifying_rows(m, max_non_sinks, jobs):
        n = len(rows) - 2
        result.append(
            Dfa(
                num_states=n + 2,
                alphabet=m.alphabet,
                initial=0,
                accepting=_mask_to_set(_safety_acc_mask(n), n + 2),
                transitions=rows,
            )
        )
    return result


def brute_force_composite(
    dfa: Dfa, cfg: OracleConfig, jobs: int = 1
) -> PrimalityVerdict:
    """Independent compositeness check by exhaustive candidate enumeration.

    Index-1 inputs are reported Prime by convention: no strictly smaller
    DFA exists, and the empty intersection convention would otherwise be
    ambiguous; the verdict carries a note saying so.  ``jobs`` parallelizes
    candidate filtering in safety-restricted mode.
    """
    m = minimize(dfa)
    if m.num_states == 1:
        return PrimalityVerdict(
            PRIME,
            method="brute-" + ("general" if cfg.mode == GENERAL else "safety"),
            note="index 1: no strictly smaller DFA exists; Prime by convention",
        )
    if cfg.mode == GENERAL:
        return _brute_general(m, cfg)
    return _brute_safety(m, cfg, jobs)


# ---------------------------------------------------------------------------
# Instance generators
# ---------------------------------------------------------------------------

def generate_mls(cfg: GenConfig) -> Dfa:
    """Seeded random minimal linear safety ADFA+ with the requested lin.

    Non-sinks form a chain; every symbol moves strictly forward, to the
    accepting sink or to the rejecting sink, with the consecutive chain
    step and the final step to rejection forced.  Candidates that fail the
    minimality check are regenerated; generation is deterministic per seed.
    """
    rng = random.Random(cfg.seed)
    alphabet = tuple(_LETTERS[: cfg.alphabet_size])
    nsym = len(alphabet)
    n = cfg.lin
    q_plus, q_minus = n + 1, n + 2
    for _ in range(cfg.max_retries):
        rows = []
        for i in range(n):
            choices = list(range(i + 1, n + 1)) + [q_plus, q_minus]
            row = [rng.choice(choices) for _ in range(nsym)]
            if i + 1 not in row:
                row[rng.randrange(nsym)] = i + 1
            rows.append(tuple(row))
        last = [rng.choice((q_plus, q_minus)) for _ in range(nsym)]
        if q_minus not in last:
            last[rng.randrange(nsym)] = q_minus
        rows.append(tuple(last))
        rows.append((q_plus,) * nsym)
        rows.append((q_minus,) * nsym)
        candidate = Dfa(
            num_states=n + 3,
            alphabet=alphabet,
            initial=0,
            accepting=frozenset(range(n + 2)),
            transitions=tuple(rows),
        )
        if minimize(candidate).num_states == candidate.num_states:
            return candidate
    raise RetriesExhausted(
        f"no minimal instance found within {cfg.max_retries} retries"
    )


def generate_adfa_plus(
    non_sinks: int, alphabet_size: int, seed: int, max_retries: int = 1000
) -> Dfa:
    """Seeded random minimal ADFA+, linear or not, safety or not.

    Non-sink transitions jump to arbitrary later positions or a sink, each
    non-sink flips its own accepting bit, and every position is forced to
    have some incoming edge.  Minimality is checked and failures retried.
    """
    if non_sinks < 1:
        raise ValueError("need at least one non-sink")
    if not 2 <= alphabet_size <= len(_LETTERS):
        raise ValueError("alphabet_size must be between 2 and 26")
    rng = random.Random(seed)
    alphabet = tuple(_LETTERS[:alphabet_size])
    nsym = len(alphabet)
    n = non_sinks
    q_plus, q_minus = n, n + 1
    for _ in range(max_retries):
        rows = [
            [rng.choice(list(range(i + 1, n)) + [q_plus, q_minus]) for _ in range(nsym)]
            for i in range(n)
        ]
        for j in range(1, n):
            if not any(j in rows[i] for i in range(j)):
                rows[rng.randrange(j)][rng.randrange(nsym)] = j
        rows.append([q_plus] * nsym)
        rows.append([q_minus] * nsym)
        accepting = {s for s in range(n) if rng.random() < 0.5}
        accepting.add(q_plus)
        candidate = Dfa(
            num_states=n + 2,
            alphabet=alphabet,
            initial=0,
            accepting=frozenset(accepting),
            transitions=tuple(tuple(r) for r in rows),
        )
        if minimize(candidate).num_states == candidate.num_states:
            return candidate
    raise RetriesExhausted(
        f"no minimal instance found within {max_retries} retries"
    )
