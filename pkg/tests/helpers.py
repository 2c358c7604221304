"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's fast paths: language
comparison by exhaustive word enumeration, minimization by table filling,
satisfiability by truth table, prefix closure by direct prefix checks.
They exist so the fast implementations are checked against something that
cannot share their bugs.
"""

from __future__ import annotations

import itertools
import random

from primedfa import CnfFormula, Dfa, accepts

AB = ("a", "b")


def fig4a() -> Dfa:
    """Composite 5-state chain automaton: 0=q0, 1=q1, 2=q2, 3=acc sink, 4=rej sink."""
    return Dfa(
        num_states=5,
        alphabet=AB,
        initial=0,
        accepting=frozenset({0, 1, 2, 3}),
        transitions=((1, 2), (4, 2), (3, 4), (3, 3), (4, 4)),
    )


def fig4b() -> Dfa:
    """Prime twin of fig4a: differs only in the initial state's b-transition."""
    return Dfa(
        num_states=5,
        alphabet=AB,
        initial=0,
        accepting=frozenset({0, 1, 2, 3}),
        transitions=((1, 3), (4, 2), (3, 4), (3, 3), (4, 4)),
    )


def fig4c_skip1() -> Dfa:
    """Skip gadget for chain position 1: 0=q0, 1=q2, 2=acc sink, 3=rej sink."""
    return Dfa(
        num_states=4,
        alphabet=AB,
        initial=0,
        accepting=frozenset({0, 1, 2}),
        transitions=((2, 1), (2, 3), (2, 2), (3, 3)),
    )


def fig4c_skip2() -> Dfa:
    """Skip gadget for chain position 2: 0=q0, 1=q1, 2=acc sink, 3=rej sink."""
    return Dfa(
        num_states=4,
        alphabet=AB,
        initial=0,
        accepting=frozenset({0, 1, 2}),
        transitions=((1, 2), (3, 2), (2, 2), (3, 3)),
    )


def fig4c_pump() -> Dfa:
    """Pump gadget for word abb at (1, 2): 0=q0 (a-loop), 1=q2, 2=acc, 3=rej."""
    return Dfa(
        num_states=4,
        alphabet=AB,
        initial=0,
        accepting=frozenset({0, 1, 2}),
        transitions=((0, 1), (2, 3), (2, 2), (3, 3)),
    )


def all_accepting_one_state(alphabet=AB) -> Dfa:
    return Dfa(1, alphabet, 0, frozenset({0}), ((0,) * len(alphabet),))


def all_rejecting_one_state(alphabet=AB) -> Dfa:
    return Dfa(1, alphabet, 0, frozenset(), ((0,) * len(alphabet),))


def even_as() -> Dfa:
    """Parity of a's over {a, b}; accepting on even count.  Not a safety DFA."""
    return Dfa(2, AB, 0, frozenset({0}), ((1, 0), (0, 1)))


def words_up_to(alphabet, max_len: int):
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield "".join(combo)


def accepted_set(dfa: Dfa, max_len: int) -> frozenset[str]:
    return frozenset(w for w in words_up_to(dfa.alphabet, max_len) if accepts(dfa, w))


def language_equal_brute(a: Dfa, b: Dfa, max_len: int) -> bool:
    return all(
        accepts(a, w) == accepts(b, w) for w in words_up_to(a.alphabet, max_len)
    )


def prefix_closed_accepted_set(dfa: Dfa, max_len: int) -> frozenset[str]:
    """Words up to max_len all of whose prefixes (including themselves) are accepted."""
    out = set()
    for w in words_up_to(dfa.alphabet, max_len):
        if all(accepts(dfa, w[:i]) for i in range(len(w) + 1)):
            out.add(w)
    return frozenset(out)


def table_filling_state_count(dfa: Dfa) -> int:
    """Number of Myhill-Nerode classes among reachable states (textbook marking)."""
    from primedfa.dfa import reachable_states

    states = sorted(reachable_states(dfa))
    nsym = len(dfa.alphabet)
    acc = dfa.accepting
    pairs = [(p, q) for i, p in enumerate(states) for q in states[i + 1 :]]
    marked = {(p, q) for (p, q) in pairs if (p in acc) != (q in acc)}
    changed = True
    while changed:
        changed = False
        for p, q in pairs:
            if (p, q) in marked:
                continue
            for k in range(nsym):
                a, b = dfa.transitions[p][k], dfa.transitions[q][k]
                if a == b:
                    continue
                if (min(a, b), max(a, b)) in marked:
                    marked.add((p, q))
                    changed = True
                    break

    parent = {s: s for s in states}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in pairs:
        if (p, q) not in marked:
            rp, rq = find(p), find(q)
            if rp != rq:
                parent[rp] = rq
    return len({find(s) for s in states})


def random_dfa(rng: random.Random, max_states: int = 5, alphabet=AB) -> Dfa:
    n = rng.randint(1, max_states)
    trans = tuple(
        tuple(rng.randrange(n) for _ in alphabet) for _ in range(n)
    )
    acc = frozenset(s for s in range(n) if rng.random() < 0.5)
    return Dfa(n, alphabet, 0, acc, trans)


def random_cnf(rng: random.Random, max_vars: int = 3, max_clauses: int = 3) -> CnfFormula:
    """Random small CNF; may contain duplicate literals, tautologies, empty clauses."""
    r = rng.randint(1, max_vars)
    s = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(s):
        width = rng.randint(0, r + 1)
        lits = []
        for _ in range(width):
            v = rng.randint(1, r)
            lits.append(v if rng.random() < 0.5 else -v)
        clauses.append(tuple(lits))
    return CnfFormula(num_vars=r, clauses=tuple(clauses))


def cnf_corpus(count: int, seed: int) -> list[CnfFormula]:
    """Fixed seeded corpus plus hand-picked unsatisfiable shapes."""
    rng = random.Random(seed)
    corpus = [
        CnfFormula(1, ((1,), (-1,))),
        CnfFormula(2, ((1, 2), (-1,), (-2,))),
        CnfFormula(2, ((1,), (-1, 2), (-2,))),
        CnfFormula(3, ((1, 2, 3), (-1,), (-2,), (-3,))),
        CnfFormula(1, ((1, -1),)),
        CnfFormula(2, ((),)),
    ]
    while len(corpus) < count:
        corpus.append(random_cnf(rng))
    return corpus


def brute_sat(formula: CnfFormula):
    """Truth-table satisfiability; returns a satisfying bit tuple or None."""
    for bits in itertools.product((0, 1), repeat=formula.num_vars):
        ok = True
        for clause in formula.clauses:
            if not any((lit > 0) == bool(bits[abs(lit) - 1]) for lit in clause):
                ok = False
                break
        if ok:
            return bits
    return None


def clause_satisfied(clause, bits) -> bool:
    return any((lit > 0) == bool(bits[abs(lit) - 1]) for lit in clause)
