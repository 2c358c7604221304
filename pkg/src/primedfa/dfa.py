"""Complete deterministic finite automata and the standard language algebra.

Words are plain strings and every alphabet symbol is a single character.
All values are immutable and every operation is a pure function, so the
whole module is safe to evaluate in parallel over independent inputs.

Minimization canonicalizes state numbering: states of the output are
numbered by breadth-first discovery order from the initial state, trying
symbols in alphabet order.  Two language-equal minimal DFAs over the same
alphabet therefore minimize to bit-identical tables.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    AlphabetMismatch,
    FormatError,
    StateBudgetExceeded,
    UnknownSymbol,
)

DEFAULT_STATE_BUDGET = 10**6
STATE_BUDGET_ENV = "PRIMEDFA_STATE_BUDGET"


@dataclass(frozen=True)
class Dfa:
    """A complete DFA with a total transition table.

    ``transitions[s][k]`` is the successor of state ``s`` on symbol
    ``alphabet[k]``.  ``state_names`` is optional display metadata and is
    ignored by all language-level operations.
    """

    num_states: int
    alphabet: tuple[str, ...]
    initial: int
    accepting: frozenset[int]
    transitions: tuple[tuple[int, ...], ...]
    state_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(
            self, "transitions", tuple(tuple(row) for row in self.transitions)
        )
        if self.state_names is not None:
            object.__setattr__(self, "state_names", tuple(self.state_names))
        _validate(self)

    @cached_property
    def symbol_index(self) -> dict[str, int]:
        return {sym: k for k, sym in enumerate(self.alphabet)}

    def name_of(self, state: int) -> str:
        if self.state_names is not None:
            return self.state_names[state]
        return str(state)


def _validate(dfa: Dfa) -> None:
    if dfa.num_states < 1:
        raise ValueError("a DFA needs at least one state")
    if not dfa.alphabet:
        raise ValueError("alphabet must be non-empty")
    if len(set(dfa.alphabet)) != len(dfa.alphabet):
        raise ValueError("alphabet symbols must be pairwise distinct")
    for sym in dfa.alphabet:
        if not isinstance(sym, str) or len(sym) != 1:
            raise ValueError(f"alphabet symbol {sym!r} is not a single character")
    if not 0 <= dfa.initial < dfa.num_states:
        raise ValueError(f"initial state {dfa.initial} out of range")
    for s in dfa.accepting:
        if not 0 <= s < dfa.num_states:
            raise ValueError(f"accepting state {s} out of range")
    if len(dfa.transitions) != dfa.num_states:
        raise ValueError("transition table must have one row per state")
    for s, row in enumerate(dfa.transitions):
        if len(row) != len(dfa.alphabet):
            raise ValueError(f"transition row {s} must have one entry per symbol")
        for t in row:
            if not 0 <= t < dfa.num_states:
                raise ValueError(f"transition target {t} out of range")
    if dfa.state_names is not None and len(dfa.state_names) != dfa.num_states:
        raise ValueError("state_names must have one entry per state")


def encode_word(dfa: Dfa, word: str) -> list[int]:
    """Map a word to symbol indexes, raising UnknownSymbol on bad symbols."""
    idx = dfa.symbol_index
    out = []
    for pos, sym in enumerate(word):
        k = idx.get(sym)
        if k is None:
            raise UnknownSymbol(sym, pos)
        out.append(k)
    return out


def run_from(dfa: Dfa, state: int, word: str) -> int:
    """State reached from ``state`` after reading ``word``."""
    trans = dfa.transitions
    for k in encode_word(dfa, word):
        state = trans[state][k]
    return state


def run(dfa: Dfa, word: str) -> int:
    """Last state of the initial run on ``word``."""
    return run_from(dfa, dfa.initial, word)


def accepts(dfa: Dfa, word: str) -> bool:
    return run(dfa, word) in dfa.accepting


def is_sink(dfa: Dfa, state: int) -> bool:
    return all(t == state for t in dfa.transitions[state])


def accepting_sinks(dfa: Dfa) -> list[int]:
    return [s for s in range(dfa.num_states) if s in dfa.accepting and is_sink(dfa, s)]


def rejecting_sinks(dfa: Dfa) -> list[int]:
    return [
        s for s in range(dfa.num_states) if s not in dfa.accepting and is_sink(dfa, s)
    ]


def reachable_states(dfa: Dfa) -> list[int]:
    """Reachable states in BFS discovery order (symbols in alphabet order)."""
    order = [dfa.initial]
    seen = {dfa.initial}
    head = 0
    while head < len(order):
        s = order[head]
        head += 1
        for t in dfa.transitions[s]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def minimize(dfa: Dfa) -> Dfa:
    """Canonical minimal DFA for the language of ``dfa``.

    Unreachable states are dropped, equivalent states merged (Hopcroft
    partition refinement), and the result renumbered canonically.
    """
    reach = reachable_states(dfa)
    nsym = len(dfa.alphabet)

    preds: dict[int, list[list[int]]] = {s: [[] for _ in range(nsym)] for s in reach}
    for s in reach:
        row = dfa.transitions[s]
        for k in range(nsym):
            preds[row[k]][k].append(s)

    acc = frozenset(s for s in reach if s in dfa.accepting)
    rej = frozenset(s for s in reach if s not in dfa.accepting)
    partition = {b for b in (acc, rej) if b}
    block_of = {s: b for b in partition for s in b}

    worklist: set[frozenset[int]] = set()
    if acc and rej:
        worklist.add(acc if len(acc) <= len(rej) else rej)

    while worklist:
        splitter = worklist.pop()
        for k in range(nsym):
            affected: dict[frozenset[int], set[int]] = {}
            for t in splitter:
                for q in preds[t][k]:
                    affected.setdefault(block_of[q], set()).add(q)
            for block, overlap in affected.items():
                if len(overlap) == len(block):
                    continue
                part1 = frozenset(overlap)
                part2 = block - part1
                partition.remove(block)
                partition.add(part1)
                partition.add(part2)
                for s in part1:
                    block_of[s] = part1
                for s in part2:
                    block_of[s] = part2
                if block in worklist:
                    worklist.remove(block)
                    worklist.add(part1)
                    worklist.add(part2)
                else:
                    worklist.add(part1 if len(part1) <= len(part2) else part2)

    # Canonical renumbering: BFS over blocks from the initial block.
    init_block = block_of[dfa.initial]
    block_ids: dict[frozenset[int], int] = {init_block: 0}
    block_order = [init_block]
    head = 0
    while head < len(block_order):
        block = block_order[head]
        head += 1
        rep = next(iter(block))
        for k in range(nsym):
            succ = block_of[dfa.transitions[rep][k]]
            if succ not in block_ids:
                block_ids[succ] = len(block_order)
                block_order.append(succ)

    new_trans = []
    new_accepting = set()
    for i, block in enumerate(block_order):
        rep = next(iter(block))
        new_trans.append(
            tuple(block_ids[block_of[dfa.transitions[rep][k]]] for k in range(nsym))
        )
        if rep in dfa.accepting:
            new_accepting.add(i)
    return Dfa(
        num_states=len(block_order),
        alphabet=dfa.alphabet,
        initial=0,
        accepting=frozenset(new_accepting),
        transitions=tuple(new_trans),
    )


def index(dfa: Dfa) -> int:
    """Size of the canonical minimal DFA for the language of ``dfa``."""
    return minimize(dfa).num_states


def _state_budget(state_budget: int | None) -> int:
    if state_budget is not None:
        return state_budget
    env = os.environ.get(STATE_BUDGET_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise FormatError(f"{STATE_BUDGET_ENV} must be an integer") from exc
    return DEFAULT_STATE_BUDGET


def _check_same_alphabet(dfas: Sequence[Dfa]) -> None:
    first = dfas[0].alphabet
    for other in dfas[1:]:
        if other.alphabet != first:
            raise AlphabetMismatch(
                f"alphabets differ: {list(first)} vs {list(other.alphabet)}"
            )


def product_intersection(dfas: Sequence[Dfa], state_budget: int | None = None) -> Dfa:
    """Reachable product DFA deciding the intersection of the given languages.

    Only reachable product states are materialized; exceeding the state
    budget raises StateBudgetExceeded rather than truncating.
    """
    dfas = list(dfas)
    if not dfas:
        raise ValueError("product_intersection needs at least one DFA")
    _check_same_alphabet(dfas)
    budget = _state_budget(state_budget)
    nsym = len(dfas[0].alphabet)

    start = tuple(d.initial for d in dfas)
    ids = {start: 0}
    order = [start]
    trans_rows: list[tuple[int, ...]] = []
    head = 0
    while head < len(order):
        tup = order[head]
        head += 1
        row = []
        for k in range(nsym):
            succ = tuple(d.transitions[s][k] for d, s in zip(dfas, tup))
            tid = ids.get(succ)
            if tid is None:
                if len(order) >= budget:
                    raise StateBudgetExceeded(
                        f"product exceeds the state budget of {budget}"
                    )
                tid = len(order)
                ids[succ] = tid
                order.append(succ)
            row.append(tid)
        trans_rows.append(tuple(row))

    accepting = frozenset(
        i
        for i, tup in enumerate(order)
        if all(s in d.accepting for d, s in zip(dfas, tup))
    )
    return Dfa(
        num_states=len(order),
        alphabet=dfas[0].alphabet,
        initial=0,
        accepting=accepting,
        transitions=tuple(trans_rows),
    )


def _pair_walk(a: Dfa, b: Dfa, bad) -> bool:
    """BFS over the pair graph; True iff some reachable pair satisfies ``bad``."""
    _check_same_alphabet([a, b])
    nsym = len(a.alphabet)
    start = (a.initial, b.initial)
    if bad(start[0], start[1]):
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        sa, sb = queue.popleft()
        for k in range(nsym):
            nxt = (a.transitions[sa][k], b.transitions[sb][k])
            if nxt not in seen:
                if bad(nxt[0], nxt[1]):
                    return True
                seen.add(nxt)
                queue.append(nxt)
    return False


def language_subset(a: Dfa, b: Dfa) -> bool:
    """True iff every word accepted by ``a`` is accepted by ``b``."""
    acc_a, acc_b = a.accepting, b.accepting
    return not _pair_walk(a, b, lambda sa, sb: sa in acc_a and sb not in acc_b)


def language_equal(a: Dfa, b: Dfa) -> bool:
    acc_a, acc_b = a.accepting, b.accepting
    return not _pair_walk(a, b, lambda sa, sb: (sa in acc_a) != (sb in acc_b))


def separating_word(a: Dfa, b: Dfa) -> str | None:
    """Lexicographically least shortest word on which ``a`` and ``b`` disagree.

    Lexicographic order follows the alphabet order.  Returns None when the
    languages are equal.
    """
    _check_same_alphabet([a, b])
    nsym = len(a.alphabet)

    def disagree(sa: int, sb: int) -> bool:
        return (sa in a.accepting) != (sb in b.accepting)

    start = (a.initial, b.initial)
    if disagree(*start):
        return ""
    words = {start: ""}
    queue = deque([start])
    while queue:
        sa, sb = queue.popleft()
        base = words[(sa, sb)]
        for k in range(nsym):
            nxt = (a.transitions[sa][k], b.transitions[sb][k])
            if nxt not in words:
                word = base + a.alphabet[k]
                if disagree(*nxt):
                    return word
                words[nxt] = word
                queue.append(nxt)
    return None


# ---------------------------------------------------------------------------
# Canonical JSON file format
# ---------------------------------------------------------------------------

def to_json_dict(dfa: Dfa) -> dict:
    """Plain dict in canonical key order for serialization."""
    obj: dict = {
        "alphabet": list(dfa.alphabet),
        "num_states": dfa.num_states,
        "initial": dfa.initial,
        "accepting": sorted(dfa.accepting),
        "transitions": [list(row) for row in dfa.transitions],
    }
    if dfa.state_names is not None:
        obj["state_names"] = list(dfa.state_names)
    return obj


def to_canonical_json(dfa: Dfa) -> str:
    """Canonical serialization: fixed key order, 2-space indent, newline end."""
    return json.dumps(to_json_dict(dfa), indent=2) + "\n"


def dfa_from_json_dict(obj: dict, context: str = "<dfa>") -> Dfa:
    if not isinstance(obj, dict):
        raise FormatError(f"{context}: expected a JSON object")
    required = ["alphabet", "num_states", "initial", "accepting", "transitions"]
    for key in required:
        if key not in obj:
            raise FormatError(f"{context}: missing field {key!r}")
    names = obj.get("state_names")
    try:
        return Dfa(
            num_states=int(obj["num_states"]),
            alphabet=tuple(obj["alphabet"]),
            initial=int(obj["initial"]),
            accepting=frozenset(int(s) for s in obj["accepting"]),
            transitions=tuple(tuple(int(t) for t in row) for row in obj["transitions"]),
            state_names=tuple(names) if names is not None else None,
        )
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{context}: {exc}") from exc


def dfa_from_json(text: str, context: str = "<dfa>") -> Dfa:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{context}: invalid JSON ({exc})") from exc
    return dfa_from_json_dict(obj, context)


def load_dfa(path: str) -> Dfa:
    with open(path, "r", encoding="utf-8") as fh:
        return dfa_from_json(fh.read(), context=path)


def save_dfa(dfa: Dfa, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_canonical_json(dfa))
