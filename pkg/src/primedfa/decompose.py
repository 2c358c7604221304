"""Explicit decomposition of composite minimal linear safety ADFA+s.

A composite instance is decomposed into two families of strictly smaller
DFAs: one skip-state gadget per interior chain position (rejecting exactly
the rejected words whose run misses that position) and one pump gadget per
max-visiting word (rejecting exactly the extensions of that word's
rejected pumpings).  The intersection of all parts equals the source
language, and verification checks precisely that.

The safety-fication transform is also housed here: it maps any DFA to the
largest safety language below it (words all of whose prefixes are
accepted).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classify import classify, linear_profile
from .dfa import (
    Dfa,
    _check_same_alphabet,
    encode_word,
    index,
    language_equal,
    minimize,
    product_intersection,
    separating_word,
)
from .errors import (
    EqualPumpSymbols,
    IndexOutOfRange,
    InternalInconsistency,
    IsPrime,
    NoPumpablePair,
    UnaryPowerWord,
)
from .primality import (
    PRIME,
    _pp_holds,
    _require_max_visiting,
    decide_primality_mls,
    max_visiting_words,
)


@dataclass(frozen=True)
class SkipState:
    """Provenance tag: skip-state gadget for chain position ``i``."""

    i: int

    def to_json_dict(self) -> dict:
        return {"kind": "skip-state", "i": self.i}


@dataclass(frozen=True)
class PumpGadget:
    """Provenance tag: pump gadget for ``word`` at indices (i, j)."""

    word: str
    i: int
    j: int

    def to_json_dict(self) -> dict:
        return {"kind": "pump-gadget", "word": self.word, "i": self.i, "j": self.j}


@dataclass(frozen=True)
class PumpIndices:
    """Chosen pump position for a max-visiting word; the two symbols differ."""

    i: int
    j: int
    word: str


@dataclass
class Decomposition:
    parts: list[Dfa]
    provenance: list
    verified: bool


@dataclass
class VerifyReport:
    ok: bool
    oversized_parts: list[int]
    languages_equal: bool
    separating_word: str | None

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "oversized_parts": self.oversized_parts,
            "languages_equal": self.languages_equal,
            "separating_word": self.separating_word,
        }


def build_a_i_plus(dfa: Dfa, i: int) -> Dfa:
    """Skip-state gadget: drop chain position ``i``, redirect into the accepting sink.

    The result has one state less, replicates every run that avoids the
    dropped state and accepts everything else, so its language contains the
    source language.
    """
    profile = linear_profile(dfa)
    if not 1 <= i <= profile.lin:
        raise IndexOutOfRange(f"skip position {i} out of range 1..{profile.lin}")
    removed = profile.order[i]
    acc_sink = profile.accepting_sink

    keep = [s for s in range(dfa.num_states) if s != removed]
    remap = {s: new for new, s in enumerate(keep)}
    rows = []
    for s in keep:
        rows.append(
            tuple(
                remap[acc_sink if t == removed else t] for t in dfa.transitions[s]
            )
        )
    names = None
    if dfa.state_names is not None:
        names = tuple(dfa.state_names[s] for s in keep)
    return Dfa(
        num_states=len(keep),
        alphabet=dfa.alphabet,
        initial=remap[dfa.initial],
        accepting=frozenset(remap[s] for s in dfa.accepting if s != removed),
        transitions=tuple(rows),
        state_names=names,
    )


def choose_pump_indices(dfa: Dfa, word: str) -> PumpIndices:
    """Largest i (then smallest j) whose every pumping of ``word`` is rejected.

    Maximality of i guarantees the symbols at the two positions differ,
    which the pump gadget construction requires; that guarantee is checked,
    not assumed.
    """
    report = classify(dfa)
    if not report.is_mls_adfa_plus:
        raise NoPumpablePair("pump index selection requires a minimal linear safety ADFA+")
    lin = report.lin
    _require_max_visiting(dfa, word, lin)
    for i in range(lin, 0, -1):
        for j in range(i + 1, lin + 2):
            if _pp_holds(dfa, word, lin, i, j):
                if word[i - 1] == word[j - 1]:
                    raise InternalInconsistency(
                        "maximal pump index yielded equal symbols; this contradicts "
                        "a guaranteed property of the construction"
                    )
                return PumpIndices(i=i, j=j, word=word)
    raise NoPumpablePair(
        f"{word!r} breaks the pumping property; it has no pumpable pair"
    )


def build_a_w_i_j(word: str, i: int, j: int, alphabet: Sequence[str]) -> Dfa:
    """Pump gadget: rejects exactly the extensions of the pumpings of ``word``.

    Constructed from the minimal DFA tracking ``word`` letter by letter, by
    dropping the state entered after ``word[:j-1]`` and looping the factor
    ``word[i-1:j-1]`` back through the state entered after ``word[:i-1]``.
    When ``j`` points past the last letter the pump target is the rejecting
    sink itself.
    """
    alphabet = tuple(alphabet)
    m = len(word) - 1
    if m < 1:
        raise IndexOutOfRange("pump gadget needs a word of length at least 2")
    if len(set(word)) == 1:
        raise UnaryPowerWord(f"{word!r} is a power of a single symbol")
    if not (1 <= i < j <= m + 1):
        raise IndexOutOfRange(
            f"pump indices ({i}, {j}) out of range for a word of length {m + 1}"
        )
    sigma_i = word[i - 1]
    sigma_j = word[j - 1]
    if sigma_i == sigma_j:
        raise EqualPumpSymbols(
            f"symbols at positions {i} and {j} are both {sigma_i!r}"
        )
    for pos, sym in enumerate(word):
        if sym not in alphabet:
            from .errors import UnknownSymbol

            raise UnknownSymbol(sym, pos)

    keep = [k for k in range(m + 1) if k != j - 1]
    remap = {k: new for new, k in enumerate(keep)}
    q_plus = len(keep)
    q_minus = len(keep) + 1
    # q_j collapses to the rejecting sink when j runs past the last letter.
    q_j = q_minus if j == m + 1 else remap[j]

    rows = []
    for k in keep:
        row = []
        for sym in alphabet:
            if k == i - 1 and k == j - 2:
                # Overlapping roles (j = i+1): the loop-back on the factor's
                # last symbol wins; the state the plain rule would target is
                # exactly the dropped one.
                if sym == word[j - 2]:
                    target = remap[i - 1]
                elif sym == sigma_j:
                    target = q_j
                else:
                    target = q_plus
            elif k == i - 1:
                if sym == sigma_i:
                    target = remap[i]
                elif sym == sigma_j:
                    target = q_j
                else:
                    target = q_plus
            elif k == j - 2:
                target = remap[i - 1] if sym == word[j - 2] else q_plus
            elif k == m:
                target = q_minus if sym == word[m] else q_plus
            else:
                target = remap[k + 1] if sym == word[k] else q_plus
            row.append(target)
        rows.append(tuple(row))
    rows.append((q_plus,) * len(alphabet))
    rows.append((q_minus,) * len(alphabet))

    names = tuple(f"q{k}" for k in keep) + ("q+", "q-")
    return Dfa(
        num_states=len(keep) + 2,
        alphabet=alphabet,
        initial=0,
        accepting=frozenset(range(len(keep) + 1)),
        transitions=tuple(rows),
        state_names=names,
    )


def decompose_mls(
    dfa: Dfa, max_words: int | None = None, verify: bool = True
) -> Decomposition:
    """Decomposition of a composite minimal linear safety ADFA+.

    Parts are the skip-state gadgets for positions 1..lin followed by one
    pump gadget per max-visiting word.  Raises IsPrime on prime inputs and
    propagates Inconclusive when the word budget runs out.
    """
    m = minimize(dfa)
    verdict = decide_primality_mls(m, max_words=max_words)
    if verdict.verdict == PRIME:
        raise IsPrime(f"prime automaton (witness {verdict.witness!r})")
    lin = classify(m).lin

    parts: list[Dfa] = []
    provenance: list = []
    for i in range(1, lin + 1):
        parts.append(build_a_i_plus(m, i))
        provenance.append(SkipState(i))
    for word in max_visiting_words(m):
        chosen = choose_pump_indices(m, word)
        parts.append(build_a_w_i_j(word, chosen.i, chosen.j, m.alphabet))
        provenance.append(PumpGadget(word, chosen.i, chosen.j))

    verified = False
    if verify:
        verified = verify_decomposition(m, parts).ok
    return Decomposition(parts=parts, provenance=provenance, verified=verified)


def verify_decomposition(source: Dfa, parts: Sequence[Dfa]) -> VerifyReport:
    """Check that ``parts`` is a valid decomposition of ``source``.

    Valid means every part has strictly smaller index than the source and
    the intersection of the part languages equals the source language.  On
    a language mismatch the report carries the lexicographically least
    shortest separating word.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("verify_decomposition needs at least one part")
    _check_same_alphabet([source] + parts)
    source_index = index(source)
    oversized = [pos for pos, p in enumerate(parts) if index(p) >= source_index]

    # Fold with re-minimization: keeps the intermediate product small and
    # decides the same language as the direct product of all parts.
    fold = minimize(parts[0])
    for part in parts[1:]:
        fold = minimize(product_intersection([fold, part]))
    equal = language_equal(fold, source)
    witness = None if equal else separating_word(fold, source)
    return VerifyReport(
        ok=not oversized and equal,
        oversized_parts=oversized,
        languages_equal=equal,
        separating_word=witness,
    )


def safetyfy(dfa: Dfa) -> Dfa:
    """Largest safety language contained in the input's language.

    Keeps exactly the accepting states of the minimized input, adds one
    rejecting sink and redirects every transition into a rejecting state to
    that sink; accepts a word iff all of its prefixes were accepted by the
    input.  An input whose minimized initial state rejects yields the
    one-state rejecting sink (empty language).
    """
    m = minimize(dfa)
    nsym = len(m.alphabet)
    rejecting = [s for s in range(m.num_states) if s not in m.accepting]
    if not rejecting:
        return m
    if m.initial not in m.accepting:
        return Dfa(
            num_states=1,
            alphabet=m.alphabet,
            initial=0,
            accepting=frozenset(),
            transitions=((0,) * nsym,),
        )
    keep = [s for s in range(m.num_states) if s in m.accepting]
    remap = {s: new for new, s in enumerate(keep)}
    sink = len(keep)
    rows = []
    for s in keep:
        rows.append(
            tuple(
                remap[t] if t in m.accepting else sink
                for t in m.transitions[s]
            )
        )
    rows.append((sink,) * nsym)
    built = Dfa(
        num_states=len(keep) + 1,
        alphabet=m.alphabet,
        initial=remap[m.initial],
        accepting=frozenset(range(len(keep))),
        transitions=tuple(rows),
    )
    return minimize(built)
