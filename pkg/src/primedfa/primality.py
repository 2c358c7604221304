"""Primality of minimal linear safety ADFA+s via the pumping property.

A minimal linear safety ADFA+ is composite exactly when every max-visiting
word admits a pump position (i, j) whose every repetition count yields a
rejected word.  Conversely, a max-visiting word for which every (i, j) has
some accepted pumping is a primality witness.  The decision procedure
enumerates the max-visiting words exhaustively and, per pair, only the
repetition counts up to ``l_prime``: beyond that bound the pumped prefix
alone already drives any automaton of the given lin into a sink, so larger
counts cannot change the outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .classify import classify, linear_profile
from .dfa import Dfa, accepts, minimize
from .errors import Inconclusive, IndexOutOfRange, NotMlsAdfaPlus, WordNotMaxVisiting

PRIME = "Prime"
COMPOSITE = "Composite"


@dataclass(frozen=True)
class Pumping:
    """A pump descriptor: repeat ``word[i-1:j-1]`` ``l`` times (1-indexed)."""

    word: str
    i: int
    j: int
    l: int

    def __post_init__(self):
        if not (1 <= self.i < self.j <= len(self.word) + 1):
            raise IndexOutOfRange(
                f"pump indices ({self.i}, {self.j}) out of range for a word "
                f"of length {len(self.word)}"
            )
        if self.l < 0:
            raise IndexOutOfRange("repetition count must be non-negative")

    def expand(self) -> str:
        return pump(self.word, self.i, self.j, self.l)


@dataclass(frozen=True)
class PrimalityVerdict:
    """Outcome of a primality decision.

    For the exhaustive max-visiting-word method, a Prime verdict carries the
    lexicographically least witness and, per pump pair (i, j), the smallest
    repetition count whose pumping is accepted.  Brute-force methods carry a
    witness but no pumping evidence.
    """

    verdict: str
    witness: str | None = None
    evidence: dict[tuple[int, int], int] | None = None
    method: str = "mls"
    note: str | None = None

    def to_json_dict(self) -> dict:
        evidence = None
        if self.evidence is not None:
            evidence = {f"{i},{j}": l for (i, j), l in sorted(self.evidence.items())}
        obj = {
            "verdict": self.verdict,
            "witness": self.witness,
            "evidence": evidence,
            "method": self.method,
        }
        if self.note is not None:
            obj["note"] = self.note
        return obj


def pump(word: str, i: int, j: int, l: int) -> str:
    """``word`` with the factor ``word[i-1:j-1]`` repeated ``l`` times."""
    if not (1 <= i < j <= len(word) + 1):
        raise IndexOutOfRange(
            f"pump indices ({i}, {j}) out of range for a word of length {len(word)}"
        )
    if l < 0:
        raise IndexOutOfRange("repetition count must be non-negative")
    return word[: i - 1] + word[i - 1 : j - 1] * l + word[j - 1 :]


def l_prime(i: int, j: int, lin: int) -> int:
    """Smallest l with (i-1) + l*(j-i) >= lin+1.

    From that count on, the pumped prefix alone exceeds every sink-avoiding
    run of a lin-bounded ADFA+, so all larger counts land in the same sink.
    """
    if not (1 <= i < j <= lin + 1):
        raise IndexOutOfRange(
            f"pump indices ({i}, {j}) out of range for lin {lin}"
        )
    need = lin + 2 - i
    return -(-need // (j - i))


def max_visiting_words(dfa: Dfa) -> Iterator[str]:
    """All words of length lin+1 whose run visits every non-sink then rejects.

    Yields in lexicographic order induced by the alphabet order.  On a
    minimal linear safety ADFA+ the sink-avoiding runs walk the non-sink
    chain one step per symbol, so the word set is the product of the
    consecutive-step symbol sets followed by the last-step-to-rejection set.
    """
    profile = linear_profile(dfa)
    rank = dfa.symbol_index
    n = profile.lin
    factors = [sorted(profile.sigma(i, i + 1), key=rank.get) for i in range(n)]
    factors.append(sorted(profile.sigma(n, "-"), key=rank.get))
    for combo in itertools.product(*factors):
        yield "".join(combo)


def _require_max_visiting(dfa: Dfa, word: str, lin: int) -> None:
    if len(word) != lin + 1:
        raise WordNotMaxVisiting(
            f"expected a word of length lin+1 = {lin + 1}, got {len(word)}"
        )
    if not accepts(dfa, word[:-1]) or accepts(dfa, word):
        raise WordNotMaxVisiting(f"{word!r} is not a max-visiting word")


def _classified_lin(dfa: Dfa) -> int:
    report = classify(dfa)
    if not report.is_mls_adfa_plus:
        raise NotMlsAdfaPlus("operation requires a minimal linear safety ADFA+")
    return report.lin


def _pp_holds(dfa: Dfa, word: str, lin: int, i: int, j: int) -> bool:
    bound = l_prime(i, j, lin)
    return all(not accepts(dfa, pump(word, i, j, l)) for l in range(bound + 1))


def _smallest_accepted_l(dfa: Dfa, word: str, lin: int, i: int, j: int) -> int | None:
    bound = l_prime(i, j, lin)
    for l in range(bound + 1):
        if accepts(dfa, pump(word, i, j, l)):
            return l
    return None


def pp_condition_holds(dfa: Dfa, word: str, i: int, j: int) -> bool:
    """True iff every pumping of ``word`` at (i, j) is rejected.

    Checking repetition counts up to ``l_prime`` suffices for all counts.
    """
    lin = _classified_lin(dfa)
    _require_max_visiting(dfa, word, lin)
    if not (1 <= i < j <= lin + 1):
        raise IndexOutOfRange(f"pump indices ({i}, {j}) out of range for lin {lin}")
    return _pp_holds(dfa, word, lin, i, j)


def _breaks_pp_given_lin(
    dfa: Dfa, word: str, lin: int
) -> dict[tuple[int, int], int] | None:
    evidence: dict[tuple[int, int], int] = {}
    for i in range(1, lin + 1):
        for j in range(i + 1, lin + 2):
            l = _smallest_accepted_l(dfa, word, lin, i, j)
            if l is None:
                return None
            evidence[(i, j)] = l
    return evidence


def breaks_pp(dfa: Dfa, word: str) -> dict[tuple[int, int], int] | None:
    """Evidence that ``word`` is a primality witness, or None.

    Returns, for every pump pair (i, j), the smallest repetition count whose
    pumping is accepted; returns None as soon as one pair rejects every
    count (the pumping property holds there, so the word is no witness).
    """
    lin = _classified_lin(dfa)
    _require_max_visiting(dfa, word, lin)
    return _breaks_pp_given_lin(dfa, word, lin)


def _evidence_worker(args):
    dfa, lin, words = args
    return [_breaks_pp_given_lin(dfa, w, lin) for w in words]


def _decide_parallel(
    dfa: Dfa, lin: int, words, max_words: int | None, jobs: int
) -> PrimalityVerdict:
    from concurrent.futures import ProcessPoolExecutor

    limit = None if max_words is None else max_words + 1
    all_words = list(itertools.islice(words, limit))
    over_budget = max_words is not None and len(all_words) > max_words
    scan = all_words[:max_words] if max_words is not None else all_words

    chunk_size = max(1, min(64, (len(scan) + jobs - 1) // jobs))
    chunks = [scan[p : p + chunk_size] for p in range(0, len(scan), chunk_size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(_evidence_worker, [(dfa, lin, c) for c in chunks])
        for chunk, outcome in zip(chunks, results):
            for word, evidence in zip(chunk, outcome):
                if evidence is not None:
                    return PrimalityVerdict(
                        PRIME, witness=word, evidence=evidence, method="mls"
                    )
    if over_budget:
        raise Inconclusive(
            f"word budget of {max_words} exhausted before a verdict"
        )
    return PrimalityVerdict(COMPOSITE, method="mls")


def decide_primality_mls(
    dfa: Dfa, max_words: int | None = None, jobs: int = 1
) -> PrimalityVerdict:
    """Decide primality of a minimal linear safety ADFA+.

    The input is minimized first; the minimized automaton must classify as
    a minimal linear safety ADFA+.  Every max-visiting word is examined in
    lexicographic order; the first one that breaks the pumping property is
    returned as the witness.  ``max_words`` caps the number of examined
    words and raises Inconclusive when more would remain, never delivering
    a wrong verdict.  ``jobs`` > 1 evaluates words in parallel processes
    with the same first-witness-in-order semantics.
    """
    m = minimize(dfa)
    report = classify(m)
    if not report.is_mls_adfa_plus:
        raise NotMlsAdfaPlus(
            "primality decision requires a minimal linear safety ADFA+"
        )
    lin = report.lin
    if lin == 0:
        witness = next(max_visiting_words(m))
        return PrimalityVerdict(PRIME, witness=witness, evidence={}, method="mls")

    words = max_visiting_words(m)
    if jobs > 1:
        return _decide_parallel(m, lin, words, max_words, jobs)

    for count, word in enumerate(words):
        if max_words is not None and count >= max_words:
            raise Inconclusive(f"word budget of {max_words} exhausted before a verdict")
        evidence = _breaks_pp_given_lin(m, word, lin)
        if evidence is not None:
            return PrimalityVerdict(PRIME, witness=word, evidence=evidence, method="mls")
    return PrimalityVerdict(COMPOSITE, method="mls")
