"""Structural classification of DFAs.

Decides the classes the primality machinery relies on:

* minimal          -- no smaller DFA decides the same language;
* safety           -- rejection is prefix-closed upward (once a prefix is
                      rejected, every extension is rejected);
* ADFA+            -- the automaton has an accepting sink and a rejecting
                      sink and no cycles besides the sinks' self-loops;
* linear           -- any two distinct states are comparable by
                      reachability unless one of them is a sink.

For a minimal ADFA+, ``lin`` is the length of the longest word on which
the automaton does not enter a sink; it equals ``num_states - 3`` exactly
for the linear ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dfa import Dfa, accepting_sinks, is_sink, minimize, rejecting_sinks
from .errors import NotMlsAdfaPlus


@dataclass(frozen=True)
class ClassReport:
    """Classification verdicts plus the structural quantities downstream code needs."""

    is_minimal: bool
    is_safety: bool
    is_adfa_plus: bool
    is_linear: bool
    is_mls_adfa_plus: bool
    lin: int | None
    accepting_sink: int | None
    rejecting_sink: int | None

    def to_json_dict(self) -> dict:
        return {
            "is_minimal": self.is_minimal,
            "is_safety": self.is_safety,
            "is_adfa_plus": self.is_adfa_plus,
            "is_linear": self.is_linear,
            "is_mls_adfa_plus": self.is_mls_adfa_plus,
            "lin": self.lin,
            "accepting_sink": self.accepting_sink,
            "rejecting_sink": self.rejecting_sink,
        }


@dataclass(frozen=True, eq=False)
class LinearProfile:
    """Transition structure of a minimal linear safety ADFA+.

    ``order`` lists the non-sink states in reachability order; position i
    holds the unique state reached after i steps of any sink-avoiding run.
    ``sigma(i, target)`` is the set of symbols that move position i to
    ``target``, where ``target`` is a later position, "+" (accepting sink)
    or "-" (rejecting sink).
    """

    order: tuple[int, ...]
    accepting_sink: int
    rejecting_sink: int
    sigma_sets: dict

    def sigma(self, i: int, target) -> frozenset[str]:
        return self.sigma_sets.get((i, target), frozenset())

    @property
    def lin(self) -> int:
        return len(self.order) - 1


def _successor_sets(dfa: Dfa) -> list[set[int]]:
    return [set(row) for row in dfa.transitions]


def _reach_sets(dfa: Dfa) -> list[set[int]]:
    """reach[s] = states reachable from s, including s itself."""
    succ = _successor_sets(dfa)
    reach = []
    for s in range(dfa.num_states):
        seen = {s}
        stack = [s]
        while stack:
            q = stack.pop()
            for t in succ[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        reach.append(seen)
    return reach


def _nonsink_acyclic(dfa: Dfa) -> bool:
    """True iff the transition graph restricted to non-sinks has no cycle."""
    sinks = {s for s in range(dfa.num_states) if is_sink(dfa, s)}
    nodes = [s for s in range(dfa.num_states) if s not in sinks]
    succ = {
        s: {t for t in dfa.transitions[s] if t not in sinks} for s in nodes
    }
    indeg = {s: 0 for s in nodes}
    for s in nodes:
        for t in succ[s]:
            indeg[t] += 1
    ready = [s for s in nodes if indeg[s] == 0]
    removed = 0
    while ready:
        s = ready.pop()
        removed += 1
        for t in succ[s]:
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    return removed == len(nodes)


def _longest_nonsink_path(dfa: Dfa) -> int:
    """Longest run from the initial state that stays out of the sinks.

    Only meaningful when the non-sink graph is acyclic; callers check that.
    """
    sinks = {s for s in range(dfa.num_states) if is_sink(dfa, s)}
    if dfa.initial in sinks:
        return 0
    memo: dict[int, int] = {}

    def depth(s: int) -> int:
        cached = memo.get(s)
        if cached is not None:
            return cached
        best = 0
        for t in set(dfa.transitions[s]):
            if t not in sinks:
                best = max(best, 1 + depth(t))
        memo[s] = best
        return best

    return depth(dfa.initial)


def classify(dfa: Dfa) -> ClassReport:
    """Compute the full class report for ``dfa``.

    Safety is a property of the language, so it is decided on the minimized
    DFA: no rejecting state at all, or exactly one and that one a sink.
    The ADFA+ and linearity checks inspect the input automaton as given.
    """
    minimized = minimize(dfa)
    is_minimal = minimized.num_states == dfa.num_states

    min_rejecting = [
        s for s in range(minimized.num_states) if s not in minimized.accepting
    ]
    is_safety = not min_rejecting or (
        len(min_rejecting) == 1 and is_sink(minimized, min_rejecting[0])
    )

    acc_sinks = accepting_sinks(dfa)
    rej_sinks = rejecting_sinks(dfa)
    is_adfa_plus = bool(acc_sinks) and bool(rej_sinks) and _nonsink_acyclic(dfa)

    reach = _reach_sets(dfa)
    is_linear = True
    for q in range(dfa.num_states):
        for p in range(q + 1, dfa.num_states):
            forward = p in reach[q]
            backward = q in reach[p]
            neither = (
                not forward
                and not backward
                and (is_sink(dfa, q) or is_sink(dfa, p))
            )
            if forward + backward + neither != 1:
                is_linear = False
                break
        if not is_linear:
            break

    lin = None
    if is_minimal and is_adfa_plus:
        lin = _longest_nonsink_path(dfa)

    return ClassReport(
        is_minimal=is_minimal,
        is_safety=is_safety,
        is_adfa_plus=is_adfa_plus,
        is_linear=is_linear,
        is_mls_adfa_plus=is_minimal and is_safety and is_adfa_plus and is_linear,
        lin=lin,
        accepting_sink=acc_sinks[0] if acc_sinks else None,
        rejecting_sink=rej_sinks[0] if rej_sinks else None,
    )


def linear_profile(dfa: Dfa) -> LinearProfile:
    """Reachability order of the non-sinks and the per-position symbol sets.

    Raises NotMlsAdfaPlus unless ``dfa`` is a minimal linear safety ADFA+.
    The consecutive-step sets ``sigma(i-1, i)`` and the final ``sigma(lin, "-")``
    are verified non-empty rather than assumed.
    """
    report = classify(dfa)
    if not report.is_mls_adfa_plus:
        raise NotMlsAdfaPlus("linear_profile requires a minimal linear safety ADFA+")
    acc_sink = report.accepting_sink
    rej_sink = report.rejecting_sink

    reach = _reach_sets(dfa)
    non_sinks = [s for s in range(dfa.num_states) if s not in (acc_sink, rej_sink)]
    # Linearity totally orders the non-sinks: the earlier a state, the more
    # non-sinks it reaches, so the reach counts are pairwise distinct.
    non_sinks.sort(key=lambda s: -len(reach[s] - {acc_sink, rej_sink}))
    position = {s: i for i, s in enumerate(non_sinks)}

    sigma_sets: dict = {}
    for i, s in enumerate(non_sinks):
        for k, sym in enumerate(dfa.alphabet):
            t = dfa.transitions[s][k]
            if t == acc_sink:
                key = (i, "+")
            elif t == rej_sink:
                key = (i, "-")
            else:
                key = (i, position[t])
            sigma_sets.setdefault(key, set()).add(sym)
    sigma_sets = {key: frozenset(val) for key, val in sigma_sets.items()}

    profile = LinearProfile(
        order=tuple(non_sinks),
        accepting_sink=acc_sink,
        rejecting_sink=rej_sink,
        sigma_sets=sigma_sets,
    )
    n = profile.lin
    for i in range(1, n + 1):
        if not profile.sigma(i - 1, i):
            raise NotMlsAdfaPlus(
                f"no direct transition from chain position {i - 1} to {i}"
            )
    if not profile.sigma(n, "-"):
        raise NotMlsAdfaPlus("last non-sink has no transition to the rejecting sink")
    return profile
