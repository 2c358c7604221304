"""CNF satisfiability via automaton primality.

A CNF formula over r variables and s clauses is normalized to an element
grid: clause k, column i holds the polarity of variable i+1 in that clause
(1 positive, 0 negated, None absent).  The grid is compiled to an
automaton over the alphabet 0,1,c,d consisting of an assignment device
(a chain reading r bits then a d) followed by one clause row per clause.
Every max-visiting word of that automaton has the form ``u d c^kappa`` for
an assignment string u, and the automaton is prime exactly when some u
satisfies the formula, so SAT reduces to the primality decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .dfa import Dfa, run_from
from .errors import (
    ClauseCountMismatch,
    FormatError,
    IndexOutOfRange,
    InternalInconsistency,
    LiteralOutOfRange,
    MalformedHeader,
    NoVariables,
    VariableOutOfRange,
)
from .primality import COMPOSITE, decide_primality_mls

CNF_ALPHABET = ("0", "1", "c", "d")


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula: clauses of signed 1-based variable indices."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "clauses", tuple(tuple(cl) for cl in self.clauses)
        )
        if self.num_vars < 0:
            raise ValueError("variable count must be non-negative")
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise LiteralOutOfRange(
                        f"literal {lit} outside 1..{self.num_vars}"
                    )


class TriviallySat:
    """Marker: normalization removed every clause; any assignment works."""

    def __repr__(self):
        return "TriviallySat"


class TriviallyUnsat:
    """Marker: the formula is unsatisfiable without building an automaton."""

    def __repr__(self):
        return "TriviallyUnsat"


TRIVIALLY_SAT = TriviallySat()
TRIVIALLY_UNSAT = TriviallyUnsat()


@dataclass(frozen=True, eq=False)
class NormalizedCnf:
    """Element grid: ``grid[k][i]`` is 1, 0 or None for variable i+1 in clause k+1.

    ``kappa`` is the length of the trailing c-run of the automaton's
    max-visiting words: one full sweep of c's through all s clause rows
    (2r+1 each) plus the final step into the rejecting sink.
    """

    r: int
    s: int
    grid: tuple[tuple[int | None, ...], ...]
    kappa: int


@dataclass(frozen=True)
class Assignment:
    """A variable assignment encoded as a bit string; bit i-1 is variable i."""

    bits: str

    def __post_init__(self):
        if any(b not in "01" for b in self.bits):
            raise ValueError("assignment bits must be 0 or 1")

    def value(self, var: int) -> int:
        if not 1 <= var <= len(self.bits):
            raise VariableOutOfRange(f"variable {var} outside 1..{len(self.bits)}")
        return int(self.bits[var - 1])

    def to_literals(self) -> list[int]:
        return [v if self.bits[v - 1] == "1" else -v for v in range(1, len(self.bits) + 1)]


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF: ``p cnf <vars> <clauses>``, c comments, 0-terminated clauses."""
    num_vars = None
    declared = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise MalformedHeader("duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedHeader(f"bad problem line: {line!r}")
            try:
                num_vars = int(parts[2])
                declared = int(parts[3])
            except ValueError as exc:
                raise MalformedHeader(f"bad problem line: {line!r}") from exc
            if num_vars < 0 or declared < 0:
                raise MalformedHeader(f"negative counts in problem line: {line!r}")
            continue
        if num_vars is None:
            raise MalformedHeader("clause data before the problem line")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError as exc:
                raise FormatError(f"bad literal token {token!r}") from exc
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise LiteralOutOfRange(
                        f"literal {lit} outside 1..{num_vars}"
                    )
                current.append(lit)
    if num_vars is None:
        raise MalformedHeader("missing problem line")
    if current:
        raise ClauseCountMismatch("unterminated clause at end of input")
    if len(clauses) != declared:
        raise ClauseCountMismatch(
            f"header declares {declared} clauses, found {len(clauses)}"
        )
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def normalize(
    formula: CnfFormula,
) -> Union[NormalizedCnf, TriviallySat, TriviallyUnsat]:
    """Normalize to the element grid.

    Duplicate literals are dropped, tautological clauses (x and not-x)
    removed; if nothing remains the formula is trivially satisfiable.
    Empty clauses become all-None rows, which no assignment satisfies.
    """
    if formula.num_vars < 1:
        raise NoVariables("normalization needs at least one variable")
    r = formula.num_vars
    rows: list[tuple[int | None, ...]] = []
    for clause in formula.clauses:
        lits = set(clause)
        if any(-lit in lits for lit in lits):
            continue
        row: list[int | None] = [None] * r
        for lit in lits:
            row[abs(lit) - 1] = 1 if lit > 0 else 0
        rows.append(tuple(row))
    if not rows:
        return TRIVIALLY_SAT
    s = len(rows)
    return NormalizedCnf(r=r, s=s, grid=tuple(rows), kappa=s * (2 * r + 1) + 1)


def _state_names(r: int, s: int) -> list[str]:
    names = [f"p{i}" for i in range(r + 1)] + ["pc0"]
    for k in range(1, s + 1):
        for i in range(1, r + 1):
            names.append(f"p{i}_{k}")
            names.append(f"ph{i}_{k}")
        names.append(f"pc{k}")
    names += ["p+", "p-"]
    return names


def build_cnf_dfa(normalized: NormalizedCnf) -> Dfa:
    """Compile the element grid to its automaton over 0,1,c,d.

    States are numbered in the order the unique sink-avoiding run visits
    them, with the accepting then the rejecting sink last.  The relation
    between kappa and the longest sink-avoiding run is asserted on every
    build rather than assumed.
    """
    r, s, grid = normalized.r, normalized.s, normalized.grid
    names = _state_names(r, s)
    sid = {name: i for i, name in enumerate(names)}
    total = len(names)
    plus = sid["p+"]
    minus = sid["p-"]

    def branch(element: int | None, bit: int, hat_target: int, plain_target: int) -> int:
        """0/1 step against a grid element: to the hat state iff it satisfies."""
        if element is not None and bit == element:
            return hat_target
        return plain_target

    rows: list[list[int]] = [[-1] * 4 for _ in range(total)]

    for i in range(r + 1):
        row = rows[sid[f"p{i}"]]
        if i < r:
            row[0] = row[1] = sid[f"p{i + 1}"]
        else:
            for bit in (0, 1):
                row[bit] = branch(grid[0][0], bit, sid["ph1_1"], sid["p1_1"])
        row[2] = plus
        if i == 0:
            row[3] = minus
        elif i < r:
            row[3] = plus
        else:
            row[3] = sid["pc0"]

    for k in range(1, s + 1):
        for i in range(1, r + 1):
            row = rows[sid[f"p{i}_{k}"]]
            if i < r:
                for bit in (0, 1):
                    row[bit] = branch(
                        grid[k - 1][i], bit, sid[f"ph{i + 1}_{k}"], sid[f"p{i + 1}_{k}"]
                    )
            else:
                row[0] = row[1] = minus
            row[2] = sid[f"ph{i}_{k}"]
            row[3] = minus

            hrow = rows[sid[f"ph{i}_{k}"]]
            if i < r:
                hrow[0] = hrow[1] = sid[f"ph{i + 1}_{k}"]
                hrow[2] = sid[f"p{i + 1}_{k}"]
            else:
                if k < s:
                    for bit in (0, 1):
                        hrow[bit] = branch(
                            grid[k][0], bit, sid[f"ph1_{k + 1}"], sid[f"p1_{k + 1}"]
                        )
                else:
                    hrow[0] = hrow[1] = plus
                hrow[2] = sid[f"pc{k}"]
            hrow[3] = minus

    for k in range(s + 1):
        row = rows[sid[f"pc{k}"]]
        if k < s:
            row[0] = row[1] = row[3] = minus
            row[2] = sid[f"p1_{k + 1}"]
        else:
            row[0] = row[1] = row[3] = plus
            row[2] = minus

    rows[plus] = [plus] * 4
    rows[minus] = [minus] * 4

    dfa = Dfa(
        num_states=total,
        alphabet=CNF_ALPHABET,
        initial=0,
        accepting=frozenset(i for i in range(total) if i != minus),
        transitions=tuple(tuple(row) for row in rows),
        state_names=tuple(names),
    )

    # Non-sink transitions strictly increase the state id, so a reverse scan
    # computes the longest sink-avoiding run; kappa must match it exactly.
    depth = [0] * total
    for state in range(total - 3, -1, -1):
        depth[state] = max(
            (1 + depth[t] for t in rows[state] if t < plus), default=0
        )
    lin = depth[0]
    if lin != total - 3 or normalized.kappa != lin - r:
        raise InternalInconsistency(
            f"kappa {normalized.kappa} disagrees with the built automaton "
            f"(lin {lin}, {total} states)"
        )
    return dfa


def _hat_row_end(dfa: Dfa, r: int, k: int) -> int:
    name = f"p{r}" if k == 0 else f"ph{r}_{k}"
    return dfa.state_names.index(name)


def clause_row_check(
    dfa: Dfa, normalized: NormalizedCnf, u: Assignment, k: int
) -> tuple[bool, bool]:
    """Row-k behaviour on assignment string u, both ways.

    Returns (automaton, semantic): whether reading u from the row's entry
    state lands on the row's positive target, and whether u satisfies
    clause k.  The two must always agree; tests enforce it.
    """
    if not 1 <= k <= normalized.s:
        raise IndexOutOfRange(f"clause index {k} outside 1..{normalized.s}")
    if len(u.bits) != normalized.r:
        raise VariableOutOfRange(
            f"assignment has {len(u.bits)} bits, formula has {normalized.r} variables"
        )
    start = _hat_row_end(dfa, normalized.r, k - 1)
    target = _hat_row_end(dfa, normalized.r, k)
    automaton = run_from(dfa, start, u.bits) == target
    semantic = any(
        element is not None and element == int(bit)
        for element, bit in zip(normalized.grid[k - 1], u.bits)
    )
    return automaton, semantic


def eval_formula(formula: CnfFormula, assignment) -> bool:
    """Standard CNF evaluation against an Assignment or a var->value mapping."""
    if isinstance(assignment, Assignment):
        def value(var: int) -> int:
            return assignment.value(var)
    elif isinstance(assignment, Mapping):
        def value(var: int) -> int:
            if var not in assignment:
                raise VariableOutOfRange(f"assignment does not cover variable {var}")
            return 1 if assignment[var] else 0
    else:
        raise TypeError("assignment must be an Assignment or a mapping")

    for clause in formula.clauses:
        satisfied = False
        for lit in clause:
            if (lit > 0) == bool(value(abs(lit))):
                satisfied = True
                break
        if not satisfied:
            return False
    return True


def solve_sat_via_primality(
    formula: CnfFormula, max_words: int | None = None, jobs: int = 1
) -> Assignment | None:
    """Satisfying assignment via the primality decision, or None if unsatisfiable.

    Trivially satisfiable formulas short-circuit with the all-zeros
    assignment.  Otherwise the compiled automaton is prime iff the formula
    is satisfiable, and a Prime witness has the shape ``u d c^kappa``; the
    assignment read off the witness is verified semantically before it is
    returned.
    """
    normalized = normalize(formula)
    if isinstance(normalized, TriviallySat):
        assignment = Assignment("0" * formula.num_vars)
        if not eval_formula(formula, assignment):
            raise InternalInconsistency(
                "all-zeros assignment fails a trivially satisfiable formula"
            )
        return assignment
    if isinstance(normalized, TriviallyUnsat):
        return None

    dfa = build_cnf_dfa(normalized)
    verdict = decide_primality_mls(dfa, max_words=max_words, jobs=jobs)
    if verdict.verdict == COMPOSITE:
        return None
    witness = verdict.witness
    bits = witness[: normalized.r]
    expected = bits + "d" + "c" * normalized.kappa
    if witness != expected or any(b not in "01" for b in bits):
        raise InternalInconsistency(
            f"primality witness {witness!r} does not have the assignment shape"
        )
    assignment = Assignment(bits)
    if not eval_formula(formula, assignment):
        raise InternalInconsistency(
            f"extracted assignment {bits!r} fails semantic verification"
        )
    return assignment
