"""Exception types shared across the toolkit."""


class PrimeDfaError(Exception):
    """Base class for every error raised by this package."""


class FormatError(PrimeDfaError):
    """A DFA or formula file does not conform to the expected format."""


class UnknownSymbol(PrimeDfaError):
    """A word contains a symbol outside the automaton's alphabet."""

    def __init__(self, symbol: str, position: int):
        super().__init__(f"symbol {symbol!r} at position {position} is not in the alphabet")
        self.symbol = symbol
        self.position = position


class AlphabetMismatch(PrimeDfaError):
    """An operation combining several DFAs received unequal alphabets."""


class StateBudgetExceeded(PrimeDfaError):
    """A product construction would materialize more states than allowed."""


class IndexOutOfRange(PrimeDfaError):
    """A positional argument (pump index, clause number, ...) is out of range."""


class NotMlsAdfaPlus(PrimeDfaError):
    """The input is not a minimal linear safety ADFA+."""


class WordNotMaxVisiting(PrimeDfaError):
    """The given word is not a max-visiting word of the automaton."""


class Inconclusive(PrimeDfaError):
    """The word budget ran out before a verdict could be delivered."""


class IsPrime(PrimeDfaError):
    """Decomposition was requested for a prime automaton."""


class NoPumpablePair(PrimeDfaError):
    """No pump position of the word keeps every repetition rejected."""


class EqualPumpSymbols(PrimeDfaError):
    """The pump gadget requires the symbols at both pump indices to differ."""


class UnaryPowerWord(PrimeDfaError):
    """The pump gadget is undefined for words that repeat a single symbol."""


class MalformedHeader(PrimeDfaError):
    """The DIMACS problem line is missing or malformed."""


class LiteralOutOfRange(PrimeDfaError):
    """A DIMACS literal references a variable outside the declared range."""


class ClauseCountMismatch(PrimeDfaError):
    """The DIMACS clause count does not match the header."""


class NoVariables(PrimeDfaError):
    """CNF normalization needs at least one variable."""


class VariableOutOfRange(PrimeDfaError):
    """Formula evaluation hit a variable the assignment does not cover."""


class InternalInconsistency(PrimeDfaError):
    """A result contradicts a guaranteed invariant; signals a bug, never expected."""


class BudgetExceeded(PrimeDfaError):
    """The brute-force oracle exceeded its candidate or state budget."""


class ModeUnsound(PrimeDfaError):
    """The restricted oracle mode is unsound for the given input."""


class RetriesExhausted(PrimeDfaError):
    """Random instance generation gave up after the configured retries."""
