"""
Exception hierarchy for the dwd package.

Every failure a caller can act on has its own class; the CLI maps them to exit codes.
"""


class DwdError(Exception):
    """Base class for all dwd errors."""


class ConfigError(DwdError):
    """Invalid configuration value or command-line combination."""


# wiring-core

class WordError(DwdError, ValueError):
    """A crossing sequence is not a valid double wiring diagram."""


class InvalidLetter(WordError):
    """Unknown color token or a level outside 1..n-1."""


class WrongLength(WordError):
    """A monochrome subword does not have n(n-1)/2 letters."""


class RepeatedCrossing(WordError):
    """Two strings of the same color cross twice."""


class IncompleteReversal(WordError):
    """A monochrome subword does not end in the order-reversing permutation."""


class SiteNotApplicable(DwdError):
    """A word-level braid move was requested at a site that is not a move site."""


class InvariantViolation(DwdError):
    """An internal invariant failed (label counts, label runs, simple graph)."""


# quiver-detect

class MoveNotDetected(DwdError):
    """apply_move was given a move that detect_moves does not report."""


# graph-enum

class CheckpointCorrupt(DwdError):
    """A checkpoint file failed magic, version or section checks."""


class FingerprintModeRequired(DwdError):
    """Exact-mode enumeration would exceed the configured memory budget."""


class FormatTooLarge(DwdError):
    """The requested export format is not produced for graphs this large."""


class TargetUnreachable(DwdError):
    """A minor could not be reached from the start class (a correctness failure)."""


class SearchBudgetExceeded(DwdError):
    """The Hamiltonian search ran out of its node budget before deciding."""


# laurent

class VarTableMismatch(DwdError):
    """Two Laurent polynomials over different variable tables were combined."""


class NotDivisible(DwdError, ArithmeticError):
    """Exact division left a nonzero remainder."""


class ZeroDenominator(DwdError, ZeroDivisionError):
    """Evaluation hit a zero coordinate at a negative exponent."""


# positivity

class ScopeTooLarge(DwdError):
    """Full verification was requested for an n where it is not feasible."""


class NotTotallyPositive(DwdError):
    """A matrix failed the brute-force total positivity guard."""
