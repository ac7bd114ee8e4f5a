"""
Exception hierarchy for FuForge.

Every error case named by an operation has its own class so that callers and
the CLI can tell a domain signal (e.g. an undefined partial product) apart from
a broken invariant (e.g. a semigroup without an idempotent).
"""


class FuForgeError(Exception):
    """Root of all FuForge errors."""


# --- Finite sets and partial semigroups ---

class Undefined(FuForgeError, ValueError):
    """The partial operation is not defined for the given operands."""


class OutOfRange(FuForgeError, ValueError):
    """An element or index lies outside its carrier or universe."""


class AssociativityError(FuForgeError, ValueError):
    """An operation table failed validation at construction time."""


class NotIdempotent(FuForgeError, ValueError):
    """A point that must be idempotent is not."""


class AlgebraFault(FuForgeError, RuntimeError):
    """An invariant that the algebra guarantees did not hold."""


# --- FS-sets and condensations ---

class NotInFS(FuForgeError, ValueError):
    """A value is not a finite sum of the sequence."""


class NonUnique(FuForgeError, ValueError):
    """The sequence does not have unique representations."""


class TooLarge(FuForgeError, ValueError):
    """A full enumeration would exceed the configured length cap."""


# --- Mixed-radix arithmetic ---

class InvalidBase(FuForgeError, ValueError):
    """The sequence is not a divisible base with a_0 = 1 and radices >= 2."""


class Overflow(FuForgeError, ArithmeticError):
    """A number does not fit into the truncated base."""


class BadZ(FuForgeError, ValueError):
    """The residue z is not below a_n."""


class InvalidDigits(FuForgeError, ValueError):
    """A digit vector violates its range or the operation's preconditions."""


class PreconditionFailed(FuForgeError, ValueError):
    """A hypothesis of a finitary statement does not hold; `clause` names the failing one."""

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {message}" if message else clause)


# --- FU families ---

class NotInFU(FuForgeError, ValueError):
    """A set is not a union of members of the family."""


class InvalidFamily(FuForgeError, ValueError):
    """Family members are empty or not pairwise disjoint."""


class BadCover(FuForgeError, ValueError):
    """A cover map does not witness s_i being contained in t_(j_i)."""


class TooShort(FuForgeError, ValueError):
    """The finite family is too short to supply the next member."""


# --- Search ---

class InvalidColoring(FuForgeError, ValueError):
    """A coloring table is incomplete or uses a color outside [0, r)."""


class WitnessFault(FuForgeError, RuntimeError):
    """A witness produced by the search failed its independent re-check."""


class BudgetExceeded(FuForgeError, RuntimeError):
    """A search or oracle enumeration ran past its budget."""


# --- Command line ---

class UsageError(FuForgeError, ValueError):
    """Malformed command-line input."""
