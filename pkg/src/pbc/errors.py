"""Exception hierarchy shared by the engine and the CLI.

Each exception carries the process exit code the CLI maps it to.
"""


class PbcError(Exception):
    exit_code = 1


class ConfigError(PbcError):
    """Malformed or inconsistent user input (bad references, wrong lengths)."""

    exit_code = 2

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ForestError(ConfigError):
    """A blowup forest violates its structural invariants."""


class DimensionMismatch(ConfigError):
    """A divisor class does not match the blowup count of its surface."""


class MathError(PbcError):
    """The input is well-formed but mathematically inconsistent."""

    exit_code = 3


class PoissonViolation(MathError):
    """A blowup center does not lie on the anticanonical curve."""


class NegativeLength(MathError):
    """A length (r-value, Ext dimension, multiplicity) came out negative."""


class NotTransverse(MathError):
    """A jet profile is not compatible with transversality to the anticanonical curve."""


class RankNonzero(MathError):
    """An operation defined for rank-0 classes received positive rank."""


class ParityError(MathError):
    """D^2 - D.K is odd, which cannot happen on a smooth surface."""


class NotDisjoint(MathError):
    """A class claimed disjoint from the anticanonical curve meets it."""


class SizeLimitError(PbcError):
    exit_code = 4
