"""Exception hierarchy shared by every betahole module."""


class BetaDomainError(ValueError):
    """A value lies outside the domain of the requested operation."""


class HypothesisViolation(BetaDomainError):
    """A caller-verified hypothesis of a property checker does not hold."""


class InvariantViolation(RuntimeError):
    """
    Two independent computations disagreed.

    Always a bug, never a tolerance issue: the CLI maps it to exit code 2.
    """
