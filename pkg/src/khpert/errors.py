"""Exception hierarchy shared by all modules.

Each class carries the CLI exit code it maps to.
"""


class KHError(Exception):
    exit_code = 1


class DomainError(KHError, ValueError):
    """Argument outside the physical or mathematical domain of an operation."""

    exit_code = 4


class SingularityError(DomainError):
    """Evaluation would touch the Coulomb singularity at r = 0."""


class PoleError(DomainError):
    """A resonance denominator vanishes."""


class CapabilityError(KHError, NotImplementedError):
    exit_code = 4


class AccuracyError(KHError):
    """A numerical target tolerance could not be reached.

    ``estimate`` holds the best value obtained, ``error`` the achieved error
    estimate or bound.
    """

    exit_code = 3

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class IntegrandError(AccuracyError):
    """Integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class DivergentTermError(AccuracyError):
    """A series term with non-vanishing angular factor has a divergent radial integral."""


class ConfigurationError(KHError, ValueError):
    exit_code = 3


class SchemaError(KHError, ValueError):
    """Scenario document failed validation; ``problems`` lists offending fields."""

    exit_code = 2

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid scenario: " + "; ".join(self.problems))
