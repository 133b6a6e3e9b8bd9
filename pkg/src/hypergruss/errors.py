"""Exception hierarchy shared by all evaluators and checkers."""


class HypergrussError(Exception):
    pass


class DomainError(HypergrussError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(HypergrussError, ArithmeticError):
    """A series or quadrature did not reach its tolerance within its budget."""


class HypothesisError(DomainError):
    """Inputs violate the hypotheses of the inequality being checked.

    ``condition`` names the failed hypothesis, e.g. ``"c >= b + 1"``.
    """

    def __init__(self, checker, condition):
        self.checker = checker
        self.condition = condition
        super().__init__(f"{checker}: hypothesis violated: {condition}")
