"""Shared exception types."""


class HypothesisError(ValueError):
    """A blowup-criterion hypothesis is violated (bad weight exponent, etc.)."""


class ConfigError(ValueError):
    """Invalid run configuration; carries the full list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NonFiniteStateError(ArithmeticError):
    """A fluid state contains NaN or infinite entries."""
