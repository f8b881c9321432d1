"""Exception types shared across the library."""


class BboError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(BboError):
    """A vector or matrix does not match the problem dimension."""


class NonFiniteBound(BboError):
    """A search boundary contains NaN or infinity."""


class InvertedBound(BboError):
    """lower_boundary >= upper_boundary at one or more coordinates."""


class UnknownVariant(BboError):
    """Requested optimizer name is not in the registry."""


class InvalidOption(BboError):
    """A run option failed validation (e.g. sigma <= 0)."""


class AlreadyTerminated(BboError):
    """ask() was called on a terminated optimizer state."""


class LengthMismatch(BboError):
    """tell() received a fitness vector of the wrong length."""


class NaNFitness(BboError):
    """tell() received NaN (or -inf) fitness; +inf is the legal worst value."""


class PopulationTooSmall(InvalidOption):
    """Population size below the minimum the variant can operate with."""


class TooFewSamples(BboError):
    """An operation needs more samples than were provided."""


class CapabilityError(BboError):
    """The variant does not support the requested problem scale."""


class EmptyVector(BboError):
    """An input vector is empty."""


class FitnessEvaluationError(BboError):
    """The user fitness function raised; carries the evaluation count."""

    def __init__(self, message, n_function_evaluations):
        super().__init__(message)
        self.n_function_evaluations = n_function_evaluations
