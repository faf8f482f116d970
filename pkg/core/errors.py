"""Exception hierarchy. InputError maps to CLI exit code 2, ComputationError to 1."""


class CrosscapError(Exception):
    pass


# ---- malformed inputs ----

class InputError(CrosscapError, ValueError):
    pass


class DimensionMismatchError(InputError):
    pass


class MalformedLoopError(InputError):
    pass


class BaseMismatchError(InputError):
    pass


class MaslovParityError(InputError):
    pass


class MissingChangeDataError(InputError):
    pass


# ---- failed computations ----

class ComputationError(CrosscapError):
    pass


class InvalidRingError(ComputationError):
    pass


class RealityError(ComputationError):
    pass


class AliasingError(ComputationError):
    pass


class InconsistentSamplesError(ComputationError):
    pass


class SpectralGapError(ComputationError):
    pass


class BasePointError(ComputationError):
    pass
