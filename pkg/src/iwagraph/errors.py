"""Exception types shared across the package.

Every error carries an ``exit_code`` so the CLI can map failures to the
documented process status: 2 for validation problems, 3 for resource
limits, 4 for results that cannot be certified.
"""


class IwagraphError(Exception):
    exit_code = 2


class ValidationError(IwagraphError):
    exit_code = 2


class DisconnectedGraph(ValidationError):
    pass


class ZeroEulerCharacteristic(ValidationError):
    pass


class ZeroSeries(ValidationError):
    pass


class NonIntegerVoltage(ValidationError):
    pass


class PrecisionExhausted(ValidationError):
    pass


class VoltageNonzeroOnTree(ValidationError):
    pass


class Inadmissible(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class ZeroForm(ValidationError):
    pass


class OddDimension(ValidationError):
    pass


class DegenerateForm(ValidationError):
    pass


class DegreeTooLarge(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    pass


class ResourceCap(IwagraphError):
    exit_code = 3


class EnumerationCap(IwagraphError):
    exit_code = 3


class UncertifiedMu(IwagraphError):
    exit_code = 4


class NotStabilized(IwagraphError):
    exit_code = 4
