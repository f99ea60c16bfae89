class QuiverError(Exception):
    pass


class DimensionError(QuiverError):
    pass


class AcyclicityError(QuiverError):
    pass


class WeightError(QuiverError):
    pass


class ZeroRepresentationError(QuiverError):
    pass


class SubrepresentationError(QuiverError):
    pass


class InstanceFormatError(QuiverError):
    pass


class UnsupportedInstance(QuiverError):
    pass


class ValidationError(QuiverError):
    """
    A randomized search could not produce a certified result within its retry budget.
    """
    pass


class InvariantError(QuiverError):
    """
    A result failed one of its own post-condition checks.
    """
    pass
