"""Exception hierarchy shared by all modules."""


class NilcommuteError(ValueError):
    pass


class DivisionByZero(NilcommuteError, ZeroDivisionError):
    pass


class FieldMismatch(NilcommuteError):
    pass


class UnsupportedCharacteristic(NilcommuteError):
    pass


class DimensionMismatch(NilcommuteError):
    pass


class NotSquare(DimensionMismatch):
    pass


class NotInvertible(NilcommuteError):
    pass


class NotNilpotent(NilcommuteError):
    pass


class NotCommuting(NilcommuteError):
    pass


class NotInCentralizer(NilcommuteError):
    pass


class BadOrders(NilcommuteError):
    pass


class NotSelfCentralizing(NilcommuteError):
    pass


class NotInAlgebra(NilcommuteError):
    pass


class BadSize(NilcommuteError):
    pass


class BadShape(NilcommuteError):
    pass


class ZeroParameter(NilcommuteError):
    pass


class RankTooHigh(NilcommuteError):
    pass


class ResolutionFailure(NilcommuteError):
    pass


class CharacteristicMismatch(NilcommuteError):
    pass


class OmegaNotRoot(NilcommuteError):
    pass


class PrimeTooLarge(NilcommuteError):
    pass


class BadQ(NilcommuteError):
    pass


class ConstantTerm(NilcommuteError):
    pass


class NotInN2(NilcommuteError):
    pass


class SchemaError(NilcommuteError):
    """Malformed JSON input; ``path`` locates the offending element."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path
