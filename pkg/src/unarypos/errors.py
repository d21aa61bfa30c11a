"""Exception hierarchy shared by every codec in the package."""


class EncodingError(ValueError):
    """Base class for all validation failures raised by unarypos."""


class DigitOutOfRangeError(EncodingError):
    pass


class InvalidBaseError(EncodingError):
    pass


class InvalidWidthError(EncodingError):
    pass


class LengthMismatchError(EncodingError):
    pass


class WidthOverflowError(EncodingError):
    """Value does not fit the requested width, or a stream has no canonical form."""


class CountOverflowError(WidthOverflowError):
    """A temporal-rate neuron fired n or more times (digit out of range)."""


class UnknownSchemeError(EncodingError):
    pass


class CapacityExceededError(EncodingError):
    pass


class WrongBundleSizeError(EncodingError):
    pass


class SchemeMismatchError(EncodingError):
    pass


class MalformedInputError(EncodingError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.field = field


class OutOfBoundsError(MalformedInputError):
    pass


class InvalidEventError(EncodingError):
    pass


class InvalidParamsError(EncodingError):
    pass


class MaterializationLimitError(EncodingError):
    pass

