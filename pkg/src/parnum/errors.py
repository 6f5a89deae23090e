"""Exception types shared across the package."""


class ParnumError(Exception):
    """Base class for all library errors."""


class InputError(ParnumError):
    """Malformed or inconsistent user input (files, coordinates, options)."""


class NotMonicError(InputError):
    pass


class NotSquarefreeError(InputError):
    pass


class NotSquareError(InputError):
    pass


class ContextMismatchError(ParnumError):
    """Operands belong to different ambient rings."""


class DivisorZeroError(ParnumError):
    pass


class PrecisionExhaustedError(ParnumError):
    """A certified yes/no answer could not be reached within the iteration
    budget.  Never downgraded to an approximate answer."""


class BaseNotGreaterThanOneError(InputError):
    pass


class ZeroMissingError(InputError):
    pass


class DuplicateDigitError(InputError):
    pass


class BaseNotExpandingError(ParnumError):
    pass


class DigitNotInInputAlphabetError(InputError):
    pass


class InputAlphabetTooSmallError(InputError):
    pass


class ShapeMismatchError(InputError):
    pass


class TargetEmbeddingNotGreaterThanOneError(InputError):
    pass
