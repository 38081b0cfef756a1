"""Exception hierarchy shared across the package."""


class FmbasisError(Exception):
    """Base class for all package errors."""


class UnsupportedField(FmbasisError):
    pass


class MixedFields(FmbasisError):
    pass


class DimensionMismatch(FmbasisError):
    pass


class MixedAlgebras(FmbasisError):
    pass


class NotPNilpotent(FmbasisError):
    pass


class NotNilpotent(FmbasisError):
    pass


class NotAbelian(FmbasisError):
    pass


class NotPrimeField(FmbasisError):
    pass


class ShapeMismatch(FmbasisError):
    pass


class NotMinimalGenerating(FmbasisError):
    pass


class SizeMismatch(FmbasisError):
    pass


class InternalInconsistency(FmbasisError):
    pass


class ComputationLimit(FmbasisError):
    pass


class ParseError(FmbasisError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(FmbasisError):
    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} fails at {witness}")
