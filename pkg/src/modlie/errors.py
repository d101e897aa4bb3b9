"""Exception hierarchy shared across the package."""


class ModlieError(Exception):
    """Base class for all mathematical / input errors raised by modlie."""


class NotPrime(ModlieError):
    pass


class ReducibleModulus(ModlieError):
    pass


class DegreeMismatch(ModlieError):
    pass


class FieldMismatch(ModlieError):
    pass


class DivisionByZero(ModlieError):
    pass


class ShapeMismatch(ModlieError):
    pass


class BadCoefficient(ModlieError):
    pass


class DuplicateLabel(ModlieError):
    pass


class JacobiViolation(ModlieError):
    def __init__(self, i, j, k, value=None):
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)
        self.value = value


class AlgebraMismatch(ModlieError):
    pass


class NotSubalgebra(ModlieError):
    pass


class TooLarge(ModlieError):
    pass


class NonTrivialCenter(ModlieError):
    pass


class NotHomomorphism(ModlieError):
    def __init__(self, i, j):
        super().__init__(f"bracket relation fails on basis pair ({i}, {j})")
        self.pair = (i, j)


class NotScalar(ModlieError):
    def __init__(self, label):
        super().__init__(f"rho(e)^p - rho(e^[p]) is not scalar for basis element {label}")
        self.label = label


class NotPSubalgebra(ModlieError):
    pass


class CharacterMismatch(ModlieError):
    pass


class NotIdeal(ModlieError):
    pass


class DerivedNotNilpotent(ModlieError):
    pass


class NeedsExtension(ModlieError):
    """A required root does not exist in the working field.

    `degree` is the extension degree (over the prime field) that suffices.
    """

    def __init__(self, degree, message=""):
        super().__init__(message or f"needs field extension of degree {degree}")
        self.degree = degree


class EvenCharacteristic(ModlieError):
    pass


class AlphaZero(ModlieError):
    pass


class NoReductionFound(ModlieError):
    pass
