"""Exception hierarchy shared by every module."""


class LinrecError(Exception):
    """Base class for all library errors."""


class DomainError(LinrecError):
    """An operation is not defined over the given coefficient domain."""


class DomainMismatch(DomainError):
    pass


class CharacteristicTooSmall(DomainError):
    def __init__(self, modulus, bound):
        self.modulus = modulus
        self.bound = bound
        super().__init__(
            f"characteristic {modulus} is too small: need at least {bound}")


class ConstantTermNotInvertible(DomainError):
    pass


class NotMonic(DomainError):
    pass


class NonInvertibleFactor(DomainError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"factor {index} is not invertible")


class ScaleVanishes(DomainError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"leading coefficient vanishes at n={n}")


class RadiusViolated(DomainError):
    pass


class NoDependency(LinrecError):
    """Raised when a matrix expected to be column-rank deficient is not."""


class DegenerateOperand(LinrecError):
    pass


class DimensionMismatch(LinrecError, ValueError):
    pass
