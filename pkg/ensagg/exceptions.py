"""
Contains ensagg custom exceptions
"""


class InvalidDistribution(ValueError):
    """Distribution parameters violate the family invariants"""


class DomainError(ValueError):
    """Argument lies outside the domain of the operation"""


class ShapeError(ValueError):
    """Array shapes, degrees, or edge vectors do not line up"""


class DegenerateScale(ValueError):
    """Aggregated distribution collapsed to a zero scale"""


class DegenerateReference(ZeroDivisionError):
    """Skill score reference equals the optimal score"""


class TrainingError(RuntimeError):
    """Network training produced a non-finite loss"""

    epoch: int

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch

    def __reduce__(self):
        return self.__class__, (str(self), self.epoch)


class ConfigError(ValueError):
    """Run configuration is missing or has an invalid value"""

    key: str

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message

    def __reduce__(self):
        return self.__class__, (self.key, self.message)
