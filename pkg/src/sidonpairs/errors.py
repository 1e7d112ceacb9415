"""Exception hierarchy.

Every error carries a short ``code`` used in the CLI's machine-readable
error objects.
"""


class SidonPairsError(Exception):
    code = "Error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class InvalidConfig(SidonPairsError, ValueError):
    code = "InvalidConfig"


class AmbientMismatch(SidonPairsError, ValueError):
    code = "AmbientMismatch"


class BudgetExhausted(SidonPairsError):
    """A bounded search ran out of budget. Inconclusive, not a refutation."""

    code = "BudgetExhausted"


class SearchBudget(SidonPairsError):
    """An exhaustive search space is larger than the configured cap."""

    code = "SearchBudget"


class LevelNotCovered(SidonPairsError, ValueError):
    code = "LevelNotCovered"


class NotDivisible(SidonPairsError, ValueError):
    code = "NotDivisible"


class RatioTooSmall(SidonPairsError, ValueError):
    code = "RatioTooSmall"


class LadderGapViolated(SidonPairsError, ValueError):
    code = "LadderGapViolated"

    def __init__(self, stage, message=""):
        self.stage = stage
        super().__init__(message or f"ladder gap condition fails at stage {stage}")


class NotInjective(SidonPairsError, ValueError):
    code = "NotInjective"


class IndexCollision(SidonPairsError, ValueError):
    code = "IndexCollision"


class ResidualNotFixed(SidonPairsError, ValueError):
    code = "ResidualNotFixed"


class ConditionBViolated(SidonPairsError):
    code = "ConditionBViolated"

    def __init__(self, n, n_other, message=""):
        self.pair = (n, n_other)
        super().__init__(message or f"distinctness condition fails for stages {n}, {n_other}")


class OrderTooSmall(SidonPairsError):
    code = "OrderTooSmall"


class ProbeInconclusive(SidonPairsError):
    code = "ProbeInconclusive"


class ImageFinite(SidonPairsError):
    code = "ImageFinite"
