from typing import Any, Dict, Optional


class SpamLabError(Exception):
    exit_code = 3


class ConfigError(SpamLabError, ValueError):
    exit_code = 1


class DataError(SpamLabError, ValueError):
    exit_code = 2


class NumericError(SpamLabError, ArithmeticError):
    exit_code = 3


# Data family


class MissingColumnError(DataError):
    def __init__(self, column: str) -> None:
        self.column = column
        super().__init__(f"CSV header lacks required column: {column!r}")


class BadLabelError(DataError):
    def __init__(self, row: int, label: str) -> None:
        self.row = row
        self.label = label
        super().__init__(f"Row {row}: label {label!r} is neither 'ham' nor 'spam'")


class MalformedRowError(DataError):
    pass


class DataIOError(DataError, OSError):
    pass


class EmptyCorpusError(DataError):
    pass


class EmptyVocabularyError(DataError):
    pass


class DimensionMismatchError(DataError):
    def __init__(self, expected: int, got: int, what: str = "columns") -> None:
        self.expected = expected
        self.got = got
        super().__init__(f"Expected {expected} {what}, got {got}")


class NegativeFeatureError(DataError):
    pass


class SingleClassError(DataError):
    pass


class LengthMismatchError(DataError):
    pass


class EmptyInputError(DataError):
    pass


class SingleClassTruthError(DataError):
    pass


# Numeric family


class NotSymmetricError(NumericError):
    pass


class NoConvergenceError(NumericError):
    def __init__(self, max_sweeps: int) -> None:
        self.max_sweeps = max_sweeps
        super().__init__(f"No convergence after {max_sweeps} sweeps")


class IllConditionedError(NumericError):
    pass


class NonFiniteLossError(NumericError):
    def __init__(self, diagnostics: Optional[Dict[str, Any]] = None) -> None:
        self.diagnostics = diagnostics or {}
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        super().__init__(f"Training loss became non-finite ({details})")


class PipelineError(SpamLabError):
    def __init__(self, stage: str, cause: BaseException) -> None:
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
