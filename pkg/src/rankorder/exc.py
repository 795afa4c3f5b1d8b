import typing as t


class RankOrderError(Exception):
    exit_code: t.ClassVar[int] = 1


class DomainError(RankOrderError, ValueError):
    """Invalid parameters or a rank outside the model's lattice."""

    exit_code = 64


class UsageError(RankOrderError):
    exit_code = 64


class EmptySeriesError(RankOrderError):
    pass


class ParseError(RankOrderError):
    def __init__(self, message: str, *, line: t.Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ValidationError(ParseError):
    pass


class FitError(RankOrderError):
    exit_code = 2
    model: t.Optional[str] = None


class InsufficientDataError(FitError):
    pass


class SingularSystemError(FitError):
    pass


class FitFailure(FitError):
    pass
