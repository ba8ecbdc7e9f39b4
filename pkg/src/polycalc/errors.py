"""Exception types.  Each carries a stable ``code`` used by the CLI."""


class PolycalcError(Exception):
    code = "ERROR"


class DomainError(PolycalcError):
    """A well-formed request whose mathematical precondition fails."""


class EmptySetError(DomainError):
    code = "EMPTY_SET"


class PointNotInSetError(DomainError):
    code = "POINT_NOT_IN_SET"


class NotContainingOriginError(DomainError):
    code = "NOT_CONTAINING_ORIGIN"


class NotAnEpigraphError(DomainError):
    code = "NOT_AN_EPIGRAPH"


class PointNotInDomainError(DomainError):
    code = "POINT_NOT_IN_DOMAIN"


class EmptyDomainIntersectionError(DomainError):
    code = "EMPTY_DOMAIN_INTERSECTION"


class NotAFaceError(DomainError):
    code = "NOT_A_FACE"


class OracleMismatchError(DomainError):
    code = "ORACLE_MISMATCH"


class DimensionMismatchError(PolycalcError):
    code = "DIMENSION_MISMATCH"


class ParseError(PolycalcError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
