"""
Custom exception classes for the multicone spectra toolkit
"""
from typing import Optional, Dict, Any
from datetime import datetime


class BaseSpectraError(Exception):
    """Base exception for the spectra toolkit"""

    # CLI exit code when the error escapes a command
    exit_code: int = 1

    def __init__(
        self,
        status_code: int,
        detail: str,
        error_code: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None
    ):
        super().__init__(detail)
        self.status_code = status_code
        self.detail = detail
        self.error_code = error_code or self.__class__.__name__
        self.context = context or {}


# Input Validation Exceptions
class ValidationError(BaseSpectraError):
    """Input validation failed"""
    def __init__(self, detail: str, field: Optional[str] = None, value: Optional[Any] = None):
        super().__init__(
            status_code=422,
            detail=detail,
            error_code="VALIDATION_ERROR",
            context={"field": field, "value": str(value) if value is not None else None}
        )


class InvalidParameterError(ValidationError):
    """A family or operation parameter is out of range"""
    def __init__(self, detail: str, field: Optional[str] = None, value: Optional[Any] = None):
        super().__init__(detail=detail, field=field, value=value)
        self.error_code = "INVALID_PARAMETER"


class KindMismatchError(ValidationError):
    """Two spectra or polynomials of different matrix kinds were combined"""
    def __init__(self, expected: str, actual: str):
        super().__init__(
            detail=f"Matrix kind mismatch: expected {expected}, got {actual}",
            field="kind",
            value=actual
        )
        self.error_code = "KIND_MISMATCH"
        self.context["expected"] = expected


class MalformedSpectrumError(ValidationError):
    """A spectrum does not satisfy the preconditions of a formula"""
    def __init__(self, detail: str):
        super().__init__(detail=f"Malformed spectrum: {detail}", field="spectrum")
        self.error_code = "MALFORMED_SPECTRUM"


class SampleTooCloseError(ValidationError):
    """Evaluation point lies too close to an eigenvalue"""
    def __init__(self, sample: float, eigenvalue: float, min_distance: float):
        super().__init__(
            detail=f"Sample {sample} lies within {min_distance} of eigenvalue {eigenvalue:.6f}",
            field="samples",
            value=sample
        )
        self.error_code = "SAMPLE_TOO_CLOSE"
        self.context["eigenvalue"] = eigenvalue


class UnsupportedInputError(ValidationError):
    """Input is outside the scope the operation is defined for"""
    def __init__(self, detail: str, operation: Optional[str] = None):
        super().__init__(detail=detail, field="graph")
        self.error_code = "UNSUPPORTED_INPUT"
        if operation:
            self.context["operation"] = operation


class RegularityViolationError(ValidationError):
    """A polynomial passed as regular does not have its degree as a root"""
    def __init__(self, degree: int, vertex_count: int):
        super().__init__(
            detail=f"Polynomial on {vertex_count} vertices is not divisible by (x - {degree})",
            field="degree",
            value=degree
        )
        self.error_code = "REGULARITY_VIOLATION"
        self.context["vertex_count"] = vertex_count


# Size Exceptions
class SizeLimitError(BaseSpectraError):
    """Graph or search space exceeds a configured limit"""
    def __init__(self, what: str, size: int, maximum: int):
        super().__init__(
            status_code=413,
            detail=f"{what} size {size} exceeds limit {maximum}",
            error_code="SIZE_LIMIT",
            context={"what": what, "size": size, "maximum": maximum}
        )


# Parsing Exceptions
class ParseError(BaseSpectraError):
    """Textual input could not be parsed"""
    def __init__(self, detail: str, error_code: str = "PARSE_ERROR", context: Optional[Dict[str, Any]] = None):
        super().__init__(status_code=400, detail=detail, error_code=error_code, context=context)


class Graph6ParseError(ParseError):
    """graph6 record is malformed"""
    def __init__(self, detail: str, offset: int, line: Optional[int] = None):
        where = f"byte {offset}" if line is None else f"line {line}, byte {offset}"
        super().__init__(
            detail=f"graph6 parse error at {where}: {detail}",
            error_code="GRAPH6_PARSE_ERROR",
            context={"offset": offset, "line": line}
        )
        self.reason = detail
        self.offset = offset
        self.line = line


class FamilySyntaxError(ParseError):
    """Graph family expression is malformed"""
    def __init__(self, detail: str, position: int, text: str):
        super().__init__(
            detail=f"Syntax error at position {position}: {detail}",
            error_code="SYNTAX_ERROR",
            context={"position": position, "text": text}
        )
        self.position = position


class UsageError(ParseError):
    """Command-line usage error"""
    def __init__(self, detail: str):
        super().__init__(detail=detail, error_code="USAGE_ERROR")


# Computation Exceptions
class NumericFailureError(BaseSpectraError):
    """Floating-point eigensolver did not converge"""
    exit_code = 2

    def __init__(self, detail: str, vertex_count: Optional[int] = None):
        super().__init__(
            status_code=500,
            detail=f"Numeric failure: {detail}",
            error_code="NUMERIC_FAILURE",
            context={"vertex_count": vertex_count}
        )


class InvariantBreachError(BaseSpectraError):
    """Internal invariant violated (internal fault)"""
    exit_code = 2

    def __init__(self, detail: str, operation: Optional[str] = None):
        super().__init__(
            status_code=500,
            detail=f"Invariant breach: {detail}",
            error_code="INVARIANT_BREACH",
            context={"operation": operation}
        )


def create_error_response(exception: BaseSpectraError) -> Dict[str, Any]:
    """Create standardized error response"""
    response = {
        "error": True,
        "error_code": exception.error_code,
        "message": exception.detail,
        "status_code": exception.status_code,
        "timestamp": datetime.now().isoformat()
    }

    if exception.context:
        response["context"] = exception.context

    return response


def log_exception(logger, exception: BaseSpectraError, command: Optional[str] = None):
    """Log exception with context"""
    log_data = {
        "error_code": exception.error_code,
        "error_detail": exception.detail,
        "status_code": exception.status_code,
        "context": exception.context
    }

    if command:
        log_data["command"] = command

    if exception.status_code >= 500:
        logger.error(f"Internal error: {exception.detail}", extra=log_data)
    else:
        logger.warning(f"Input error: {exception.detail}", extra=log_data)


# Context manager for error handling
class ErrorHandler:
    """Context manager for consistent error handling"""

    def __init__(self, logger, operation: str):
        self.logger = logger
        self.operation = operation

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type and issubclass(exc_type, BaseSpectraError):
            log_exception(self.logger, exc_val, self.operation)
            return False
        if exc_type and issubclass(exc_type, (KeyboardInterrupt, SystemExit)):
            return False
        if exc_type:
            fault = InvariantBreachError(
                f"Unexpected error in {self.operation}: {exc_val}", self.operation
            )
            log_exception(self.logger, fault, self.operation)
            raise fault from exc_val
        return False
