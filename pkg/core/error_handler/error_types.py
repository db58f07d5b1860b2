"""
Error types and custom exceptions for the signed Laplacian toolkit.
"""

from enum import Enum
from typing import Optional, Dict, Any


class ErrorCategory(Enum):
    """Categories of errors that can occur in the system."""
    VALIDATION = "validation"
    PARSE = "parse"
    NUMERICAL = "numerical"
    CONVERGENCE = "convergence"
    GENERATION = "generation"
    EXPERIMENT = "experiment"
    INTERNAL = "internal"


class ErrorSeverity(Enum):
    """Severity levels for errors."""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


class SignedLaplacianError(Exception):
    """Base exception class for toolkit errors."""

    def __init__(
        self,
        message: str,
        category: ErrorCategory,
        severity: ErrorSeverity = ErrorSeverity.MEDIUM,
        context: Optional[Dict[str, Any]] = None,
        original_error: Optional[Exception] = None
    ):
        super().__init__(message)
        self.message = message
        self.category = category
        self.severity = severity
        self.context = context or {}
        self.original_error = original_error


class ValidationError(SignedLaplacianError):
    """Invalid arguments: bad sizes, out-of-range parameters, malformed graphs."""

    def __init__(self, message: str, field: str = None, value: Any = None, **kwargs):
        context = kwargs.get('context', {})
        if field:
            context['field'] = field
        if value is not None:
            context['value'] = value
        kwargs['context'] = context
        super().__init__(message, ErrorCategory.VALIDATION, **kwargs)


class GraphFormatError(SignedLaplacianError):
    """Edge-list text that cannot be parsed."""

    def __init__(self, message: str, line_number: int = None, line: str = None, **kwargs):
        context = kwargs.get('context', {})
        if line_number is not None:
            context['line_number'] = line_number
        if line is not None:
            context['line'] = line
        kwargs['context'] = context
        super().__init__(message, ErrorCategory.PARSE, **kwargs)


class NumericalError(SignedLaplacianError):
    """Non-finite input or a violated numerical identity."""

    def __init__(self, message: str, operation: str = None, **kwargs):
        context = kwargs.get('context', {})
        if operation:
            context['operation'] = operation
        kwargs['context'] = context
        super().__init__(message, ErrorCategory.NUMERICAL, **kwargs)


class ConvergenceError(SignedLaplacianError):
    """Iterative solver stopped at its cap."""

    def __init__(self, message: str, residual: float = None, iterations: int = None, **kwargs):
        context = kwargs.get('context', {})
        if residual is not None:
            context['residual'] = residual
        if iterations is not None:
            context['iterations'] = iterations
        kwargs['context'] = context
        super().__init__(message, ErrorCategory.CONVERGENCE, **kwargs)


class GenerationError(SignedLaplacianError):
    """Random graph or weight generator failure."""

    def __init__(self, message: str, generator: str = None, **kwargs):
        context = kwargs.get('context', {})
        if generator:
            context['generator'] = generator
        kwargs['context'] = context
        super().__init__(message, ErrorCategory.GENERATION, **kwargs)


class ExperimentError(SignedLaplacianError):
    """Monte Carlo experiment misconfiguration."""

    def __init__(self, message: str, family: str = None, **kwargs):
        context = kwargs.get('context', {})
        if family:
            context['family'] = family
        kwargs['context'] = context
        super().__init__(message, ErrorCategory.EXPERIMENT, **kwargs)


class InternalError(SignedLaplacianError):
    """Unexpected failures and broken internal invariants."""

    def __init__(self, message: str, component: str = None, **kwargs):
        context = kwargs.get('context', {})
        if component:
            context['component'] = component
        kwargs['context'] = context
        kwargs['severity'] = kwargs.get('severity', ErrorSeverity.HIGH)
        super().__init__(message, ErrorCategory.INTERNAL, **kwargs)
