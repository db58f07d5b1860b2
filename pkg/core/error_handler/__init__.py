from .error_handler import ErrorHandler, SignedLaplacianErrorHandler, error_handler, USAGE_EXIT_CODE
from .error_types import (
    SignedLaplacianError, ErrorCategory, ErrorSeverity,
    ValidationError, GraphFormatError, NumericalError,
    ConvergenceError, GenerationError, ExperimentError, InternalError
)

__all__ = [
    'ErrorHandler',
    'SignedLaplacianErrorHandler',
    'error_handler',
    'USAGE_EXIT_CODE',
    'SignedLaplacianError',
    'ErrorCategory',
    'ErrorSeverity',
    'ValidationError',
    'GraphFormatError',
    'NumericalError',
    'ConvergenceError',
    'GenerationError',
    'ExperimentError',
    'InternalError'
]
