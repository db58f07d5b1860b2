from abc import ABC, abstractmethod
import logging
import traceback
import json
from typing import Dict, Any, Optional

import numpy as np

from .error_types import (
    SignedLaplacianError, ErrorCategory, ErrorSeverity,
    ValidationError, GraphFormatError, NumericalError,
    ConvergenceError, InternalError
)

# Exit code for usage and input errors; 0 and 1 are reserved for certificates.
USAGE_EXIT_CODE = 2


class ErrorHandler(ABC):
    """
    Abstract base class for Error Handlers.
    """

    @abstractmethod
    def handle_error(self, error: Exception) -> str:
        """
        Handles an error and returns an error message.

        Args:
            error: The error to handle.

        Returns:
            An error message.
        """
        pass


class SignedLaplacianErrorHandler(ErrorHandler):
    """
    Central error handler: categorizes, logs and renders toolkit errors.
    """

    def __init__(self, log_path: Optional[str] = None):
        self.error_logger = logging.getLogger('signed_laplacian.errors')
        self.error_logger.setLevel(logging.WARNING)
        self.log_path = None
        if log_path:
            self.attach_log_file(log_path)

        self.error_stats: Dict[str, int] = {}

    def attach_log_file(self, log_path: str):
        """Send error records to log_path as well; a second call is ignored."""
        if self.log_path is not None:
            return
        error_file_handler = logging.FileHandler(log_path, delay=True)
        error_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        error_file_handler.setFormatter(error_formatter)
        self.error_logger.addHandler(error_file_handler)
        self.log_path = log_path

    def handle_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> str:
        """
        Central error handling method that categorizes, logs, and formats errors.

        Args:
            error: The error to handle
            context: Additional context information

        Returns:
            User-facing error message
        """
        if not isinstance(error, SignedLaplacianError):
            error = self._convert_error(error, context)

        self._log_error(error, context)
        self._update_error_stats(error)
        return self._generate_user_message(error)

    def exit_code(self, error: Exception) -> int:
        """Every handled error is a usage or input error from the CLI's point of view."""
        return USAGE_EXIT_CODE

    def _convert_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> SignedLaplacianError:
        """Convert standard exceptions to SignedLaplacianError."""
        error_message = str(error)

        # numpy.linalg.LinAlgError subclasses ValueError
        if isinstance(error, (FloatingPointError, ArithmeticError, np.linalg.LinAlgError)):
            return NumericalError(error_message, context=context, original_error=error)
        elif isinstance(error, ValueError):
            return ValidationError(error_message, context=context, original_error=error)
        elif isinstance(error, (KeyError, IndexError)):
            return GraphFormatError(error_message, context=context, original_error=error)
        else:
            return InternalError(error_message, context=context, original_error=error)

    def _log_error(self, error: SignedLaplacianError, context: Optional[Dict[str, Any]] = None):
        """Log error details with merged context."""
        merged = {**error.context, **(context or {})}
        log_message = f"[{error.category.value.upper()}] {error.message}"
        if merged:
            log_message += f" | Context: {json.dumps(merged, default=str)}"
        if error.original_error is not None:
            log_message += "\n" + "".join(traceback.format_exception(
                type(error.original_error), error.original_error, error.original_error.__traceback__
            ))

        if error.severity in [ErrorSeverity.HIGH, ErrorSeverity.CRITICAL]:
            self.error_logger.critical(log_message)
        elif error.severity == ErrorSeverity.MEDIUM:
            self.error_logger.error(log_message)
        else:
            self.error_logger.warning(log_message)

    def _update_error_stats(self, error: SignedLaplacianError):
        """Track error statistics."""
        category_key = error.category.value
        severity_key = f"{error.category.value}_{error.severity.value}"

        self.error_stats[category_key] = self.error_stats.get(category_key, 0) + 1
        self.error_stats[severity_key] = self.error_stats.get(severity_key, 0) + 1
        self.error_stats['total'] = self.error_stats.get('total', 0) + 1

    def _generate_user_message(self, error: SignedLaplacianError) -> str:
        """Render a one-line message for the category."""
        if error.category == ErrorCategory.VALIDATION:
            field = error.context.get('field')
            if field:
                return f"Invalid {field}: {error.message}"
            return f"Invalid input: {error.message}"
        elif error.category == ErrorCategory.PARSE:
            line_number = error.context.get('line_number')
            if line_number is not None:
                return f"Edge list line {line_number}: {error.message}"
            return f"Edge list error: {error.message}"
        elif error.category == ErrorCategory.NUMERICAL:
            operation = error.context.get('operation', 'a computation')
            return f"Numerical failure during {operation}: {error.message}"
        elif error.category == ErrorCategory.CONVERGENCE:
            residual = error.context.get('residual')
            suffix = f" (residual {residual:.3e})" if isinstance(residual, float) else ""
            return f"Solver did not converge: {error.message}{suffix}"
        elif error.category == ErrorCategory.GENERATION:
            generator = error.context.get('generator', 'generator')
            return f"{generator} failed: {error.message}"
        elif error.category == ErrorCategory.EXPERIMENT:
            family = error.context.get('family')
            prefix = f"Experiment '{family}'" if family else "Experiment"
            return f"{prefix} rejected: {error.message}"
        if error.severity == ErrorSeverity.CRITICAL:
            return f"Internal failure, please report: {error.message}"
        return f"Unexpected error: {error.message}"

    def get_error_stats(self) -> Dict[str, int]:
        """Return current error statistics."""
        return self.error_stats.copy()

    def reset_error_stats(self):
        """Reset error statistics."""
        self.error_stats.clear()


# Global error handler instance; the CLI attaches the file log.
error_handler = SignedLaplacianErrorHandler()
