import logging

import numpy as np
import pytest

from core.error_handler import (
    SignedLaplacianErrorHandler, ErrorCategory, ErrorSeverity, ValidationError, GraphFormatError,
    ConvergenceError, ExperimentError, InternalError, USAGE_EXIT_CODE
)


@pytest.fixture
def handler():
    return SignedLaplacianErrorHandler()


@pytest.mark.parametrize("error,category", [
    (ValueError("bad"), ErrorCategory.VALIDATION),
    (KeyError("missing"), ErrorCategory.PARSE),
    (ZeroDivisionError("zero"), ErrorCategory.NUMERICAL),
    (np.linalg.LinAlgError("singular"), ErrorCategory.NUMERICAL),
    (RuntimeError("boom"), ErrorCategory.INTERNAL),
])
def test_foreign_errors_are_categorized(handler, error, category):
    handler.handle_error(error)
    assert handler.get_error_stats()[category.value] == 1


def test_user_messages_carry_context(handler):
    assert "line 4" in handler.handle_error(GraphFormatError("out of range", line_number=4))
    assert "Invalid n" in handler.handle_error(ValidationError("too small", field="n", value=1))
    assert "residual" in handler.handle_error(ConvergenceError("stuck", residual=1e-3, iterations=10))
    assert "er_critical" in handler.handle_error(ExperimentError("bad p0", family="er_critical"))


def test_stats_and_reset(handler):
    handler.handle_error(ValidationError("a"))
    handler.handle_error(ValidationError("b"))
    stats = handler.get_error_stats()
    assert stats["validation"] == 2
    assert stats["validation_medium"] == 2
    assert stats["total"] == 2
    handler.reset_error_stats()
    assert handler.get_error_stats() == {}


def test_internal_errors_default_to_high_severity():
    assert InternalError("broken").severity == ErrorSeverity.HIGH


def test_every_error_exits_with_usage_code(handler):
    assert handler.exit_code(ValidationError("x")) == USAGE_EXIT_CODE == 2


def test_severity_maps_to_log_level(handler, caplog):
    with caplog.at_level(logging.WARNING, logger="signed_laplacian.errors"):
        handler.handle_error(InternalError("broken", component="cli"))
        handler.handle_error(ValidationError("minor", severity=ErrorSeverity.LOW))
    levels = [record.levelno for record in caplog.records if record.name == "signed_laplacian.errors"]
    assert levels == [logging.CRITICAL, logging.WARNING]


def test_log_file_is_attached_once(tmp_path):
    handler = SignedLaplacianErrorHandler()
    before = len(handler.error_logger.handlers)
    handler.attach_log_file(str(tmp_path / "errors.log"))
    handler.attach_log_file(str(tmp_path / "other.log"))
    try:
        assert len(handler.error_logger.handlers) == before + 1
        handler.handle_error(ValidationError("logged"))
        assert "logged" in (tmp_path / "errors.log").read_text()
    finally:
        for h in handler.error_logger.handlers[before:]:
            handler.error_logger.removeHandler(h)
            h.close()
