"""Tests for logging functionality."""

import logging

import numpy as np

from spectral_sets.logging_config import (
    MAX_LOG_MATRIX_DIM,
    format_matrix,
    format_report,
    get_logger,
    set_log_level,
)
from spectral_sets.matcalc import Contour, ScalarRational, eval_on_matrix_cauchy


def test_set_log_level():
    """Test setting log level."""
    set_log_level("DEBUG")
    logger = logging.getLogger("spectral_sets")
    assert logger.level == logging.DEBUG

    set_log_level("INFO")
    assert logger.level == logging.INFO

    set_log_level(logging.WARNING)
    assert logger.level == logging.WARNING


def test_set_log_level_unknown_name_defaults_to_info():
    """Test an unknown level name falls back to INFO."""
    set_log_level("chatty")
    assert logging.getLogger("spectral_sets").level == logging.INFO


def test_get_logger():
    """Test get_logger returns the named logger."""
    assert get_logger("spectral_sets.matcalc") is logging.getLogger("spectral_sets.matcalc")


def test_format_matrix_small():
    """Test small matrices are printed in full."""
    formatted = format_matrix(np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert "\n" not in formatted
    assert "4." in formatted


def test_format_matrix_large():
    """Test large matrices are summarised."""
    n = MAX_LOG_MATRIX_DIM + 1
    formatted = format_matrix(np.eye(n))
    assert formatted.startswith("<array shape=")
    assert f"({n}, {n})" in formatted


def test_format_matrix_none():
    """Test formatting None."""
    assert format_matrix(None) == "None"


def test_format_report_dict():
    """Test formatting a report dict."""
    formatted = format_report({"verdict": True, "margin": 0.5})
    assert "verdict" in formatted
    assert "0.5" in formatted


def test_format_report_string():
    """Test formatting a JSON string."""
    formatted = format_report('{"margin": -1}')
    assert '"margin": -1' in formatted


def test_format_report_truncation():
    """Test report truncation for long content."""
    formatted = format_report({"points": ["x" * 2000]})
    assert "truncated" in formatted
    assert "chars total" in formatted


def test_debug_logging_output(caplog):
    """Test quadrature attempts are logged at DEBUG."""
    set_log_level("DEBUG")
    f = ScalarRational(0.0, {(3.0 + 0j, 1): 1.0})
    T = np.diag([0.1, -0.2]).astype(complex)

    with caplog.at_level(logging.DEBUG, logger="spectral_sets"):
        eval_on_matrix_cauchy(f, T, Contour.circle(0j, 1.0))

    assert any("Quadrature with" in record.message for record in caplog.records)
    set_log_level("INFO")


def test_format_report_numpy_values():
    """Test numpy arrays and complex numbers are serialised."""
    formatted = format_report({"point": 1 + 2j, "values": np.array([0.5, 1.5]), "k": np.float64(2.0)})
    assert '"k": 2.0' in formatted
    assert "1.0" in formatted and "2.0" in formatted
    assert "0.5" in formatted
