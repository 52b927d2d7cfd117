"""Logging configuration and payload formatting for spectral_sets."""

import json
import logging
from typing import Any, Dict, Union

import numpy as np

# Logged payloads longer than this are truncated
MAX_LOG_PAYLOAD_LENGTH = 1000

# Matrices larger than this are summarised instead of printed
MAX_LOG_MATRIX_DIM = 8

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _normalize_log_level(level: Union[str, int]) -> int:
    """Map a level name or number to the logging constant (unknown names give INFO)."""
    if isinstance(level, str):
        return getattr(logging, level.upper(), logging.INFO)
    return level


def set_log_level(level: Union[str, int]) -> None:
    """Set the level of the ``spectral_sets`` logger.

    A stream handler is attached only when neither the package logger nor
    the root logger has one, so applications keep control of output.

    Args:
        level: Level name ("DEBUG", "INFO", "WARNING", ...) or logging constant
    """
    logger = logging.getLogger("spectral_sets")
    logger.setLevel(_normalize_log_level(level))
    logger.propagate = True

    if not logger.handlers and not logging.root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        logger.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    """Logger for a spectral_sets module (pass ``__name__``)."""
    return logging.getLogger(name)


def format_matrix(matrix: Any) -> str:
    """Format a matrix for logging.

    Small matrices are printed in full on one line; larger ones are
    summarised by shape and Frobenius norm.
    """
    if matrix is None:
        return "None"

    arr = np.asarray(matrix)
    if arr.ndim != 2 or max(arr.shape) > MAX_LOG_MATRIX_DIM:
        norm = float(np.linalg.norm(arr)) if arr.size else 0.0
        return f"<array shape={arr.shape} fro={norm:.6g}>"

    return np.array2string(arr, precision=6, suppress_small=True).replace("\n", " ")


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist() if not np.iscomplexobj(value) else [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    return str(value)


def format_report(report: Union[Dict[str, Any], str]) -> str:
    """Pretty-print a report payload for logging, truncating long output.

    Args:
        report: Report dictionary (numpy and complex values allowed) or JSON string

    Returns:
        Indented JSON, or the raw text when it does not parse
    """
    if report is None:
        return "None"

    if isinstance(report, str):
        try:
            formatted = json.dumps(json.loads(report), indent=2, sort_keys=True)
        except ValueError:
            formatted = report
    else:
        try:
            formatted = json.dumps(report, indent=2, sort_keys=True, default=_jsonable)
        except TypeError:
            formatted = str(report)

    if len(formatted) > MAX_LOG_PAYLOAD_LENGTH:
        return f"{formatted[:MAX_LOG_PAYLOAD_LENGTH]}... (truncated, {len(formatted)} chars total)"
    return formatted
