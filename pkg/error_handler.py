#!/usr/bin/env python3
"""
Error handling and logging for the subspace-arrangement ideals toolkit
"""

import logging
import sys
import time
import traceback
import threading
from collections import deque
from datetime import datetime
from functools import wraps
from pathlib import Path
from typing import Dict, Any, Optional, Callable

import psutil

from config import config


# ---------- Exception hierarchy ----------
class AlgebraError(Exception):
    """Base class of every error raised by the toolkit"""


class PolynomialSyntaxError(AlgebraError, ValueError):
    """Polynomial text does not conform to the grammar"""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class UnknownVariableError(AlgebraError, ValueError):
    pass


class RingMismatchError(AlgebraError, ValueError):
    pass


class ZeroPolynomialError(AlgebraError, ValueError):
    pass


class MissingImageError(AlgebraError, ValueError):
    pass


class NonHomogeneousError(AlgebraError, ValueError):
    pass


class InvalidSpecError(AlgebraError, ValueError):
    pass


class UnsupportedComponentsError(AlgebraError, ValueError):
    """Components would need coefficients outside the rationals"""


class HypothesisViolationError(AlgebraError, ValueError):
    pass


class FactorMismatchError(AlgebraError, ValueError):
    pass


class LimitsExceededError(AlgebraError, ValueError):
    pass


class SingularSystemError(AlgebraError, ValueError):
    pass


class IdealFileError(AlgebraError, ValueError):
    pass


class GeometryError(AlgebraError):
    """Exact geometry produced an impossible count"""


class BudgetExceededError(AlgebraError):
    """A step budget ran out; `partial` holds whatever was finished"""

    def __init__(self, message: str, partial: Any = None, steps: int = 0):
        super().__init__(message)
        self.partial = partial
        self.steps = steps


HISTORY_LIMIT = 100


class AlgebraErrorHandler:
    """Centralized error handling and logging for the toolkit"""

    def __init__(self, log_dir: Optional[str] = None, log_level: Optional[str] = None,
                 file_logging: Optional[bool] = None):
        self.log_dir = Path(log_dir or config.get("logging.log_dir", "logs"))
        self.file_logging = config.get("logging.file_logging", False) if file_logging is None else file_logging

        self.setup_logging(log_level or config.get("logging.level", "INFO"))

        # Error tracking
        self.error_counts: Dict[str, int] = {}
        self.error_history: deque = deque(maxlen=HISTORY_LIMIT)

        # Performance monitoring: running totals per operation
        self.operation_times: Dict[str, float] = {}
        self.operation_calls: Dict[str, int] = {}
        self.memory_usage: Dict[str, float] = {}
        self._lock = threading.Lock()

    def setup_logging(self, log_level: str):
        """Setup logging: stderr console, optional file handlers"""
        detailed_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
        )
        simple_formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(message)s'
        )

        self.logger = logging.getLogger('arrangements')
        self.logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))
        if self.logger.handlers:
            return

        # stdout carries reports, so the console handler writes to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(simple_formatter)
        self.logger.addHandler(console_handler)

        if not self.file_logging:
            return
        self.log_dir.mkdir(parents=True, exist_ok=True)

        detailed_handler = logging.FileHandler(self.log_dir / 'detailed.log')
        detailed_handler.setLevel(logging.DEBUG)
        detailed_handler.setFormatter(detailed_formatter)

        error_handler = logging.FileHandler(self.log_dir / 'errors.log')
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(detailed_formatter)

        perf_handler = logging.FileHandler(self.log_dir / 'performance.log')
        perf_handler.setLevel(logging.INFO)
        perf_handler.setFormatter(simple_formatter)

        self.logger.addHandler(detailed_handler)
        self.logger.addHandler(error_handler)
        self.logger.addHandler(perf_handler)

    def set_verbosity(self, level: str):
        """Raise or lower the console threshold (CLI --verbose)"""
        numeric = getattr(logging, level.upper(), logging.INFO)
        self.logger.setLevel(min(self.logger.level, numeric))
        for handler in self.logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(numeric)

    def log_error(self, error: Exception, context: str = ""):
        """Log error with context"""
        error_type = type(error).__name__
        with self._lock:
            self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1
            self.error_history.append({
                'timestamp': datetime.now().isoformat(),
                'error_type': error_type,
                'error_message': str(error),
                'context': context,
                'traceback': traceback.format_exc(),
                'thread_id': threading.get_ident()
            })
        # Validation errors are expected user input problems
        if isinstance(error, ValueError):
            self.logger.info(f"Rejected input in {context}: {error_type} - {error}")
        else:
            self.logger.error(f"Error in {context}: {error_type} - {error}")

    def log_performance(self, operation: str, duration: float, memory_usage: float = None):
        """Log performance metrics"""
        with self._lock:
            self.operation_times[operation] = self.operation_times.get(operation, 0.0) + duration
            self.operation_calls[operation] = self.operation_calls.get(operation, 0) + 1
            if memory_usage is not None:
                self.memory_usage[operation] = max(self.memory_usage.get(operation, memory_usage), memory_usage)
        self.logger.debug(f"Performance: {operation} took {duration:.3f}s")

    def error_handler(self, context: str = ""):
        """Decorator for automatic error logging"""
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                try:
                    return func(*args, **kwargs)
                except AlgebraError as e:
                    self.log_error(e, context or func.__name__)
                    raise
            return wrapper
        return decorator

    def performance_monitor(self, operation: str):
        """Decorator for performance monitoring"""
        def decorator(func: Callable):
            @wraps(func)
            def wrapper(*args, **kwargs):
                process = psutil.Process()
                start_time = time.perf_counter()
                start_memory = process.memory_info().rss / 1024 / 1024
                try:
                    return func(*args, **kwargs)
                finally:
                    duration = time.perf_counter() - start_time
                    memory_used = process.memory_info().rss / 1024 / 1024 - start_memory
                    self.log_performance(operation, duration, memory_used)
            return wrapper
        return decorator

    def generate_error_report(self) -> Dict[str, Any]:
        """Summarise errors and operation timings"""
        return {
            'timestamp': datetime.now().isoformat(),
            'error_summary': {
                'total_errors': sum(self.error_counts.values()),
                'error_types': dict(self.error_counts),
            },
            'performance_summary': {
                'operations_monitored': len(self.operation_times),
                'total_durations': {
                    op: round(seconds, 6) for op, seconds in sorted(self.operation_times.items())
                },
                'call_counts': {
                    op: calls for op, calls in sorted(self.operation_calls.items())
                },
            },
            'recent_errors': [
                {k: v for k, v in e.items() if k != 'traceback'} for e in list(self.error_history)[-10:]
            ],
        }


# Global error handler instance
error_handler = AlgebraErrorHandler()


# Convenience functions
def log_error(error: Exception, context: str = ""):
    """Log an error"""
    error_handler.log_error(error, context)


def handle_errors(context: str = ""):
    """Error handling decorator"""
    return error_handler.error_handler(context)


def monitor_performance(operation: str):
    """Performance monitoring decorator"""
    return error_handler.performance_monitor(operation)
