"""
Logging configuration for the multicone spectra toolkit
"""
import logging
import logging.config
import uuid
from typing import Optional
from pathlib import Path
import os

from pythonjsonlogger import jsonlogger

from app.config import settings


class JSONFormatter(jsonlogger.JsonFormatter):
    """JSON formatter with the toolkit's fixed field set"""

    def add_fields(self, log_record, record, message_dict):
        super().add_fields(log_record, record, message_dict)
        log_record["level"] = record.levelname
        log_record["logger"] = record.name
        log_record["module"] = record.module
        log_record["function"] = record.funcName
        log_record["line"] = record.lineno


class ContextFilter(logging.Filter):
    """Add run context information to log records"""

    def __init__(self):
        super().__init__()
        self.run_id = None
        self.command = None
        self.target = None

    def filter(self, record: logging.LogRecord) -> bool:
        if self.run_id:
            record.run_id = self.run_id
        if self.command:
            record.command = self.command
        if self.target:
            record.target = self.target

        return True

    def set_context(
        self,
        run_id: Optional[str] = None,
        command: Optional[str] = None,
        target: Optional[str] = None
    ):
        """Set context for the current run"""
        self.run_id = run_id
        self.command = command
        self.target = target

    def clear_context(self):
        self.run_id = None
        self.command = None
        self.target = None


# Global context filter instance
context_filter = ContextFilter()


def setup_logging(
    log_level: str = "INFO",
    log_format: str = "standard",
    log_file: Optional[str] = None,
    enable_json: bool = False
) -> None:
    """Setup logging configuration"""
    log_level = log_level.upper()

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

    formatter = 'json' if (enable_json or log_format == "json") else 'standard'
    handlers = {}

    # stdout is reserved for command output
    handlers['console'] = {
        'class': 'logging.StreamHandler',
        'stream': 'ext://sys.stderr',
        'level': log_level,
        'filters': ['context'],
        'formatter': formatter
    }

    if log_file:
        handlers['file'] = {
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': log_file,
            'maxBytes': 10485760,  # 10MB
            'backupCount': 5,
            'level': log_level,
            'filters': ['context'],
            'formatter': formatter
        }

    config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
            },
            'detailed': {
                'format': '%(asctime)s [%(levelname)s] %(name)s:%(lineno)d %(funcName)s(): %(message)s'
            },
            'json': {
                '()': 'app.utils.logging_config.JSONFormatter',
                'format': '%(asctime)s %(message)s'
            }
        },
        'filters': {
            'context': {
                '()': lambda: context_filter
            }
        },
        'handlers': handlers,
        'root': {
            'level': log_level,
            'handlers': list(handlers.keys())
        },
        'loggers': {
            'app': {
                'level': log_level,
                'propagate': True
            },
            'uvicorn': {
                'level': 'INFO',
                'propagate': True
            },
            'uvicorn.access': {
                'level': 'INFO',
                'propagate': True
            }
        }
    }

    logging.config.dictConfig(config)
    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured - Level: {log_level}, Format: {formatter}")


def log_search_progress(
    logger: logging.Logger,
    phase: str,
    scanned: int,
    candidates: int,
    matches: int,
    duration_ms: Optional[float] = None
):
    """Log a cospectral search phase with its counters"""
    log_data = {
        "event": "search_progress",
        "phase": phase,
        "scanned": scanned,
        "candidates": candidates,
        "matches": matches
    }

    if duration_ms is not None:
        log_data["duration_ms"] = round(duration_ms, 1)

    logger.info(f"Search {phase}: {scanned} scanned, {candidates} candidates, {matches} matches",
                extra=log_data)


def log_claim_result(
    logger: logging.Logger,
    claim_id: str,
    status: str,
    cases: int,
    duration_ms: Optional[float] = None,
    **context
):
    """Log the outcome of a registered claim check"""
    log_data = {
        "event": "claim_result",
        "claim_id": claim_id,
        "status": status,
        "cases": cases
    }

    if duration_ms is not None:
        log_data["duration_ms"] = round(duration_ms, 1)

    for key, value in context.items():
        if value is not None:
            log_data[key] = value

    if status == "fail":
        logger.error(f"Claim {claim_id} failed", extra=log_data)
    else:
        logger.info(f"Claim {claim_id}: {status}", extra=log_data)


class RunLoggingContext:
    """Context manager for command-level logging"""

    def __init__(self, command: str, target: Optional[str] = None, run_id: Optional[str] = None):
        self.run_id = run_id or uuid.uuid4().hex[:12]
        self.command = command
        self.target = target

    def __enter__(self):
        context_filter.set_context(self.run_id, self.command, self.target)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        context_filter.clear_context()


def setup_production_logging(log_level: Optional[str] = None):
    """Setup logging for production environment"""
    setup_logging(
        log_level=log_level or os.getenv("LOG_LEVEL", "INFO"),
        log_format="json",
        log_file=os.getenv("LOG_FILE"),
        enable_json=True
    )

    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)


def setup_development_logging(log_level: str = "INFO", log_format: str = "standard"):
    """Setup logging for development environment"""
    setup_logging(
        log_level=log_level,
        log_format=log_format,
        log_file=None,
        enable_json=False
    )


def setup_test_logging(log_level: Optional[str] = None):
    """Setup logging for test environment; an explicit level also applies to app loggers"""
    setup_logging(
        log_level=log_level or "WARNING",
        log_format="standard",
        log_file=None,
        enable_json=False
    )

    logging.getLogger("app").setLevel(log_level.upper() if log_level else logging.ERROR)


def configure_logging(log_level: Optional[str] = None, log_format: Optional[str] = None):
    """Auto-configure logging based on environment"""
    environment = os.getenv("ENVIRONMENT", settings.ENV).lower()

    if environment == "production":
        setup_production_logging(log_level)
    elif environment == "test":
        setup_test_logging(log_level)
    else:
        setup_development_logging(
            log_level=log_level or settings.LOG_LEVEL,
            log_format=log_format or settings.LOG_FORMAT
        )
