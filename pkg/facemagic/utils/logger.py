"""
Structured Logging Configuration

Uses structlog for structured logging with pretty console output in
development and JSON output otherwise. Everything goes to stderr so that
documents and reports written to stdout stay machine-readable.
"""

import logging
import sys
from typing import TYPE_CHECKING, Any, Dict, Optional

import structlog
from structlog.typing import EventDict, WrappedLogger

if TYPE_CHECKING:
    from facemagic.config import GlobalConfig


# ============================================================
# Custom Processors
# ============================================================

def add_app_context(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Add application context to log events."""
    event_dict["app"] = "facemagic"
    return event_dict


def compact_labels(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Shorten long label arrays so one event stays on one screen line."""
    for key, value in list(event_dict.items()):
        if isinstance(value, (list, tuple)) and len(value) > 32:
            event_dict[key] = f"[{len(value)} items: {', '.join(map(str, value[:8]))}, ...]"
    return event_dict


# ============================================================
# Logging Setup
# ============================================================

def setup_logging(config: Optional["GlobalConfig"] = None) -> None:
    """
    Configure structured logging for the application.

    In development: console renderer on stderr
    Otherwise: JSON lines on stderr
    """
    # Import settings here to avoid circular imports
    if config is None:
        from facemagic.config import settings as config

    level = logging.getLevelName(config.logging.level)
    use_console = config.is_development and config.logging.format == "console"

    shared_processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        add_app_context,
        compact_labels,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.TimeStamper(fmt="iso"),
    ]

    if use_console:
        processors = shared_processors + [
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ]
    else:
        processors = shared_processors + [
            structlog.processors.dict_tracebacks,
            structlog.processors.JSONRenderer(),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=level,
        force=True,
    )

    for warning in config.load_warnings:
        logger.warning("Configuration fallback to defaults", reason=warning)


# ============================================================
# Logger Instance
# ============================================================

logger = structlog.get_logger()


# ============================================================
# Convenience Functions
# ============================================================

def log_search_run(
    m: int,
    n: int,
    pruning: str,
    counts: Dict[int, int],
    nodes: int,
    duration_ms: float,
    complete: bool,
) -> None:
    """Log the outcome of one enumeration run."""
    log = logger.info if complete else logger.warning
    log(
        "Enumeration finished" if complete else "Enumeration stopped at node budget",
        m=m,
        n=n,
        pruning=pruning,
        counts={str(s): c for s, c in sorted(counts.items())},
        nodes=nodes,
        duration_ms=round(duration_ms, 2),
        complete=complete,
    )


def log_subtree(task: Any, found: int, nodes: int, **extra: Any) -> None:
    """Log a finished search subtree (debug level)."""
    logger.debug("Subtree done", task=task, found=found, nodes=nodes, **extra)
