"""Logging helpers"""

import logging

import rich.console
import rich.logging

from perceptsim._config import _PROG, rich_theme

_ROOT_LOGGER_NAME = _PROG

# Log records go to stderr so that stdout stays machine-readable.
_STDERR_CONSOLE = rich.console.Console(theme=rich_theme, stderr=True)


def _ensure_root_handler(console: rich.console.Console) -> logging.Logger:
    """
    Attach a single RichHandler to the package root logger. Child loggers
    propagate into it, so each module does not need its own handler.
    """
    root = logging.getLogger(_ROOT_LOGGER_NAME)
    if not any(isinstance(h, rich.logging.RichHandler) for h in root.handlers):
        handler = rich.logging.RichHandler(console=console, show_path=False)
        handler.setFormatter(logging.Formatter(fmt='%(message)s',
                                               datefmt='[%X] '))
        root.addHandler(handler)
        root.setLevel(logging.INFO)
        root.propagate = False
    return root


def get_rich_logger(
    name: str,
    console: rich.console.Console = _STDERR_CONSOLE,
) -> logging.Logger:
    """
    Create and return a logger of a given name that writes through the
    package's rich handler.

    Arguments:
        name -- The name of the logger to return. Names outside the package
            namespace are nested under it.

    Keyword Arguments:
        console {rich.console} -- The rich console used by the package
        handler the first time it is created (default: stderr console)

    Returns:
        logging.logger
    """
    _ensure_root_handler(console)
    prefix = f'{_ROOT_LOGGER_NAME}.'
    if name != _ROOT_LOGGER_NAME and not name.startswith(prefix):
        name = prefix + name
    return logging.getLogger(name)


def set_log_level(level) -> None:
    """
    Apply a log level to every perceptsim logger.

    Arguments:
        level -- A logging level name or number. Unknown names fall back to
            INFO.
    """
    log_level = logging.getLevelName(level) if isinstance(level, str) else level
    if not isinstance(log_level, int):
        log_level = logging.INFO
    _ensure_root_handler(_STDERR_CONSOLE).setLevel(log_level)
