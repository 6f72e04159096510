"""Log routing for the command-line tool.

Standard output carries documents, so every record goes to standard error,
and to a file when one is requested.
"""

import logging
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_OWNED = "_gemcraft_handler"


def verbosity_level(verbose: bool = False, debug: bool = False) -> int:
    """Map the ``--verbose`` and ``--debug`` flags to a logging level."""
    if debug:
        return logging.DEBUG
    return logging.INFO if verbose else logging.WARNING


def setup_logging(level: int | str = logging.WARNING, log_file: str | Path | None = None) -> None:
    """Install the standard-error handler and, with ``log_file``, a file handler.

    Handlers installed by an earlier call are closed and replaced.
    """
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, _OWNED, False)]:
        root.removeHandler(handler)
        handler.close()

    handlers: list[logging.Handler] = [
        RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    ]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        handlers.append(file_handler)
    for handler in handlers:
        setattr(handler, _OWNED, True)
        root.addHandler(handler)

    root.setLevel(level.upper() if isinstance(level, str) else level)
    logging.getLogger("networkx").setLevel(logging.WARNING)
