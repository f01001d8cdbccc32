from __future__ import annotations

import importlib.resources
import logging
import os
import pathlib
from typing import Optional

_PKG_NAME = "replab"
_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

ENV_THREADS = "REPLAB_THREADS"
ENV_LOG_LEVEL = "REPLAB_LOG_LEVEL"


def get_fpath(
    data_dir: Optional[str | pathlib.Path],
    fname: str,
) -> pathlib.Path:
    """
    Resolve ``fname`` against ``data_dir``, or the package's shipped data directory
    if ``data_dir`` is None. Absolute or existing paths are returned as-is.
    """
    fpath = to_path(fname)
    if fpath.is_absolute() or fpath.exists():
        return fpath.resolve()
    data_dir = get_data_dir() if data_dir is None else to_path(data_dir)
    return data_dir.resolve().joinpath(fpath)


def to_path(str_or_path: str | pathlib.Path) -> pathlib.Path:
    """If possible / as needed, convert ``str_or_path`` into a :class:`pathlib.Path`."""
    if isinstance(str_or_path, str):
        return pathlib.Path(str_or_path)
    elif isinstance(str_or_path, pathlib.Path):
        return str_or_path
    else:
        raise TypeError()


def get_data_dir() -> pathlib.Path:
    """
    Get full path to package's data directory on disk, where the built-in DGA
    presentations and colored HOMFLY-PT data files live.
    """
    with importlib.resources.path(_PKG_NAME, "__init__.py") as fpath:
        dirpath = fpath.parent.joinpath("data")
    return dirpath


def get_threads(threads: Optional[int] = None) -> int:
    """
    Number of worker processes to use for counting.

    Args:
        threads: Explicit worker count; if None, read ``REPLAB_THREADS`` from
            the environment, falling back to 1.

    Returns:
        Positive worker count.
    """
    if threads is None:
        threads = int(os.environ.get(ENV_THREADS, "1"))
    if threads < 1:
        raise ValueError(f"threads must be >= 1, not {threads}")
    return threads


def get_log_level() -> str:
    return os.environ.get(ENV_LOG_LEVEL, "WARNING").upper()


def configure_logging(level: Optional[str] = None) -> None:
    """
    Set up root logging for command-line use. Library code only ever creates
    module-level loggers; handlers are configured here.
    """
    logging.basicConfig(level=(level or get_log_level()).upper(), format=_LOG_FORMAT)
