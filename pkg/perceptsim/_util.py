"""Misc utility functions"""

import datetime
import hashlib
import math
import os
from typing import Any


def resolved_path(path: str) -> str:
    """
    Resolve and normalize a path by:
    - handling tilde expansion
    - handling variable expansion
    - removing relative segments
    - resolving symbolic links

    Arguments:
        path -- A file-system path

    Returns:
        str
    """
    return os.path.realpath(os.path.expandvars(os.path.expanduser(path)))


def ensure_dir(path: str) -> str:
    """
    Create a directory (and its parents) if it does not exist yet.

    Arguments:
        path -- A file-system path

    Returns:
        The resolved directory path.
    """
    path = resolved_path(path)
    os.makedirs(path, exist_ok=True)
    return path


def iso_now(include_microseconds=False):
    """
    Return an ISO timestamp of the current UTC time.

    Arguments:
        include_microseconds {bool} -- whether or not to include microseconds
        in the returned timestamp.

    Returns:
        str
    """
    now = datetime.datetime.now(datetime.timezone.utc)
    if not include_microseconds:
        now = now.replace(microsecond=0)
    return now.isoformat()


def sha256_digest(raw: bytes) -> str:
    """Hex SHA-256 digest of a byte string"""
    return hashlib.sha256(raw).hexdigest()


def display_number(value: float, places: int = 4) -> str:
    """
    Format a number for humans. Python's fixed-point formatting rounds the
    exact binary value half-to-even, which is the display convention used
    throughout the reports. Non-finite values render as 'n/a'.
    """
    if value is None or not math.isfinite(value):
        return 'n/a'
    return f'{value:.{places}f}'


def json_safe(value: Any) -> Any:
    """
    Recursively convert a structure so json.dumps emits strict JSON: numpy
    scalars become python numbers, tuples become lists, and non-finite
    floats become None.
    """
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if hasattr(value, 'item') and callable(value.item):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value
