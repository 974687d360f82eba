"""Custom program container classes"""

import argparse
import re
from typing import NamedTuple


class ThemeOverride(NamedTuple):
    """
    Simulation parameters that replace a computed theme composite.
    """
    theme_id: str
    mean: float
    sd: float


# Regex pattern to parse an override of the form ID=MEAN,SD
THEME_OVERRIDE_RE_PATTERN = re.compile(
    r'^\s*(?P<theme_id>[^=\s]+)\s*=\s*'
    r'(?P<mean>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*,\s*'
    r'(?P<sd>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*$'
)


def parsed_theme_override(override_string):
    """
    Parses a theme override string (e.g. "T3=3.71,0.216") into its named
    components. Used as an argparse `type`, so malformed values surface as
    usage errors.

    Arguments:
        override_string {str} -- the string to parse.

    Returns:
        ThemeOverride

    Raises:
        argparse.ArgumentTypeError: if the string is malformed.
    """
    if isinstance(override_string, ThemeOverride):
        return override_string

    match = THEME_OVERRIDE_RE_PATTERN.match(str(override_string))
    if not match:
        raise argparse.ArgumentTypeError(
            f'invalid theme override "{override_string}"; '
            'expected ID=MEAN,SD')

    return ThemeOverride(theme_id=match.group('theme_id'),
                         mean=float(match.group('mean')),
                         sd=float(match.group('sd')))
