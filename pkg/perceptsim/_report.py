"""
Run reports and the files written next to them: the JSON report, the
cohort and histogram CSVs, an optional SVG bar chart and the plain-text OLS
table.

All writers are deterministic: floats in CSV files use 17 significant
digits (exact round trip), JSON keys keep insertion order and non-finite
numbers are serialized as null.
"""

import json
import os
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np
import pandas as pd

from perceptsim._exceptions import CohortFormatError, DomainError
from perceptsim._logging import get_rich_logger
from perceptsim._simulator import Cohort
from perceptsim._util import ensure_dir, json_safe

_LOGGER = get_rich_logger(__name__)

_FLOAT_FORMAT = '%.17g'
_THEME_COLUMN_PREFIX = 'theme_'
_SUCCESS_COLUMN = 'success'

REPORT_FILE = 'report.json'
COHORT_FILE = 'cohort.csv'
HISTOGRAM_FILE = 'histogram.csv'
HISTOGRAM_SVG_FILE = 'histogram.svg'
OLS_FILE = 'ols.txt'

_SVG_WIDTH = 640
_SVG_HEIGHT = 400
_SVG_MARGIN = 50


@dataclass(frozen=True)
class Bin:
    """One histogram bin: [lower, upper) except the last, which is closed."""
    lower: float
    upper: float
    count: int

    def to_dict(self) -> Dict[str, float]:
        """JSON-ready representation."""
        return asdict(self)


@dataclass
class RunReport:
    """Everything a full pipeline run produced, in report order."""
    # pylint: disable=too-many-instance-attributes
    tool_version: str
    timestamp: Optional[str]
    study: Dict[str, object]
    config: Dict[str, object]
    composites: List[Dict[str, object]]
    errata: List[Dict[str, object]]
    simulation: Dict[str, object]
    cohort_summary: Dict[str, object]
    theme_summaries: Dict[str, Dict[str, object]]
    histogram: List[Dict[str, float]]
    ols: Optional[Dict[str, object]]
    sus: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready representation."""
        return json_safe(asdict(self))


def histogram(values, bins: int) -> List[Bin]:
    """
    Equal-width histogram spanning [min, max] of the data.

    Constant data has no width to split; the bins are then centered on the
    value (one unit wide in total) and all mass lands in a single bin.

    Raises:
        DomainError: on empty or non-finite data, or fewer than one bin.
    """
    if isinstance(bins, bool) or not isinstance(bins, int) or bins < 1:
        raise DomainError(f'bin count must be an integer >= 1, got {bins!r}')

    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise DomainError('cannot bin an empty vector')
    if not np.all(np.isfinite(values)):
        raise DomainError('histogram values must be finite')

    counts, edges = np.histogram(values, bins=bins,
                                 range=(values.min(), values.max()))
    return [Bin(lower=float(edges[i]), upper=float(edges[i + 1]),
                count=int(counts[i]))
            for i in range(bins)]


#
# writers
#

def _write_text(path: str, text: str) -> str:
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(text)
    _LOGGER.debug('Wrote %s', path)
    return path


def report_json(document: Dict[str, object]) -> str:
    """Serialize a document as strict, indented JSON text."""
    return json.dumps(json_safe(document), indent=2, allow_nan=False,
                      ensure_ascii=False) + '\n'


def write_json(path: str, document: Dict[str, object]) -> str:
    """Write a document as strict, indented JSON."""
    return _write_text(path, report_json(document))


def cohort_frame(cohort: Cohort) -> pd.DataFrame:
    """Cohort as a frame with columns theme_1..theme_K, success."""
    columns = {f'{_THEME_COLUMN_PREFIX}{k + 1}': cohort.theme_scores[:, k]
               for k in range(cohort.k)}
    columns[_SUCCESS_COLUMN] = cohort.success
    return pd.DataFrame(columns)


def frame_csv(frame: pd.DataFrame) -> str:
    """Render a frame as CSV text with round-trip exact floats."""
    return frame.to_csv(index=False, float_format=_FLOAT_FORMAT,
                        lineterminator='\n')


def write_cohort_csv(path: str, cohort: Cohort) -> str:
    """Write one row per respondent."""
    return _write_text(path, frame_csv(cohort_frame(cohort)))


def histogram_frame(bins: Sequence[Bin]) -> pd.DataFrame:
    """Bins as a frame with columns bin_lower, bin_upper, count."""
    return pd.DataFrame({
        'bin_lower': [b.lower for b in bins],
        'bin_upper': [b.upper for b in bins],
        'count': np.array([b.count for b in bins], dtype=np.int64),
    })


def write_histogram_csv(path: str, bins: Sequence[Bin]) -> str:
    """Write bin edges and counts."""
    return _write_text(path, frame_csv(histogram_frame(bins)))


def histogram_svg(bins: Sequence[Bin], label: str = 'success score') -> str:
    """
    Minimal SVG bar chart of a histogram, with the value axis labelled at
    both ends and the count axis at its maximum.
    """
    plot_width = _SVG_WIDTH - 2 * _SVG_MARGIN
    plot_height = _SVG_HEIGHT - 2 * _SVG_MARGIN
    peak = max((b.count for b in bins), default=0) or 1
    bar_width = plot_width / max(len(bins), 1)
    baseline = _SVG_MARGIN + plot_height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_WIDTH}" '
        f'height="{_SVG_HEIGHT}" viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">',
        f'<rect width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" fill="white"/>',
    ]
    for i, b in enumerate(bins):
        height = plot_height * b.count / peak
        x = _SVG_MARGIN + i * bar_width
        parts.append(
            f'<rect x="{x:.2f}" y="{baseline - height:.2f}" '
            f'width="{bar_width:.2f}" height="{height:.2f}" '
            'fill="steelblue" stroke="white" stroke-width="0.5"/>')

    parts.extend([
        f'<line x1="{_SVG_MARGIN}" y1="{baseline}" '
        f'x2="{_SVG_MARGIN + plot_width}" y2="{baseline}" stroke="black"/>',
        f'<line x1="{_SVG_MARGIN}" y1="{_SVG_MARGIN}" '
        f'x2="{_SVG_MARGIN}" y2="{baseline}" stroke="black"/>',
    ])
    if bins:
        parts.extend([
            f'<text x="{_SVG_MARGIN}" y="{baseline + 16}" font-size="11" '
            f'text-anchor="middle">{bins[0].lower:.4f}</text>',
            f'<text x="{_SVG_MARGIN + plot_width}" y="{baseline + 16}" '
            f'font-size="11" text-anchor="middle">{bins[-1].upper:.4f}</text>',
        ])
    parts.extend([
        f'<text x="{_SVG_MARGIN - 6}" y="{_SVG_MARGIN + 4}" font-size="11" '
        f'text-anchor="end">{peak}</text>',
        f'<text x="{_SVG_WIDTH / 2:.0f}" y="{_SVG_HEIGHT - 12}" '
        f'font-size="13" text-anchor="middle">{escape(label)}</text>',
        f'<text x="14" y="{_SVG_HEIGHT / 2:.0f}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 14 '
        f'{_SVG_HEIGHT / 2:.0f})">count</text>',
        '</svg>',
    ])
    return '\n'.join(parts) + '\n'


def write_histogram_svg(path: str, bins: Sequence[Bin]) -> str:
    """Write the SVG rendering of a histogram."""
    return _write_text(path, histogram_svg(bins))


def write_ols_table(path: str, table: str) -> str:
    """Write the plain-text regression summary."""
    return _write_text(path, table)


def output_path(out_dir: str, name: str) -> str:
    """Path of an artifact inside the output directory, created on demand."""
    return os.path.join(ensure_dir(out_dir), name)


#
# readers
#

def read_cohort_csv(path: str) -> Tuple[Tuple[str, ...], np.ndarray,
                                        np.ndarray]:
    """
    Read a cohort CSV written by write_cohort_csv(). A header without rows
    is an empty cohort, which histogram() and fit_ols() reject.

    Returns:
        (theme column names, n x K theme matrix, success vector)

    Raises:
        CohortFormatError: if the file has no header, no success column,
            no theme columns, unexpected columns or non-numeric values.
    """
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except pd.errors.EmptyDataError as err:
        raise CohortFormatError(f'{path}: file is empty') from err
    except pd.errors.ParserError as err:
        raise CohortFormatError(f'{path}: {err}') from err

    columns = [str(c) for c in frame.columns]
    if _SUCCESS_COLUMN not in columns:
        raise CohortFormatError(f'{path}: missing "{_SUCCESS_COLUMN}" column')

    theme_columns = [c for c in columns if c != _SUCCESS_COLUMN]
    unexpected = [c for c in theme_columns
                  if not c.startswith(_THEME_COLUMN_PREFIX)]
    if unexpected:
        raise CohortFormatError(f'{path}: unexpected column(s) '
                                f'{", ".join(unexpected)}')
    if not theme_columns:
        raise CohortFormatError(f'{path}: no theme columns')

    try:
        numeric = (frame.astype(float) if frame.empty
                   else frame.apply(pd.to_numeric, errors='raise'))
    except (ValueError, TypeError) as err:
        raise CohortFormatError(f'{path}: non-numeric value ({err})') from err
    if numeric.isna().to_numpy().any():
        raise CohortFormatError(f'{path}: missing values')

    _LOGGER.debug('Read %d respondents and %d theme columns from %s',
                  len(numeric), len(theme_columns), path)
    return (tuple(theme_columns),
            numeric[theme_columns].to_numpy(dtype=float),
            numeric[_SUCCESS_COLUMN].to_numpy(dtype=float))
