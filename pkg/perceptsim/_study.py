"""
Study specification model: Likert scale bounds, item-level summary
statistics, reverse-coding flags and theme groupings.

A study is read from a strict JSON document:

    {
      "scale":    {"min": 1, "max": 5},
      "items":    [{"id": "Q1", "text": "...", "mean": 3.71, "sd": 0.75,
                    "reverse": false}, ...],
      "themes":   [{"id": "T1", "name": "...", "items": ["Q1", "Q3"],
                    "published": {"mean": 4.1169, "sd": 0.2707}}, ...],
      "metadata": {"source": "...", "notes": "...",
                   "published_sus_range": [80, 85]}
    }

`text`, `published` and every metadata key are optional. Unknown keys are
rejected.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from cached_property import cached_property

from perceptsim._exceptions import StudyParseError
from perceptsim._logging import get_rich_logger

_LOGGER = get_rich_logger(__name__)
_ENCODING = 'utf-8'

_TOP_LEVEL_KEYS = {'scale': True, 'items': True, 'themes': True,
                   'metadata': False}
_SCALE_KEYS = {'min': True, 'max': True}
_ITEM_KEYS = {'id': True, 'text': False, 'mean': True, 'sd': True,
              'reverse': True}
_THEME_KEYS = {'id': True, 'name': True, 'items': True, 'published': False}
_PUBLISHED_KEYS = {'mean': True, 'sd': True}
_METADATA_KEYS = {'source': False, 'notes': False,
                  'published_sus_range': False}


@dataclass(frozen=True)
class LikertScale:
    """Integer-bounded response scale (floor `min`, ceiling `max`)."""
    min: int
    max: int

    @property
    def span(self) -> int:
        """Distance between the scale ceiling and floor."""
        return self.max - self.min

    def contains(self, value: float) -> bool:
        """True if `value` lies within the closed scale interval."""
        return self.min <= value <= self.max


@dataclass(frozen=True)
class ItemStat:
    """Reported summary statistics of a single questionnaire item."""
    id: str
    mean: float
    sd: float
    reverse: bool = False
    text: Optional[str] = None


@dataclass(frozen=True)
class PublishedComposite:
    """A theme composite exactly as printed by the source study."""
    mean: float
    sd: float


@dataclass(frozen=True)
class ThemeSpec:
    """A named group of items that is composed into one theme score."""
    id: str
    name: str
    item_ids: Tuple[str, ...]
    published: Optional[PublishedComposite] = None


@dataclass(frozen=True)
class StudyMetadata:
    """Free-form provenance of a study file."""
    source: Optional[str] = None
    notes: Optional[str] = None
    published_sus_range: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class StudySpec:
    """A complete study: scale, items in file order, themes and metadata."""
    scale: LikertScale
    items: Tuple[ItemStat, ...]
    themes: Tuple[ThemeSpec, ...]
    metadata: StudyMetadata = field(default_factory=StudyMetadata)

    @cached_property
    def item_index(self) -> Dict[str, ItemStat]:
        """Items keyed by id."""
        return {item.id: item for item in self.items}

    @cached_property
    def theme_index(self) -> Dict[str, ThemeSpec]:
        """Themes keyed by id."""
        return {theme.id: theme for theme in self.themes}

    def item(self, item_id: str) -> ItemStat:
        """Look up an item by id; raises KeyError if it does not exist."""
        return self.item_index[item_id]

    def theme(self, theme_id: str) -> ThemeSpec:
        """Look up a theme by id; raises KeyError if it does not exist."""
        return self.theme_index[theme_id]


@dataclass(frozen=True, order=True)
class Finding:
    """One violated invariant reported by validate_study()."""
    path: str
    message: str
    severity: str = 'error'

    def __str__(self) -> str:
        return f'{self.severity}\t{self.path}\t{self.message}'


#
# parsing
#

def _reject_constant(name: str):
    raise StudyParseError(f'non-finite number {name} is not allowed')


def _check_keys(obj: Any, allowed: Dict[str, bool], path: str) -> None:
    """
    Make sure `obj` is a JSON object holding every required key of `allowed`
    and no key that is not listed.
    """
    if not isinstance(obj, dict):
        raise StudyParseError(f'expected an object, got {_json_type(obj)}',
                              path)
    for key in obj:
        if key not in allowed:
            raise StudyParseError(f'unknown key "{key}"', f'{path}.{key}')
    for key, required in allowed.items():
        if required and key not in obj:
            raise StudyParseError(f'missing required key "{key}"',
                                  f'{path}.{key}')


def _json_type(value: Any) -> str:
    if isinstance(value, bool):
        return 'boolean'
    if isinstance(value, (int, float)):
        return 'number'
    if isinstance(value, str):
        return 'string'
    if isinstance(value, list):
        return 'array'
    if isinstance(value, dict):
        return 'object'
    return 'null'


def _expect_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StudyParseError(f'expected a number, got {_json_type(value)}',
                              path)
    return float(value)


def _expect_integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise StudyParseError(
            f'expected an integer, got {_json_type(value)} {value!r}', path)
    return value


def _expect_string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise StudyParseError(f'expected a string, got {_json_type(value)}',
                              path)
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise StudyParseError(f'expected an array, got {_json_type(value)}',
                              path)
    return value


def _parse_scale(obj: Any, path: str) -> LikertScale:
    _check_keys(obj, _SCALE_KEYS, path)
    return LikertScale(min=_expect_integer(obj['min'], f'{path}.min'),
                       max=_expect_integer(obj['max'], f'{path}.max'))


def _parse_item(obj: Any, path: str, scale: LikertScale) -> ItemStat:
    _check_keys(obj, _ITEM_KEYS, path)

    item_id = _expect_string(obj['id'], f'{path}.id')
    if not item_id:
        raise StudyParseError('item id must not be empty', f'{path}.id')

    text = obj.get('text')
    if text is not None:
        text = _expect_string(text, f'{path}.text')

    mean = _expect_number(obj['mean'], f'{path}.mean')
    sd = _expect_number(obj['sd'], f'{path}.sd')

    reverse = obj['reverse']
    if not isinstance(reverse, bool):
        raise StudyParseError(
            f'expected a boolean, got {_json_type(reverse)}', f'{path}.reverse')

    # An inverted scale is reported by validate_study(); bounds can only be
    # enforced against a well-formed one.
    if scale.max > scale.min and not scale.contains(mean):
        raise StudyParseError(
            f'item "{item_id}" mean {mean!r} is outside the scale '
            f'[{scale.min}, {scale.max}]', f'{path}.mean')

    return ItemStat(id=item_id, mean=mean, sd=sd, reverse=reverse, text=text)


def _parse_published(obj: Any, path: str) -> PublishedComposite:
    _check_keys(obj, _PUBLISHED_KEYS, path)
    return PublishedComposite(mean=_expect_number(obj['mean'], f'{path}.mean'),
                              sd=_expect_number(obj['sd'], f'{path}.sd'))


def _parse_theme(obj: Any, path: str) -> ThemeSpec:
    _check_keys(obj, _THEME_KEYS, path)

    item_ids = tuple(
        _expect_string(x, f'{path}.items[{i}]')
        for i, x in enumerate(_expect_list(obj['items'], f'{path}.items')))

    published = obj.get('published')
    if published is not None:
        published = _parse_published(published, f'{path}.published')

    return ThemeSpec(id=_expect_string(obj['id'], f'{path}.id'),
                     name=_expect_string(obj['name'], f'{path}.name'),
                     item_ids=item_ids,
                     published=published)


def _parse_metadata(obj: Any, path: str) -> StudyMetadata:
    _check_keys(obj, _METADATA_KEYS, path)

    source = obj.get('source')
    if source is not None:
        source = _expect_string(source, f'{path}.source')

    notes = obj.get('notes')
    if notes is not None:
        notes = _expect_string(notes, f'{path}.notes')

    sus_range = obj.get('published_sus_range')
    if sus_range is not None:
        range_path = f'{path}.published_sus_range'
        sus_range = _expect_list(sus_range, range_path)
        if len(sus_range) != 2:
            raise StudyParseError('expected [low, high]', range_path)
        sus_range = tuple(_expect_number(x, f'{range_path}[{i}]')
                          for i, x in enumerate(sus_range))

    return StudyMetadata(source=source, notes=notes,
                         published_sus_range=sus_range)


def parse_study_spec(raw: bytes) -> StudySpec:
    """
    Parse the bytes of a study file into a StudySpec.

    Arguments:
        raw -- UTF-8 encoded JSON text.

    Returns:
        StudySpec

    Raises:
        StudyParseError: on malformed JSON, on a schema violation (missing key,
            unknown key, wrong type), on an item mean outside the scale or on
            duplicate item ids. The error carries a path to the offending key.
    """
    try:
        text = raw.decode(_ENCODING) if isinstance(raw, bytes) else raw
        document = json.loads(text, parse_constant=_reject_constant)
    except UnicodeDecodeError as err:
        raise StudyParseError(f'syntax error: not valid UTF-8 ({err.reason})')
    except json.JSONDecodeError as err:
        raise StudyParseError(
            f'syntax error: {err.msg} (line {err.lineno}, column {err.colno})')

    _check_keys(document, _TOP_LEVEL_KEYS, '$')

    scale = _parse_scale(document['scale'], '$.scale')

    items = []
    seen = set()
    for i, obj in enumerate(_expect_list(document['items'], '$.items')):
        item = _parse_item(obj, f'$.items[{i}]', scale)
        if item.id in seen:
            raise StudyParseError(f'duplicate item id "{item.id}"',
                                  f'$.items[{i}].id')
        seen.add(item.id)
        items.append(item)

    themes = [_parse_theme(obj, f'$.themes[{i}]')
              for i, obj in enumerate(_expect_list(document['themes'],
                                                   '$.themes'))]

    metadata = StudyMetadata()
    if document.get('metadata') is not None:
        metadata = _parse_metadata(document['metadata'], '$.metadata')

    _LOGGER.debug('Parsed study with %d items and %d themes',
                  len(items), len(themes))

    return StudySpec(scale=scale, items=tuple(items), themes=tuple(themes),
                     metadata=metadata)


def serialize_study_spec(spec: StudySpec) -> bytes:
    """
    Serialize a StudySpec back into the study file format. Optional fields
    that are unset are omitted, so parse(serialize(spec)) == spec.
    """
    items = []
    for item in spec.items:
        obj = {'id': item.id}
        if item.text is not None:
            obj['text'] = item.text
        obj.update({'mean': item.mean, 'sd': item.sd, 'reverse': item.reverse})
        items.append(obj)

    themes = []
    for theme in spec.themes:
        obj = {'id': theme.id, 'name': theme.name,
               'items': list(theme.item_ids)}
        if theme.published is not None:
            obj['published'] = {'mean': theme.published.mean,
                                'sd': theme.published.sd}
        themes.append(obj)

    metadata = {}
    if spec.metadata.source is not None:
        metadata['source'] = spec.metadata.source
    if spec.metadata.notes is not None:
        metadata['notes'] = spec.metadata.notes
    if spec.metadata.published_sus_range is not None:
        metadata['published_sus_range'] = list(
            spec.metadata.published_sus_range)

    document = {'scale': {'min': spec.scale.min, 'max': spec.scale.max},
                'items': items,
                'themes': themes}
    if metadata:
        document['metadata'] = metadata

    return (json.dumps(document, indent=2, ensure_ascii=False) + '\n') \
        .encode(_ENCODING)


#
# validation
#

def validate_study(spec: StudySpec) -> List[Finding]:
    """
    Check every invariant of a parsed study.

    Each violation yields exactly one finding. Findings are data, not
    failures; an empty list means the study is valid.

    Returns:
        Findings sorted by path.
    """
    findings = []
    scale = spec.scale

    scale_ok = scale.max > scale.min
    if not scale_ok:
        findings.append(Finding(
            'scale', f'scale max {scale.max} must exceed min {scale.min}'))

    for item in spec.items:
        path = f'items[{item.id}]'
        if scale_ok and not (math.isfinite(item.mean)
                             and scale.contains(item.mean)):
            findings.append(Finding(
                f'{path}.mean',
                f'mean {item.mean!r} is outside the scale '
                f'[{scale.min}, {scale.max}]'))
        if not (math.isfinite(item.sd) and item.sd > 0):
            findings.append(Finding(
                f'{path}.sd',
                f'sd {item.sd!r} must be positive and finite '
                '(the inverse-variance weight 1/sd^2 is undefined)'))

    if not spec.themes:
        findings.append(Finding('themes', 'a study needs at least one theme'))

    owners = {}
    seen_themes = set()
    for theme in spec.themes:
        path = f'themes[{theme.id}]'
        if theme.id in seen_themes:
            findings.append(Finding(f'{path}.id',
                                    f'duplicate theme id "{theme.id}"'))
        seen_themes.add(theme.id)

        if not theme.item_ids:
            findings.append(Finding(f'{path}.items',
                                    'a theme needs at least one item'))

        for item_id in theme.item_ids:
            item_path = f'{path}.items[{item_id}]'
            if item_id not in spec.item_index:
                findings.append(Finding(item_path,
                                        f'unknown item "{item_id}"'))
            elif item_id in owners:
                findings.append(Finding(
                    item_path,
                    f'item "{item_id}" already belongs to theme '
                    f'"{owners[item_id]}"'))
            else:
                owners[item_id] = theme.id

    return sorted(findings)
