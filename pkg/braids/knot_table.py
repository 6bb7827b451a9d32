"""
The bundled knot table and sourced constants, validated through DRF
serializers on load.
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Tuple

from django.conf import settings

from qarith.exceptions import DomainError, KnotTableError

from .words import BraidWord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KnotEntry:
    name: str
    braid: BraidWord
    reference_volume: Optional[float]
    reference_determinant: Optional[int]
    source: str
    summands: Tuple[str, ...] = ()


def _read_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as exc:
        raise KnotTableError(path, {'file': str(exc)})
    except json.JSONDecodeError as exc:
        raise KnotTableError(path, {'json': str(exc)})


def load_knot_table(path=None):
    """Every entry of the table; any invalid entry fails the whole load."""
    return list(_load_knot_table(str(path or settings.QJK_KNOT_TABLE)))


@lru_cache(maxsize=8)
def _load_knot_table(path):
    from .serializers import KnotEntrySerializer

    raw = _read_json(path)
    if not isinstance(raw, list):
        raise KnotTableError(path, {'table': 'Expected a JSON array of knot entries.'})

    entries, errors = [], {}
    for index, item in enumerate(raw):
        serializer = KnotEntrySerializer(data=item)
        if serializer.is_valid():
            entries.append(serializer.save())
        else:
            key = item.get('name', index) if isinstance(item, dict) else index
            errors[key] = serializer.errors

    names = [entry.name for entry in entries]
    for name in sorted({name for name in names if names.count(name) > 1}):
        errors[name] = 'Duplicate entry name.'
    for entry in entries:
        missing = [summand for summand in entry.summands if summand not in names]
        if missing:
            errors[entry.name] = f"Unknown summands {missing}."
    if errors:
        raise KnotTableError(path, errors)

    logger.info("Loaded %d knot table entries from %s", len(entries), Path(path).name)
    return tuple(entries)


def lookup_knot(name, path=None):
    for entry in load_knot_table(path):
        if entry.name == name:
            return entry
    raise DomainError(f"No knot named {name!r} in the knot table")


def load_constants(path=None):
    """{name: value} from the constants file"""
    path = str(path or settings.QJK_CONSTANTS)
    raw = _read_json(path)
    try:
        return {name: float(item['value']) for name, item in raw.items()}
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise KnotTableError(path, {'constants': f"Malformed constants file ({exc})."})
