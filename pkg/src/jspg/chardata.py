"""Character resource tables: pinyin readings, four-corner codes,
structure codes and stroke sequences.

File formats (UTF-8, LF, one character per row, tab-separated):

* ``pinyin.tsv``     -- ``<char>\\t<reading>[,<reading>...]``, readings are
  lowercase romanizations with an optional trailing tone digit 1-4
  (neutral tone carries no digit);
* ``fourcorner.tsv`` -- ``<char>\\t<5 decimal digits>``;
* ``structure.tsv``  -- ``<char>\\t<decomposition code string>``;
* ``strokes.tsv``    -- ``<char>\\t<stroke classes as digits 1-5>``.

Tables are merged into one immutable :class:`ResourceTable`. Lookups of
absent characters are misses, never errors; duplicate rows and malformed
rows abort the load with the offending line number.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, Mapping

PINYIN_READING_RE = re.compile(r"[a-zü]+[1-4]?\Z")
FOUR_CORNER_RE = re.compile(r"[0-9]{5}\Z")
STROKES_RE = re.compile(r"[1-5]+\Z")


class ResourceError(Exception):
    """Raised when a resource file is missing or fails validation."""


@dataclass(frozen=True)
class CharRecord:
    """All similarity-relevant data known for one character."""

    char: str
    pinyin: tuple[str, ...] = ()
    four_corner: str | None = None
    structure: str | None = None
    strokes: str | None = None


@dataclass(frozen=True)
class ResourceTable:
    """Immutable character -> record map, safe for concurrent reads."""

    records: Mapping[str, CharRecord]
    provenance: Mapping[str, str] = field(default_factory=dict)

    def lookup(self, char: str) -> CharRecord | None:
        return self.records.get(char)

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, char: str) -> bool:
        return char in self.records


def _iter_rows(path: Path) -> Iterator[tuple[int, str, str]]:
    """Yield (line number, character, payload) for every non-blank row."""
    with path.open("r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ResourceError(
                    f"{path}:{lineno}: expected '<char>\\t<value>', got {line!r}"
                )
            char, payload = parts
            if len(char) != 1:
                raise ResourceError(
                    f"{path}:{lineno}: key must be a single character, got {char!r}"
                )
            yield lineno, char, payload


def _read_column(path: Path, validate, what: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, char, payload in _iter_rows(path):
        if char in values:
            raise ResourceError(f"{path}:{lineno}: duplicate entry for {char!r}")
        if not validate(payload):
            raise ResourceError(f"{path}:{lineno}: invalid {what} {payload!r}")
        values[char] = payload
    return values


def _read_pinyin(path: Path) -> dict[str, tuple[str, ...]]:
    readings: dict[str, tuple[str, ...]] = {}
    for lineno, char, payload in _iter_rows(path):
        if char in readings:
            raise ResourceError(f"{path}:{lineno}: duplicate entry for {char!r}")
        parts = tuple(payload.split(","))
        for reading in parts:
            if not PINYIN_READING_RE.fullmatch(reading):
                raise ResourceError(
                    f"{path}:{lineno}: invalid pinyin reading {reading!r}"
                )
        readings[char] = parts
    return readings


def load_resources(
    pinyin_path: str | Path,
    four_corner_path: str | Path | None = None,
    structure_path: str | Path | None = None,
    strokes_path: str | Path | None = None,
) -> ResourceTable:
    """Load and merge the resource tables into one validated ResourceTable.

    The pinyin table is mandatory; the three glyph tables are optional.
    A character may appear in any subset of the optional tables.
    """
    pinyin_path = Path(pinyin_path)
    if not pinyin_path.is_file():
        raise ResourceError(f"pinyin table not found: {pinyin_path}")
    pinyin = _read_pinyin(pinyin_path)
    provenance = {"pinyin": str(pinyin_path)}

    four_corner: dict[str, str] = {}
    structure: dict[str, str] = {}
    strokes: dict[str, str] = {}
    if four_corner_path is not None:
        path = Path(four_corner_path)
        if not path.is_file():
            raise ResourceError(f"four-corner table not found: {path}")
        four_corner = _read_column(
            path, FOUR_CORNER_RE.fullmatch, "four-corner code"
        )
        provenance["four_corner"] = str(path)
    if structure_path is not None:
        path = Path(structure_path)
        if not path.is_file():
            raise ResourceError(f"structure table not found: {path}")
        structure = _read_column(path, lambda s: bool(s), "structure code")
        provenance["structure"] = str(path)
    if strokes_path is not None:
        path = Path(strokes_path)
        if not path.is_file():
            raise ResourceError(f"stroke table not found: {path}")
        strokes = _read_column(path, STROKES_RE.fullmatch, "stroke sequence")
        provenance["strokes"] = str(path)

    chars = set(pinyin) | set(four_corner) | set(structure) | set(strokes)
    records = {
        char: CharRecord(
            char=char,
            pinyin=pinyin.get(char, ()),
            four_corner=four_corner.get(char),
            structure=structure.get(char),
            strokes=strokes.get(char),
        )
        for char in sorted(chars)
    }
    return ResourceTable(
        records=MappingProxyType(records),
        provenance=MappingProxyType(provenance),
    )
