"""
Tuple documents.

Text form (one tuple per document)::

    degree 3
    band () 1 +1
    band (2,-1) 2 -1

Line 1 is ``degree <m>``; every further line is ``band (<letters>) <index>
<exponent>`` with comma-separated signed conjugator letters.  Blank lines and
lines starting with ``#`` are ignored.  The structured form is a JSON object
with keys ``format``, ``degree``, ``entries`` (objects with ``conjugator``,
``index``, ``exponent``) and an optional ``label``.
"""

from __future__ import annotations

import dataclasses
import json
import re
from pathlib import Path

from .braids import BraidWord
from .errors import BraidError, DocumentError
from .surface import BandEntry, MonodromyTuple

FORMAT_VERSION = "surfbraid-tuple/1"

_DEGREE = re.compile(r"^degree\s+(\d+)$")
_BAND = re.compile(r"^band\s*\(([^)]*)\)\s+([+-]?\d+)\s+([+-]?\d+)$")


@dataclasses.dataclass(frozen=True)
class TupleDocument:
    tuple: MonodromyTuple
    label: str | None = None
    # source line of each entry, for error reports on text documents
    entry_lines: tuple[int, ...] = ()

    def line_of(self, entry: int | None) -> int | None:
        if entry is None or not self.entry_lines:
            return None
        return self.entry_lines[entry - 1]


def _parse_letters(field: str, degree: int, line: int) -> BraidWord:
    field = field.strip()
    letters = []
    if field:
        for token in field.split(","):
            token = token.strip()
            try:
                letters.append(int(token))
            except ValueError:
                raise DocumentError(f"bad conjugator letter {token!r}", line) from None
    try:
        return BraidWord(degree, tuple(letters))
    except BraidError as exc:
        raise DocumentError(str(exc), line) from None


def parse_text(text: str, label: str | None = None) -> TupleDocument:
    degree = None
    entries: list[BandEntry] = []
    lines: list[int] = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if degree is None:
            match = _DEGREE.match(line)
            if not match:
                raise DocumentError(f"expected 'degree <m>', got {line!r}", number)
            degree = int(match.group(1))
            if degree < 1:
                raise DocumentError("degree must be positive", number)
            continue
        match = _BAND.match(line)
        if not match:
            raise DocumentError(f"expected 'band (<letters>) <index> <exponent>', got {line!r}", number)
        conjugator = _parse_letters(match.group(1), degree, number)
        entries.append(BandEntry(conjugator, int(match.group(2)), int(match.group(3))))
        lines.append(number)
    if degree is None:
        raise DocumentError("empty document")
    return TupleDocument(MonodromyTuple(degree, tuple(entries)), label, tuple(lines))


def format_text(T: MonodromyTuple) -> str:
    return str(T) + "\n"


def to_json_object(T: MonodromyTuple, label: str | None = None) -> dict:
    obj = {
        "format": FORMAT_VERSION,
        "degree": T.degree,
        "entries": [
            {"conjugator": list(e.conjugator.letters), "index": e.index, "exponent": e.exponent}
            for e in T.entries
        ],
    }
    if label is not None:
        obj["label"] = label
    return obj


def format_json(T: MonodromyTuple, label: str | None = None) -> str:
    return json.dumps(to_json_object(T, label), indent=2, sort_keys=True) + "\n"


def from_json_object(obj: object, label: str | None = None) -> TupleDocument:
    if not isinstance(obj, dict):
        raise DocumentError("structured document must be a JSON object")
    if obj.get("format", FORMAT_VERSION) != FORMAT_VERSION:
        raise DocumentError(f"unsupported format {obj.get('format')!r}")
    degree = obj.get("degree")
    if not isinstance(degree, int) or degree < 1:
        raise DocumentError("'degree' must be a positive integer")
    entries = []
    for pos, item in enumerate(obj.get("entries", []), 1):
        try:
            conjugator = BraidWord(degree, tuple(item["conjugator"]))
            entries.append(BandEntry(conjugator, int(item["index"]), int(item["exponent"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"entry {pos}: malformed ({exc})") from None
        except BraidError as exc:
            raise DocumentError(f"entry {pos}: {exc}") from None
    return TupleDocument(MonodromyTuple(degree, tuple(entries)), obj.get("label", label))


def parse(text: str, label: str | None = None) -> TupleDocument:
    """Parse either form; JSON is recognised by a leading '{'."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}", exc.lineno) from None
        return from_json_object(obj, label)
    return parse_text(text, label)


def load(path: str | Path) -> TupleDocument:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), label=path.stem)
