"""Knowledge-base text files.

::

    # comment
    logic classical
    strict: !(p & q)
    assume: p
    assume: q

The ``logic`` line is required and only ``classical`` is accepted.  Blank
lines and ``#`` comments (whole-line or trailing) are ignored; LF and CRLF
line endings both work.  At least one ``assume:`` line is required and a
formula may appear on only one line of each kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .abf import ABF, validate_abf
from .errors import FormulaSyntaxError, KBFileError
from .formula import Formula, parse_formula, render


@dataclass(frozen=True)
class KBFile:
    gamma: tuple[Formula, ...]
    ab: tuple[Formula, ...]
    source: str = "<string>"

    def to_abf(self) -> ABF:
        """Validate the framework conditions (raises ABFValidationError)."""
        return validate_abf(self.gamma, self.ab)


def parse_kb(text: str, source: str = "<string>") -> KBFile:
    """Parse KB text.  Raises KBFileError with the 1-based line number."""
    if text.startswith("﻿"):
        text = text[1:]
    logic_seen = False
    sections: dict[str, list[Formula]] = {"strict": [], "assume": []}
    first_line: dict[tuple[str, Formula], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.split()[0] == "logic":
            words = line.split()
            if len(words) != 2 or words[1] != "classical":
                raise KBFileError(f"unsupported logic line {line!r}; only 'logic classical' is accepted", lineno)
            if logic_seen:
                raise KBFileError("logic line given twice", lineno)
            logic_seen = True
            continue
        key, sep, body = line.partition(":")
        key = key.strip()
        if not sep or key not in sections:
            raise KBFileError(f"expected 'logic', 'strict:' or 'assume:', got {line!r}", lineno)
        body_start = raw.index(":") + 1
        try:
            f = parse_formula(body)
        except FormulaSyntaxError as exc:
            column = len(raw[:body_start].encode("utf-8")) + exc.offset + 1
            raise KBFileError(f"column {column}: {exc.reason}{exc.detail()}", lineno) from exc
        prev = first_line.get((key, f))
        if prev is not None:
            raise KBFileError(f"duplicate {key} formula {render(f)} (first on line {prev})", lineno)
        first_line[(key, f)] = lineno
        sections[key].append(f)
    if not logic_seen:
        raise KBFileError("missing 'logic classical' line")
    if not sections["assume"]:
        raise KBFileError("at least one 'assume:' line is required")
    return KBFile(tuple(sections["strict"]), tuple(sections["assume"]), source)


def read_kb(path: Union[str, Path]) -> KBFile:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise KBFileError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise KBFileError(f"{path} is not valid UTF-8") from exc
    return parse_kb(text, str(path))


def dump_kb(gamma, ab) -> str:
    lines = ["logic classical"]
    lines += [f"strict: {render(f)}" for f in gamma]
    lines += [f"assume: {render(f)}" for f in ab]
    return "\n".join(lines) + "\n"
