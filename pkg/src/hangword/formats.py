"""Word files and function descriptors.

Word file::

    rank=4
    x1 x2 x1' x2'

Tokens are whitespace separated; ``x<N>`` is generator N and ``x<N>'`` its
inverse.  For rank <= 26 a compact spelling is also accepted on input:
each lowercase letter is a generator (a = x1) and uppercase its inverse,
e.g. ``abAB``.  Words are freely reduced on read; output is always the
canonical ``x<N>`` form.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Union

from .errors import InputError
from .monotone import MonotoneFn, from_json
from .words import Word, format_letters, reduce

_TOKEN = re.compile(r"x(\d+)('?)")
_HEADER = re.compile(r"\s*rank\s*=\s*(\d+)\s*$")


def format_word(w: Word) -> str:
    body = format_letters(w.letters)
    return f"rank={w.rank}\n{body}\n"


def parse_word(text: str) -> Word:
    lines = text.splitlines()
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise InputError("empty word file")
    m = _HEADER.match(lines[0])
    if not m:
        raise InputError("word file must start with a 'rank=<n>' header")
    rank = int(m.group(1))
    letters = []
    for tok in " ".join(lines[1:]).split():
        t = _TOKEN.fullmatch(tok)
        if t:
            index = int(t.group(1))
            if index == 0:
                raise InputError("generator x0 does not exist")
            letters.append(-index if t.group(2) else index)
        elif tok.isalpha() and tok.isascii():
            if rank > 26:
                raise InputError("compact letters are only allowed for rank <= 26")
            for ch in tok:
                index = ord(ch.lower()) - ord("a") + 1
                letters.append(-index if ch.isupper() else index)
        else:
            raise InputError(f"bad token {tok!r}")
    return reduce(letters, rank)


def read_word(path: Union[str, Path]) -> Word:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_word(text)


def write_word(path: Union[str, Path], w: Word) -> None:
    Path(path).write_text(format_word(w))


def read_function(path: Union[str, Path]) -> MonotoneFn:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InputError("function descriptor must be a JSON object")
    return from_json(data)
