"""Word syntax shared by the instance file format and report witnesses.

A word is `name^exp*name^exp*...` with `^exp` optional (default 1), or the
single letter `e` for the identity.  Whitespace around `*` is tolerated.
"""

from __future__ import annotations

import re

from .pcgroup import Element, GroupError, Presentation, Word

_SYLLABLE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


class WordSyntaxError(GroupError):
    pass


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "e" or text == "":
        return Word(())
    syllables = []
    for part in text.split("*"):
        part = part.strip()
        m = _SYLLABLE.match(part)
        if not m:
            raise WordSyntaxError(f"bad word syllable {part!r}")
        name, exp = m.group(1), m.group(2)
        syllables.append((name, int(exp) if exp is not None else 1))
    return Word(tuple(syllables))


def evaluate_word(P: Presentation, text: str) -> Element:
    word = parse_word(text)
    for name, _ in word.syllables:
        if name not in P._index:
            raise WordSyntaxError(f"unknown generator {name!r} in group {P.name}")
    return word.evaluate(P)


def format_element(u: Element) -> str:
    return str(u)
