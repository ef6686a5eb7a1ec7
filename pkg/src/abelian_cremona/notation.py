"""Parser for group expressions such as ``"Z/4 x Z/4 x Z2"`` or ``"C2^6"``.

Grammar (whitespace and case insensitive)::

    expr := term (("x" | "*") term)*
    term := atom ("^" INT)?
    atom := ("Z" | "C") "/"? INT        INT >= 1
"""

from __future__ import annotations

import re

from .groups import AbelianGroup, from_cyclic_factors

__all__ = ["GroupParseError", "parse_group"]


class GroupParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[pos:pos + 12]!r} in {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<sym>[zZcC/xX*^]))")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GroupParseError("unexpected character", text, len(text) - len(text[pos:].lstrip()))
        start = m.start("int") if m.group("int") else m.start("sym")
        if m.group("int"):
            yield ("INT", int(m.group("int")), start)
        else:
            yield (m.group("sym").lower(), None, start)
        pos = m.end()
    yield ("END", None, len(text))


def parse_group(text: str) -> AbelianGroup:
    toks = list(_tokens(text))
    i = 0

    def expect_int() -> int:
        nonlocal i
        kind, value, pos = toks[i]
        if kind != "INT":
            raise GroupParseError("expected an integer", text, pos)
        i += 1
        return value

    def term() -> list[int]:
        nonlocal i
        kind, _, pos = toks[i]
        if kind not in ("z", "c"):
            raise GroupParseError("expected 'Z' or 'C'", text, pos)
        i += 1
        if toks[i][0] == "/":
            i += 1
        n = expect_int()
        if n < 1:
            raise GroupParseError("cyclic order must be >= 1", text, pos)
        power = 1
        if toks[i][0] == "^":
            i += 1
            power = expect_int()
            if power < 1:
                raise GroupParseError("exponent must be >= 1", text, toks[i - 1][2])
        return [n] * power

    if toks[0][0] == "END":
        raise GroupParseError("empty group expression", text, 0)
    orders = term()
    while toks[i][0] in ("x", "*"):
        i += 1
        orders += term()
    if toks[i][0] != "END":
        raise GroupParseError("unexpected token", text, toks[i][2])
    return from_cyclic_factors(orders)
