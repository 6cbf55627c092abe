"""
A small s-expression reader.

Lists are written with parentheses or square brackets (the two do not
mix); every other run of non-blank characters is a symbol. ``;`` starts
a comment running to the end of the line. Every node remembers where it
started so callers can report errors by line and column.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import List, Tuple, Union

_OPEN = {"(": ")", "[": "]"}
_CLOSE = set(_OPEN.values())
_DELIMITERS = set(_OPEN) | _CLOSE


class SExprError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Symbol:
    name: str
    line: int = 0
    column: int = 0

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SList:
    items: Tuple["Node", ...] = ()
    square: bool = False
    line: int = 0
    column: int = 0

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, index):
        return self.items[index]

    def head(self) -> str:
        """Name of the first symbol, or '' when the list does not start with one."""
        if self.items and isinstance(self.items[0], Symbol):
            return self.items[0].name
        return ""


Node = Union[Symbol, SList]


@dataclass
class _Reader:
    text: str
    i: int = 0
    _lines: List[int] = field(default_factory=list)

    def __post_init__(self):
        self._lines = [0] + [n + 1 for n, c in enumerate(self.text) if c == "\n"]

    def position(self, i: int) -> Tuple[int, int]:
        line = bisect_right(self._lines, i) - 1
        return line + 1, i - self._lines[line] + 1

    def error(self, message: str, i: int) -> SExprError:
        line, column = self.position(i)
        return SExprError(message, line, column)

    def skip_whitespace(self) -> None:
        s = self.text
        while self.i < len(s):
            if s[self.i] == ";":
                while self.i < len(s) and s[self.i] != "\n":
                    self.i += 1
            elif s[self.i].isspace():
                self.i += 1
            else:
                return

    def read_token(self) -> Symbol:
        start = self.i
        s = self.text
        while self.i < len(s) and not s[self.i].isspace() and s[self.i] not in _DELIMITERS and s[self.i] != ";":
            self.i += 1
        line, column = self.position(start)
        return Symbol(s[start:self.i], line, column)

    def read_list(self) -> SList:
        start = self.i
        opening = self.text[self.i]
        closing = _OPEN[opening]
        self.i += 1
        items: List[Node] = []
        while True:
            self.skip_whitespace()
            if self.i == len(self.text):
                raise self.error(f"List opened with '{opening}' is not closed", start)
            c = self.text[self.i]
            if c == closing:
                self.i += 1
                line, column = self.position(start)
                return SList(tuple(items), opening == "[", line, column)
            if c in _CLOSE:
                raise self.error(f"Expected '{closing}', found '{c}'", self.i)
            items.append(self.read())

    def read(self) -> Node:
        self.skip_whitespace()
        if self.i == len(self.text):
            raise self.error("Unexpected end of input", self.i)
        c = self.text[self.i]
        if c in _OPEN:
            return self.read_list()
        if c in _CLOSE:
            raise self.error(f"Unbalanced '{c}'", self.i)
        return self.read_token()


def read(text: str) -> Node:
    """Read exactly one expression from ``text``."""
    reader = _Reader(text)
    node = reader.read()
    reader.skip_whitespace()
    if reader.i != len(text):
        raise reader.error("Trailing characters after expression", reader.i)
    return node


def render(node: Node) -> str:
    if isinstance(node, Symbol):
        return node.name
    opening, closing = ("[", "]") if node.square else ("(", ")")
    return opening + " ".join(render(item) for item in node.items) + closing
