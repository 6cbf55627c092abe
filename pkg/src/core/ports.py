"""
Port identifiers and labels.

A port is named either by a plain atom or by a copy tag
``Copy(box, ordinal, inner)`` recording that it is the copy number
``ordinal`` of port ``inner`` taken from the content of ``box``.
Tags nest, so copies of copies stay distinct from every atom without
any global name generator.

Textual form (used by the s-expression format and in log messages)::

    q            Atom("q")
    o.3.q        Copy(Atom("o"), 3, Atom("q"))
    o.1.p.2.q    Copy(o, 1, Copy(p, 2, q))
    {o.2.b}.1.q  Copy(Copy(o, 2, b), 1, q)

Ports lying inside boxes are addressed by tuples ``(o, ..., p)``:
the path of boxes followed by the port name inside the innermost one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Tuple, Union


class Label(str, Enum):
    """Port labels of (differential) proof-structures."""

    TENSOR = "tensor"
    PAR = "par"
    ONE = "one"
    BOT = "bot"
    BANG = "bang"
    QUEST = "quest"
    AX = "ax"

    @property
    def is_multiplicative(self) -> bool:
        return self in (Label.TENSOR, Label.PAR)

    @property
    def is_exponential(self) -> bool:
        return self in (Label.BANG, Label.QUEST)

    @property
    def accepts_wires(self) -> bool:
        return self not in (Label.ONE, Label.BOT, Label.AX)


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Copy:
    box: "PortId"
    ordinal: int
    inner: "PortId"

    def __str__(self) -> str:
        return render_port(self)


PortId = Union[Atom, Copy]
Address = Tuple[PortId, ...]

_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_'\-]*")
_ORDINAL = re.compile(r"[0-9]+")


class PortSyntaxError(ValueError):
    """Raised when a port identifier cannot be parsed."""


@lru_cache(maxsize=None)
def port_key(port: PortId) -> tuple:
    """Total order on port identifiers: atoms first, then copies."""
    if isinstance(port, Atom):
        return (0, port.name)
    return (1, port_key(port.box), port.ordinal, port_key(port.inner))


def address_key(address: Address) -> tuple:
    return tuple(port_key(p) for p in address)


def sorted_ports(ports: Iterable[PortId]) -> list:
    return sorted(ports, key=port_key)


def render_port(port: PortId) -> str:
    if isinstance(port, Atom):
        return port.name
    box = render_port(port.box)
    if isinstance(port.box, Copy):
        box = "{" + box + "}"
    return f"{box}.{port.ordinal}.{render_port(port.inner)}"


def render_address(address: Address) -> str:
    return "/".join(render_port(p) for p in address)


def is_valid_name(name: str) -> bool:
    return _NAME.fullmatch(name) is not None


def parse_port(text: str) -> PortId:
    port, end = _parse_port(text, 0)
    if end != len(text):
        raise PortSyntaxError(f"Trailing characters in port id {text!r} at {end}")
    return port


def parse_address(text: str) -> Address:
    return tuple(parse_port(part) for part in text.split("/"))


def _parse_port(text: str, i: int) -> Tuple[PortId, int]:
    if i < len(text) and text[i] == "{":
        box, i = _parse_port(text, i + 1)
        if i >= len(text) or text[i] != "}":
            raise PortSyntaxError(f"Unclosed brace in port id {text!r}")
        i += 1
        if i >= len(text) or text[i] != ".":
            raise PortSyntaxError(f"Braced box must be followed by an ordinal in {text!r}")
        return _parse_copy_tail(text, i, box)

    match = _NAME.match(text, i)
    if match is None:
        raise PortSyntaxError(f"Invalid port id {text!r} at {i}")
    atom = Atom(match.group(0))
    i = match.end()
    if i < len(text) and text[i] == ".":
        return _parse_copy_tail(text, i, atom)
    return atom, i


def _parse_copy_tail(text: str, i: int, box: PortId) -> Tuple[PortId, int]:
    # text[i] == "."
    match = _ORDINAL.match(text, i + 1)
    if match is None or match.end() >= len(text) or text[match.end()] != ".":
        raise PortSyntaxError(f"Expected '.<ordinal>.' in port id {text!r} at {i}")
    inner, end = _parse_port(text, match.end() + 1)
    return Copy(box, int(match.group(0)), inner), end
