"""
Net Reader.

Parses proof-structures, values and points from their s-expression form:

    (net
      (ports (a ax) (b ax) (o bang) (q one))
      (wires (a -> t :left))
      (axioms (a b))
      (cuts)
      (boxes (box o (net ...) (doors (q -> o)))))

Port ids use the dotted copy syntax of ``src.core.ports``; door sources
are addresses inside the content (``p`` or ``o2/p``). Errors carry the
line and column of the offending expression.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from src.core.net import Net, ProofNetError, make_ground
from src.core.ports import Address, Label, PortId, PortSyntaxError, parse_address, parse_port, render_port
from src.io.sexpr import Node, SExprError, SList, Symbol, read
from src.semantics.values import Bag, Pair, Point, Sign, Star, Sym, Value

logger = logging.getLogger(__name__)

_SECTIONS = ("ports", "wires", "axioms", "cuts", "boxes")


class NetParseError(ProofNetError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})" if line else message)
        self.line = line
        self.column = column


def _fail(message: str, node: Node) -> NetParseError:
    return NetParseError(message, node.line, node.column)


def _read(text: str) -> Node:
    try:
        return read(text)
    except SExprError as e:
        raise NetParseError(e.message, e.line, e.column) from e


def _symbol(node: Node, what: str) -> str:
    if not isinstance(node, Symbol):
        raise _fail(f"Expected {what}, found a list", node)
    return node.name


def _list(node: Node, what: str, head: Optional[str] = None) -> SList:
    if not isinstance(node, SList) or node.square:
        raise _fail(f"Expected {what}", node)
    if head is not None and node.head() != head:
        raise _fail(f"Expected ({head} ...), found ({node.head()} ...)", node)
    return node


def _port(node: Node) -> PortId:
    try:
        return parse_port(_symbol(node, "a port id"))
    except PortSyntaxError as e:
        raise _fail(str(e), node) from e


def _address(node: Node) -> Address:
    try:
        return parse_address(_symbol(node, "an address"))
    except PortSyntaxError as e:
        raise _fail(str(e), node) from e


def _arrow(entry: SList) -> Tuple[Node, Node, List[Node]]:
    if len(entry) < 3 or not isinstance(entry[1], Symbol) or entry[1].name != "->":
        raise _fail("Expected (source -> target ...)", entry)
    return entry[0], entry[2], list(entry.items[3:])


def _net(node: Node) -> Net:
    top = _list(node, "a net", "net")
    sections = [_list(s, "a section") for s in top.items[1:]]
    heads = [s.head() for s in sections]
    if tuple(heads) != _SECTIONS:
        raise _fail(f"Net sections must be {' '.join(_SECTIONS)}, found {' '.join(heads)}", top)
    ports, wires, axioms, cuts, boxes = sections

    labels: Dict[PortId, Label] = {}
    for entry in ports.items[1:]:
        entry = _list(entry, "(id label)")
        if len(entry) != 2:
            raise _fail("Expected (id label)", entry)
        port = _port(entry[0])
        if port in labels:
            raise _fail(f"Duplicate port {render_port(port)}", entry)
        name = _symbol(entry[1], "a label")
        try:
            labels[port] = Label(name)
        except ValueError:
            raise _fail(f"Unknown label {name!r}", entry[1]) from None

    def known(node: Node) -> PortId:
        port = _port(node)
        if port not in labels:
            raise _fail(f"Undeclared port {render_port(port)}", node)
        return port

    targets: Dict[PortId, PortId] = {}
    left: Set[PortId] = set()
    for entry in wires.items[1:]:
        entry = _list(entry, "a wire")
        source, target, flags = _arrow(entry)
        wire, dest = known(source), known(target)
        if wire in targets:
            raise _fail(f"Port {render_port(wire)} has two wires", entry)
        targets[wire] = dest
        for flag in flags:
            if _symbol(flag, "a wire flag") != ":left":
                raise _fail(f"Unknown wire flag {flag}", flag)
            if not labels[dest].is_multiplicative:
                raise _fail(f"Left marker on a wire into {labels[dest].value} port {render_port(dest)}", flag)
            left.add(wire)

    def pairs(section: SList) -> List[Tuple[PortId, PortId]]:
        found = []
        for entry in section.items[1:]:
            entry = _list(entry, "a pair of ports")
            if len(entry) != 2:
                raise _fail("Expected (id id)", entry)
            found.append((known(entry[0]), known(entry[1])))
        return found

    contents: Dict[PortId, Net] = {}
    doors: Dict[PortId, Dict[Address, PortId]] = {}
    for entry in boxes.items[1:]:
        entry = _list(entry, "a box", "box")
        if len(entry) != 4:
            raise _fail("Expected (box id net (doors ...))", entry)
        box = known(entry[1])
        if box in contents:
            raise _fail(f"Duplicate box {render_port(box)}", entry)
        contents[box] = _net(entry[2])
        doors[box] = {}
        for door in _list(entry[3], "(doors ...)", "doors").items[1:]:
            source, target, extra = _arrow(_list(door, "a door"))
            if extra:
                raise _fail("Doors take no flags", door)
            doors[box][_address(source)] = known(target)

    ground = make_ground(labels, targets, left, pairs(axioms), pairs(cuts))
    return Net(ground=ground, contents=contents, doors=doors)


def parse_net(text: str) -> Net:
    """
    Parse a net document.

    Raises:
        NetParseError: syntax errors and ill-formed declarations, with position
    """
    net = _net(_read(text))
    logger.debug(f"Parsed net: {net.port_count()} ports, depth {net.depth()}")
    return net


def read_net(path: str | Path) -> Net:
    path = Path(path)
    logger.info(f"Reading net from {path}")
    return parse_net(path.read_text(encoding="utf-8"))


def _value(node: Node) -> Value:
    entry = _list(node, "a signed value")
    if len(entry) != 2:
        raise _fail("Expected (sign body)", entry)
    sign_name = _symbol(entry[0], "a sign")
    if sign_name not in ("+", "-"):
        raise _fail(f"Unknown sign {sign_name!r}", entry[0])
    sign = Sign(sign_name)
    body = entry[1]
    if isinstance(body, Symbol):
        return Value(sign, Star() if body.name == "*" else Sym(body.name))
    if body.square:
        return Value(sign, Bag(tuple(_value(item) for item in body.items)))
    if body.head() != "pair" or len(body) != 3:
        raise _fail("Expected (pair value value) or [ values ]", body)
    return Value(sign, Pair(_value(body[1]), _value(body[2])))


def parse_value(text: str) -> Value:
    return _value(_read(text))


def parse_point(text: str) -> Point:
    """``(point (address value) ...)`` -> point."""
    top = _list(_read(text), "a point", "point")
    point: Point = {}
    for entry in top.items[1:]:
        entry = _list(entry, "(address value)")
        if len(entry) != 2:
            raise _fail("Expected (address value)", entry)
        point[_address(entry[0])] = _value(entry[1])
    return point
