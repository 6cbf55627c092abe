"""
Net Writer.

Canonical s-expression output for nets, values and points: ports,
wires, axioms, cuts, boxes and doors are always written in sorted
order, so equal nets serialize to equal text.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Mapping

from src.core.net import Net
from src.core.ports import Address, address_key, port_key, render_address, render_port, sorted_ports
from src.semantics.values import Bag, Pair, Star, Sym, Value

logger = logging.getLogger(__name__)

INDENT = "  "


def _pairs(pairs) -> List[str]:
    ordered = sorted((sorted_ports(pair) for pair in pairs), key=lambda pr: [port_key(p) for p in pr])
    return [f"({render_port(a)} {render_port(b)})" for a, b in ordered]


def _section(name: str, entries: List[str]) -> str:
    return f"({' '.join([name] + entries)})"


def _lines(net: Net, depth: int) -> List[str]:
    pad = INDENT * (depth + 1)
    ground = net.ground
    ports = [f"({render_port(p)} {ground.labels[p].value})" for p in sorted_ports(ground.labels)]
    wires = [
        f"({render_port(w)} -> {render_port(ground.targets[w])}{' :left' if w in ground.left else ''})"
        for w in sorted_ports(ground.targets)
    ]
    lines = [
        pad + _section("ports", ports),
        pad + _section("wires", wires),
        pad + _section("axioms", _pairs(ground.axioms)),
        pad + _section("cuts", _pairs(ground.cuts)),
    ]
    if not net.contents:
        lines.append(pad + "(boxes)")
        return lines

    lines.append(pad + "(boxes")
    for box in sorted_ports(net.contents):
        doors = net.doors.get(box, {})
        entries = [
            f"({render_address(a)} -> {render_port(doors[a])})"
            for a in sorted(doors, key=address_key)
        ]
        inner = pad + INDENT
        lines.append(f"{inner}(box {render_port(box)}")
        lines.append(inner + INDENT + "(net")
        lines.extend(_lines(net.contents[box], depth + 3))
        lines[-1] += ")"
        lines.append(inner + INDENT + _section("doors", entries) + ")")
    lines[-1] += ")"
    return lines


def serialize_net(net: Net) -> str:
    """Canonical text of ``net``; parse_net inverts it."""
    return "\n".join(["(net"] + _lines(net, 0)) + ")\n"


def write_net(path: str | Path, net: Net) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_net(net), encoding="utf-8")
    logger.info(f"Wrote net ({net.port_count()} ports) to {path}")
    return path


def render_value(v: Value) -> str:
    body = v.body
    if isinstance(body, Star):
        text = "*"
    elif isinstance(body, Sym):
        text = body.name
    elif isinstance(body, Pair):
        text = f"(pair {render_value(body.left)} {render_value(body.right)})"
    elif isinstance(body, Bag):
        text = "[" + " ".join(render_value(item) for item in body.items) + "]"
    else:
        raise TypeError(f"Not a value body: {body!r}")
    return f"({v.sign.value} {text})"


def serialize_point(point: Mapping[Address, Value]) -> str:
    entries = [
        f"({render_address(a)} {render_value(point[a])})"
        for a in sorted(point, key=address_key)
    ]
    return _section("point", entries)
