"""
IO module.

Contains reading and writing of nets and points:
- sexpr: s-expression reader with positions
- net_reader: parse nets, values and points
- net_writer: canonical serialization
"""

from .net_reader import NetParseError, parse_net, parse_point, parse_value, read_net
from .net_writer import render_value, serialize_net, serialize_point, write_net

__all__ = [
    "NetParseError",
    "parse_net",
    "parse_point",
    "parse_value",
    "read_net",
    "render_value",
    "serialize_net",
    "serialize_point",
    "write_net",
]
