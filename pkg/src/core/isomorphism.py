"""
Isomorphism of nets via labelled directed graphs.

A net is flattened into a networkx DiGraph whose nodes are the addresses
of all its ports (at every depth) and whose edges record wires (left and
right premises apart), axioms, cuts, doors and box containment. Two nets
are isomorphic in the recursive sense exactly when these graphs are
isomorphic with matching node signatures and edge kinds.

Counts, signature histograms and a Weisfeiler-Lehman hash are compared
first; only then does ``DiGraphMatcher`` search for a witness.
"""

from __future__ import annotations

import logging
from collections import Counter
from enum import Enum
from typing import Dict, Mapping, Optional

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from src.config.configuration import config
from src.core.algebra import PreconditionViolated, strip_shallow
from src.core.net import Net
from src.core.ports import Address, PortId, render_port

logger = logging.getLogger(__name__)

IsoMap = Dict[Address, Address]


class IsoMode(str, Enum):
    FREE = "free"
    FIXED = "fixed"


def _add_edge(graph: nx.DiGraph, source: Address, target: Address, kind: str) -> None:
    if graph.has_edge(source, target):
        kinds = set(graph.edges[source, target]["kind"].split("+")) | {kind}
        graph.edges[source, target]["kind"] = "+".join(sorted(kinds))
    else:
        graph.add_edge(source, target, kind=kind)


def _add_level(
    graph: nx.DiGraph,
    net: Net,
    prefix: Address,
    anchors: Mapping[Address, str],
    exits: Mapping[Address, str],
) -> None:
    ground = net.ground
    depth = len(prefix)
    for p, label in ground.labels.items():
        address = prefix + (p,)
        anchor = anchors.get(address, "")
        exit_ = exits.get(address, "")
        is_box = net.is_box(p)
        graph.add_node(
            address,
            label=label.value,
            box=is_box,
            depth=depth,
            anchor=anchor,
            exit=exit_,
            sig=f"{label.value}|{int(is_box)}|{depth}|{anchor}|{exit_}",
        )
    for wire, target in ground.targets.items():
        _add_edge(graph, prefix + (wire,), prefix + (target,), "left" if wire in ground.left else "wire")
    for kind, pairs in (("ax", ground.axioms), ("cut", ground.cuts)):
        for pair in pairs:
            a, b = tuple(pair)
            _add_edge(graph, prefix + (a,), prefix + (b,), kind)
            _add_edge(graph, prefix + (b,), prefix + (a,), kind)
    for box, content in net.contents.items():
        box_address = prefix + (box,)
        _add_level(graph, content, box_address, anchors, exits)
        for inner in content.ground.labels:
            _add_edge(graph, box_address, box_address + (inner,), "in")
        for inner, target in net.doors.get(box, {}).items():
            _add_edge(graph, box_address + inner, prefix + (target,), "door")


def net_graph(
    net: Net,
    mode: IsoMode = IsoMode.FREE,
    exits: Optional[Mapping[Address, PortId]] = None,
) -> nx.DiGraph:
    """Flatten ``net`` into a DiGraph; FIXED mode pins shallow conclusions by name."""
    anchors: Dict[Address, str] = {}
    if mode is IsoMode.FIXED:
        anchors = {(p,): render_port(p) for p in net.ground_conclusions()}
    rendered_exits = {a: render_port(t) for a, t in (exits or {}).items()}
    graph = nx.DiGraph()
    _add_level(graph, net, (), anchors, rendered_exits)
    return graph


def _node_match(a: dict, b: dict) -> bool:
    return a["sig"] == b["sig"]


def _edge_match(a: dict, b: dict) -> bool:
    return a["kind"] == b["kind"]


def graph_fingerprint(graph: nx.DiGraph, iterations: Optional[int] = None) -> str:
    iterations = iterations if iterations is not None else config.iso.wl_iterations
    return nx.weisfeiler_lehman_graph_hash(graph, node_attr="sig", edge_attr="kind", iterations=iterations)


def net_fingerprint(net: Net, mode: IsoMode = IsoMode.FIXED) -> str:
    return graph_fingerprint(net_graph(net, mode))


def graph_iso(g1: nx.DiGraph, g2: nx.DiGraph) -> Optional[IsoMap]:
    """Witness of an isomorphism between two flattened nets, or None."""
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return None
    if Counter(nx.get_node_attributes(g1, "sig").values()) != Counter(nx.get_node_attributes(g2, "sig").values()):
        return None
    if Counter(nx.get_edge_attributes(g1, "kind").values()) != Counter(nx.get_edge_attributes(g2, "kind").values()):
        return None
    if g1.number_of_nodes() == 0:
        return {}
    if graph_fingerprint(g1) != graph_fingerprint(g2):
        return None

    matcher = DiGraphMatcher(g1, g2, node_match=_node_match, edge_match=_edge_match)
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


def iso_check(a: Net, b: Net, mode: IsoMode = IsoMode.FREE) -> Optional[IsoMap]:
    """
    Search an isomorphism a -> b.

    Args:
        a, b: the nets to compare
        mode: FREE for plain isomorphism, FIXED to keep shallow conclusions in place

    Returns:
        A map from the addresses of ``a`` to those of ``b``, or None.
    """
    witness = graph_iso(net_graph(a, mode), net_graph(b, mode))
    logger.debug(f"iso_check ({mode.value}): {'found' if witness is not None else 'none'}")
    return witness


def equivalent(a: Net, b: Net) -> bool:
    """a is isomorphic to b by a map fixing the shallow conclusions."""
    return iso_check(a, b, IsoMode.FIXED) is not None


def check_witness(a: Net, b: Net, witness: Mapping[Address, Address], mode: IsoMode = IsoMode.FREE) -> bool:
    """Verify a witness by comparing every node and edge of the two flattened nets."""
    g1, g2 = net_graph(a, mode), net_graph(b, mode)
    if set(witness) != set(g1.nodes) or set(witness.values()) != set(g2.nodes):
        return False
    if len(set(witness.values())) != len(witness):
        return False
    for node, data in g1.nodes(data=True):
        if g2.nodes[witness[node]]["sig"] != data["sig"]:
            return False
    if g1.number_of_edges() != g2.number_of_edges():
        return False
    for u, v, data in g1.edges(data=True):
        image = (witness[u], witness[v])
        if not g2.has_edge(*image) or g2.edges[image]["kind"] != data["kind"]:
            return False
    return True


def iso_mod_box(content: Net, net: Net, box: PortId, other: Net) -> bool:
    """
    ``content`` is equivalent modulo (net, box) to ``other``.

    Some isomorphism content -> strip(other) must send every conclusion
    p of ``content`` to a conclusion whose target in ``other`` is the
    door target of p in ``net``.
    """
    doors = net.doors.get(box)
    if doors is None:
        raise PreconditionViolated(f"{render_port(box)} is not a box of the net")
    stray = content.conclusions() - frozenset(doors)
    if stray:
        raise PreconditionViolated("Conclusions of the content must be temporary conclusions of the box")

    stripped = strip_shallow(other)
    content_exits = {c: doors[c] for c in content.conclusions()}
    other_exits: Dict[Address, PortId] = {}
    for c in stripped.conclusions():
        target = other.target_of(c)
        if target is not None:
            other_exits[c] = target
    return graph_iso(
        net_graph(content, IsoMode.FREE, content_exits),
        net_graph(stripped, IsoMode.FREE, other_exits),
    ) is not None
