"""
Connected components of nets.

Two shallow ports are coherent when they form an axiom or a cut, when
one is the wire target of the other, or when both are door targets of
the same box (a box is a door target of itself through its principal
door). Components are grown by flood fill along coherence; the ports of
the boundary set Q are collected but never crossed, and each component
is materialised as a substructure relative to Q, so its conclusions are
exactly the Q-ports it touches.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set

from src.core.algebra import substructure
from src.core.isomorphism import equivalent, net_fingerprint
from src.core.net import Net, UnknownPort
from src.core.ports import PortId, address_key, port_key, render_port, sorted_ports

logger = logging.getLogger(__name__)


def coherent(net: Net, p: PortId, q: PortId) -> bool:
    ground = net.ground
    if frozenset((p, q)) in ground.axioms or frozenset((p, q)) in ground.cuts:
        return True
    if ground.targets.get(p) == q or ground.targets.get(q) == p:
        return True
    return any(
        p in targets and q in targets
        for targets in (set(doors.values()) for doors in net.doors.values())
    )


def adjacency(net: Net) -> Dict[PortId, Set[PortId]]:
    """Coherence as an adjacency map over the shallow ports."""
    ground = net.ground
    neighbours: Dict[PortId, Set[PortId]] = {p: set() for p in ground.labels}
    for wire, target in ground.targets.items():
        neighbours[wire].add(target)
        neighbours[target].add(wire)
    for pair in ground.axioms | ground.cuts:
        a, b = tuple(pair)
        neighbours[a].add(b)
        neighbours[b].add(a)
    for box, doors in net.doors.items():
        group = set(doors.values()) | {box}
        for p in group:
            neighbours[p].update(group - {p})
    return neighbours


def _flood(
    neighbours: Dict[PortId, Set[PortId]],
    seed: PortId,
    boundary: FrozenSet[PortId],
) -> Set[PortId]:
    found = {seed}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        if p in boundary:
            continue
        for q in neighbours[p]:
            if q not in found:
                found.add(q)
                queue.append(q)
    return found


def net_key(net: Net) -> tuple:
    """Deterministic ordering key of a net (its sorted addresses)."""
    return tuple(address_key(a) for a in net.addresses())


@dataclass
class ComponentSet:
    """Components of a net relative to a boundary set, in canonical order."""
    members: List[Net]
    boundary: FrozenSet[PortId]
    k: Optional[int] = None
    port_sets: List[FrozenSet[PortId]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Net]:
        return iter(self.members)


def _grow(net: Net, boundary: FrozenSet[PortId]) -> List[FrozenSet[PortId]]:
    neighbours = adjacency(net)
    seen: Set[PortId] = set()
    found: List[FrozenSet[PortId]] = []
    for seed in sorted_ports(net.ground.labels):
        if seed in boundary or seed in seen:
            continue
        ports = _flood(neighbours, seed, boundary)
        seen |= ports - boundary
        found.append(frozenset(ports))
    return found


def closed_components(net: Net, boundary: Iterable[PortId], k: int) -> ComponentSet:
    """
    Members of C_k(net, Q).

    A flood-filled piece is kept when its substructure exists, has
    cosize below k and has no conclusion outside Q.
    """
    boundary = frozenset(boundary)
    unknown = boundary - net.ports
    if unknown:
        raise UnknownPort(f"Boundary ports not in net: {', '.join(render_port(p) for p in sorted_ports(unknown))}")

    kept = []
    for ports in _grow(net, boundary):
        member = substructure(net, ports, boundary)
        if member is None:
            logger.debug(f"Skipping piece of {len(ports)} ports: not a substructure")
            continue
        if member.cosize() >= k:
            continue
        if not member.ground_conclusions() <= boundary:
            continue
        kept.append((net_key(member), member, ports))
    kept.sort(key=lambda item: item[0])
    logger.debug(f"{len(kept)} closed components for |Q|={len(boundary)}, k={k}")
    return ComponentSet(
        members=[m for _, m, _ in kept],
        boundary=boundary,
        k=k,
        port_sets=[ports for _, _, ports in kept],
    )


def connected_components(net: Net) -> List[Net]:
    """Components with an empty boundary and no cosize bound; their glue is the net."""
    members = []
    for ports in _grow(net, frozenset()):
        member = substructure(net, ports)
        if member is None:
            raise ValueError("Net is not well formed: a connected piece is not a substructure")
        members.append(member)
    return sorted(members, key=net_key)


def component_of(net: Net, port: PortId) -> Net:
    if port not in net.ports:
        raise UnknownPort(f"Unknown port {render_port(port)}")
    return next(c for c in connected_components(net) if port in c.ports)


def nb_invisible(net: Net) -> int:
    """Components without conclusions, at depth 0 and inside every box."""
    here = sum(1 for c in connected_components(net) if not c.conclusions())
    return here + sum(nb_invisible(content) for content in net.contents.values())


def is_closed_in(ports: Iterable[PortId], net: Net, boundary: Iterable[PortId] = ()) -> bool:
    """Every port outside the boundary has all its coherent neighbours among ``ports``."""
    ports = frozenset(ports)
    boundary = frozenset(boundary)
    neighbours = adjacency(net)
    return all(neighbours[p] <= ports for p in ports - boundary)


def _signature(net: Net) -> tuple:
    labels = Counter(lab.value for lab in net.ground.labels.values())
    return (
        tuple(sorted(port_key(p) for p in net.ground_conclusions())),
        net.port_count(),
        tuple(sorted(labels.items())),
        net.box_count(),
    )


def partition_indices(nets: Sequence[Net]) -> List[List[int]]:
    """Indices of ``nets`` grouped by isomorphism fixing the shallow conclusions."""
    buckets: Dict[tuple, List[List[int]]] = defaultdict(list)
    for index, net in enumerate(nets):
        classes = buckets[_signature(net)]
        for cls in classes:
            if equivalent(nets[cls[0]], net):
                cls.append(index)
                break
        else:
            classes.append([index])

    result = []
    for classes in buckets.values():
        for cls in classes:
            result.append(sorted(cls, key=lambda i: net_key(nets[i])))
    result.sort(key=lambda cls: (net_key(nets[cls[0]]), _signature(nets[cls[0]]), net_fingerprint(nets[cls[0]])))
    return result


def partition_mod_equiv(nets: Sequence[Net]) -> List[List[Net]]:
    """
    Equivalence classes of ``nets``.

    Members are sorted canonically inside each class and classes by
    their first member, so the result does not depend on input order.
    """
    return [[nets[i] for i in cls] for cls in partition_indices(nets)]
