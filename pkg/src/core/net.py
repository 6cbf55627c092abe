"""
Net data model.

A single carrier type is used for ground-structures, simple differential
nets, (differential) in-PS's and PS's; which class a value belongs to is
decided by the predicates of ``quality.net_quality``.

- ``GroundNet`` holds one level: labelled ports, wires (a partial
  ``targets`` map), the left premises of tensors and pars, axioms and
  cuts (unordered pairs, cuts are never wires).
- ``Net`` adds the boxes of that level: ``contents[o]`` is the net inside
  box ``o`` and ``doors[o]`` maps conclusions of that content (addresses
  relative to the content) to ports of the enclosing level.

Values are treated as immutable; every operation builds new nets.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Set, Tuple

from src.core.ports import Address, Label, PortId, port_key, render_port, sorted_ports

logger = logging.getLogger(__name__)

Pair = FrozenSet[PortId]


class ProofNetError(Exception):
    """Base class for errors raised by proof-net operations."""


class UnknownPort(ProofNetError):
    """A port is not present at the expected level of a net."""


@dataclass(frozen=True)
class Violation:
    """A broken structural clause, with the ports involved."""
    name: str
    message: str
    ports: Tuple[PortId, ...] = ()


@dataclass(frozen=True)
class GroundNet:
    labels: Mapping[PortId, Label] = field(default_factory=dict)
    targets: Mapping[PortId, PortId] = field(default_factory=dict)
    left: FrozenSet[PortId] = frozenset()
    axioms: FrozenSet[Pair] = frozenset()
    cuts: FrozenSet[Pair] = frozenset()

    @cached_property
    def ports(self) -> FrozenSet[PortId]:
        return frozenset(self.labels)

    @cached_property
    def wires(self) -> FrozenSet[PortId]:
        return frozenset(self.targets)

    def label(self, port: PortId) -> Label:
        try:
            return self.labels[port]
        except KeyError:
            raise UnknownPort(f"Unknown port {render_port(port)}") from None

    @cached_property
    def premise_index(self) -> Dict[PortId, Tuple[PortId, ...]]:
        index: Dict[PortId, List[PortId]] = defaultdict(list)
        for wire, target in self.targets.items():
            index[target].append(wire)
        return {t: tuple(sorted_ports(ws)) for t, ws in index.items()}

    def premises(self, port: PortId) -> Tuple[PortId, ...]:
        return self.premise_index.get(port, ())

    def arity(self, port: PortId) -> int:
        return len(self.premises(port))

    def left_premise(self, port: PortId) -> Optional[PortId]:
        for wire in self.premises(port):
            if wire in self.left:
                return wire
        return None

    def right_premise(self, port: PortId) -> Optional[PortId]:
        for wire in self.premises(port):
            if wire not in self.left:
                return wire
        return None

    @cached_property
    def cut_ports(self) -> FrozenSet[PortId]:
        return frozenset(p for pair in self.cuts for p in pair)

    def conclusions(self) -> FrozenSet[PortId]:
        """Ports that are neither wires nor cut."""
        return self._conclusions

    @cached_property
    def _conclusions(self) -> FrozenSet[PortId]:
        return frozenset(p for p in self.labels if p not in self.targets and p not in self.cut_ports)

    def axiom_partner(self, port: PortId) -> Optional[PortId]:
        for pair in self.axioms:
            if port in pair:
                return next(iter(pair - {port}), port)
        return None

    def violations(self, forbid_wires_into_bang: bool = False) -> List[Violation]:
        """Pre-net clauses (plus acyclicity) that this level breaks."""
        found: List[Violation] = []
        ports = self.ports

        dangling = [w for w, t in self.targets.items() if w not in ports or t not in ports]
        if dangling:
            found.append(Violation("wire_endpoints", "wires must join ports of the net", tuple(dangling)))

        bad_targets = [w for w, t in self.targets.items() if t in ports and not self.labels[t].accepts_wires]
        if bad_targets:
            found.append(Violation("wire_targets", "wires cannot enter one, bot or ax ports", tuple(bad_targets)))

        for port in sorted_ports(ports):
            label = self.labels[port]
            if not label.is_multiplicative:
                continue
            premises = self.premises(port)
            lefts = [w for w in premises if w in self.left]
            if len(premises) != 2:
                found.append(Violation(
                    "multiplicative_premises", f"{label.value} needs 2 premises, found {len(premises)}", (port,)
                ))
            elif len(lefts) != 1:
                found.append(Violation(
                    "left_premises", f"{label.value} needs exactly one left premise", (port,)
                ))

        stray_left = [w for w in self.left if w not in self.targets or not self.labels.get(self.targets[w], Label.AX).is_multiplicative]
        if stray_left:
            found.append(Violation("left_premises", "left premises must enter tensor or par", tuple(stray_left)))

        ax_ports = {p for p, lab in self.labels.items() if lab is Label.AX}
        covered: Dict[PortId, int] = defaultdict(int)
        malformed = []
        for pair in self.axioms:
            if len(pair) != 2 or not pair <= ax_ports:
                malformed.extend(pair)
            for p in pair:
                covered[p] += 1
        uncovered = [p for p in ax_ports if covered[p] != 1]
        if malformed or uncovered:
            found.append(Violation(
                "axioms", "axioms must partition the ax ports into pairs", tuple(sorted_ports(set(malformed) | set(uncovered)))
            ))

        in_cuts: Dict[PortId, int] = defaultdict(int)
        bad_cuts = []
        for pair in self.cuts:
            if len(pair) != 2 or not pair <= ports or pair & self.wires:
                bad_cuts.extend(pair)
            for p in pair:
                in_cuts[p] += 1
        bad_cuts.extend(p for p, n in in_cuts.items() if n > 1)
        if bad_cuts:
            found.append(Violation("cuts", "cuts must be disjoint pairs of non-wire ports", tuple(sorted_ports(set(bad_cuts)))))

        cycle = find_wire_cycle(self.targets)
        if cycle:
            found.append(Violation("acyclic", "the premise relation must be acyclic", tuple(cycle)))

        if forbid_wires_into_bang:
            into_bang = [w for w, t in self.targets.items() if self.labels.get(t) is Label.BANG]
            if into_bang:
                found.append(Violation("no_wire_into_bang", "ground-structures have no wire into a bang port", tuple(into_bang)))

        return found


def find_wire_cycle(targets: Mapping[PortId, PortId]) -> Optional[List[PortId]]:
    """Return the ports of a wire cycle, if any."""
    state: Dict[PortId, int] = {}
    for start in sorted_ports(targets):
        if state.get(start):
            continue
        path: List[PortId] = []
        port: Optional[PortId] = start
        while port is not None and port in targets and not state.get(port):
            state[port] = 1
            path.append(port)
            port = targets[port]
        if port is not None and state.get(port) == 1:
            return path[path.index(port):]
        for p in path:
            state[p] = 2
    return None


@dataclass(frozen=True)
class NetMetrics:
    depth: int
    cosize: int
    n_boxes: int
    shallow_conclusions: FrozenSet[PortId]
    all_conclusions: FrozenSet[Address]

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "cosize": self.cosize,
            "n_boxes": self.n_boxes,
            "shallow_conclusions": [render_port(p) for p in sorted_ports(self.shallow_conclusions)],
            "all_conclusions": sorted("/".join(render_port(p) for p in a) for a in self.all_conclusions),
        }


@dataclass(frozen=True)
class Net:
    """A (differential) in-PS: one ground level plus boxes."""

    ground: GroundNet = field(default_factory=GroundNet)
    contents: Mapping[PortId, "Net"] = field(default_factory=dict)
    doors: Mapping[PortId, Mapping[Address, PortId]] = field(default_factory=dict)

    @property
    def ports(self) -> FrozenSet[PortId]:
        return self.ground.ports

    @property
    def boxes(self) -> FrozenSet[PortId]:
        return frozenset(self.contents)

    def label(self, port: PortId) -> Label:
        return self.ground.label(port)

    def is_box(self, port: PortId) -> bool:
        return port in self.contents

    @cached_property
    def door_index(self) -> Dict[PortId, Tuple[Tuple[PortId, Address], ...]]:
        """Door target -> (box, inner address) pairs, in canonical order."""
        index: Dict[PortId, List[Tuple[PortId, Address]]] = defaultdict(list)
        for box in sorted_ports(self.doors):
            for address, target in self.doors[box].items():
                index[target].append((box, address))
        return {t: tuple(sorted(pairs, key=lambda bp: (port_key(bp[0]), tuple(port_key(p) for p in bp[1]))))
                for t, pairs in index.items()}

    def door_sources(self, port: PortId) -> Tuple[Tuple[PortId, Address], ...]:
        return self.door_index.get(port, ())

    def arity(self, port: PortId) -> int:
        """Wire premises plus doors targeting ``port`` (the principal door included)."""
        if port not in self.ground.labels:
            raise UnknownPort(f"Unknown port {render_port(port)}")
        return self.ground.arity(port) + len(self.door_sources(port))

    def principal_door(self, box: PortId) -> Optional[Address]:
        found = [a for a, t in self.doors.get(box, {}).items() if t == box]
        return found[0] if len(found) == 1 else None

    def temporary_conclusions(self, box: PortId) -> FrozenSet[Address]:
        return frozenset(self.doors.get(box, {}))

    def contractions_under(self, box: PortId) -> FrozenSet[PortId]:
        return frozenset(t for t in self.doors.get(box, {}).values() if t != box)

    def ground_conclusions(self) -> FrozenSet[PortId]:
        return self.ground.conclusions()

    def conclusions(self) -> FrozenSet[Address]:
        """Shallow ground conclusions plus deep conclusions left without a door."""
        return self._conclusions

    @cached_property
    def _conclusions(self) -> FrozenSet[Address]:
        found: Set[Address] = {(p,) for p in self.ground.conclusions()}
        for box, content in self.contents.items():
            doors = self.doors.get(box, {})
            for inner in content.conclusions():
                if inner not in doors:
                    found.add((box,) + inner)
        return frozenset(found)

    def target_of(self, address: Address) -> Optional[PortId]:
        """Wire target of a shallow port, or door target of a deep conclusion."""
        if len(address) == 1:
            return self.ground.targets.get(address[0])
        return self.doors.get(address[0], {}).get(address[1:])

    @cached_property
    def _depth(self) -> int:
        if not self.contents:
            return 0
        return 1 + max(content.depth() for content in self.contents.values())

    def depth(self) -> int:
        return self._depth

    def cosize(self) -> int:
        values = [self.arity(p) for p in self.ground.labels]
        values.extend(content.cosize() for content in self.contents.values())
        return max(values, default=0)

    def exponential_ports(self) -> FrozenSet[PortId]:
        return frozenset(p for p, lab in self.ground.labels.items() if lab.is_exponential)

    def co_contractions(self) -> FrozenSet[PortId]:
        return frozenset(p for p, lab in self.ground.labels.items() if lab is Label.BANG and p not in self.contents)

    def box_paths(self) -> List[Address]:
        """Every box at every depth, as the path of boxes leading to it."""
        paths: List[Address] = []
        for box in sorted_ports(self.contents):
            paths.append((box,))
            paths.extend((box,) + inner for inner in self.contents[box].box_paths())
        return paths

    def box_count(self) -> int:
        return len(self.box_paths())

    def content_at(self, path: Address) -> "Net":
        net = self
        for box in path:
            net = net.contents[box]
        return net

    def boxes_at_least(self, i: int) -> FrozenSet[PortId]:
        return frozenset(o for o, content in self.contents.items() if content.depth() >= i)

    def deepest_box_at_least(self, address: Address, i: int) -> Optional[Address]:
        """Path of the deepest box of content depth >= i containing the port at ``address``."""
        if len(address) < 2:
            return None
        box = address[0]
        content = self.contents.get(box)
        if content is None or content.depth() < i:
            return None
        inner = content.deepest_box_at_least(address[1:], i)
        return (box,) + inner if inner else (box,)

    def addresses(self) -> Iterator[Address]:
        for port in sorted_ports(self.ground.labels):
            yield (port,)
        for box in sorted_ports(self.contents):
            for inner in self.contents[box].addresses():
                yield (box,) + inner

    def label_at(self, address: Address) -> Label:
        return self.content_at(address[:-1]).label(address[-1])

    def has_cuts(self) -> bool:
        return bool(self.ground.cuts) or any(c.has_cuts() for c in self.contents.values())

    def port_count(self) -> int:
        return len(self.ground.labels) + sum(c.port_count() for c in self.contents.values())

    def metrics(self) -> NetMetrics:
        return NetMetrics(
            depth=self.depth(),
            cosize=self.cosize(),
            n_boxes=self.box_count(),
            shallow_conclusions=self.ground_conclusions(),
            all_conclusions=self.conclusions(),
        )


def make_ground(
    labels: Mapping[PortId, Label],
    targets: Optional[Mapping[PortId, PortId]] = None,
    left: Optional[Set[PortId]] = None,
    axioms: Optional[List[Tuple[PortId, PortId]]] = None,
    cuts: Optional[List[Tuple[PortId, PortId]]] = None,
) -> GroundNet:
    """Convenience constructor taking plain collections."""
    return GroundNet(
        labels=dict(labels),
        targets=dict(targets or {}),
        left=frozenset(left or ()),
        axioms=frozenset(frozenset(pair) for pair in axioms or ()),
        cuts=frozenset(frozenset(pair) for pair in cuts or ()),
    )
