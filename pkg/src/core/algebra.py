"""
Structural algebra on nets.

Restriction to bounded depth, substructures, gluing, adding wires,
stripping shallow conclusions, adding contractions inside a box and
renaming (tagging) of shallow ports.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Mapping, Optional, Union

from src.core.net import GroundNet, Net, ProofNetError, UnknownPort, find_wire_cycle
from src.core.ports import Address, Copy, Label, PortId, render_address, render_port, sorted_ports

logger = logging.getLogger(__name__)


class NotGluable(ProofNetError):
    """Two nets share a port that is not a shared exponential conclusion."""


class CycleIntroduced(ProofNetError):
    """Adding wires would create a cycle in the premise relation."""


class TargetNotQuest(ProofNetError):
    """A new wire or door would land on a port that cannot collect premises."""


class PreconditionViolated(ProofNetError):
    """An operation was called outside of its domain."""


class NameClash(ProofNetError):
    """A renaming or fresh name collides with an existing port."""


def restrict_leq(net: Net, i: int) -> Net:
    """Keep only the boxes whose content has depth < i (S^{<=i})."""
    kept = {o: content for o, content in net.contents.items() if content.depth() < i}
    return Net(
        ground=net.ground,
        contents=kept,
        doors={o: net.doors[o] for o in kept if o in net.doors},
    )


def substructure(net: Net, ports: Iterable[PortId], boundary: Iterable[PortId] = ()) -> Optional[Net]:
    """
    The unique net on ``ports`` that is a substructure of ``net`` relative to ``boundary``.

    Exponential boundary ports lose their outgoing wires and cuts, so they
    become conclusions. Returns None when the induced structure is not a
    pre-net (a lone axiom port, a tensor missing a premise, a box whose
    doors leave ``ports``).
    """
    kept = frozenset(ports)
    unknown = kept - net.ports
    if unknown:
        raise UnknownPort(f"Ports not in net: {', '.join(render_port(p) for p in sorted_ports(unknown))}")

    ground = net.ground
    open_ports = frozenset(q for q in boundary if q in kept and ground.labels[q].is_exponential)

    targets = {w: t for w, t in ground.targets.items() if w in kept and w not in open_ports and t in kept}
    sub_ground = GroundNet(
        labels={p: ground.labels[p] for p in kept},
        targets=targets,
        left=frozenset(w for w in ground.left if w in targets),
        axioms=frozenset(pair for pair in ground.axioms if pair <= kept),
        cuts=frozenset(pair for pair in ground.cuts if pair <= kept and not pair & open_ports),
    )
    if sub_ground.violations():
        return None

    contents: Dict[PortId, Net] = {}
    doors: Dict[PortId, Mapping[Address, PortId]] = {}
    for o in net.contents:
        if o not in kept:
            continue
        box_doors = net.doors.get(o, {})
        if any(t not in kept for t in box_doors.values()):
            return None
        contents[o] = net.contents[o]
        doors[o] = box_doors
    return Net(ground=sub_ground, contents=contents, doors=doors)


def glue(nets: Iterable[Net]) -> Net:
    """Componentwise union of nets sharing only exponential conclusions."""
    labels: Dict[PortId, Label] = {}
    targets: Dict[PortId, PortId] = {}
    left: set = set()
    axioms: set = set()
    cuts: set = set()
    contents: Dict[PortId, Net] = {}
    doors: Dict[PortId, Mapping[Address, PortId]] = {}
    shareable: Dict[PortId, bool] = {}

    for net in nets:
        conclusions = net.ground_conclusions()
        for p, label in net.ground.labels.items():
            ok_here = label.is_exponential and p in conclusions and not net.is_box(p)
            if p in labels:
                if not (ok_here and shareable[p] and labels[p] is label):
                    raise NotGluable(f"Port {render_port(p)} is shared but is not an exponential conclusion of both nets")
            else:
                labels[p] = label
                shareable[p] = ok_here
        targets.update(net.ground.targets)
        left.update(net.ground.left)
        axioms.update(net.ground.axioms)
        cuts.update(net.ground.cuts)
        contents.update(net.contents)
        doors.update(net.doors)

    return Net(
        ground=GroundNet(labels=labels, targets=targets, left=frozenset(left),
                         axioms=frozenset(axioms), cuts=frozenset(cuts)),
        contents=contents,
        doors=doors,
    )


def add_wires(net: Net, wiring: Mapping[Union[PortId, Address], PortId]) -> Net:
    """S@t: wire conclusions (shallow ports or deep addresses) into exponential ports."""
    if not wiring:
        return net
    conclusions = net.conclusions()
    targets = dict(net.ground.targets)
    doors = {o: dict(d) for o, d in net.doors.items()}

    for key, target in wiring.items():
        address: Address = key if isinstance(key, tuple) else (key,)
        if address not in conclusions:
            raise PreconditionViolated(f"{render_address(address)} is not a conclusion")
        label = net.ground.labels.get(target)
        if label is None or not label.is_exponential or net.is_box(target):
            raise TargetNotQuest(f"Cannot wire {render_address(address)} into {render_port(target)}")
        if len(address) == 1:
            targets[address[0]] = target
        else:
            doors.setdefault(address[0], {})[address[1:]] = target

    cycle = find_wire_cycle(targets)
    if cycle:
        raise CycleIntroduced(f"Wires would form the cycle {' -> '.join(render_port(p) for p in cycle)}")

    ground = net.ground
    return Net(
        ground=GroundNet(labels=ground.labels, targets=targets, left=ground.left,
                         axioms=ground.axioms, cuts=ground.cuts),
        contents=net.contents,
        doors=doors,
    )


def strip_shallow(net: Net) -> Net:
    """Remove the shallow conclusions; their premises become conclusions."""
    removed = net.ground_conclusions()
    bad = [p for p in removed if not net.label(p).is_exponential or net.is_box(p)]
    if bad:
        raise PreconditionViolated(
            f"Shallow conclusions must be exponential non-box ports: {', '.join(render_port(p) for p in sorted_ports(bad))}"
        )
    if not removed:
        return net

    ground = net.ground
    targets = {w: t for w, t in ground.targets.items() if t not in removed}
    return Net(
        ground=GroundNet(
            labels={p: lab for p, lab in ground.labels.items() if p not in removed},
            targets=targets,
            left=frozenset(w for w in ground.left if w in targets),
            axioms=ground.axioms,
            cuts=ground.cuts,
        ),
        contents=net.contents,
        doors={o: {a: t for a, t in d.items() if t not in removed} for o, d in net.doors.items()},
    )


def add_quest_ports(net: Net, fresh: Iterable[PortId]) -> Net:
    """S (+) ?_q for each fresh q."""
    fresh = list(fresh)
    clash = [q for q in fresh if q in net.ports]
    if clash:
        raise NameClash(f"Fresh ports already exist: {', '.join(render_port(q) for q in clash)}")
    labels = dict(net.ground.labels)
    labels.update({q: Label.QUEST for q in fresh})
    ground = net.ground
    return Net(
        ground=GroundNet(labels=labels, targets=ground.targets, left=ground.left,
                         axioms=ground.axioms, cuts=ground.cuts),
        contents=net.contents,
        doors=net.doors,
    )


def add_contractions(net: Net, box: PortId, phi: Mapping[PortId, PortId]) -> Net:
    """Move the contractions under ``box`` inside its content, as fresh ?-conclusions."""
    if box not in net.contents:
        raise PreconditionViolated(f"{render_port(box)} is not a box at depth 0")
    under = net.contractions_under(box)
    if set(phi) != set(under):
        raise PreconditionViolated(f"phi must be defined exactly on the contractions under {render_port(box)}")
    if len(set(phi.values())) != len(phi):
        raise NameClash("phi is not injective")
    if not under:
        return net

    principal = net.principal_door(box)
    box_doors = net.doors[box]
    content = add_quest_ports(net.contents[box], phi.values())
    rerouted = {a: phi[t] for a, t in box_doors.items() if a != principal}
    content = add_wires(content, rerouted)

    contents = dict(net.contents)
    contents[box] = content
    doors = dict(net.doors)
    doors[box] = {principal: box} if principal is not None else {}
    logger.debug(f"Added {len(phi)} contractions inside box {render_port(box)}")
    return Net(ground=net.ground, contents=contents, doors=doors)


def rename(net: Net, phi: Mapping[PortId, PortId]) -> Net:
    """S[phi]: rename shallow ports through the identity extended by ``phi``."""
    unknown = [p for p in phi if p not in net.ports]
    if unknown:
        raise UnknownPort(f"Cannot rename unknown ports: {', '.join(render_port(p) for p in unknown)}")

    def bar(p: PortId) -> PortId:
        return phi.get(p, p)

    image = [bar(p) for p in net.ground.labels]
    if len(set(image)) != len(image):
        raise NameClash("Renaming is not injective on the ports of the net")

    ground = net.ground
    return Net(
        ground=GroundNet(
            labels={bar(p): lab for p, lab in ground.labels.items()},
            targets={bar(w): bar(t) for w, t in ground.targets.items()},
            left=frozenset(bar(w) for w in ground.left),
            axioms=frozenset(frozenset(bar(p) for p in pair) for pair in ground.axioms),
            cuts=frozenset(frozenset(bar(p) for p in pair) for pair in ground.cuts),
        ),
        contents={bar(o): c for o, c in net.contents.items()},
        doors={bar(o): {a: bar(t) for a, t in d.items()} for o, d in net.doors.items()},
    )


def tag(a: PortId, net: Net, ordinal: int = 0) -> Net:
    """<a, S>: every shallow port p becomes Copy(a, ordinal, p)."""
    return rename(net, {p: Copy(a, ordinal, p) for p in net.ground.labels})


def untag(a: PortId, net: Net, ordinal: int = 0) -> Net:
    """Inverse of :func:`tag`."""
    phi: Dict[PortId, PortId] = {}
    for p in net.ground.labels:
        if not (isinstance(p, Copy) and p.box == a and p.ordinal == ordinal):
            raise PreconditionViolated(f"{render_port(p)} is not tagged by {render_port(a)}.{ordinal}")
        phi[p] = p.inner
    return rename(net, phi)

