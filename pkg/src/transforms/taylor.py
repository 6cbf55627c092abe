"""
Taylor expansion of proof-structures.

A pseudo-experiment chooses, for every box, a list of copies, each copy
carrying a pseudo-experiment on the content of the box. Expanding a net
at level i replaces every box whose content has depth >= i by the
corresponding tagged copies of its (recursively expanded) content and
turns the doors of those copies into wires.

Copy lists are stored run-length encoded, so copy counts such as
10**223 stay representable as long as nothing has to be built from them.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Mapping, Sequence, Tuple

from src.core.algebra import add_wires, glue, restrict_leq, tag
from src.core.net import Net, ProofNetError
from src.core.ports import Address, Copy, PortId, port_key, render_address, render_port, sorted_ports
from src.transforms.arithmetic import int_log

logger = logging.getLogger(__name__)

ESharp = Dict[Address, FrozenSet[int]]


class ShapeMismatch(ProofNetError):
    """A pseudo-experiment (or experiment seed) does not follow the boxes of the net."""


@dataclass(frozen=True)
class PseudoExperiment:
    """box -> runs of (child pseudo-experiment, number of copies)."""

    boxes: Mapping[PortId, Tuple[Tuple["PseudoExperiment", int], ...]] = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for box, runs in self.boxes.items():
            merged: List[Tuple[PseudoExperiment, int]] = []
            for child, count in runs:
                if count < 0:
                    raise ValueError(f"Negative copy count for box {render_port(box)}")
                if count == 0:
                    continue
                if merged and merged[-1][0] == child:
                    merged[-1] = (child, merged[-1][1] + count)
                else:
                    merged.append((child, count))
            normalized[box] = tuple(merged)
        object.__setattr__(self, "boxes", normalized)

    @classmethod
    def from_copies(cls, copies: Mapping[PortId, Sequence["PseudoExperiment"]]) -> "PseudoExperiment":
        return cls({box: tuple((child, 1) for child in children) for box, children in copies.items()})

    def runs(self, box: PortId) -> Tuple[Tuple["PseudoExperiment", int], ...]:
        return self.boxes.get(box, ())

    def count(self, box: PortId) -> int:
        return sum(n for _, n in self.runs(box))

    def copies(self, box: PortId) -> Iterator[Tuple[int, "PseudoExperiment"]]:
        """(ordinal, child) for every copy, ordinals starting at 1."""
        ordinal = 0
        for child, n in self.runs(box):
            for _ in range(n):
                ordinal += 1
                yield ordinal, child

    def children(self, box: PortId) -> List["PseudoExperiment"]:
        distinct: List[PseudoExperiment] = []
        for child, _ in self.runs(box):
            if child not in distinct:
                distinct.append(child)
        return distinct


def check_shape(net: Net, e: PseudoExperiment) -> None:
    if set(e.boxes) != set(net.contents):
        missing = sorted(render_port(o) for o in set(net.contents) - set(e.boxes))
        extra = sorted(render_port(o) for o in set(e.boxes) - set(net.contents))
        raise ShapeMismatch(f"Pseudo-experiment does not match boxes (missing {missing}, extra {extra})")
    for o, runs in e.boxes.items():
        for child, _ in runs:
            check_shape(net.contents[o], child)


def e_sharp(net: Net, e: PseudoExperiment) -> ESharp:
    """Profile of copy counts: box path -> set of copy counts over all its occurrences."""
    check_shape(net, e)
    return _e_sharp(net, e)


def _e_sharp(net: Net, e: PseudoExperiment) -> ESharp:
    profile: Dict[Address, FrozenSet[int]] = {}
    for o in sorted_ports(net.contents):
        profile[(o,)] = frozenset({e.count(o)})
        content = net.contents[o]
        nested: Dict[Address, set] = {path: set() for path in content.box_paths()}
        for child, _ in e.runs(o):
            for path, values in _e_sharp(content, child).items():
                nested[path].update(values)
        for path, values in nested.items():
            profile[(o,) + path] = frozenset(values)
    return profile


def total_copies(e: PseudoExperiment, path: Address) -> int:
    """Number of copies of the box at ``path`` over all occurrences (with multiplicity)."""
    head, rest = path[0], path[1:]
    if not rest:
        return e.count(head)
    return sum(n * total_copies(child, rest) for child, n in e.runs(head))


def make_uniform(net: Net, n: int) -> PseudoExperiment:
    """Every box, at every depth, gets exactly n identical copies."""
    if n < 0:
        raise ValueError("Copy count must be non-negative")
    return PseudoExperiment({
        o: ((make_uniform(content, n), n),) if n else ()
        for o, content in net.contents.items()
    })


def make_k_heterogeneous(net: Net, k: int, seed: int = 0) -> PseudoExperiment:
    """
    A k-heterogeneous pseudo-experiment with exponents seed+1, seed+2, ...

    Boxes containing boxes are served first (their copies must be built
    one by one), then the contents of all their copies, then the boxes
    without nested boxes, whose copies are all identical.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    counter = itertools.count(1 + seed)
    return _assign(net, 1, counter, k)[0]


def _assign(net: Net, contexts: int, counter: Iterator[int], k: int) -> List[PseudoExperiment]:
    order = sorted(net.contents, key=lambda o: (-net.contents[o].box_count(), port_key(o)))
    inner = [o for o in order if net.contents[o].contents]
    leaves = [o for o in order if not net.contents[o].contents]
    runs: List[Dict[PortId, tuple]] = [{} for _ in range(contexts)]

    exponents = {o: [next(counter) for _ in range(contexts)] for o in inner}
    for o in inner:
        sizes = [k ** j for j in exponents[o]]
        children = _assign(net.contents[o], sum(sizes), counter, k)
        start = 0
        for c, size in enumerate(sizes):
            runs[c][o] = tuple((child, 1) for child in children[start:start + size])
            start += size
    for o in leaves:
        for c in range(contexts):
            runs[c][o] = ((PseudoExperiment(), k ** next(counter)),)
    return [PseudoExperiment(r) for r in runs]


def is_k_heterogeneous(net: Net, e: PseudoExperiment, k: int) -> bool:
    profile = e_sharp(net, e)
    seen: set = set()
    for path in sorted(profile, key=lambda a: tuple(port_key(p) for p in a)):
        values = profile[path]
        if any((int_log(m, k) or 0) < 1 for m in values):
            return False
        if values & seen:
            return False
        seen |= values
    return _copies_are_distinct(net, e)


def _copies_are_distinct(net: Net, e: PseudoExperiment) -> bool:
    for o, content in net.contents.items():
        if not content.contents:
            continue
        profiles = []
        for child, n in e.runs(o):
            if n > 1:
                return False
            profiles.append(_e_sharp(content, child))
        for first, second in itertools.combinations(profiles, 2):
            if any(first[path] & second[path] for path in first):
                return False
        if not all(_copies_are_distinct(content, child) for child, _ in e.runs(o)):
            return False
    return True


@dataclass(frozen=True)
class ExpansionTerm:
    """tau_i^e(R) with its copy-provenance map kappa (term address -> source address)."""

    term: Net
    kappa: Mapping[Address, Address]
    level: int

    def preimage(self, source: Address) -> List[Address]:
        return sorted(
            (a for a, s in self.kappa.items() if s == source),
            key=lambda a: tuple(port_key(p) for p in a),
        )


def expand(net: Net, e: PseudoExperiment, i: int = 0) -> ExpansionTerm:
    """
    Expand the boxes of content depth >= i according to ``e``.

    Args:
        net: an in-PS
        e: a pseudo-experiment on ``net``
        i: level; boxes of content depth < i are kept

    Returns:
        The expansion term together with its provenance map.
    """
    check_shape(net, e)
    result = _expand(net, e, i)
    logger.debug(f"Expanded net at level {i}: {result.term.port_count()} ports")
    return result


def _expand(net: Net, e: PseudoExperiment, i: int) -> ExpansionTerm:
    expanded = sorted_ports(net.boxes_at_least(i))
    base = restrict_leq(net, i)
    if not expanded:
        return ExpansionTerm(term=net, kappa={a: a for a in net.addresses()}, level=i)

    kappa: Dict[Address, Address] = {a: a for a in base.addresses()}
    pieces = [base]
    wiring: Dict[Address, PortId] = {}

    for o in expanded:
        content = net.contents[o]
        doors = net.doors.get(o, {})
        ordinal = 0
        for child, n in e.runs(o):
            sub = _expand(content, child, i)
            shallow_exits = [
                (q, doors[sub.kappa[(q,)]]) for q in sub.term.ground_conclusions() if sub.kappa[(q,)] in doors
            ]
            deep_exits = [
                (c, doors[sub.kappa[c]]) for c in sub.term.conclusions() if len(c) > 1 and sub.kappa[c] in doors
            ]
            for _ in range(n):
                ordinal += 1
                pieces.append(tag(o, sub.term, ordinal))
                for address, source in sub.kappa.items():
                    kappa[(Copy(o, ordinal, address[0]),) + address[1:]] = (o,) + source
                for q, target in shallow_exits:
                    wiring[(Copy(o, ordinal, q),)] = target
                for c, target in deep_exits:
                    wiring[(Copy(o, ordinal, c[0]),) + c[1:]] = target

    term = add_wires(glue(pieces), wiring)
    return ExpansionTerm(term=term, kappa=kappa, level=i)


def predicted_arity(net: Net, e: PseudoExperiment, i: int, port: PortId) -> int:
    """Closed-form arity of a shallow port in the expansion at level i."""
    arity = restrict_leq(net, i).arity(port)
    expanded = net.boxes_at_least(i)
    for box, inner in net.door_sources(port):
        if box not in expanded:
            continue
        path = net.deepest_box_at_least((box,) + inner, i)
        arity += total_copies(e, path)
    return arity


def term_size(net: Net, e: PseudoExperiment, i: int = 0) -> int:
    """Number of ports (at every depth) of the expansion, computed without building it."""
    size = len(net.ground.labels)
    expanded = net.boxes_at_least(i)
    for o, content in net.contents.items():
        if o in expanded:
            size += sum(n * term_size(content, child, i) for child, n in e.runs(o))
        else:
            size += content.port_count()
    return size


def describe(e: PseudoExperiment, indent: str = "") -> str:
    """Readable rendering used in log messages and by the CLI."""
    lines = []
    for o in sorted_ports(e.boxes):
        lines.append(f"{indent}{render_port(o)}: {e.count(o)} copies")
        for child, n in e.runs(o):
            if child.boxes:
                lines.append(f"{indent}  x{n}:")
                lines.append(describe(child, indent + "    "))
    return "\n".join(line for line in lines if line)


def exponent_profile(net: Net, e: PseudoExperiment, k: int) -> Dict[str, List[int]]:
    """box path -> sorted exponents j with k**j in the profile (non powers are dropped)."""
    return {
        render_address(path): sorted(j for j in (int_log(m, k) for m in values) if j is not None)
        for path, values in e_sharp(net, e).items()
    }
