"""
Random proof-structure generator.

Every level starts from axioms (plus the odd one or bot port) and boxes
whose contents are generated recursively; contents are closed with a
principal door and auxiliary doors into ? ports, which are shared
between boxes whenever the cosize bound allows it. Open conclusions
are then combined with tensors, pars, contractions and, if allowed,
cuts.

All randomness flows from one integer seed: each box content draws its
own 64-bit seed from the parent generator, so outputs are reproducible.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from src.config.configuration import config
from src.core.net import Net, make_ground
from src.core.ports import Address, Atom, Label, PortId, address_key, sorted_ports
from src.transforms.taylor import PseudoExperiment

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 64
BOX_PROBABILITY = 0.9


@dataclass
class GenParams:
    """Bounds of generated nets."""
    max_depth: int = config.generator.max_depth
    max_boxes_per_level: int = config.generator.max_boxes_per_level
    max_cosize: int = config.generator.max_cosize
    max_ports: int = config.generator.max_ports
    allow_cuts: bool = config.generator.allow_cuts
    seed: int = config.generator.seed

    def __post_init__(self):
        if self.max_cosize < 2:
            raise ValueError("max_cosize must be at least 2 (tensor and par have two premises)")
        if self.max_depth < 0 or self.max_boxes_per_level < 0:
            raise ValueError("max_depth and max_boxes_per_level must be non-negative")
        if self.max_ports < 2:
            raise ValueError("max_ports must leave room for one axiom")


@dataclass
class _Level:
    rng: random.Random
    params: GenParams
    labels: Dict[PortId, Label] = field(default_factory=dict)
    targets: Dict[PortId, PortId] = field(default_factory=dict)
    left: Set[PortId] = field(default_factory=set)
    axioms: List[Tuple[PortId, PortId]] = field(default_factory=list)
    cuts: List[Tuple[PortId, PortId]] = field(default_factory=list)
    contents: Dict[PortId, Net] = field(default_factory=dict)
    doors: Dict[PortId, Dict[Address, PortId]] = field(default_factory=dict)
    open: List[PortId] = field(default_factory=list)
    _counter: int = 0

    def new(self, prefix: str, label: Label) -> PortId:
        self._counter += 1
        port = Atom(f"{prefix}{self._counter}")
        self.labels[port] = label
        return port

    def arity(self, port: PortId) -> int:
        wires = sum(1 for t in self.targets.values() if t == port)
        doors = sum(1 for ds in self.doors.values() for t in ds.values() if t == port)
        return wires + doors

    def take(self) -> PortId:
        return self.open.pop(self.rng.randrange(len(self.open)))

    def reaches(self, start: PortId, goal: PortId) -> bool:
        port: Optional[PortId] = start
        while port is not None:
            if port == goal:
                return True
            port = self.targets.get(port)
        return False

    def quests_with_room(self) -> List[PortId]:
        return [
            p for p in sorted_ports(self.labels)
            if self.labels[p] is Label.QUEST and self.arity(p) < self.params.max_cosize
        ]

    def add_axiom(self) -> None:
        a, b = self.new("a", Label.AX), self.new("b", Label.AX)
        self.axioms.append((a, b))
        self.open.extend([a, b])

    def add_box(self, content: Net) -> None:
        box = self.new("o", Label.BANG)
        conclusions = sorted(content.conclusions(), key=address_key)
        principal = conclusions.pop(self.rng.randrange(len(conclusions)))
        doors: Dict[Address, PortId] = {principal: box}
        self.contents[box] = content
        self.doors[box] = doors
        for c in conclusions:
            shared = self.quests_with_room()
            if shared and self.rng.random() < 0.5:
                doors[c] = self.rng.choice(shared)
            else:
                quest = self.new("q", Label.QUEST)
                doors[c] = quest
                self.open.append(quest)
        self.open.append(box)

    def combine(self, label: Label) -> None:
        first, second = self.take(), self.take()
        port = self.new("t" if label is Label.TENSOR else "p", label)
        self.targets[first] = port
        self.targets[second] = port
        self.left.add(first)
        self.open.append(port)

    def contract(self) -> None:
        rooms = [q for q in self.quests_with_room() if q in self.open]
        if rooms and self.rng.random() < 0.5:
            quest = self.rng.choice(rooms)
            candidates = [p for p in self.open if p != quest and not self.reaches(quest, p)]
            if candidates:
                wire = self.rng.choice(candidates)
                self.open.remove(wire)
                self.targets[wire] = quest
            return
        n = self.rng.randint(0, min(self.params.max_cosize, len(self.open) - 1))
        premises = [self.take() for _ in range(n)]
        quest = self.new("q", Label.QUEST)
        for w in premises:
            self.targets[w] = quest
        self.open.append(quest)

    def cut(self) -> None:
        self.cuts.append((self.take(), self.take()))

    def close(self, max_conclusions: Optional[int]) -> None:
        steps = self.rng.randint(0, len(self.open))
        for _ in range(steps):
            choice = self.rng.random()
            if choice < 0.35 and len(self.open) >= 2:
                self.combine(Label.TENSOR)
            elif choice < 0.6 and len(self.open) >= 2:
                self.combine(Label.PAR)
            elif choice < 0.85:
                self.contract()
            elif self.params.allow_cuts and len(self.open) > 2:
                self.cut()
        while max_conclusions is not None and len(self.open) > max_conclusions:
            self.combine(self.rng.choice((Label.TENSOR, Label.PAR)))

    def build(self) -> Net:
        ground = make_ground(self.labels, self.targets, self.left, self.axioms, self.cuts)
        return Net(ground=ground, contents=self.contents, doors=self.doors)


def _level(rng: random.Random, params: GenParams, depth: int, max_conclusions: Optional[int]) -> Net:
    level = _Level(rng, params)
    for _ in range(rng.randint(1, 2)):
        level.add_axiom()
    if rng.random() < 0.2:
        level.open.append(level.new("u", rng.choice((Label.ONE, Label.BOT))))

    if depth > 0 and params.max_boxes_per_level > 0 and rng.random() < BOX_PROBABILITY:
        for _ in range(rng.randint(1, params.max_boxes_per_level)):
            child = random.Random(rng.getrandbits(64))
            level.add_box(_level(child, params, depth - 1, rng.randint(1, 3)))

    level.close(max_conclusions)
    return level.build()


def _fits(net: Net, params: GenParams) -> bool:
    return (
        net.port_count() <= params.max_ports
        and net.cosize() <= params.max_cosize
        and net.depth() <= params.max_depth
        and (params.allow_cuts or not net.has_cuts())
    )


def gen_random(params: Optional[GenParams] = None) -> Net:
    """
    A random PS within the bounds of ``params``; deterministic per seed.

    Candidates breaking the port bound are redrawn from seeds derived
    from ``params.seed``; a single axiom is the last resort.
    """
    params = params or GenParams()
    rng = random.Random(params.seed)
    for attempt in range(MAX_ATTEMPTS):
        net = _level(random.Random(rng.getrandbits(64)), params, params.max_depth, None)
        if _fits(net, params):
            logger.debug(f"Generated net (seed {params.seed}, attempt {attempt}): {net.port_count()} ports")
            return net
    logger.warning(f"No net within bounds for seed {params.seed}; falling back to one axiom")
    fallback = _Level(rng, params)
    fallback.add_axiom()
    return fallback.build()


def gen_pseudo_experiment(net: Net, seed: int = 0, max_copies: int = 2) -> PseudoExperiment:
    """Random pseudo-experiment with 0..max_copies copies per box occurrence."""
    rng = random.Random(seed)
    return _pseudo(net, rng, max_copies)


def _pseudo(net: Net, rng: random.Random, max_copies: int) -> PseudoExperiment:
    return PseudoExperiment({
        o: tuple((_pseudo(net.contents[o], rng, max_copies), 1) for _ in range(rng.randint(0, max_copies)))
        for o in sorted_ports(net.contents)
    })
