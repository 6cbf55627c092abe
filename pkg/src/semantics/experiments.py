"""
Experiments on proof-structures.

An experiment is given by a seed (a value on one port of every axiom and
a multiset of sub-seeds for every box) from which every other label is
derived: constants for one and bot, pairs for tensor and par, multisets
for exponential ports, and sums over the copies of a box for its deep
ports. Cuts are the only clauses that can fail; a seed that breaks one
gives no experiment.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

from src.core.algebra import CycleIntroduced
from src.core.isomorphism import IsoMode, iso_check
from src.core.net import Net, ProofNetError
from src.core.ports import Address, Copy, Label, PortId, port_key, render_port, sorted_ports
from src.semantics.values import Bag, Pair, Point, Sign, Sym, Value, atom, dual, fresh_atoms, star
from src.transforms.taylor import ExpansionTerm, PseudoExperiment, ShapeMismatch, check_shape, expand, make_uniform

logger = logging.getLogger(__name__)


class CutPresent(ProofNetError):
    """The operation needs a cut-free net."""


@dataclass(frozen=True)
class ExperimentSeed:
    """Axiom values (keyed by one port of each axiom) and box runs of sub-seeds."""

    axioms: Mapping[PortId, Value] = field(default_factory=dict)
    boxes: Mapping[PortId, Tuple[Tuple["ExperimentSeed", int], ...]] = field(default_factory=dict)

    def runs(self, box: PortId) -> Tuple[Tuple["ExperimentSeed", int], ...]:
        return self.boxes.get(box, ())


@dataclass(frozen=True)
class Experiment:
    """
    Labels of the shallow ports, multisets on the deep ports and, for
    every box, the runs of sub-experiments it was built from.
    """

    ports: Mapping[PortId, Value]
    deep: Mapping[Address, Bag] = field(default_factory=dict)
    boxes: Mapping[PortId, Tuple[Tuple["Experiment", int], ...]] = field(default_factory=dict)

    def runs(self, box: PortId) -> Tuple[Tuple["Experiment", int], ...]:
        return self.boxes.get(box, ())


@dataclass(frozen=True)
class ExpansionExperiment:
    """An experiment on the full expansion term of a net."""

    expansion: ExpansionTerm
    experiment: Optional[Experiment]


def _check_seed(net: Net, seed: ExperimentSeed) -> None:
    if set(seed.boxes) != set(net.contents):
        raise ShapeMismatch(
            f"Seed boxes {sorted(render_port(o) for o in seed.boxes)} do not match "
            f"{sorted(render_port(o) for o in net.contents)}"
        )
    for pair in net.ground.axioms:
        if not pair & set(seed.axioms):
            raise ShapeMismatch(f"No seed value for axiom {{{', '.join(render_port(p) for p in sorted_ports(pair))}}}")
    for o, runs in seed.boxes.items():
        for child, _ in runs:
            _check_seed(net.contents[o], child)


def build_experiment(net: Net, seed: ExperimentSeed) -> Optional[Experiment]:
    """
    Derive the experiment of ``net`` determined by ``seed``.

    Returns:
        The experiment, or None when the labels on the two sides of a
        cut are not dual.

    Raises:
        ShapeMismatch: the seed does not follow the axioms and boxes of the net
    """
    _check_seed(net, seed)
    return _build(net, seed)


def _build(net: Net, seed: ExperimentSeed) -> Optional[Experiment]:
    ground = net.ground

    boxes: Dict[PortId, Tuple[Tuple[Experiment, int], ...]] = {}
    for o in sorted_ports(net.contents):
        runs = []
        for child_seed, n in seed.runs(o):
            child = _build(net.contents[o], child_seed)
            if child is None:
                return None
            runs.append((child, n))
        boxes[o] = tuple(runs)

    deep: Dict[Address, Bag] = {}
    for o, runs in boxes.items():
        for address in net.contents[o].addresses():
            items: List[Value] = []
            for child, n in runs:
                if len(address) == 1:
                    items.extend([child.ports[address[0]]] * n)
                else:
                    items.extend(child.deep[address].items * n)
            deep[(o,) + address] = Bag(tuple(items))

    labels: Dict[PortId, Value] = {}
    for pair in ground.axioms:
        a = next(p for p in sorted_ports(pair) if p in seed.axioms)
        labels[a] = seed.axioms[a]
        labels[ground.axiom_partner(a)] = dual(seed.axioms[a])

    graph = nx.DiGraph()
    graph.add_nodes_from(ground.labels)
    graph.add_edges_from(ground.targets.items())
    try:
        order = list(nx.topological_sort(graph))
    except nx.NetworkXUnfeasible as e:
        raise CycleIntroduced("Wires of the net form a cycle") from e

    for p in order:
        label = ground.labels[p]
        if label is Label.AX:
            continue
        if label is Label.ONE:
            labels[p] = star(Sign.PLUS)
        elif label is Label.BOT:
            labels[p] = star(Sign.MINUS)
        elif label.is_multiplicative:
            left, right = ground.left_premise(p), ground.right_premise(p)
            if left is None or right is None:
                raise ShapeMismatch(f"{label.value} port {render_port(p)} lacks a premise")
            sign = Sign.PLUS if label is Label.TENSOR else Sign.MINUS
            labels[p] = Value(sign, Pair(labels[left], labels[right]))
        else:
            items = [labels[w] for w in ground.premises(p)]
            for box, inner in net.door_sources(p):
                items.extend(deep[(box,) + inner].items)
            sign = Sign.PLUS if label is Label.BANG else Sign.MINUS
            labels[p] = Value(sign, Bag(tuple(items)))

    for pair in ground.cuts:
        a, b = sorted_ports(pair)
        if labels[a] != dual(labels[b]):
            logger.debug(f"Cut {render_port(a)}/{render_port(b)} rejects the seed")
            return None

    return Experiment(ports=labels, deep=deep, boxes=boxes)


def result(e: Experiment, net: Net) -> Point:
    """Restriction of the experiment to the shallow conclusions."""
    return {(p,): e.ports[p] for p in sorted_ports(net.ground_conclusions())}


def seed_of(e: Experiment, net: Net) -> ExperimentSeed:
    axioms = {}
    for pair in net.ground.axioms:
        first = sorted_ports(pair)[0]
        axioms[first] = e.ports[first]
    return ExperimentSeed(
        axioms=axioms,
        boxes={o: tuple((seed_of(child, net.contents[o]), n) for child, n in e.runs(o)) for o in net.contents},
    )


def _atomic_seed(net: Net, p: PseudoExperiment, supply: Iterator[str]) -> ExperimentSeed:
    firsts = sorted((sorted_ports(pair)[0] for pair in net.ground.axioms), key=port_key)
    axioms = {a: atom(next(supply)) for a in firsts}
    boxes = {
        o: tuple((_atomic_seed(net.contents[o], child, supply), 1) for _, child in p.copies(o))
        for o in sorted_ports(net.contents)
    }
    return ExperimentSeed(axioms=axioms, boxes=boxes)


def generate_injective_atomic(
    net: Net,
    p: PseudoExperiment,
    atoms: Optional[Iterable[str]] = None,
) -> Experiment:
    """
    An atomic experiment inducing ``p`` in which every axiom of every copy
    carries its own fresh atom.

    Args:
        net: a cut-free net
        p: pseudo-experiment on ``net``
        atoms: atom names to draw from (g1, g2, ... by default)

    Raises:
        CutPresent: ``net`` has a cut at some depth
    """
    if net.has_cuts():
        raise CutPresent("Injective atomic experiments are generated on cut-free nets only")
    check_shape(net, p)
    supply = iter(atoms) if atoms is not None else fresh_atoms()
    experiment = _build(net, _atomic_seed(net, p, supply))
    assert experiment is not None
    return experiment


def one_experiment(net: Net) -> Experiment:
    """The injective atomic experiment inducing the 1-pseudo-experiment."""
    return generate_injective_atomic(net, make_uniform(net, 1))


def induced_pseudo(e: Experiment) -> PseudoExperiment:
    return PseudoExperiment({
        o: tuple((induced_pseudo(child), n) for child, n in runs)
        for o, runs in e.boxes.items()
    })


def is_atomic(e: Experiment, net: Net) -> bool:
    """Every axiom, in every copy, is labelled by a signed atom."""
    for p, label in net.ground.labels.items():
        if label is Label.AX and not isinstance(e.ports[p].body, Sym):
            return False
    return all(
        is_atomic(child, net.contents[o])
        for o, runs in e.boxes.items()
        for child, _ in runs
    )


def _expanded_axioms(net: Net, e: Experiment) -> Dict[PortId, Value]:
    labels = {p: e.ports[p] for p, label in net.ground.labels.items() if label is Label.AX}
    for o in sorted_ports(net.contents):
        ordinal = 0
        for child, n in e.runs(o):
            inner = _expanded_axioms(net.contents[o], child)
            for _ in range(n):
                ordinal += 1
                labels.update({Copy(o, ordinal, p): v for p, v in inner.items()})
    return labels


def expansion_experiment(net: Net, e: Experiment) -> ExpansionExperiment:
    """
    Carry ``e`` over to the expansion of ``net`` along the pseudo-experiment
    it induces: copy number n of a box receives the n-th sub-experiment.
    """
    expansion = expand(net, induced_pseudo(e), 0)
    experiment = _build(expansion.term, ExperimentSeed(axioms=_expanded_axioms(net, e)))
    return ExpansionExperiment(expansion=expansion, experiment=experiment)


def same_net_from_points(
    first: Net,
    e_first: Experiment,
    second: Net,
    e_second: Experiment,
) -> bool:
    """
    Equal results of two injective atomic experiments on cut-free nets
    with the same conclusions give isomorphic expansion terms.
    """
    if result(e_first, first) != result(e_second, second):
        return False
    term_first = expand(first, induced_pseudo(e_first), 0).term
    term_second = expand(second, induced_pseudo(e_second), 0).term
    return iso_check(term_first, term_second, IsoMode.FIXED) is not None
