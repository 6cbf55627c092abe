"""
Rebuilding a proof-structure from its expansion terms.

Starting from the expansion of a net along a k-heterogeneous
pseudo-experiment, each step turns the co-contractions of the boxes of
the current level back into boxes:

1. the digit chain gives the exponents j of the boxes to rebuild;
2. j is read off the co-contraction of arity k**j;
3. the components bounded by the ports critical for j are grouped up to
   isomorphism fixing their conclusions;
4. a class of size sum(m_t * k**t) gives m_j members to the content of
   the new box and loses m_t * k**t members for every rebuilt t;
5. what remains is the next, less expanded, term.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from src.core.algebra import NotGluable, PreconditionViolated, glue, strip_shallow, substructure
from src.core.net import Net, ProofNetError
from src.core.ports import Address, Copy, PortId, render_port
from src.transforms.arithmetic import (
    MnChain,
    NonPowerArity,
    bang_map,
    basis_from_measures,
    chain_from_exponents,
    critical_ports,
    digit,
    int_log,
    integer_root,
    measures_from_one_term,
)
from src.transforms.components import closed_components, net_key, partition_indices

logger = logging.getLogger(__name__)


class DigitMismatch(ProofNetError):
    """The term cannot be the expansion of a net along a k-heterogeneous pseudo-experiment."""


class BasisViolation(ProofNetError):
    """The copy counts of the term are powers of a base below the basis of the net."""


@dataclass(frozen=True)
class RebuildState:
    term: Net
    chain: MnChain
    level: int
    k: int

    @property
    def finished(self) -> bool:
        return self.level >= len(self.chain)


def initial_state(term0: Net, k: int) -> RebuildState:
    exponents = bang_map(term0, k)
    return RebuildState(term=term0, chain=chain_from_exponents(exponents, k), level=0, k=k)


def belongs(port: PortId, box: PortId) -> bool:
    """``port`` lies in one of the copies of the co-contraction ``box``."""
    if not isinstance(port, Copy):
        return False
    if port.box == box:
        return True
    return (
        isinstance(box, Copy)
        and port.box == box.box
        and port.ordinal == box.ordinal
        and belongs(port.inner, box.inner)
    )


def _inside(member: Net, box: PortId) -> bool:
    inner = member.ports - member.ground_conclusions()
    return bool(inner) and all(belongs(p, box) for p in inner)


def _new_box(members: List[Net], bang: PortId, j: int) -> Tuple[Net, Dict[Address, PortId]]:
    try:
        glued = glue(members)
        content = strip_shallow(glued)
    except (NotGluable, PreconditionViolated) as e:
        raise DigitMismatch(f"Content of the box of exponent {j} cannot be assembled: {e}") from e
    doors = {c: glued.target_of(c) for c in content.conclusions()}
    principal = [c for c, t in doors.items() if t == bang]
    if len(principal) != 1:
        raise DigitMismatch(
            f"Box {render_port(bang)} of exponent {j} needs one principal door, found {len(principal)}"
        )
    return content, doors


def rebuild_step(state: RebuildState) -> RebuildState:
    """
    One level of the inversion.

    Args:
        state: current term (expanded from level ``state.level``) and chain

    Returns:
        The state of the next level; levels without new boxes leave the
        term untouched.

    Raises:
        DigitMismatch: the term is not a k-heterogeneous expansion term
    """
    if state.finished:
        return state
    k, term = state.k, state.term
    new = sorted(state.chain.new_exponents(state.level))
    if not new:
        logger.info(f"Level {state.level}: no box to rebuild")
        return replace(state, level=state.level + 1)

    bangs = bang_map(term, k)
    missing = [j for j in new if j not in bangs]
    if missing:
        raise DigitMismatch(f"No co-contraction of arity {k}^j for j in {missing}")

    # Step 1: components bounded by the critical ports of every new exponent
    members: Dict[FrozenSet[PortId], Net] = {}
    found_for: Dict[FrozenSet[PortId], Set[int]] = {}
    for j in new:
        components = closed_components(term, critical_ports(term, k, j), k)
        for ports, member in zip(components.port_sets, components.members):
            members.setdefault(ports, member)
            found_for.setdefault(ports, set()).add(j)
    keys = sorted(members, key=lambda ports: net_key(members[ports]))
    nets = [members[ports] for ports in keys]
    logger.info(f"Level {state.level}: {len(nets)} components for exponents {new}")

    # Step 2: classes, digits, new box contents and sunk members
    chosen: Dict[int, List[Net]] = {j: [] for j in new}
    removed: Set[PortId] = set()
    for cls in partition_indices(nets):
        size = len(cls)
        exponents = [j for j in new if j in found_for[keys[cls[0]]]]
        taken: Set[int] = set()
        for j in exponents:
            m = digit(size, k, j)
            if not m:
                continue
            candidates = sorted(
                (i for i in cls if i not in taken),
                key=lambda i: (not _inside(nets[i], bangs[j]), net_key(nets[i])),
            )
            sunk = candidates[: m * k ** j]
            if len(sunk) < m * k ** j:
                raise DigitMismatch(f"Class of {size} components cannot provide {m}*{k}^{j} copies")
            taken.update(sunk)
            chosen[j].extend(nets[i] for i in sunk[:m])
        for i in taken:
            removed |= nets[i].ports - nets[i].ground_conclusions()
        logger.debug(f"Class of {size} components: digits {[digit(size, k, j) for j in exponents]}")

    # Step 3: ground of the next term, then the new boxes
    base = substructure(term, term.ports - removed)
    if base is None:
        raise DigitMismatch("Removing the copies leaves an ill-formed net")
    contents = dict(base.contents)
    doors = dict(base.doors)
    for j in new:
        if not chosen[j]:
            raise DigitMismatch(f"Empty content for the box of exponent {j}")
        contents[bangs[j]], doors[bangs[j]] = _new_box(chosen[j], bangs[j], j)
        logger.debug(f"Rebuilt box {render_port(bangs[j])} from {len(chosen[j])} components")

    rebuilt = Net(ground=base.ground, contents=contents, doors=doors)
    return replace(state, term=rebuilt, level=state.level + 1)


def rebuild(term0: Net, k: int) -> Net:
    """Iterate :func:`rebuild_step` until the digit chain is exhausted."""
    state = initial_state(term0, k)
    logger.info(f"Rebuilding with k={k}: {len(state.chain)} levels, exponents {sorted(state.chain.M[0])}")
    while not state.finished:
        logger.info(f"Step {state.level + 1}: rebuilding level {state.level}")
        state = rebuild_step(state)
    return state.term


def recover_k(arities: List[int], lower: int = 2) -> Optional[int]:
    """Smallest k >= lower with every arity a power k**j, j >= 1 (None if there is none)."""
    if not arities:
        return None
    smallest = min(arities)
    candidates = set()
    for j in range(1, smallest.bit_length() + 1):
        root = integer_root(smallest, j)
        if root >= 2 and root ** j == smallest:
            candidates.add(root)
    for k in sorted(candidates):
        if k >= lower and all((int_log(a, k) or 0) >= 1 for a in arities):
            return k
    return None


def rebuild_from_pair(term_one: Net, term_het: Net) -> Net:
    """
    Rebuild a net from its expansion along the 1-pseudo-experiment and
    along a k-heterogeneous one, recovering k from the second term.

    Raises:
        BasisViolation: the copy counts only fit a base below the basis
        NonPowerArity: no base fits the co-contraction arities
    """
    measures = measures_from_one_term(term_one)
    lower = basis_from_measures(measures)
    arities = [term_het.arity(p) for p in term_het.co_contractions()]
    if not arities:
        logger.info("No co-contraction: the net has depth 0")
        return term_het

    k = recover_k(arities, lower)
    if k is None:
        if recover_k(arities) is not None:
            raise BasisViolation(f"Co-contraction arities only fit bases below the basis {lower}")
        raise NonPowerArity(f"Co-contraction arities {sorted(arities)[:5]} are not powers of a common base")
    logger.info(f"Measures {measures.to_dict()}: basis {lower}, recovered k={k}")
    return rebuild(term_het, k)
