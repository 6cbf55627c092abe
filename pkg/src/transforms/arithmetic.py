"""
Base-k arithmetic on expansion terms.

Copy counts of a k-heterogeneous pseudo-experiment are distinct powers
of k, so an expansion term can be read back in base k: arities of
co-contractions give the exponents, the digits of the number of
exponents give the levels of the boxes, and the digits of the arity of
any exponential port tell which boxes have a door on it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from src.core.net import Net, ProofNetError
from src.core.ports import Address, PortId, render_port, sorted_ports
from src.transforms.components import nb_invisible

logger = logging.getLogger(__name__)


class NonPowerValue(ProofNetError):
    """A copy count is not a positive power of k."""


class NonPowerArity(ProofNetError):
    """A co-contraction arity is not a positive power of k."""


class DuplicateArity(ProofNetError):
    """Two co-contractions share the same arity."""


def int_log(n: int, k: int) -> Optional[int]:
    """j with k**j == n, or None."""
    if n < 1 or k < 2:
        return None
    j = 0
    while n % k == 0:
        n //= k
        j += 1
    return j if n == 1 else None


def digits(n: int, k: int) -> List[int]:
    """Base-k digits of n, least significant first ([] for 0)."""
    if k < 2:
        raise ValueError("Base must be at least 2")
    found = []
    while n > 0:
        n, d = divmod(n, k)
        found.append(d)
    return found


def digit(n: int, k: int, j: int) -> int:
    return (n // k ** j) % k


def integer_root(n: int, j: int) -> int:
    """Largest r with r**j <= n."""
    lo, hi = 0, 1 << (n.bit_length() // j + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** j <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class MnChain:
    """
    The digit chain of an exponent set.

    ``M[0]`` is the exponent set; ``M[i+1]`` collects the positions j > 0
    of the nonzero base-k digits of ``len(M[i])``; ``N[i] = M[i] - M[i+1]``.
    The chain stops at the first empty ``M``.
    """

    k: int
    M: Tuple[FrozenSet[int], ...]
    N: Tuple[FrozenSet[int], ...]
    digits: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.N)

    def new_exponents(self, level: int) -> FrozenSet[int]:
        return self.N[level] if level < len(self.N) else frozenset()

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "M": [sorted(m) for m in self.M],
            "N": [sorted(n) for n in self.N],
            "digits": [list(d) for d in self.digits],
        }


def chain_from_exponents(exponents: Iterable[int], k: int) -> MnChain:
    if k < 2:
        raise ValueError("k must be at least 2")
    current = frozenset(exponents)
    ms: List[FrozenSet[int]] = [current]
    ns: List[FrozenSet[int]] = []
    ds: List[Tuple[int, ...]] = []
    while current:
        ds.append(tuple(digits(len(current), k)))
        following = frozenset(j for j, d in enumerate(ds[-1]) if j > 0 and d)
        ns.append(current - following)
        ms.append(following)
        current = following
    return MnChain(k=k, M=tuple(ms), N=tuple(ns), digits=tuple(ds))


def mn_chain(esharp: Mapping[Address, FrozenSet[int]], k: int) -> MnChain:
    exponents = set()
    for path, values in esharp.items():
        for m in values:
            j = int_log(m, k)
            if j is None or j < 1:
                raise NonPowerValue(f"Copy count {m} of box {'/'.join(render_port(p) for p in path)} is not a positive power of {k}")
            exponents.add(j)
    return chain_from_exponents(exponents, k)


def bang_map(term: Net, k: int) -> Dict[int, PortId]:
    """Exponent j -> the unique co-contraction of arity k**j."""
    found: Dict[int, PortId] = {}
    for p in sorted_ports(term.co_contractions()):
        arity = term.arity(p)
        j = int_log(arity, k)
        if j is None or j < 1:
            raise NonPowerArity(f"Co-contraction {render_port(p)} has arity {arity}, not a positive power of {k}")
        if j in found:
            raise DuplicateArity(f"Co-contractions {render_port(found[j])} and {render_port(p)} both have arity {k}^{j}")
        found[j] = p
    return found


def cocontraction_arities_are_heterogeneous(term: Net, k: int) -> bool:
    """Co-contraction arities are pairwise distinct powers k**j with j > 0."""
    try:
        bang_map(term, k)
    except (NonPowerArity, DuplicateArity):
        return False
    return True


def critical_ports(term: Net, k: int, j: Union[int, Iterable[int]]) -> FrozenSet[PortId]:
    """Exponential shallow ports whose arity has a nonzero base-k digit at position j (or any j of a set)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    positions = {j} if isinstance(j, int) else set(j)
    return frozenset(
        p for p in term.exponential_ports()
        if any(digit(term.arity(p), k, position) for position in positions)
    )


@dataclass(frozen=True)
class Measures:
    cosize: int
    n_boxes: int
    n_invisible: int

    def to_dict(self) -> dict:
        return {"cosize": self.cosize, "n_boxes": self.n_boxes, "n_invisible": self.n_invisible}


def net_measures(net: Net) -> Measures:
    return Measures(cosize=net.cosize(), n_boxes=net.box_count(), n_invisible=nb_invisible(net))


def measures_from_one_term(term: Net) -> Measures:
    """
    Measures of a net read off its expansion along the 1-pseudo-experiment.

    Every box leaves exactly one co-contraction of arity 1, and
    invisible components survive the expansion one for one.
    """
    return Measures(cosize=term.cosize(), n_boxes=len(term.co_contractions()), n_invisible=nb_invisible(term))


def basis_from_measures(measures: Measures) -> int:
    return max(measures.n_boxes, measures.cosize, measures.n_invisible, 1) + 1


def basis(net: Net) -> int:
    return basis_from_measures(net_measures(net))
