"""
The relational value domain.

A value is a sign (+ or -) together with an atom, the constant ``*``,
a pair of values or a finite multiset of values. Multisets are kept as
sorted tuples so equal multisets compare and hash equal. Points map the
conclusions of a net to values.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple, Union

from src.core.ports import Address
from src.transforms.arithmetic import int_log

logger = logging.getLogger(__name__)


class Sign(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def dual(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


@dataclass(frozen=True)
class Sym:
    """An atom."""
    name: str


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Bag:
    """Finite multiset, stored in canonical order."""
    items: Tuple["Term", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items, key=term_key)))

    def __len__(self) -> int:
        return len(self.items)

    def __add__(self, other: "Bag") -> "Bag":
        return Bag(self.items + other.items)


@dataclass(frozen=True)
class Value:
    sign: Sign
    body: Union[Sym, Star, Pair, Bag]


# Erased values are built from Sym, Star, Pair and Bag only.
Term = Union[Value, Sym, Star, Pair, Bag]
Point = Dict[Address, Value]
Renaming = Mapping[str, Value]


def term_key(t: Term) -> tuple:
    if isinstance(t, Value):
        return (0, t.sign.value, term_key(t.body))
    if isinstance(t, Sym):
        return (1, t.name)
    if isinstance(t, Star):
        return (2,)
    if isinstance(t, Pair):
        return (3, term_key(t.left), term_key(t.right))
    return (4, tuple(term_key(i) for i in t.items))


def atom(name: str, sign: Sign = Sign.PLUS) -> Value:
    return Value(sign, Sym(name))


def star(sign: Sign = Sign.PLUS) -> Value:
    return Value(sign, Star())


def pair(sign: Sign, left: Value, right: Value) -> Value:
    return Value(sign, Pair(left, right))


def bag(sign: Sign, items: Iterable[Value] = ()) -> Value:
    return Value(sign, Bag(tuple(items)))


def dual(v: Value) -> Value:
    body = v.body
    if isinstance(body, Pair):
        body = Pair(dual(body.left), dual(body.right))
    elif isinstance(body, Bag):
        body = Bag(tuple(dual(i) for i in body.items))
    return Value(v.sign.dual, body)


def height(v: Value) -> int:
    body = v.body
    if isinstance(body, Pair):
        return 1 + max(height(body.left), height(body.right))
    if isinstance(body, Bag):
        return 1 + max((height(i) for i in body.items), default=0)
    return 0


def size(v: Value) -> int:
    body = v.body
    if isinstance(body, Pair):
        return 1 + size(body.left) + size(body.right)
    if isinstance(body, Bag):
        return 1 + sum(size(i) for i in body.items)
    return 1


def subvalues(v: Value) -> Iterator[Value]:
    """Every occurrence of a value inside ``v``, ``v`` included."""
    yield v
    body = v.body
    if isinstance(body, Pair):
        yield from subvalues(body.left)
        yield from subvalues(body.right)
    elif isinstance(body, Bag):
        for item in body.items:
            yield from subvalues(item)


def atoms(x: Union[Value, Mapping[Address, Value]]) -> FrozenSet[str]:
    values = x.values() if isinstance(x, Mapping) else [x]
    return frozenset(s.body.name for v in values for s in subvalues(v) if isinstance(s.body, Sym))


def occurrences(x: Union[Value, Mapping[Address, Value], Iterable[Value]]) -> Counter:
    """Signed atom occurrences: (sign, name) -> count."""
    if isinstance(x, Value):
        values: Iterable[Value] = [x]
    elif isinstance(x, Mapping):
        values = x.values()
    else:
        values = x
    return Counter((s.sign, s.body.name) for v in values for s in subvalues(v) if isinstance(s.body, Sym))


def is_injective(x: Union[Value, Mapping[Address, Value], Iterable[Value]]) -> bool:
    return all(n <= 1 for n in occurrences(x).values())


def is_balanced(x: Union[Value, Mapping[Address, Value], Iterable[Value]]) -> bool:
    counts = occurrences(x)
    names = {name for _, name in counts}
    return all(counts[(Sign.PLUS, name)] == counts[(Sign.MINUS, name)] for name in names)


def is_uniform(v: Value) -> bool:
    for s in subvalues(v):
        if isinstance(s.body, Bag) and len({height(i) for i in s.body.items}) > 1:
            return False
    return True


def _bags(x: Mapping[Address, Value], sign: Sign) -> List[Bag]:
    return [s.body for v in x.values() for s in subvalues(v) if s.sign is sign and isinstance(s.body, Bag)]


def is_k_heterogeneous_point(x: Mapping[Address, Value], k: int) -> bool:
    """Positive multisets occur at most once, have cardinality k**j (j > 0) and pairwise distinct cardinalities."""
    positives = _bags(x, Sign.PLUS)
    if len(set(positives)) != len(positives):
        return False
    if any((int_log(len(b), k) or 0) < 1 for b in positives):
        return False
    return len({len(b) for b in positives}) == len(positives)


@dataclass(frozen=True)
class PointReport:
    injective: bool
    balanced: bool
    k_heterogeneous: bool
    uniform: bool
    height: int
    size: int

    def to_dict(self) -> dict:
        return {
            "injective": self.injective,
            "balanced": self.balanced,
            "k_heterogeneous": self.k_heterogeneous,
            "uniform": self.uniform,
            "height": self.height,
            "size": self.size,
        }


def point_predicates(x: Mapping[Address, Value], k: int) -> PointReport:
    return PointReport(
        injective=is_injective(x),
        balanced=is_balanced(x),
        k_heterogeneous=is_k_heterogeneous_point(x, k),
        uniform=all(is_uniform(v) for v in x.values()),
        height=max((height(v) for v in x.values()), default=0),
        size=sum(size(v) for v in x.values()),
    )


def injectivity_bound(point_one: Mapping[Address, Value]) -> Tuple[int, int]:
    """
    (k1, k2) for a point of the 1-experiment: the largest cardinality of a
    negative multiset and the number of positive multisets. Any k above
    both bounds the basis of the net.
    """
    k1 = max((len(b) for b in _bags(point_one, Sign.MINUS)), default=0)
    k2 = len(_bags(point_one, Sign.PLUS))
    return k1, k2


def apply_renaming(sigma: Renaming, x: Union[Value, Mapping[Address, Value]]):
    """sigma . x; atoms outside the domain of sigma are left in place."""
    if isinstance(x, Mapping):
        return {p: apply_renaming(sigma, v) for p, v in x.items()}
    body = x.body
    if isinstance(body, Sym):
        image = sigma.get(body.name, atom(body.name))
        return image if x.sign is Sign.PLUS else dual(image)
    if isinstance(body, Pair):
        return Value(x.sign, Pair(apply_renaming(sigma, body.left), apply_renaming(sigma, body.right)))
    if isinstance(body, Bag):
        return Value(x.sign, Bag(tuple(apply_renaming(sigma, i) for i in body.items)))
    return x


def compose(sigma: Renaming, tau: Renaming) -> Dict[str, Value]:
    """The renaming gamma -> sigma . tau(gamma)."""
    composed = {name: apply_renaming(sigma, v) for name, v in tau.items()}
    for name, v in sigma.items():
        composed.setdefault(name, v)
    return composed


def renaming_domain_ok(sigma: Renaming, x: Union[Value, Mapping[Address, Value]]) -> bool:
    """sigma sends every atom of x to a signed atom."""
    return all(isinstance(sigma.get(name, atom(name)).body, Sym) for name in atoms(x))


def erase(t: Term) -> Term:
    """Forget the signs."""
    if isinstance(t, Value):
        return erase(t.body)
    if isinstance(t, Pair):
        return Pair(erase(t.left), erase(t.right))
    if isinstance(t, Bag):
        return Bag(tuple(erase(i) for i in t.items))
    return t


def fresh_atoms(prefix: str = "g") -> Iterator[str]:
    n = 0
    while True:
        n += 1
        yield f"{prefix}{n}"
