"""
MELL types, typed nets and the shapes of typed values.

Types are built from propositional variables and their negations with
1, bot, tensor, par, ! and ?. A typed net assigns a type to every port
address; :func:`typecheck` checks the typing clauses level by level and
reports the broken ones in the same form as the structural validator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Union

from quality.net_quality import ValidationReport, ValidationResult
from src.core.net import Net
from src.core.ports import Address, Label, port_key, render_address, sorted_ports
from src.semantics.values import Bag, Pair, Star, Sym, Term

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Var:
    name: str

    def dual(self) -> "MellType":
        return Neg(self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg:
    name: str

    def dual(self) -> "MellType":
        return Var(self.name)

    def __str__(self) -> str:
        return f"{self.name}^"


@dataclass(frozen=True)
class One:
    def dual(self) -> "MellType":
        return Bottom()

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Bottom:
    def dual(self) -> "MellType":
        return One()

    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Tensor:
    left: "MellType"
    right: "MellType"

    def dual(self) -> "MellType":
        return Par(self.left.dual(), self.right.dual())

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Par:
    left: "MellType"
    right: "MellType"

    def dual(self) -> "MellType":
        return Tensor(self.left.dual(), self.right.dual())

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class OfCourse:
    body: "MellType"

    def dual(self) -> "MellType":
        return WhyNot(self.body.dual())

    def __str__(self) -> str:
        return f"!{self.body}"


@dataclass(frozen=True)
class WhyNot:
    body: "MellType"

    def dual(self) -> "MellType":
        return OfCourse(self.body.dual())

    def __str__(self) -> str:
        return f"?{self.body}"


MellType = Union[Var, Neg, One, Bottom, Tensor, Par, OfCourse, WhyNot]


@dataclass(frozen=True)
class TypedNet:
    net: Net
    types: Mapping[Address, MellType]


def _check(name: str, problems: List[str]) -> ValidationResult:
    if not problems:
        return ValidationResult(name, True, "ok")
    return ValidationResult(name, False, "; ".join(problems), {"count": len(problems)})


def _exponential(label: Label, body: MellType) -> MellType:
    return OfCourse(body) if label is Label.BANG else WhyNot(body)


def _level_problems(net: Net, types: Mapping[Address, MellType], prefix: Address) -> dict:
    ground = net.ground
    problems: dict = {"typed_ports": [], "axioms": [], "cuts": [], "connectives": [], "exponentials": [], "doors": []}

    def type_of(address: Address) -> Optional[MellType]:
        return types.get(prefix + address)

    for p in sorted_ports(ground.labels):
        if type_of((p,)) is None:
            problems["typed_ports"].append(f"{render_address(prefix + (p,))} has no type")
    if problems["typed_ports"]:
        return problems

    for pair in sorted(ground.axioms, key=lambda pr: port_key(sorted_ports(pr)[0])):
        a, b = sorted_ports(pair)
        ta, tb = type_of((a,)), type_of((b,))
        if not isinstance(ta, (Var, Neg)) or tb != ta.dual():
            problems["axioms"].append(f"axiom {render_address(prefix + (a,))}: {ta} / {tb}")

    for pair in ground.cuts:
        a, b = sorted_ports(pair)
        ta, tb = type_of((a,)), type_of((b,))
        if tb != ta.dual():
            problems["cuts"].append(f"cut {render_address(prefix + (a,))}: {ta} / {tb}")

    for p in sorted_ports(ground.labels):
        label, tp = ground.labels[p], type_of((p,))
        where = render_address(prefix + (p,))
        if label is Label.ONE and tp != One():
            problems["connectives"].append(f"{where}: one typed {tp}")
        elif label is Label.BOT and tp != Bottom():
            problems["connectives"].append(f"{where}: bot typed {tp}")
        elif label.is_multiplicative:
            left, right = ground.left_premise(p), ground.right_premise(p)
            if left is None or right is None:
                continue
            expected_cls = Tensor if label is Label.TENSOR else Par
            expected = expected_cls(type_of((left,)), type_of((right,)))
            if tp != expected:
                problems["connectives"].append(f"{where}: expected {expected}, found {tp}")
        elif label.is_exponential:
            if not isinstance(tp, OfCourse if label is Label.BANG else WhyNot):
                problems["exponentials"].append(f"{where}: {label.value} typed {tp}")
                continue
            wrong = [w for w in ground.premises(p) if type_of((w,)) != tp.body]
            if wrong:
                problems["exponentials"].append(f"{where}: premises not typed {tp.body}")

    for box in sorted_ports(net.doors):
        for inner, target in net.doors[box].items():
            label = ground.labels.get(target)
            if label is None or not label.is_exponential:
                continue
            expected = _exponential(label, type_of((box,) + inner))
            if type_of((target,)) != expected:
                problems["doors"].append(
                    f"door {render_address(prefix + (box,) + inner)} -> {render_address(prefix + (target,))}: "
                    f"expected {expected}, found {type_of((target,))}"
                )
    return problems


def typecheck(tn: TypedNet) -> ValidationReport:
    """Check the typing clauses of a typed net at every depth; never raises."""
    merged: dict = {}

    def visit(net: Net, prefix: Address) -> None:
        for name, found in _level_problems(net, tn.types, prefix).items():
            merged.setdefault(name, []).extend(found)
        for box in sorted_ports(net.contents):
            visit(net.contents[box], prefix + (box,))

    visit(tn.net, ())
    checks = [_check(name, found) for name, found in merged.items()]
    passed = all(c.passed for c in checks)
    logger.debug(f"Typecheck: {'ok' if passed else 'failed'}")
    return ValidationReport(mode="typed", passed=passed, checks=checks, port_count=tn.net.port_count())


def conforms(erased: Term, t: MellType) -> bool:
    """``erased`` has the shape of the interpretation of ``t`` (atoms for variables)."""
    if isinstance(t, (Var, Neg)):
        return isinstance(erased, Sym)
    if isinstance(t, (One, Bottom)):
        return isinstance(erased, Star)
    if isinstance(t, (Tensor, Par)):
        return isinstance(erased, Pair) and conforms(erased.left, t.left) and conforms(erased.right, t.right)
    return isinstance(erased, Bag) and all(conforms(item, t.body) for item in erased.items)
