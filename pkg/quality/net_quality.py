"""
Net Validation Module.

Classifies nets into the structure classes used throughout the package
(ground-structures, simple differential nets, in-PS's, PS's and their
differential variants). Validation never raises: it returns a report
listing every check with its outcome.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from src.core.net import Net, Violation
from src.core.ports import Label, render_address, render_port, sorted_ports

logger = logging.getLogger(__name__)

GROUND_CLAUSES = (
    "wire_endpoints",
    "wire_targets",
    "multiplicative_premises",
    "left_premises",
    "axioms",
    "cuts",
    "acyclic",
)


class Mode(str, Enum):
    GROUND = "ground"
    SIMPLE_DIFF = "simple-diff"
    IN_PS = "in-ps"
    PS = "ps"
    DIFF_IN_PS = "diff-in-ps"
    DIFF_PS = "diff-ps"

    @property
    def differential(self) -> bool:
        return self in (Mode.SIMPLE_DIFF, Mode.DIFF_IN_PS, Mode.DIFF_PS)

    @property
    def requires_doors(self) -> bool:
        return self in (Mode.PS, Mode.DIFF_PS)


@dataclass
class ValidationResult:
    """Result of a validation check."""
    name: str
    passed: bool
    message: str
    details: Optional[dict] = None


@dataclass
class ValidationReport:
    """Complete validation report for a net."""
    mode: str
    passed: bool
    checks: List[ValidationResult]
    port_count: int

    @property
    def violations(self) -> List[ValidationResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "passed": self.passed,
            "port_count": self.port_count,
            "checks": [
                {"name": c.name, "passed": c.passed, "message": c.message}
                for c in self.checks
            ],
            "failed_checks": [c.name for c in self.checks if not c.passed],
        }


def _from_violations(names, violations: List[Violation], prefix: str) -> List[ValidationResult]:
    checks = []
    for name in names:
        found = [v for v in violations if v.name == name]
        if not found:
            checks.append(ValidationResult(f"{prefix}{name}", True, "ok"))
            continue
        ports = sorted({render_port(p) for v in found for p in v.ports})
        checks.append(ValidationResult(
            f"{prefix}{name}",
            False,
            "; ".join(v.message for v in found) + (f" ({', '.join(ports)})" if ports else ""),
            {"ports": ports},
        ))
    return checks


class NetValidator:
    """
    Structural validator for nets.

    Example:
        >>> report = NetValidator().validate(net, "ps")
        >>> if not report.passed:
        ...     print(report.to_dict()["failed_checks"])
    """

    def validate(self, net: Net, mode: "Mode | str" = Mode.PS) -> ValidationReport:
        mode = Mode(mode)
        checks = self._check_level(net, mode, "")
        passed = all(c.passed for c in checks)
        logger.debug(f"Validated net ({mode.value}): {'ok' if passed else 'failed'}")
        return ValidationReport(mode=mode.value, passed=passed, checks=checks, port_count=net.port_count())

    def _check_level(self, net: Net, mode: Mode, prefix: str) -> List[ValidationResult]:
        ground = net.ground
        forbid_bang = mode in (Mode.GROUND, Mode.IN_PS, Mode.PS)
        names = GROUND_CLAUSES + (("no_wire_into_bang",) if forbid_bang else ())

        # Check 1: pre-net clauses and acyclicity of the ground level
        checks = _from_violations(names, ground.violations(forbid_wires_into_bang=forbid_bang), prefix)

        if mode is Mode.GROUND:
            return checks

        # Check 2: simple differential nets have no boxes
        if mode is Mode.SIMPLE_DIFF:
            checks.append(ValidationResult(
                f"{prefix}no_boxes",
                not net.contents,
                "ok" if not net.contents else f"unexpected boxes: {', '.join(render_port(o) for o in sorted_ports(net.contents))}",
            ))
            return checks

        # Check 3: boxes are bang ports
        not_bang = [o for o in net.contents if ground.labels.get(o) is not Label.BANG]
        checks.append(ValidationResult(
            f"{prefix}box_labels",
            not not_bang,
            "ok" if not not_bang else f"boxes must be bang ports: {', '.join(render_port(o) for o in not_bang)}",
        ))

        # Check 4: bang ports versus boxes
        if mode.differential:
            with_premises = [o for o in net.contents if ground.arity(o) > 0]
            checks.append(ValidationResult(
                f"{prefix}boxes_have_no_wires",
                not with_premises,
                "ok" if not with_premises else f"boxes cannot have wire premises: {', '.join(render_port(o) for o in with_premises)}",
            ))
        else:
            loose = [p for p, lab in ground.labels.items() if lab is Label.BANG and p not in net.contents]
            checks.append(ValidationResult(
                f"{prefix}bangs_are_boxes",
                not loose,
                "ok" if not loose else f"bang ports without box: {', '.join(render_port(p) for p in sorted_ports(loose))}",
            ))

        # Check 5: exactly one principal door per box
        no_principal = [o for o in net.contents if net.principal_door(o) is None]
        checks.append(ValidationResult(
            f"{prefix}principal_door",
            not no_principal,
            "ok" if not no_principal else f"boxes without a unique principal door: {', '.join(render_port(o) for o in sorted_ports(no_principal))}",
        ))

        # Check 6: doors leave from conclusions of the content and land on ? ports
        bad_sources, bad_targets = [], []
        for o, doors in net.doors.items():
            content = net.contents.get(o)
            if content is None:
                bad_sources.append(f"{render_port(o)} (not a box)")
                continue
            inner_conclusions = content.conclusions()
            for address, target in doors.items():
                if address not in inner_conclusions:
                    bad_sources.append(f"{render_port(o)}:{render_address(address)}")
                if target == o:
                    continue
                if ground.labels.get(target) is not Label.QUEST:
                    bad_targets.append(f"{render_port(o)}:{render_address(address)}->{render_port(target)}")
        checks.append(ValidationResult(
            f"{prefix}door_sources",
            not bad_sources,
            "ok" if not bad_sources else f"doors must leave from conclusions of the content: {', '.join(bad_sources)}",
        ))
        checks.append(ValidationResult(
            f"{prefix}door_targets",
            not bad_targets,
            "ok" if not bad_targets else f"auxiliary doors must land on ? ports: {', '.join(bad_targets)}",
        ))

        # Check 7: every conclusion of a content has a door (PS only)
        if mode.requires_doors:
            doorless = [
                f"{render_port(o)}:{render_address(c)}"
                for o, content in net.contents.items()
                for c in content.conclusions()
                if c not in net.doors.get(o, {})
            ]
            checks.append(ValidationResult(
                f"{prefix}temporary_conclusions",
                not doorless,
                "ok" if not doorless else f"conclusions of contents without door: {', '.join(sorted(doorless))}",
            ))

        # Check 8: contents, recursively
        for o in sorted_ports(net.contents):
            checks.extend(self._check_level(net.contents[o], mode, f"{prefix}{render_port(o)}/"))

        return checks


def validate(net: Net, mode: "Mode | str" = Mode.PS) -> ValidationReport:
    """Convenience wrapper around :class:`NetValidator`."""
    return NetValidator().validate(net, mode)
