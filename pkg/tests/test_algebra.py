"""Unit tests for operations building nets from nets."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from src.core.algebra import (
    CycleIntroduced,
    NameClash,
    NotGluable,
    PreconditionViolated,
    TargetNotQuest,
    add_contractions,
    add_quest_ports,
    add_wires,
    glue,
    rename,
    restrict_leq,
    strip_shallow,
    substructure,
    tag,
    untag,
)
from src.core.net import Net, UnknownPort, make_ground
from src.core.ports import Atom as A, Copy, Label
from src.generators.random_net import GenParams, gen_random
from src.transforms.components import connected_components


def is_substructure(small: Net, big: Net) -> bool:
    return small.ports <= big.ports and substructure(big, small.ports) == small


def quest_over_axiom() -> Net:
    """a -- b with b wired into ?q."""
    return Net(ground=make_ground(
        {A("a"): Label.AX, A("b"): Label.AX, A("q"): Label.QUEST},
        targets={A("b"): A("q")},
        axioms=[(A("a"), A("b"))],
    ))


class TestRestrict:
    """Tests for restrict_leq."""

    def test_level_zero_drops_every_box(self, nested):
        """Test level 0 keeps no box."""
        assert restrict_leq(nested, 0).contents == {}

    def test_keeps_shallow_enough_boxes(self, nested):
        """Test a box is kept when its content depth is below the level."""
        assert set(restrict_leq(nested, 2).contents) == {A("o")}
        assert restrict_leq(nested, 1).contents == {}

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000), st.integers(0, 4), st.integers(0, 4))
    def test_restricting_twice(self, seed, first, second):
        """Test restricting at two levels is restricting at the lower one."""
        net = gen_random(GenParams(max_depth=3, seed=seed))
        assert restrict_leq(restrict_leq(net, first), second) == restrict_leq(net, min(first, second))

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000), st.integers(0, 3))
    def test_restrict_commutes_with_glue(self, seed, level):
        """Test restricting the glued components is gluing the restricted ones."""
        net = gen_random(GenParams(max_depth=2, allow_cuts=True, seed=seed))
        parts = connected_components(net)
        assert restrict_leq(glue(parts), level) == glue([restrict_leq(p, level) for p in parts])
        assert restrict_leq(glue(parts), level) == restrict_leq(net, level)


class TestSubstructure:
    """Tests for substructure."""

    def test_axiom_alone(self, ax):
        """Test an axiom is a substructure of itself."""
        assert substructure(ax, ax.ports) == ax

    def test_half_axiom_is_not_a_prenet(self, ax):
        """Test a lone ax port has no substructure."""
        assert substructure(ax, {A("a")}) is None

    def test_boundary_opens_exponential_ports(self):
        """Test an exponential boundary port loses its outgoing wire."""
        net = Net(ground=make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("q"): Label.QUEST, A("r"): Label.QUEST},
            targets={A("b"): A("q"), A("q"): A("r")},
            axioms=[(A("a"), A("b"))],
        ))
        sub = substructure(net, {A("a"), A("b"), A("q")}, boundary={A("q")})
        assert sub is not None
        assert sub.ground_conclusions() == {A("a"), A("q")}

    def test_box_with_escaping_door(self, boxed):
        """Test a box whose doors leave the port set has no substructure."""
        assert substructure(boxed, {A("o")}) is None

    def test_unknown_ports(self, ax):
        """Test unknown ports raise."""
        with pytest.raises(UnknownPort):
            substructure(ax, {A("zz")})

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000), st.data())
    def test_transitive(self, seed, data):
        """Test a substructure of a substructure is a substructure."""
        net = gen_random(GenParams(max_depth=2, allow_cuts=True, seed=seed))
        parts = connected_components(net)
        middle = data.draw(st.integers(1, len(parts)))
        small = data.draw(st.integers(1, middle))
        outer, inner = glue(parts[:middle]), glue(parts[:small])
        assert is_substructure(inner, outer)
        assert is_substructure(outer, net)
        assert is_substructure(inner, net)
        assert is_substructure(net, net)


class TestGlue:
    """Tests for glue."""

    def test_shares_quest_conclusions(self):
        """Test two nets sharing a ?-conclusion glue into one."""
        first = quest_over_axiom()
        second = rename(quest_over_axiom(), {A("a"): A("c"), A("b"): A("d")})
        glued = glue([first, second])
        assert glued.arity(A("q")) == 2
        assert glued.port_count() == 5

    def test_rejects_shared_axiom_ports(self, ax):
        """Test sharing a non-exponential port fails."""
        with pytest.raises(NotGluable):
            glue([ax, ax])


class TestAddWires:
    """Tests for add_wires."""

    def test_wire_conclusion_into_quest(self):
        """Test a conclusion can be wired into a ?-port."""
        net = quest_over_axiom()
        wired = add_wires(net, {A("a"): A("q")})
        assert wired.arity(A("q")) == 2
        assert wired.ground_conclusions() == {A("q")}

    def test_wire_deep_conclusion(self):
        """Test a doorless deep conclusion becomes an auxiliary door."""
        content = Net(ground=make_ground({A("x"): Label.AX, A("y"): Label.AX}, axioms=[(A("x"), A("y"))]))
        net = Net(
            ground=make_ground({A("o"): Label.BANG, A("q"): Label.QUEST}),
            contents={A("o"): content},
            doors={A("o"): {(A("x"),): A("o")}},
        )
        wired = add_wires(net, {(A("o"), A("y")): A("q")})
        assert wired.doors[A("o")][(A("y"),)] == A("q")

    def test_target_must_be_exponential(self, gp):
        """Test wiring into a tensor fails."""
        with pytest.raises(TargetNotQuest):
            add_wires(gp, {A("p4"): A("p1")})

    def test_source_must_be_conclusion(self):
        """Test a port that already has a target cannot be rewired."""
        with pytest.raises(PreconditionViolated):
            add_wires(quest_over_axiom(), {A("b"): A("q")})

    def test_cycle(self):
        """Test wires closing a cycle are rejected."""
        net = Net(ground=make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("q"): Label.QUEST, A("r"): Label.QUEST},
            targets={A("q"): A("r")},
            axioms=[(A("a"), A("b"))],
        ))
        with pytest.raises(CycleIntroduced):
            add_wires(net, {A("r"): A("q")})


class TestStripAndQuests:
    """Tests for strip_shallow, add_quest_ports and add_contractions."""

    def test_strip_shallow(self):
        """Test removing ?-conclusions frees their premises."""
        net = Net(ground=make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("q"): Label.QUEST},
            targets={A("a"): A("q"), A("b"): A("q")},
            axioms=[(A("a"), A("b"))],
        ))
        stripped = strip_shallow(net)
        assert stripped.ports == {A("a"), A("b")}
        assert stripped.ground_conclusions() == {A("a"), A("b")}

    def test_strip_requires_exponential(self, ax):
        """Test stripping ax conclusions fails."""
        with pytest.raises(PreconditionViolated):
            strip_shallow(ax)

    def test_add_quest_ports(self, ax):
        """Test fresh ?-ports are added as conclusions."""
        net = add_quest_ports(ax, [A("q")])
        assert net.label(A("q")) is Label.QUEST
        with pytest.raises(NameClash):
            add_quest_ports(ax, [A("a")])

    def test_add_contractions(self, boxed):
        """Test contractions under a box move inside it."""
        moved = add_contractions(boxed, A("o"), {A("q"): A("q2")})
        content = moved.contents[A("o")]
        assert content.label(A("q2")) is Label.QUEST
        assert content.ground.targets[A("y")] == A("q2")
        assert moved.doors[A("o")] == {(A("x"),): A("o")}

    def test_add_contractions_domain(self, boxed):
        """Test phi must cover exactly the contractions under the box."""
        with pytest.raises(PreconditionViolated):
            add_contractions(boxed, A("o"), {})


class TestRename:
    """Tests for rename, tag and untag."""

    def test_rename_moves_box_and_doors(self, boxed):
        """Test renaming a box carries its content and doors."""
        renamed = rename(boxed, {A("o"): A("b1"), A("q"): A("q1")})
        assert set(renamed.contents) == {A("b1")}
        assert renamed.doors[A("b1")] == {(A("x"),): A("b1"), (A("y"),): A("q1")}

    def test_rename_not_injective(self, ax):
        """Test a renaming merging two ports fails."""
        with pytest.raises(NameClash):
            rename(ax, {A("a"): A("b")})

    def test_tag_untag(self, boxed):
        """Test untag inverts tag."""
        tagged = tag(A("o"), boxed, 2)
        assert A("q") not in tagged.ports
        assert Copy(A("o"), 2, A("q")) in tagged.ports
        assert untag(A("o"), tagged, 2) == boxed

    def test_untag_wrong_tag(self, boxed):
        """Test untag refuses ports carrying another tag."""
        with pytest.raises(PreconditionViolated):
            untag(A("o"), tag(A("o"), boxed, 1), 2)
