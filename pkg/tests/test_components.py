"""Unit tests for connected and closed components."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from src.core.algebra import glue, strip_shallow
from src.core.isomorphism import equivalent
from src.core.net import Net, UnknownPort, make_ground
from src.core.ports import Atom as A, Copy, Label, sorted_ports
from src.generators.random_net import GenParams, gen_random
from src.transforms.components import (
    adjacency,
    closed_components,
    coherent,
    component_of,
    connected_components,
    is_closed_in,
    nb_invisible,
    net_key,
    partition_mod_equiv,
)
from src.transforms.arithmetic import basis, critical_ports, mn_chain
from src.transforms.taylor import e_sharp, expand, make_uniform
from tests.nets import contractions_inside, heterogeneous_case


def two_axioms() -> Net:
    return Net(ground=make_ground(
        {A("a"): Label.AX, A("b"): Label.AX, A("c"): Label.AX, A("d"): Label.AX},
        axioms=[(A("a"), A("b")), (A("c"), A("d"))],
    ))


@pytest.fixture
def term(boxed):
    """Two copies of the box, laid flat."""
    return expand(boxed, make_uniform(boxed, 2)).term


class TestCoherence:
    """Tests for coherence and adjacency."""

    def test_axiom_and_wire(self, gp):
        """Test axioms and wires make ports coherent."""
        assert coherent(gp, A("p3"), A("p4"))
        assert coherent(gp, A("p9"), A("p1"))
        assert not coherent(gp, A("p1"), A("p2"))

    def test_doors_link_box_and_contractions(self, boxed):
        """Test a box is coherent with the ? ports under it."""
        assert coherent(boxed, A("o"), A("q"))
        assert adjacency(boxed)[A("o")] == {A("q")}


class TestConnectedComponents:
    """Tests for connected_components."""

    def test_split(self):
        """Test two axioms give two components."""
        parts = connected_components(two_axioms())
        assert [c.ports for c in parts] == [{A("a"), A("b")}, {A("c"), A("d")}]

    def test_glue_restores_net(self, gp):
        """Test gluing the components gives the net back."""
        assert glue(connected_components(gp)) == gp

    def test_component_of(self):
        """Test the component of a port contains it."""
        assert component_of(two_axioms(), A("d")).ports == {A("c"), A("d")}
        with pytest.raises(UnknownPort):
            component_of(two_axioms(), A("zz"))

    def test_invisible(self, boxed):
        """Test components without conclusions are counted at every depth."""
        assert nb_invisible(boxed) == 0
        looped = Net(ground=make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("c"): Label.AX, A("d"): Label.AX},
            axioms=[(A("a"), A("b")), (A("c"), A("d"))],
            cuts=[(A("a"), A("c")), (A("b"), A("d"))],
        ))
        assert nb_invisible(looped) == 1
        inside = Net(
            ground=make_ground({A("o"): Label.BANG, A("u"): Label.ONE}),
            contents={A("o"): glue([looped, Net(ground=make_ground({A("e"): Label.ONE}))])},
            doors={A("o"): {(A("e"),): A("o")}},
        )
        assert nb_invisible(inside) == 1


class TestClosedComponents:
    """Tests for closed_components."""

    def test_copies_are_members(self, term):
        """Test each copy of the box is a closed component on the boundary."""
        components = closed_components(term, {A("o"), A("q")}, 2)
        assert len(components) == 2
        for member in components:
            assert member.ground_conclusions() == {A("o"), A("q")}
            assert member.port_count() == 4
        assert Copy(A("o"), 1, A("x")) in components.port_sets[0]

    def test_cosize_bound(self, term):
        """Test members must have cosize below k."""
        assert len(closed_components(term, {A("o"), A("q")}, 1)) == 0

    def test_conclusions_must_be_in_boundary(self, term):
        """Test pieces with a conclusion outside the boundary are dropped."""
        assert len(closed_components(term, {A("o")}, 2)) == 0

    def test_unknown_boundary(self, term):
        """Test boundary ports must exist."""
        with pytest.raises(UnknownPort):
            closed_components(term, {A("zz")}, 2)

    def test_members_are_equivalent(self, term):
        """Test copies of one box fall into a single class."""
        members = closed_components(term, {A("o"), A("q")}, 2).members
        assert equivalent(members[0], members[1])
        assert [len(cls) for cls in partition_mod_equiv(members)] == [2]

    def test_partition_separates(self, gp, gpp):
        """Test non-isomorphic nets land in different classes."""
        classes = partition_mod_equiv([gp, gpp, gp])
        assert sorted(len(cls) for cls in classes) == [1, 2]

    def test_partition_ignores_order(self, gp, gpp):
        """Test the partition does not depend on input order."""
        assert partition_mod_equiv([gp, gpp]) == partition_mod_equiv([gpp, gp])

    def test_closed_in(self, term):
        """Test closure relative to a boundary."""
        copy = {Copy(A("o"), 1, A("x")), Copy(A("o"), 1, A("y")), A("o"), A("q")}
        assert is_closed_in(copy, term, {A("o"), A("q")})
        assert not is_closed_in(copy, term)

    @settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000))
    def test_components_shrink_level_by_level(self, seed):
        """Test the next expansion keeps only components already found in the current one."""
        case = heterogeneous_case(seed)
        if case is None:
            return
        net, k, e = case
        chain = mn_chain(e_sharp(net, e), k)
        for level in range(len(chain)):
            term = expand(net, e, level).term
            following = expand(net, e, level + 1).term
            boundary = critical_ports(term, k, chain.N[level])
            before = set(closed_components(term, boundary, k).port_sets)
            after = set(closed_components(following, boundary, k).port_sets)
            assert after <= before


def touches_copies(ports, box) -> bool:
    return any(isinstance(p, Copy) and p.box == box for p in ports)


class TestContractionsInside:
    """Tests for components once the contractions under a box are moved inside it."""

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000))
    def test_content_components(self, seed):
        """Test the closed components of a moved content are its components away from the principal door."""
        net = gen_random(GenParams(max_depth=2, seed=seed))
        k = basis(net)
        for box in sorted_ports(net.contents):
            principal = net.principal_door(box)
            if principal is None or len(principal) != 1:
                continue
            moved, phi = contractions_inside(net, box)
            content = moved.contents[box]
            found = closed_components(content, phi.values(), k)
            expected = [c for c in connected_components(net.contents[box]) if principal[0] not in c.ports]
            stripped = sorted((strip_shallow(m) for m in found), key=net_key)
            assert [m.ports for m in stripped] == [c.ports for c in expected]
            for m, c in zip(stripped, expected):
                assert equivalent(m, c)

    @settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000), st.integers(0, 1))
    def test_components_away_from_the_box(self, seed, level):
        """Test components that miss every copy of the box are the same before and after the move."""
        case = heterogeneous_case(seed, max_term_ports=1_000)
        if case is None:
            return
        net, k, e = case
        term = expand(net, e, level).term
        before = closed_components(term, term.exponential_ports(), k).port_sets
        for box in sorted_ports(net.boxes_at_least(level)):
            moved, _ = contractions_inside(net, box)
            moved_term = expand(moved, e, level).term
            after = closed_components(moved_term, moved_term.exponential_ports(), k).port_sets
            assert {s for s in before if not touches_copies(s, box)} == {s for s in after if not touches_copies(s, box)}
            for ports in before:
                assert len({p.ordinal for p in ports if isinstance(p, Copy) and p.box == box}) <= 1
