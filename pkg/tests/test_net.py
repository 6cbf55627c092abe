"""Unit tests for the net data model."""

import pytest

from src.core.net import GroundNet, Net, UnknownPort, find_wire_cycle, make_ground
from src.core.ports import Atom as A, Label


class TestGroundNet:
    """Tests for GroundNet accessors and clauses."""

    def test_conclusions_skip_wires_and_cuts(self):
        """Test wires and cut ports are not conclusions."""
        ground = make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("c"): Label.AX, A("d"): Label.AX, A("t"): Label.TENSOR},
            targets={A("a"): A("t"), A("c"): A("t")},
            left={A("a")},
            axioms=[(A("a"), A("b")), (A("c"), A("d"))],
        )
        assert ground.conclusions() == {A("b"), A("d"), A("t")}
        assert ground.left_premise(A("t")) == A("a")
        assert ground.right_premise(A("t")) == A("c")
        assert ground.axiom_partner(A("a")) == A("b")

    def test_unknown_label(self):
        """Test asking for the label of a missing port raises."""
        with pytest.raises(UnknownPort):
            GroundNet().label(A("x"))

    def test_valid_has_no_violations(self, gp):
        """Test the multiplicative example satisfies every clause."""
        assert gp.ground.violations(forbid_wires_into_bang=True) == []

    def test_wire_into_axiom(self):
        """Test wires cannot enter an ax port."""
        ground = make_ground(
            {A("a"): Label.AX, A("b"): Label.AX},
            targets={A("a"): A("b")},
            axioms=[(A("a"), A("b"))],
        )
        assert "wire_targets" in {v.name for v in ground.violations()}

    def test_tensor_needs_two_premises(self):
        """Test a tensor with one premise is reported."""
        ground = make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("t"): Label.TENSOR},
            targets={A("a"): A("t")},
            left={A("a")},
            axioms=[(A("a"), A("b"))],
        )
        assert "multiplicative_premises" in {v.name for v in ground.violations()}

    def test_lone_axiom_port(self):
        """Test an ax port outside every axiom is reported."""
        ground = make_ground({A("a"): Label.AX})
        assert "axioms" in {v.name for v in ground.violations()}

    def test_cycle(self):
        """Test a premise cycle is found."""
        assert set(find_wire_cycle({A("p"): A("q"), A("q"): A("p")})) == {A("p"), A("q")}
        assert find_wire_cycle({A("p"): A("q")}) is None

    def test_wire_into_bang(self):
        """Test wires into bang ports are only reported when forbidden."""
        ground = make_ground(
            {A("a"): Label.AX, A("b"): Label.AX, A("o"): Label.BANG},
            targets={A("a"): A("o")},
            axioms=[(A("a"), A("b"))],
        )
        assert ground.violations() == []
        assert [v.name for v in ground.violations(forbid_wires_into_bang=True)] == ["no_wire_into_bang"]


class TestNet:
    """Tests for Net measures and addressing."""

    def test_box_arity_counts_doors(self, boxed):
        """Test the arity of a box and a ?-port includes their doors."""
        assert boxed.arity(A("o")) == 1
        assert boxed.arity(A("q")) == 1
        assert boxed.principal_door(A("o")) == (A("x"),)
        assert boxed.contractions_under(A("o")) == {A("q")}

    def test_conclusions(self, boxed):
        """Test conclusions of a net with every temporary conclusion doored."""
        assert boxed.conclusions() == {(A("o"),), (A("q"),)}

    def test_doorless_deep_conclusion(self):
        """Test a content conclusion without door is a conclusion of the net."""
        content = Net(ground=make_ground({A("x"): Label.AX, A("y"): Label.AX}, axioms=[(A("x"), A("y"))]))
        net = Net(
            ground=make_ground({A("o"): Label.BANG}),
            contents={A("o"): content},
            doors={A("o"): {(A("x"),): A("o")}},
        )
        assert net.conclusions() == {(A("o"),), (A("o"), A("y"))}

    def test_depth_and_boxes(self, nested):
        """Test depth, box paths and port count of a nested net."""
        assert nested.depth() == 2
        assert nested.box_paths() == [(A("o"),), (A("o"), A("r"))]
        assert nested.box_count() == 2
        assert nested.port_count() == 6

    def test_cosize(self, shared):
        """Test the cosize is the largest arity over every depth."""
        assert shared.arity(A("q")) == 2
        assert shared.cosize() == 2

    def test_deepest_box(self, nested):
        """Test the deepest box of content depth at least i around a port."""
        address = (A("o"), A("r"), A("x"))
        assert nested.deepest_box_at_least(address, 0) == (A("o"), A("r"))
        assert nested.deepest_box_at_least(address, 1) == (A("o"),)
        assert nested.deepest_box_at_least(address, 2) is None

    def test_boxes_at_least(self, nested):
        """Test boxes are selected by the depth of their content."""
        assert nested.boxes_at_least(0) == {A("o")}
        assert nested.boxes_at_least(1) == {A("o")}
        assert nested.boxes_at_least(2) == frozenset()
        assert len(list(nested.addresses())) == nested.port_count()

    def test_label_at(self, nested):
        """Test labels can be read at any depth."""
        assert nested.label_at((A("o"), A("s"))) is Label.QUEST
        assert nested.label_at((A("o"), A("r"), A("y"))) is Label.AX

    def test_co_contractions(self):
        """Test bang ports without a box are co-contractions."""
        net = Net(ground=make_ground({A("o"): Label.BANG}))
        assert net.co_contractions() == {A("o")}

    def test_metrics(self, boxed):
        """Test metrics are rendered as plain values."""
        metrics = boxed.metrics().to_dict()
        assert metrics["depth"] == 1
        assert metrics["n_boxes"] == 1
        assert metrics["shallow_conclusions"] == ["o", "q"]

    def test_unknown_port_arity(self, boxed):
        """Test the arity of a missing port raises."""
        with pytest.raises(UnknownPort):
            boxed.arity(A("zz"))
