"""Unit tests for base-k arithmetic, digit chains and the basis."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from src.core.net import Net, make_ground
from src.core.ports import Atom as A, Label
from src.generators.random_net import GenParams, gen_random
from src.transforms.arithmetic import (
    DuplicateArity,
    NonPowerArity,
    NonPowerValue,
    bang_map,
    basis,
    chain_from_exponents,
    cocontraction_arities_are_heterogeneous,
    critical_ports,
    digit,
    digits,
    int_log,
    integer_root,
    measures_from_one_term,
    mn_chain,
    net_measures,
)
from src.transforms.taylor import e_sharp, expand, make_k_heterogeneous, make_uniform
from tests.nets import heterogeneous_case


def cocontraction(*arities: int) -> Net:
    """Bang ports without boxes, the i-th one fed by arities[i] axiom ports."""
    labels, targets, axioms = {}, {}, []
    for i, n in enumerate(arities):
        bang = A(f"o{i}")
        labels[bang] = Label.BANG
        for j in range(n):
            a, b = A(f"a{i}_{j}"), A(f"b{i}_{j}")
            labels[a] = labels[b] = Label.AX
            targets[a] = bang
            axioms.append((a, b))
    return Net(ground=make_ground(labels, targets=targets, axioms=axioms))


def invisible_net() -> Net:
    """Two axioms cut against each other: no conclusion at all."""
    return Net(ground=make_ground(
        {A("a"): Label.AX, A("b"): Label.AX, A("c"): Label.AX, A("d"): Label.AX},
        axioms=[(A("a"), A("b")), (A("c"), A("d"))],
        cuts=[(A("a"), A("c")), (A("b"), A("d"))],
    ))


class TestIntegers:
    """Tests for integer helpers."""

    @pytest.mark.parametrize("n,k,expected", [(1, 2, 0), (8, 2, 3), (81, 3, 4), (12, 2, None), (0, 2, None), (5, 1, None)])
    def test_int_log(self, n, k, expected):
        """Test exact logarithms."""
        assert int_log(n, k) == expected

    def test_digits(self):
        """Test digits are least significant first."""
        assert digits(224, 10) == [4, 2, 2]
        assert digits(0, 10) == []
        assert digit(224, 10, 1) == 2
        assert digit(224, 10, 5) == 0

    def test_digits_base(self):
        """Test base 1 is rejected."""
        with pytest.raises(ValueError):
            digits(3, 1)

    @given(st.integers(0, 10**12), st.integers(1, 6))
    def test_integer_root(self, n, j):
        """Test the integer root is the largest r with r**j <= n."""
        r = integer_root(n, j)
        assert r ** j <= n < (r + 1) ** j

    @given(st.integers(0, 10**9), st.integers(2, 16))
    def test_digits_recompose(self, n, k):
        """Test digits recompose to the number."""
        assert sum(d * k ** j for j, d in enumerate(digits(n, k))) == n


class TestChain:
    """Tests for the digit chain."""

    def test_ten_heterogeneous_chain(self):
        """Test the chain of exponents 1..224 in base 10."""
        chain = chain_from_exponents(range(1, 225), 10)
        assert chain.M[1] == {1, 2}
        assert chain.N[0] == frozenset(range(3, 225))
        assert chain.N[1] == {1, 2}
        assert chain.M[2] == frozenset()
        assert len(chain) == 2

    def test_empty_chain(self):
        """Test no exponent gives no level."""
        assert len(chain_from_exponents([], 2)) == 0

    def test_new_exponents_past_end(self):
        """Test levels past the chain have no exponent."""
        assert chain_from_exponents({1}, 2).new_exponents(5) == frozenset()

    def test_chain_dict(self):
        """Test the chain renders as plain lists."""
        data = chain_from_exponents({1, 2, 3}, 2).to_dict()
        assert data["M"][0] == [1, 2, 3]
        assert data["digits"][0] == [1, 1]

    def test_mn_chain_from_profile(self, nested):
        """Test the chain of a k-heterogeneous profile."""
        chain = mn_chain(e_sharp(nested, make_k_heterogeneous(nested, 3)), 3)
        assert chain.M[0] == {1, 2, 3, 4}
        assert chain.N[0] == {2, 3, 4}
        assert chain.N[1] == {1}

    def test_mn_chain_rejects_non_powers(self, nested):
        """Test a uniform profile of 1 copy is not heterogeneous."""
        with pytest.raises(NonPowerValue):
            mn_chain(e_sharp(nested, make_uniform(nested, 1)), 2)

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000), st.integers(0, 1))
    def test_levels_hold_deep_boxes(self, seed, offset):
        """Test each level of the chain holds the exponents of the boxes at least that deep."""
        net = gen_random(GenParams(max_depth=2, seed=seed))
        k = basis(net)
        profile = e_sharp(net, make_k_heterogeneous(net, k, seed=offset))
        chain = mn_chain(profile, k)
        assert len(chain) == net.depth()
        for level, exponents in enumerate(chain.M):
            deep = {
                int_log(m, k)
                for path, counts in profile.items()
                if net.content_at(path).depth() >= level
                for m in counts
            }
            assert exponents == deep


class TestCoContractions:
    """Tests for co-contraction arities."""

    def test_bang_map(self):
        """Test co-contractions are indexed by the exponent of their arity."""
        assert bang_map(cocontraction(2, 8), 2) == {1: A("o0"), 3: A("o1")}
        assert cocontraction_arities_are_heterogeneous(cocontraction(2, 8), 2)

    def test_non_power(self):
        """Test an arity that is not a power fails."""
        with pytest.raises(NonPowerArity):
            bang_map(cocontraction(3), 2)
        assert not cocontraction_arities_are_heterogeneous(cocontraction(3), 2)

    def test_duplicate(self):
        """Test two co-contractions of the same arity fail."""
        with pytest.raises(DuplicateArity):
            bang_map(cocontraction(4, 4), 2)

    def test_critical_ports(self):
        """Test critical ports have a nonzero digit at the position."""
        net = cocontraction(2, 4)
        assert critical_ports(net, 2, 1) == {A("o0")}
        assert critical_ports(net, 2, 2) == {A("o1")}
        assert critical_ports(net, 2, {1, 2}) == {A("o0"), A("o1")}

    @settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(0, 10_000))
    def test_critical_ports_are_door_targets(self, seed):
        """Test the ports critical for j are the door targets of the box of exponent j one level up."""
        case = heterogeneous_case(seed)
        if case is None:
            return
        net, k, e = case
        chain = mn_chain(e_sharp(net, e), k)
        for level in range(len(chain)):
            term = expand(net, e, level).term
            following = expand(net, e, level + 1).term
            bangs = bang_map(term, k)
            for j in chain.N[level]:
                assert critical_ports(term, k, j) == set(following.doors[bangs[j]].values())


class TestBasis:
    """Tests for measures and the basis."""

    def test_box(self, boxed):
        """Test one box of cosize 1 has basis 2."""
        assert basis(boxed) == 2

    def test_nested(self, nested):
        """Test two boxes give basis 3."""
        assert net_measures(nested).n_boxes == 2
        assert basis(nested) == 3

    def test_cosize(self, shared):
        """Test a ? port of arity 2 gives basis 3."""
        assert basis(shared) == 3

    def test_invisible(self):
        """Test a component without conclusions is counted."""
        assert net_measures(invisible_net()).n_invisible == 1
        assert basis(invisible_net()) == 2

    def test_measures_from_one_term(self, nested):
        """Test the 1-expansion gives back the measures of the net."""
        term = expand(nested, make_uniform(nested, 1)).term
        assert measures_from_one_term(term) == net_measures(nested)
