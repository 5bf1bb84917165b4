"""Evidence classification, likelihood construction, and regret tests."""

from datetime import datetime, timezone

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erimap.bn import CptTable, NetworkSpec, NodeSpec, build_network
from erimap.errors import (
    AmbiguousPayloadFromLowTier,
    DegenerateNode,
    MalformedPayload,
    UnknownState,
    UnknownTier,
    ZeroPriorState,
)
from erimap.evidence import (
    Hard,
    RegretPolicy,
    ReliabilityScore,
    Soft,
    Virtual,
    classify,
    soft_to_virtual,
    unambiguous_to_likelihood,
)
from erimap.observations import (
    LikelihoodRatio,
    Observation,
    ProbRatio,
    UnambiguousState,
)

RS = {
    "RS1": ReliabilityScore("RS1", 0.7),
    "RS2": ReliabilityScore("RS2", 0.8),
    "RS3": ReliabilityScore("RS3", 1.0),
}
THETA = RegretPolicy(theta=0.1)
T0 = datetime(2024, 3, 2, tzinfo=timezone.utc)


def binary_node(critical=()):
    return NodeSpec(
        "People",
        ["True", "False"],
        CptTable([], {(): [0.5, 0.5]}),
        critical_states=list(critical),
    )


def four_state_node():
    return NodeSpec("X", ["x1", "x2", "x3", "x4"], CptTable([], {(): [0.25] * 4}))


def simple_net(critical=("True",)):
    return build_network(NetworkSpec(nodes=[binary_node(critical)]))


def make_obs(payload, tier="RS1", node="People", obs_id="o1"):
    return Observation(
        id=obs_id, time=T0, location=("17",), node_id=node, tier=tier, payload=payload
    )


class TestReliabilityScore:
    def test_likelihood_must_exceed_half(self):
        with pytest.raises(MalformedPayload):
            ReliabilityScore("RS1", 0.5)

    def test_hard_capable_tier_allows_one(self):
        assert ReliabilityScore("RS3", 1.0).likelihood == 1.0

    def test_unknown_tier(self):
        with pytest.raises(UnknownTier):
            ReliabilityScore("RS9", 0.9)


class TestUnambiguousToLikelihood:
    def test_binary_no_regret(self):
        vec = unambiguous_to_likelihood(RS["RS2"], binary_node(), "True")
        assert vec == pytest.approx((0.8, 0.2), abs=1e-12)

    def test_binary_critical_with_regret(self):
        vec = unambiguous_to_likelihood(RS["RS1"], binary_node(("True",)), "True", THETA)
        assert vec == pytest.approx((0.8, 0.2), abs=1e-12)

    def test_four_state_no_regret(self):
        vec = unambiguous_to_likelihood(RS["RS1"], four_state_node(), "x1")
        assert vec == pytest.approx((0.7, 0.1, 0.1, 0.1), abs=1e-12)

    def test_regret_skipped_for_noncritical_state(self):
        vec = unambiguous_to_likelihood(RS["RS1"], binary_node(("True",)), "False", THETA)
        assert vec == pytest.approx((0.3, 0.7), abs=1e-12)

    def test_regret_skipped_when_all_states_critical(self):
        node = binary_node(("True", "False"))
        vec = unambiguous_to_likelihood(RS["RS1"], node, "True", THETA)
        assert vec == pytest.approx((0.7, 0.3), abs=1e-12)

    def test_boost_clipped_below_one(self):
        policy = RegretPolicy(theta=0.3)
        rs = ReliabilityScore("RS2", 0.9)
        vec = unambiguous_to_likelihood(rs, binary_node(("True",)), "True", policy)
        assert vec[0] == pytest.approx(1.0 - 1e-6)
        assert vec[0] < 1.0

    def test_unknown_state(self):
        with pytest.raises(UnknownState):
            unambiguous_to_likelihood(RS["RS1"], binary_node(), "Maybe")

    def test_degenerate_node(self):
        node = NodeSpec("X", ["only"], CptTable([], {(): [1.0]}))
        with pytest.raises(DegenerateNode):
            unambiguous_to_likelihood(RS["RS1"], node, "only")

    @settings(max_examples=100)
    @given(
        p=st.floats(0.5001, 1.0, exclude_max=False),
        n=st.integers(2, 6),
        idx=st.integers(0, 5),
    )
    def test_sums_to_one_with_equal_rest(self, p, n, idx):
        node = NodeSpec("X", [f"s{i}" for i in range(n)], CptTable([], {(): [1 / n] * n}))
        state = f"s{idx % n}"
        vec = unambiguous_to_likelihood(ReliabilityScore("RS1", p), node, state)
        assert sum(vec) == pytest.approx(1.0, abs=1e-9)
        rest = [v for i, v in enumerate(vec) if f"s{i}" != state]
        assert all(r == rest[0] for r in rest)


class TestSoftToVirtual:
    def test_paper_case(self):
        vec = soft_to_virtual((0.8, 0.2), (0.01, 0.99))
        assert vec == pytest.approx((0.99748, 0.00252), abs=5e-6)

    def test_ratio_equal_to_prior_is_uniform(self):
        vec = soft_to_virtual((0.3, 0.7), (0.3, 0.7))
        assert vec == pytest.approx((0.5, 0.5), abs=1e-12)

    def test_degenerate_ratio_becomes_hard(self):
        vec = soft_to_virtual((1.0, 0.0), (0.5, 0.5))
        assert vec == (1.0, 0.0)

    def test_zero_prior_state(self):
        with pytest.raises(ZeroPriorState):
            soft_to_virtual((0.5, 0.5), (1.0, 0.0))

    def test_zero_on_zero_prior_allowed(self):
        vec = soft_to_virtual((1.0, 0.0), (1.0, 0.0))
        assert vec == (1.0, 0.0)

    def test_length_mismatch(self):
        with pytest.raises(MalformedPayload):
            soft_to_virtual((0.5, 0.5), (0.2, 0.3, 0.5))

    @settings(max_examples=200, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 4))
    def test_round_trip_posterior_equals_ratio(self, seed, n):
        # Sole-evidence posterior must reproduce the probability ratio.
        rng = np.random.default_rng(seed)
        prior = rng.dirichlet(np.ones(n) * 2) + 1e-4
        prior = prior / prior.sum()
        ratio = rng.dirichlet(np.ones(n))
        states = [f"s{i}" for i in range(n)]
        spec = NetworkSpec(
            nodes=[NodeSpec("X", states, CptTable([], {(): [float(p) for p in prior]}))]
        )
        net = build_network(spec)
        vec = soft_to_virtual(tuple(float(r) for r in ratio), tuple(float(p) for p in prior))
        posterior = net.query("X", likelihoods=[("X", vec)])
        assert posterior.probs == pytest.approx(tuple(ratio), abs=1e-9)


class TestConflictProperties:
    def test_neutral_without_regret(self):
        # Equal-reliability opposite reports cancel exactly at theta=0.
        net = simple_net()
        node = net.node("People")
        a = unambiguous_to_likelihood(RS["RS1"], node, "True", RegretPolicy(0.0))
        b = unambiguous_to_likelihood(RS["RS1"], node, "False", RegretPolicy(0.0))
        posterior = net.query("People", likelihoods=[("People", a), ("People", b)])
        assert posterior.probs == pytest.approx(net.query("People").probs, abs=1e-9)

    def test_biased_toward_critical_with_regret(self):
        net = simple_net()
        node = net.node("People")
        a = unambiguous_to_likelihood(RS["RS1"], node, "False", THETA)
        b = unambiguous_to_likelihood(RS["RS1"], node, "True", THETA)
        combined = (a[0] * b[0], a[1] * b[1])
        assert combined == pytest.approx((0.24, 0.14), abs=1e-12)
        posterior = net.query("People", likelihoods=[("People", a), ("People", b)])
        assert posterior.probs[0] > net.query("People").probs[0]


class TestClassify:
    def test_low_tier_unambiguous_is_virtual(self):
        net = simple_net(critical=("True",))
        ev = classify(make_obs(UnambiguousState("False")), RS, net, THETA)
        assert isinstance(ev, Virtual)
        assert ev.likelihood == pytest.approx((0.3, 0.7), abs=1e-12)
        assert ev.origin == "o1"

    def test_rs3_unambiguous_is_hard(self):
        net = simple_net()
        ev = classify(make_obs(UnambiguousState("True"), tier="RS3"), RS, net)
        assert ev == Hard("People", "True", "o1")

    def test_rs3_likelihood_payload_is_verbatim_virtual(self):
        net = simple_net()
        ev = classify(make_obs(LikelihoodRatio((0.9, 0.1)), tier="RS3"), RS, net)
        assert isinstance(ev, Virtual)
        assert ev.likelihood == (0.9, 0.1)

    def test_rs3_prob_ratio_is_soft(self):
        net = simple_net()
        ev = classify(make_obs(ProbRatio((0.8, 0.2)), tier="RS3"), RS, net)
        assert isinstance(ev, Soft)
        assert ev.ratio == (0.8, 0.2)

    def test_low_tier_ratio_payload_rejected(self):
        net = simple_net()
        for payload in (ProbRatio((0.8, 0.2)), LikelihoodRatio((0.9, 0.1))):
            with pytest.raises(AmbiguousPayloadFromLowTier):
                classify(make_obs(payload, tier="RS2"), RS, net)

    def test_unknown_tier_not_in_table(self):
        net = simple_net()
        with pytest.raises(UnknownTier):
            classify(make_obs(UnambiguousState("True")), {"RS3": RS["RS3"]}, net)

    def test_unknown_state(self):
        net = simple_net()
        with pytest.raises(UnknownState):
            classify(make_obs(UnambiguousState("Perhaps"), tier="RS3"), RS, net)

    def test_prob_ratio_must_sum_to_one(self):
        net = simple_net()
        with pytest.raises(MalformedPayload):
            classify(make_obs(ProbRatio((0.8, 0.4)), tier="RS3"), RS, net)

    def test_likelihood_length_checked(self):
        net = simple_net()
        with pytest.raises(MalformedPayload):
            classify(make_obs(LikelihoodRatio((0.9, 0.05, 0.05)), tier="RS3"), RS, net)

    def test_classification_is_pure(self):
        net = simple_net()
        obs = make_obs(UnambiguousState("True"))
        assert classify(obs, RS, net, THETA) == classify(obs, RS, net, THETA)
