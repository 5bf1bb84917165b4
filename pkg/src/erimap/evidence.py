"""Evidence classification and likelihood construction.

Observations turn into one of three evidence kinds:

* ``Hard`` -- an unambiguous state from a fully reliable (RS3) source;
* ``Virtual`` -- a likelihood ratio over the node's states, either built
  from an unambiguous low/medium-reliability report or delivered verbatim
  by an RS3 instrument with known accuracy;
* ``Soft`` -- a probability ratio that should hold as the node's posterior,
  delivered by an RS3 source; converted to a likelihood ratio by dividing
  out the node's prior and normalising.

An unambiguous report from a tier with likelihood p on an N-state node
becomes the vector (p, (1-p)/(N-1), ..., (1-p)/(N-1)) with p at the
observed state, so the unobserved states keep their mutual ratios. When the
observed state is one of the node's declared critical states (and the node
also has non-critical states), a precautionary boost theta is added to p,
so conflicting equal-reliability reports net out in favour of the critical
state instead of cancelling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .bn import Distribution, NodeSpec, ValidatedNetwork
from .errors import (
    AmbiguousPayloadFromLowTier,
    DegenerateNode,
    MalformedPayload,
    UnknownState,
    UnknownTier,
    ZeroPriorState,
)
from .observations import Observation, ProbRatio, UnambiguousState

logger = logging.getLogger(__name__)

RATIO_SUM_TOL = 1e-9
# A boosted likelihood is clipped below 1 so an unreliable source can never
# silently turn into hard evidence.
LIKELIHOOD_CEIL = 1.0 - 1e-6


@dataclass(frozen=True)
class ReliabilityScore:
    """Chance that an unambiguous observation from this tier is correct."""

    tier: str
    likelihood: float

    def __post_init__(self) -> None:
        if self.tier not in ("RS1", "RS2", "RS3"):
            raise UnknownTier(f"unknown reliability tier {self.tier!r}")
        if not 0.5 < self.likelihood <= 1.0:
            raise MalformedPayload(
                f"reliability likelihood for {self.tier} must be in (0.5, 1.0], "
                f"got {self.likelihood!r}"
            )


@dataclass(frozen=True)
class RegretPolicy:
    """Additive precautionary boost applied to reported critical states."""

    theta: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta < 0.5:
            raise MalformedPayload(f"theta must be in [0, 0.5), got {self.theta!r}")


@dataclass(frozen=True)
class Hard:
    node_id: str
    state: str
    origin: str


@dataclass(frozen=True)
class Soft:
    node_id: str
    ratio: tuple[float, ...]
    origin: str


@dataclass(frozen=True)
class Virtual:
    node_id: str
    likelihood: tuple[float, ...]
    origin: str


Evidence = Union[Hard, Soft, Virtual]


def unambiguous_to_likelihood(
    rs: ReliabilityScore,
    node: NodeSpec,
    observed_state: str,
    policy: RegretPolicy = RegretPolicy(),
) -> tuple[float, ...]:
    """Likelihood vector for an unambiguous RS1/RS2 report of one state."""
    n = len(node.states)
    if n < 2:
        raise DegenerateNode(f"node {node.id!r} has {n} states")
    if observed_state not in node.states:
        raise UnknownState(f"node {node.id!r} has no state {observed_state!r}")
    if rs.tier == "RS3":
        raise ValueError("RS3 unambiguous observations are hard evidence, not virtual")

    p = rs.likelihood
    critical = set(node.critical_states)
    if critical and len(critical) < n and observed_state in critical:
        boosted = p + policy.theta
        if boosted > LIKELIHOOD_CEIL:
            logger.warning(
                "regret boost clipped on node %r: %.6f -> %.6f",
                node.id, boosted, LIKELIHOOD_CEIL,
            )
            boosted = LIKELIHOOD_CEIL
        p = boosted

    rest = (1.0 - p) / (n - 1)
    return tuple(p if s == observed_state else rest for s in node.states)


def soft_to_virtual(
    ratio: Sequence[float], prior: Distribution | Sequence[float]
) -> tuple[float, ...]:
    """Convert a probability ratio into a normalised likelihood ratio.

    Dividing the target posterior by the prior compensates for the prior's
    influence: applied as the sole likelihood evidence on the node, the
    result reproduces ``ratio`` as the posterior exactly.
    """
    prior_probs = prior.probs if isinstance(prior, Distribution) else tuple(prior)
    if len(ratio) != len(prior_probs):
        raise MalformedPayload(
            f"probability ratio has length {len(ratio)}, prior has {len(prior_probs)}"
        )
    quotient = []
    for i, (lam, p) in enumerate(zip(ratio, prior_probs)):
        if lam < 0.0:
            raise MalformedPayload(f"probability ratio entry {i} is negative")
        if lam > 0.0 and p <= 0.0:
            raise ZeroPriorState(
                f"probability ratio is positive on zero-prior state index {i}"
            )
        quotient.append(lam / p if lam > 0.0 else 0.0)
    total = sum(quotient)
    if total <= 0.0:
        raise MalformedPayload("probability ratio has no positive entry")
    return tuple(q / total for q in quotient)


def _check_vector(vec: Sequence[float], node: NodeSpec, origin: str, kind: str) -> tuple[float, ...]:
    v = tuple(float(x) for x in vec)
    if len(v) != len(node.states):
        raise MalformedPayload(
            f"observation {origin!r}: {kind} has length {len(v)}, "
            f"node {node.id!r} has {len(node.states)} states"
        )
    if any(x < 0.0 for x in v):
        raise MalformedPayload(f"observation {origin!r}: {kind} has negative entries")
    if sum(v) <= 0.0:
        raise MalformedPayload(f"observation {origin!r}: {kind} has no positive entry")
    return v


def classify(
    obs: Observation,
    rs_table: Mapping[str, ReliabilityScore],
    net: ValidatedNetwork,
    policy: RegretPolicy = RegretPolicy(),
) -> Evidence:
    """Classify an observation into hard, soft, or virtual evidence.

    RS1/RS2 sources may only deliver unambiguous states (translated into
    virtual evidence); RS3 sources deliver hard evidence (unambiguous
    state), soft evidence (probability ratio), or verbatim virtual
    evidence (likelihood ratio, e.g. a sensor's known accuracy).
    """
    node = net.node(obs.node_id)
    if obs.tier not in rs_table:
        raise UnknownTier(f"observation {obs.id!r}: tier {obs.tier!r} not in reliability table")
    rs = rs_table[obs.tier]
    low_tier = obs.tier in ("RS1", "RS2")

    if isinstance(obs.payload, UnambiguousState):
        state = obs.payload.state
        if state not in node.states:
            raise UnknownState(
                f"observation {obs.id!r}: node {node.id!r} has no state {state!r}"
            )
        if low_tier:
            vec = unambiguous_to_likelihood(rs, node, state, policy)
            return Virtual(node.id, vec, obs.id)
        return Hard(node.id, state, obs.id)

    if low_tier:
        raise AmbiguousPayloadFromLowTier(
            f"observation {obs.id!r}: {obs.tier} sources may only report unambiguous states"
        )

    if isinstance(obs.payload, ProbRatio):
        v = _check_vector(obs.payload.ratio, node, obs.id, "probability ratio")
        if abs(sum(v) - 1.0) > RATIO_SUM_TOL:
            raise MalformedPayload(
                f"observation {obs.id!r}: probability ratio sums to {sum(v)!r}, not 1"
            )
        return Soft(node.id, v, obs.id)

    v = _check_vector(obs.payload.likelihood, node, obs.id, "likelihood ratio")
    return Virtual(node.id, v, obs.id)
