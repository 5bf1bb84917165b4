"""Discrete Bayesian networks: declarative specs, validation, exact inference.

A network is declared as nodes with ordered state lists and probability
tables (a marginal table for roots, a conditional table per parent-state
combination otherwise), plus an explicit edge list. ``build_network``
validates the declaration and returns an immutable ``ValidatedNetwork``.

Posterior queries condition on two evidence forms:

* hard evidence, a map node -> observed state, applied as an indicator
  factor;
* likelihood vectors, each equivalent to conditioning a binary virtual
  child (whose CPT column is the vector) on True. Attaching the vector
  directly to the parent's factor product is mathematically identical and
  keeps the graph immutable.

``query`` runs variable elimination with a min-degree ordering (ties broken
by node id, for determinism). ``enumerate_joint`` answers the same contract
by materialising the full joint table; it exists solely as an independent
oracle and refuses state spaces above ``ENUMERATION_CAP`` configurations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DanglingEdge,
    InvalidNetworkSpec,
    InvalidState,
    MalformedTable,
    StateSpaceTooLarge,
    UnknownNode,
    ZeroProbabilityEvidence,
)

ROW_SUM_TOL = 1e-9
# Normalisation guard: joint mass at or below this raises ZeroProbabilityEvidence.
MASS_FLOOR = 1e-300
ENUMERATION_CAP = 10_000_000


@dataclass
class CptTable:
    """Probability table: one row per parent-state combination.

    ``parents`` fixes the order in which ``rows`` keys are interpreted.
    A root node has ``parents=[]`` and a single row keyed by ``()``.
    """

    parents: list[str] = field(default_factory=list)
    rows: dict[tuple[str, ...], list[float]] = field(default_factory=dict)


@dataclass
class NodeSpec:
    id: str
    states: list[str]
    table: CptTable
    critical_states: list[str] = field(default_factory=list)


@dataclass
class NetworkSpec:
    nodes: list[NodeSpec]
    edges: list[tuple[str, str]] = field(default_factory=list)
    key_nodes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Distribution:
    """Posterior marginal aligned to the node's declared state order."""

    node_id: str
    probs: tuple[float, ...]

    def as_dict(self, states: Sequence[str]) -> dict[str, float]:
        return dict(zip(states, self.probs))


class _Factor:
    """Non-negative table over a set of variables, axes in sorted var order."""

    __slots__ = ("vars", "table")

    def __init__(self, vars: tuple[str, ...], table: np.ndarray):
        order = sorted(range(len(vars)), key=lambda i: vars[i])
        self.vars = tuple(vars[i] for i in order)
        self.table = np.ascontiguousarray(np.transpose(table, order))

    def multiply(self, other: "_Factor") -> "_Factor":
        out_vars = sorted(set(self.vars) | set(other.vars))
        f = _Factor.__new__(_Factor)
        f.vars = tuple(out_vars)
        f.table = self._expand(out_vars) * other._expand(out_vars)
        return f

    def _expand(self, out_vars: list[str]) -> np.ndarray:
        # self.vars is sorted, hence a subsequence of out_vars: padding
        # singleton axes in place is enough for broadcasting.
        shape = []
        own = iter(zip(self.vars, self.table.shape))
        cur = next(own, None)
        for v in out_vars:
            if cur is not None and cur[0] == v:
                shape.append(cur[1])
                cur = next(own, None)
            else:
                shape.append(1)
        return self.table.reshape(shape)

    def marginalize(self, var: str) -> "_Factor":
        axis = self.vars.index(var)
        f = _Factor.__new__(_Factor)
        f.vars = self.vars[:axis] + self.vars[axis + 1 :]
        f.table = self.table.sum(axis=axis)
        return f


class ValidatedNetwork:
    """Immutable, queryable network. Construct via :func:`build_network`."""

    def __init__(self, spec: NetworkSpec, order: list[str]):
        self._node_ids: tuple[str, ...] = tuple(n.id for n in spec.nodes)
        self._specs: dict[str, NodeSpec] = {n.id: n for n in spec.nodes}
        self._states: dict[str, tuple[str, ...]] = {
            n.id: tuple(n.states) for n in spec.nodes
        }
        self._index: dict[str, dict[str, int]] = {
            n.id: {s: i for i, s in enumerate(n.states)} for n in spec.nodes
        }
        self._parents: dict[str, tuple[str, ...]] = {
            n.id: tuple(n.table.parents) for n in spec.nodes
        }
        self._topo_order: tuple[str, ...] = tuple(order)
        self.key_nodes: tuple[str, ...] = tuple(spec.key_nodes)
        # CPT as ndarray with axes (*table.parents, node), rows in declared state order
        self._cpt: dict[str, np.ndarray] = {}
        for n in spec.nodes:
            shape = tuple(len(self._states[p]) for p in n.table.parents) + (
                len(n.states),
            )
            arr = np.empty(shape, dtype=np.float64)
            for combo, probs in n.table.rows.items():
                idx = tuple(self._index[p][s] for p, s in zip(n.table.parents, combo))
                arr[idx] = probs
            self._cpt[n.id] = arr

    # --- introspection -----------------------------------------------------

    @property
    def node_ids(self) -> tuple[str, ...]:
        return self._node_ids

    def node(self, node_id: str) -> NodeSpec:
        try:
            return self._specs[node_id]
        except KeyError:
            raise UnknownNode(f"unknown node {node_id!r}") from None

    def states(self, node_id: str) -> tuple[str, ...]:
        self.node(node_id)
        return self._states[node_id]

    def parents(self, node_id: str) -> tuple[str, ...]:
        self.node(node_id)
        return self._parents[node_id]

    # --- evidence preparation ------------------------------------------------

    def _check_evidence(
        self,
        target: str,
        hard: Mapping[str, str],
        likelihoods: Iterable[tuple[str, Sequence[float]]],
    ) -> dict[str, np.ndarray]:
        """Validate evidence and fold it into one vector per node.

        Hard evidence becomes an indicator vector. Likelihood vectors for
        the same node are combined by elementwise product in a canonical
        (sorted) order, so the result is bit-identical under permutation of
        the input list.
        """
        self.node(target)
        per_node: dict[str, list[tuple[float, ...]]] = {}
        for node_id, vec in likelihoods:
            states = self.states(node_id)
            v = tuple(float(x) for x in vec)
            if len(v) != len(states):
                raise ValueError(
                    f"likelihood vector for {node_id!r} has length {len(v)}, "
                    f"node has {len(states)} states"
                )
            if any(x < 0.0 or not np.isfinite(x) for x in v):
                raise ValueError(f"likelihood vector for {node_id!r} must be non-negative and finite")
            if not any(x > 0.0 for x in v):
                raise ValueError(f"likelihood vector for {node_id!r} has no positive entry")
            per_node.setdefault(node_id, []).append(v)

        combined: dict[str, np.ndarray] = {}
        for node_id, vecs in per_node.items():
            acc = np.ones(len(self.states(node_id)), dtype=np.float64)
            for v in sorted(vecs):
                acc = acc * np.asarray(v, dtype=np.float64)
            combined[node_id] = acc

        for node_id, state in hard.items():
            states = self.states(node_id)
            if state not in self._index[node_id]:
                raise InvalidState(f"node {node_id!r} has no state {state!r}")
            ind = np.zeros(len(states), dtype=np.float64)
            ind[self._index[node_id][state]] = 1.0
            combined[node_id] = combined[node_id] * ind if node_id in combined else ind
        return combined

    @staticmethod
    def _normalize(node_id: str, raw: np.ndarray) -> Distribution:
        total = float(raw.sum())
        if not np.isfinite(total) or total <= MASS_FLOOR:
            raise ZeroProbabilityEvidence(
                f"evidence has zero joint probability (querying {node_id!r})"
            )
        return Distribution(node_id, tuple(float(x) for x in raw / total))

    # --- exact inference -----------------------------------------------------

    def query(
        self,
        target: str,
        hard: Mapping[str, str] | None = None,
        likelihoods: Iterable[tuple[str, Sequence[float]]] | None = None,
    ) -> Distribution:
        """Exact posterior marginal of ``target`` by variable elimination."""
        evidence = self._check_evidence(target, hard or {}, likelihoods or [])
        factors = [
            _Factor(self._parents[n] + (n,), self._cpt[n]) for n in self._node_ids
        ]
        factors += [_Factor((n,), vec) for n, vec in sorted(evidence.items())]

        to_eliminate = set(self._node_ids) - {target}
        while to_eliminate:
            # Min-degree on the current factor scopes; node-id breaks ties.
            def degree(v: str) -> tuple[int, str]:
                neigh: set[str] = set()
                for f in factors:
                    if v in f.vars:
                        neigh.update(f.vars)
                neigh.discard(v)
                return (len(neigh), v)

            var = min(to_eliminate, key=degree)
            to_eliminate.remove(var)
            group = sorted((f for f in factors if var in f.vars), key=lambda f: f.vars)
            rest = [f for f in factors if var not in f.vars]
            if not group:
                continue
            prod = group[0]
            for f in group[1:]:
                prod = prod.multiply(f)
            factors = rest + [prod.marginalize(var)]

        result = _Factor((target,), np.ones(len(self._states[target])))
        for f in sorted(factors, key=lambda f: f.vars):
            result = result.multiply(f)
        return self._normalize(target, result.table)

    def enumerate_joint(
        self,
        target: str,
        hard: Mapping[str, str] | None = None,
        likelihoods: Iterable[tuple[str, Sequence[float]]] | None = None,
    ) -> Distribution:
        """Same contract as :meth:`query`, by exhaustive summation.

        Materialises the full joint table (broadcast product of every CPT
        and evidence vector over one axis per node) and sums out everything
        but the target. Independent of the elimination path; test oracle.
        """
        evidence = self._check_evidence(target, hard or {}, likelihoods or [])
        sizes = [len(self._states[n]) for n in self._node_ids]
        total = 1
        for s in sizes:
            total *= s
        if total > ENUMERATION_CAP:
            raise StateSpaceTooLarge(
                f"joint state space has {total} configurations (cap {ENUMERATION_CAP})"
            )

        axis = {n: i for i, n in enumerate(self._node_ids)}
        joint = np.ones(tuple(sizes), dtype=np.float64)

        def spread(vars: tuple[str, ...], table: np.ndarray) -> np.ndarray:
            # Reorder axes to network order, then pad singleton axes.
            order = sorted(range(len(vars)), key=lambda i: axis[vars[i]])
            arr = np.transpose(table, order)
            shape = [1] * len(sizes)
            for v in vars:
                shape[axis[v]] = len(self._states[v])
            return arr.reshape(shape)

        for n in self._node_ids:
            joint = joint * spread(self._parents[n] + (n,), self._cpt[n])
        for n, vec in sorted(evidence.items()):
            joint = joint * spread((n,), vec)

        other_axes = tuple(i for i, n in enumerate(self._node_ids) if n != target)
        return self._normalize(target, joint.sum(axis=other_axes))


def _topological_order(spec: NetworkSpec) -> list[str]:
    ids = [n.id for n in spec.nodes]
    known = set(ids)
    children: dict[str, list[str]] = {i: [] for i in ids}
    indeg: dict[str, int] = {i: 0 for i in ids}
    for parent, child in spec.edges:
        for end in (parent, child):
            if end not in known:
                raise DanglingEdge(
                    f"edge ({parent!r} -> {child!r}) references undeclared node {end!r}"
                )
        children[parent].append(child)
        indeg[child] += 1
    order: list[str] = []
    ready = sorted(i for i in ids if indeg[i] == 0)
    while ready:
        node = ready.pop(0)
        order.append(node)
        for c in children[node]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
        ready.sort()
    if len(order) != len(ids):
        cyclic = sorted(i for i in ids if indeg[i] > 0)
        raise CycleDetected(f"graph contains a cycle through {cyclic}")
    return order


def build_network(spec: NetworkSpec) -> ValidatedNetwork:
    """Validate a :class:`NetworkSpec` and return a queryable network.

    Raises :class:`CycleDetected`, :class:`DanglingEdge` or
    :class:`MalformedTable` (each naming the offending node) for structural
    defects, and :class:`InvalidNetworkSpec` for anything else.
    """
    seen: set[str] = set()
    for n in spec.nodes:
        if n.id in seen:
            raise InvalidNetworkSpec(f"duplicate node id {n.id!r}")
        seen.add(n.id)
        if len(n.states) < 2:
            raise InvalidNetworkSpec(f"node {n.id!r} needs at least two states")
        if len(set(n.states)) != len(n.states):
            raise InvalidNetworkSpec(f"node {n.id!r} has duplicate state names")
        if not set(n.critical_states) <= set(n.states):
            raise InvalidNetworkSpec(
                f"node {n.id!r} declares critical states not in its state list"
            )

    order = _topological_order(spec)

    for k in spec.key_nodes:
        if k not in seen:
            raise InvalidNetworkSpec(f"key node {k!r} is not declared")

    parents_from_edges: dict[str, set[str]] = {n.id: set() for n in spec.nodes}
    for parent, child in spec.edges:
        parents_from_edges[child].add(parent)

    for n in spec.nodes:
        tbl = n.table
        if set(tbl.parents) != parents_from_edges[n.id]:
            raise MalformedTable(
                f"node {n.id!r}: table parents {sorted(tbl.parents)} do not match "
                f"edges {sorted(parents_from_edges[n.id])}"
            )
        if len(set(tbl.parents)) != len(tbl.parents):
            raise MalformedTable(f"node {n.id!r}: duplicate parent in table")
        expected = set(
            itertools.product(*(tuple(spec_states(spec, p)) for p in tbl.parents))
        )
        got = set(tbl.rows.keys())
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise MalformedTable(
                f"node {n.id!r}: rows do not cover the parent-state product "
                f"(missing {missing[:3]}, extra {extra[:3]})"
            )
        for combo, probs in tbl.rows.items():
            if len(probs) != len(n.states):
                raise MalformedTable(
                    f"node {n.id!r}: row {combo} has {len(probs)} entries, "
                    f"expected {len(n.states)}"
                )
            if any(p < 0.0 or p > 1.0 for p in probs):
                raise MalformedTable(f"node {n.id!r}: row {combo} has entries outside [0, 1]")
            if abs(sum(probs) - 1.0) > ROW_SUM_TOL:
                raise MalformedTable(
                    f"node {n.id!r}: row {combo} sums to {sum(probs)!r}, not 1"
                )

    return ValidatedNetwork(spec, order)


def spec_states(spec: NetworkSpec, node_id: str) -> list[str]:
    for n in spec.nodes:
        if n.id == node_id:
            return n.states
    raise UnknownNode(f"unknown node {node_id!r}")
