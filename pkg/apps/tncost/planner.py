"""
Contraction-order search.

A plan is a full binary merge tree over the network's tensors, stored as an
SSA merge list: leaves are 0..n−1 and merge k produces tensor n+k. Merging
tensors with leg masks a and b costs 2^|a ∪ b| scalar multiplications (every
index has dimension 2) and leaves a tensor with legs a △ b.

Search, per connected component:

    ≤ EXACT_LIMIT tensors   exact subset dynamic programming
    larger                  greedy, then seeded randomised greedy restarts,
                            then annealing of local tree rotations

All randomness comes from (seed, component, restart) keyed generators and the
work is bounded by a count of merge evaluations, so a (seed, budget) pair
always yields the same plan.
"""

import heapq
import json
import logging
import math
from dataclasses import dataclass
from typing import Any

import networkx as nx
import numpy as np
from django.conf import settings

from apps.core.exceptions import ValidationError
from apps.core.seeds import point_rng
from apps.tncost.network import TensorNetwork

logger = logging.getLogger(__name__)

EXACT_LIMIT = 10
RESTART_SHARE = 0.3
GREEDY_TEMPERATURE = 0.5
ANNEAL_START = 1.0
ANNEAL_END = 0.02


def _rank(mask: int) -> int:
    return mask.bit_count()


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ContractionPlan:
    legs: tuple[int, ...]
    merges: tuple[tuple[int, int], ...]
    mults: int = 0
    cost_log2: float = 0.0
    peak_rank: int = 0

    def __post_init__(self) -> None:
        n = len(self.legs)
        if n and len(self.merges) != n - 1:
            raise ValidationError(
                f"a plan over {n} tensors needs {n - 1} merges, got {len(self.merges)}"
            )
        if not n and self.merges:
            raise ValidationError("an empty plan cannot merge anything")
        used: set[int] = set()
        for k, (i, j) in enumerate(self.merges):
            for t in (i, j):
                if not 0 <= t < n + k:
                    raise ValidationError(f"merge #{k} references unknown tensor {t}")
                if t in used:
                    raise ValidationError(f"merge #{k} reuses tensor {t}")
                used.add(t)
            if i == j:
                raise ValidationError(f"merge #{k} merges tensor {i} with itself")

    @property
    def n_tensors(self) -> int:
        return len(self.legs)

    @property
    def root(self) -> int | None:
        if not self.legs:
            return None
        return len(self.legs) + len(self.merges) - 1


def _replay(legs: tuple[int, ...], merges) -> tuple[int, int]:
    current = list(legs)
    mults = 0
    peak = max((_rank(m) for m in legs), default=0)
    for i, j in merges:
        a, b = current[i], current[j]
        mults += 1 << _rank(a | b)
        out = a ^ b
        current.append(out)
        peak = max(peak, _rank(out))
    return mults, peak


def _log2(mults: int) -> float:
    return math.log2(mults) if mults else 0.0


def contraction_cost(plan: ContractionPlan) -> tuple[float, int]:
    """(log2 of total multiplications, peak tensor rank), recomputed from the tree."""
    mults, peak = _replay(plan.legs, plan.merges)
    return _log2(mults), peak


def make_plan(legs, merges) -> ContractionPlan:
    legs = tuple(int(m) for m in legs)
    merges = tuple((int(i), int(j)) for i, j in merges)
    mults, peak = _replay(legs, merges)
    return ContractionPlan(legs, merges, mults, _log2(mults), peak)


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------


def components(legs: list[int]) -> list[list[int]]:
    """Tensor ids grouped by shared indices, each group sorted, groups by min id."""
    g = nx.Graph()
    g.add_nodes_from(range(len(legs)))
    owner: dict[int, int] = {}
    for t, mask in enumerate(legs):
        for idx in _bits(mask):
            if idx in owner:
                g.add_edge(owner[idx], t)
            else:
                owner[idx] = t
    return sorted(sorted(c) for c in nx.connected_components(g))


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------


def _exact(legs: list[int]) -> tuple[list[tuple[int, int]], int]:
    m = len(legs)
    full = (1 << m) - 1
    sub_legs = [0] * (full + 1)
    for s in range(1, full + 1):
        low = s & -s
        sub_legs[s] = sub_legs[s ^ low] ^ legs[low.bit_length() - 1]
    best = [0] * (full + 1)
    split = [0] * (full + 1)
    for s in range(1, full + 1):
        if s & (s - 1) == 0:
            continue
        low = s & -s
        choice, value = 0, None
        # t always holds the lowest member, so each split is seen once
        t = (s - 1) & s
        while t:
            if t & low:
                rest = s ^ t
                cost = best[t] + best[rest] + (1 << _rank(sub_legs[t] | sub_legs[rest]))
                if value is None or cost < value:
                    choice, value = t, cost
            t = (t - 1) & s
        best[s], split[s] = value, choice

    merges: list[tuple[int, int]] = []
    ids: dict[int, int] = {1 << i: i for i in range(m)}
    stack: list[tuple[int, bool]] = [(full, False)]
    while stack:
        s, expanded = stack.pop()
        if s in ids:
            continue
        left, right = split[s], s ^ split[s]
        if expanded:
            merges.append((ids[left], ids[right]))
            ids[s] = m + len(merges) - 1
        else:
            stack.extend([(s, True), (right, False), (left, False)])
    return merges, best[full]


# ---------------------------------------------------------------------------
# Greedy search
# ---------------------------------------------------------------------------


def _greedy(
    legs: list[int],
    rng: np.random.Generator | None = None,
    temperature: float = 0.0,
) -> tuple[list[tuple[int, int]], int]:
    """
    Repeatedly merge the connected pair with the smallest rank change
    (ties: cheaper merge). With *rng* each candidate's score is perturbed by
    Gumbel noise of scale *temperature*.
    """
    current = list(legs)
    active = set(range(len(legs)))
    owners: dict[int, list[int]] = {}
    for t, mask in enumerate(legs):
        for idx in _bits(mask):
            owners.setdefault(idx, []).append(t)
    heap: list[tuple[float, int, int, int, int]] = []
    counter = 0
    evaluations = 0

    def push(i: int, j: int) -> None:
        nonlocal counter, evaluations
        a, b = current[i], current[j]
        score = float(_rank(a ^ b) - _rank(a) - _rank(b))
        if rng is not None:
            score -= temperature * rng.gumbel()
        heapq.heappush(heap, (score, _rank(a | b), counter, i, j))
        counter += 1
        evaluations += 1

    for idx, ts in owners.items():
        if len(ts) == 2:
            push(ts[0], ts[1])

    merges: list[tuple[int, int]] = []
    while heap:
        _, _, _, i, j = heapq.heappop(heap)
        if i not in active or j not in active:
            continue
        a, b = current[i], current[j]
        new = len(current)
        current.append(a ^ b)
        active -= {i, j}
        active.add(new)
        merges.append((i, j))
        for idx in _bits(a & b):
            owners.pop(idx, None)
        neighbours: set[int] = set()
        for idx in _bits(a ^ b):
            ts = [new if t in (i, j) else t for t in owners[idx]]
            owners[idx] = ts
            neighbours.update(t for t in ts if t != new)
        for t in sorted(neighbours):
            push(new, t)

    # whatever is left shares no index: outer products, smallest first
    rest = sorted(active, key=lambda t: (_rank(current[t]), t))
    while len(rest) > 1:
        i, j = rest[0], rest[1]
        merges.append((i, j))
        current.append(current[i] ^ current[j])
        rest = sorted(
            rest[2:] + [len(current) - 1], key=lambda t: (_rank(current[t]), t)
        )
    return merges, evaluations


# ---------------------------------------------------------------------------
# Tree annealing
# ---------------------------------------------------------------------------


class _Tree:
    """Mutable binary tree view of an SSA merge list over *legs*."""

    def __init__(self, legs: list[int], merges: list[tuple[int, int]]) -> None:
        m = len(legs)
        size = m + len(merges)
        self.m = m
        self.left = [-1] * size
        self.right = [-1] * size
        self.parent = [-1] * size
        self.legs = list(legs) + [0] * len(merges)
        for k, (i, j) in enumerate(merges):
            node = m + k
            self.left[node], self.right[node] = i, j
            self.parent[i] = self.parent[j] = node
            self.legs[node] = self.legs[i] ^ self.legs[j]
        self.root = size - 1

    def merge_cost(self, node: int) -> int:
        return 1 << _rank(self.legs[self.left[node]] | self.legs[self.right[node]])

    def total(self) -> int:
        return sum(self.merge_cost(node) for node in range(self.m, self.root + 1))

    def snapshot(self) -> tuple[list[int], list[int]]:
        return self.left.copy(), self.right.copy()

    def to_merges(self, shape: tuple[list[int], list[int]] | None = None):
        left, right = shape if shape is not None else (self.left, self.right)
        merges: list[tuple[int, int]] = []
        ids: dict[int, int] = {}
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if node < self.m:
                ids[node] = node
                continue
            if expanded:
                merges.append((ids[left[node]], ids[right[node]]))
                ids[node] = self.m + len(merges) - 1
            else:
                stack.extend([(node, True), (right[node], False), (left[node], False)])
        return merges


def _anneal(
    legs: list[int],
    merges: list[tuple[int, int]],
    moves: int,
    rng: np.random.Generator,
) -> list[tuple[int, int]]:
    """
    Rotations ((a, b), s) → ((other, s), x) at random internal nodes. Only the
    two merges under the rotated parent change cost, so each move is O(1).
    """
    tree = _Tree(legs, merges)
    internal = [node for node in range(tree.m, tree.root)]
    if not internal or moves <= 0:
        return merges
    total = tree.total()
    best_total, best_shape = total, tree.snapshot()
    ratio = (ANNEAL_END / ANNEAL_START) ** (1.0 / max(moves - 1, 1))
    temperature = ANNEAL_START
    picks = rng.integers(0, len(internal), size=moves)
    sides = rng.integers(0, 2, size=moves)
    draws = rng.random(moves)
    L, R, P, legs_of = tree.left, tree.right, tree.parent, tree.legs
    for step in range(moves):
        c = internal[picks[step]]
        p = P[c]
        s = R[p] if L[p] == c else L[p]
        x, other = (L[c], R[c]) if sides[step] == 0 else (R[c], L[c])
        old = tree.merge_cost(c) + (1 << _rank(legs_of[c] | legs_of[s]))
        new_c = legs_of[other] ^ legs_of[s]
        new = (1 << _rank(legs_of[other] | legs_of[s])) + (
            1 << _rank(new_c | legs_of[x])
        )
        candidate = total - old + new
        accept = candidate <= total or draws[step] < math.exp(
            -(math.log2(candidate) - math.log2(total)) / temperature
        )
        if accept:
            # c keeps its slot under p; x takes the sibling's slot
            if L[p] == c:
                R[p] = x
            else:
                L[p] = x
            L[c], R[c] = other, s
            P[x], P[s] = p, c
            legs_of[c] = new_c
            total = candidate
            if total < best_total:
                best_total, best_shape = total, tree.snapshot()
        temperature *= ratio
    return tree.to_merges(best_shape)


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def _search(
    legs: list[int], budget: int, seed: int, component: int
) -> list[tuple[int, int]]:
    merges, spent = _greedy(legs)
    best, best_cost = merges, _replay(tuple(legs), merges)[0]
    restart = 0
    while spent < budget * RESTART_SHARE:
        rng = point_rng(seed, component, restart)
        candidate, used = _greedy(legs, rng, GREEDY_TEMPERATURE)
        spent += used
        cost = _replay(tuple(legs), candidate)[0]
        if cost < best_cost:
            best, best_cost = candidate, cost
        restart += 1
    moves = (budget - spent) // 2
    if moves > 0:
        best = _anneal(legs, best, moves, point_rng(seed, component, restart))
    logger.debug(
        "component %d: %d tensors, %d restarts, %d annealing moves",
        component,
        len(legs),
        restart,
        max(moves, 0),
    )
    return best


def optimize_order(
    network: TensorNetwork, *, budget: int | None = None, seed: int = 0
) -> ContractionPlan:
    """
    Best merge tree found within *budget* merge evaluations (default
    EFFVOL_OPTIMIZER_BUDGET). Disconnected components are planned separately
    and joined by outer products in ascending rank; their costs add up.
    """
    budget = settings.EFFVOL_OPTIMIZER_BUDGET if budget is None else budget
    if budget < 0:
        raise ValidationError(f"optimizer budget must be non-negative, got {budget}")
    legs = network.legs()
    n = len(legs)
    if n == 0:
        return make_plan((), ())

    groups = components(legs)
    merges: list[tuple[int, int]] = []
    current = list(legs)
    roots: list[int] = []
    total_size = sum(len(g) for g in groups if len(g) > EXACT_LIMIT) or 1
    for k, group in enumerate(groups):
        local_legs = [legs[t] for t in group]
        if len(group) == 1:
            roots.append(group[0])
            continue
        if len(group) <= EXACT_LIMIT:
            local, _ = _exact(local_legs)
        else:
            share = budget * len(group) // total_size
            local = _search(local_legs, share, seed, k)
        mapping = list(group)
        for i, j in local:
            a, b = mapping[i], mapping[j]
            merges.append((a, b))
            current.append(current[a] ^ current[b])
            mapping.append(n + len(merges) - 1)
        roots.append(mapping[-1])

    roots.sort(key=lambda t: (_rank(current[t]), t))
    acc = roots[0]
    for t in roots[1:]:
        merges.append((acc, t))
        current.append(current[acc] ^ current[t])
        acc = n + len(merges) - 1

    plan = make_plan(legs, merges)
    logger.info(
        "Planned %d tensors in %d component(s): 2^%.2f multiplications, peak rank %d",
        n,
        len(groups),
        plan.cost_log2,
        plan.peak_rank,
    )
    return plan


# ---------------------------------------------------------------------------
# Structured text
# ---------------------------------------------------------------------------


def plan_to_dict(plan: ContractionPlan) -> dict[str, Any]:
    return {
        "n_tensors": plan.n_tensors,
        "merges": [list(pair) for pair in plan.merges],
        "cost_log2": plan.cost_log2,
        "peak_rank": plan.peak_rank,
    }


def plan_to_json(plan: ContractionPlan) -> str:
    return json.dumps(plan_to_dict(plan))


def plan_from_json(text: str, network: TensorNetwork) -> ContractionPlan:
    """Rebuild a plan for *network*; the cost is recomputed, never trusted."""
    try:
        doc = json.loads(text)
        merges = [(int(i), int(j)) for i, j in doc["merges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed contraction plan: {exc}") from exc
    if doc.get("n_tensors", len(network)) != len(network):
        raise ValidationError(
            f"plan covers {doc['n_tensors']} tensors, network has {len(network)}"
        )
    return make_plan(network.legs(), merges)


__all__ = [
    "EXACT_LIMIT",
    "ContractionPlan",
    "components",
    "contraction_cost",
    "make_plan",
    "optimize_order",
    "plan_from_json",
    "plan_to_dict",
    "plan_to_json",
]
