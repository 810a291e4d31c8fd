"""Exact finite Markov chains: sparse kernels, closed classes, stationary laws.

Kernels are row-stochastic with exact rational entries; every row stores its
holding mass explicitly so rows sum to 1 exactly.  The stationary solver is
a state-elimination scheme (subtraction-free, so exact over the rationals)
with a fill-reducing elimination order, and the result is re-verified
against pi . P = pi before it is returned.
"""
from __future__ import annotations

import heapq
import random
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import NotIrreducible
from .ratio import ONE, R, ZERO, fmt_ratio, parse_ratio

State = Hashable


class Kernel:
    """A finite row-stochastic matrix over exact rationals."""

    def __init__(self, states: Sequence[State], rows: Sequence[Mapping[int, object]]):
        self.states = tuple(states)
        self.index = {s: i for i, s in enumerate(self.states)}
        if len(self.index) != len(self.states):
            raise ValueError("duplicate states")
        self.rows = tuple({j: R(p) for j, p in row.items() if p != 0} for row in rows)
        for i, row in enumerate(self.rows):
            if any(p < 0 or p > 1 for p in row.values()):
                raise ValueError(f"probability outside [0,1] in row {i}")
            if sum(row.values(), ZERO) != 1:
                raise ValueError(f"row {i} does not sum to 1")

    def __len__(self) -> int:
        return len(self.states)

    def prob(self, src: State, dst: State):
        return self.rows[self.index[src]].get(self.index[dst], ZERO)

    def row(self, src: State) -> dict[State, object]:
        return {self.states[j]: p for j, p in self.rows[self.index[src]].items()}

    def restrict(self, keep: Iterable[State]) -> "Kernel":
        """Sub-kernel on a closed set of states (rows must not leave it)."""
        keep_set = set(keep)
        states = [s for s in self.states if s in keep_set]
        idx = {self.index[s] for s in states}
        rows = []
        for s in states:
            row = self.rows[self.index[s]]
            if any(j not in idx for j in row):
                raise ValueError(f"state {s!r} has transitions leaving the set")
            rows.append({states.index(self.states[j]): p for j, p in row.items()})
        return Kernel(states, rows)


def build_kernel(
    states: Sequence[State],
    moves: Callable[[State], Iterable[tuple[State, object]]],
) -> Kernel:
    """Assemble a kernel from per-state move lists; leftover mass holds."""
    states = tuple(states)
    index = {s: i for i, s in enumerate(states)}
    rows = []
    for s in states:
        row: dict[int, object] = {}
        total = ZERO
        for target, p in moves(s):
            p = R(p)
            if p == 0:
                continue
            j = index[target]
            row[j] = row.get(j, ZERO) + p
            total += p
        hold = ONE - total
        if hold != 0:
            i = index[s]
            row[i] = row.get(i, ZERO) + hold
        rows.append(row)
    return Kernel(states, rows)


@dataclass(frozen=True)
class CommClass:
    states: frozenset
    closed: bool


def communicating_classes(kernel: Kernel) -> list[CommClass]:
    """Strongly connected components of the transition digraph, closed-flagged."""
    m = len(kernel)
    adj = [tuple(j for j in row if j != i) for i, row in enumerate(kernel.rows)]
    # Tarjan, iterative.
    indices = [-1] * m
    low = [0] * m
    on_stack = [False] * m
    stack: list[int] = []
    comp_of = [-1] * m
    comps: list[list[int]] = []
    counter = 0
    for root in range(m):
        if indices[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                indices[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(adj[v])):
                u = adj[v][k]
                if indices[u] == -1:
                    work[-1] = (v, k + 1)
                    work.append((u, 0))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], indices[u])
            if advanced:
                continue
            if low[v] == indices[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp_of[u] = len(comps)
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    out = []
    for ci, comp in enumerate(comps):
        closed = all(
            comp_of[j] == ci for i in comp for j in kernel.rows[i] if j != i
        )
        out.append(
            CommClass(frozenset(kernel.states[i] for i in comp), closed)
        )
    return out


class Dist(Mapping):
    """A probability vector over states, exact and summing to 1."""

    def __init__(self, probs: Mapping[State, object], check: bool = True):
        self._p = {s: R(p) for s, p in probs.items()}
        if check:
            if any(p < 0 for p in self._p.values()):
                raise ValueError("negative probability")
            if sum(self._p.values(), ZERO) != 1:
                raise ValueError("probabilities do not sum to 1")

    def __getitem__(self, s):
        return self._p.get(s, ZERO)

    def __iter__(self):
        return iter(self._p)

    def __len__(self):
        return len(self._p)

    def __eq__(self, other):
        if not isinstance(other, Dist):
            return NotImplemented
        keys = set(self._p) | set(other._p)
        return all(self[k] == other[k] for k in keys)

    def support(self):
        return {s for s, p in self._p.items() if p > 0}

    def to_json_obj(self, state_key=None) -> list:
        items = self._p.items()
        if state_key is not None:
            items = sorted(items, key=lambda kv: state_key(kv[0]))
        return [{"state": _state_json(s), "p": fmt_ratio(p)} for s, p in items]


def dist_from_json_obj(obj: list, state_decoder=None) -> Dist:
    probs = {}
    for entry in obj:
        s = entry["state"]
        if state_decoder is not None:
            s = state_decoder(s)
        elif isinstance(s, list):
            s = tuple(tuple(x) if isinstance(x, list) else x for x in s)
        probs[s] = parse_ratio(entry["p"])
    return Dist(probs)


def _state_json(s):
    if isinstance(s, tuple):
        return [_state_json(x) for x in s]
    return s


def total_variation(a: Mapping, b: Mapping) -> float:
    keys = set(a) | set(b)
    return float(sum(abs(R(a.get(k, 0)) - R(b.get(k, 0))) for k in keys)) / 2.0


def exact_stationary(kernel: Kernel) -> Dist:
    """The unique stationary distribution, exactly.

    Requires a unique closed communicating class; transient states get
    probability zero.  Solved by censoring states one at a time (all
    updates are additions of nonnegative rationals) and back-substituting,
    with the elimination order chosen greedily to limit fill-in.
    """
    classes = communicating_classes(kernel)
    closed = [c for c in classes if c.closed]
    if len(closed) != 1:
        raise NotIrreducible(f"{len(closed)} closed classes")
    members = sorted(kernel.index[s] for s in closed[0].states)
    pi_idx = _gth(kernel, members)
    # Exact re-verification of stationarity.
    if sum(pi_idx.values(), ZERO) != 1:
        raise AssertionError("stationary vector does not sum to 1")
    flow: dict[int, object] = {}
    for i, p in pi_idx.items():
        for j, q in kernel.rows[i].items():
            flow[j] = flow.get(j, ZERO) + p * q
    if any(flow.get(i, ZERO) != p for i, p in pi_idx.items()):
        raise AssertionError("stationarity check failed")
    probs = {s: ZERO for s in kernel.states}
    for i, p in pi_idx.items():
        probs[kernel.states[i]] = p
    return Dist(probs)


def _gth(kernel: Kernel, members: list[int]) -> dict[int, object]:
    member_set = set(members)
    out = {
        i: {j: p for j, p in kernel.rows[i].items() if j != i and j in member_set}
        for i in members
    }
    inn: dict[int, set[int]] = {i: set() for i in members}
    for i, row in out.items():
        for j in row:
            inn[j].add(i)
    heap = [(len(inn[i]) * len(out[i]), i) for i in members]
    heapq.heapify(heap)
    active = set(members)
    order: list[tuple[int, dict[int, object]]] = []
    while len(active) > 1:
        while True:
            cost, k = heapq.heappop(heap)
            if k in active:
                cur = len(inn[k]) * len(out[k])
                if cur <= cost:
                    break
                heapq.heappush(heap, (cur, k))
        denom = sum(out[k].values(), ZERO)
        cols_k: dict[int, object] = {}
        preds = [i for i in inn[k] if i in active]
        succs = list(out[k].items())
        for i in preds:
            f = out[i].pop(k) / denom
            cols_k[i] = f
            row_i = out[i]
            for j, pkj in succs:
                if j == i:
                    continue
                row_i[j] = row_i.get(j, ZERO) + f * pkj
                inn[j].add(i)
        for j, _ in succs:
            inn[j].discard(k)
        active.remove(k)
        out[k] = {}
        inn[k] = set()
        order.append((k, cols_k))
        for i in preds:
            heapq.heappush(heap, (len(inn[i]) * len(out[i]), i))
    root = active.pop()
    pi = {root: ONE}
    for k, cols in reversed(order):
        pi[k] = sum((pi[i] * f for i, f in cols.items()), ZERO)
    total = sum(pi.values(), ZERO)
    return {i: p / total for i, p in pi.items()}


def derive_stream(seed: int, trial: int) -> int:
    """Deterministic per-trial PRNG seed derived from (seed, trial)."""
    return (seed * 1_000_003 + trial) & 0x7FFFFFFFFFFFFFFF


@dataclass(frozen=True)
class McEstimate:
    dist: Dist
    steps: int
    burn_in: int
    seed: int


def mc_estimate(kernel: Kernel, steps: int, burn_in: int = 0, seed: int = 0) -> McEstimate:
    """Occupation frequencies of a single simulated trajectory.

    Deterministic for a fixed seed (Mersenne Twister stream derived from
    (seed, 0)).  Frequencies are exact counts over `steps` samples taken
    after `burn_in` steps.
    """
    if steps <= 0:
        raise ValueError("steps must be positive")
    rng = random.Random(derive_stream(seed, 0))
    m = len(kernel)
    cum_rows = []
    target_rows = []
    for row in kernel.rows:
        targets = list(row)
        cum = []
        acc = 0.0
        for j in targets:
            acc += float(row[j])
            cum.append(acc)
        cum[-1] = 1.0 + 1e-12
        cum_rows.append(cum)
        target_rows.append(targets)
    state = 0
    rnd = rng.random
    for _ in range(burn_in):
        state = target_rows[state][bisect_right(cum_rows[state], rnd())]
    counts = [0] * m
    for _ in range(steps):
        state = target_rows[state][bisect_right(cum_rows[state], rnd())]
        counts[state] += 1
    dist = Dist(
        {kernel.states[i]: R(c, steps) for i, c in enumerate(counts) if c},
        check=False,
    )
    return McEstimate(dist, steps, burn_in, seed)
