"""Brute-force decision oracle: BFS over the reachable assignment space.

Rational swaps strictly improve both participants, so an agent never accepts
an object she previously gave away. Reachability is therefore a function of
the current assignment alone and plain BFS over assignments is exact. BFS
order also makes returned certificates shortest, which the golden tests rely
on.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .core import Instance, SwapSequence, verify_certificate

DEFAULT_MAX_STATES = 5_000_000
_UNRANKED = 1 << 30


def _budget(max_states: Optional[int]) -> int:
    if max_states is not None:
        return max_states
    env = os.environ.get("SWAPREACH_MAX_STATES")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MAX_STATES


@dataclass(frozen=True)
class SearchState:
    """One explored assignment: packed permutation key + predecessor link."""

    key: bytes
    parent: Optional[int]  # index into the exploration order, None at the root
    swap: Optional[tuple[int, int]]


@dataclass(frozen=True)
class ReachableSet:
    """Assignments reachable from the start (as object-name tuples, agent order).

    `complete` is False when the state budget ran out; the set is then a
    lower approximation and "no" conclusions must not be drawn from it.
    """

    assignments: frozenset[tuple[str, ...]]
    complete: bool
    states: int


@dataclass(frozen=True)
class OracleResult:
    status: str  # "yes" | "no" | "unknown"
    certificate: Optional[SwapSequence]
    states: int

    def __bool__(self) -> bool:
        return self.status == "yes"


def _prepare(inst: Instance):
    obj_idx = {o: k for k, o in enumerate(inst.objects)}
    # rank[i][o] with _UNRANKED for unlisted objects; an agent's current
    # object is always ranked (initial is listed, swaps only improve).
    rank = [[_UNRANKED] * inst.n for _ in range(inst.n)]
    for i in range(inst.n):
        for r, o in enumerate(inst.prefs[i]):
            rank[i][obj_idx[o]] = r
    edges = sorted((i - 1, j - 1) for i, j in inst.edges)
    start = bytes(obj_idx[inst.initial_of(i)] for i in range(1, inst.n + 1))
    return obj_idx, rank, edges, start


def _expand(rank, edges, state: bytes):
    """Yield (i0, j0, next_state) for every admitted swap from `state`."""
    for i, j in edges:
        oi = state[i]
        oj = state[j]
        ri = rank[i]
        rj = rank[j]
        if ri[oj] < ri[oi] and rj[oi] < rj[oj]:
            nxt = bytearray(state)
            nxt[i], nxt[j] = oj, oi
            yield i, j, bytes(nxt)


def reachable_set(inst: Instance, limit: int = DEFAULT_MAX_STATES) -> ReachableSet:
    """All assignments reachable from the initial one, up to `limit` states."""
    if limit <= 0:
        raise ValueError("limit must be positive")
    if inst.n > 255:
        raise ValueError("oracle supports at most 255 agents")
    _, rank, edges, start = _prepare(inst)
    seen = {start}
    frontier = [start]
    complete = True
    while frontier:
        nxt_frontier = []
        for state in frontier:
            for _, _, nxt in _expand(rank, edges, state):
                if nxt not in seen:
                    if len(seen) >= limit:
                        complete = False
                        break
                    seen.add(nxt)
                    nxt_frontier.append(nxt)
            if not complete:
                break
        if not complete:
            break
        frontier = nxt_frontier
    names = inst.objects
    return ReachableSet(
        assignments=frozenset(tuple(names[b] for b in s) for s in seen),
        complete=complete,
        states=len(seen),
    )


def oracle_decide(inst: Instance, max_states: Optional[int] = None) -> OracleResult:
    """Decide reachability by exhaustive BFS.

    Returns "yes" with a shortest verifying certificate, "no" only when the
    whole reachable space fit in the budget, and "unknown" otherwise. The
    budget defaults to SWAPREACH_MAX_STATES (env) or 5e6 states.
    """
    if inst.n > 255:
        raise ValueError("oracle supports at most 255 agents")
    budget = _budget(max_states)
    obj_idx, rank, edges, start = _prepare(inst)
    t = inst.target_agent - 1
    x = obj_idx[inst.target_object]
    if start[t] == x:
        return OracleResult("yes", (), 1)

    order = [SearchState(start, None, None)]
    index = {start: 0}
    head = 0
    goal: Optional[int] = None
    truncated = False
    while head < len(order) and goal is None:
        cur = order[head]
        for i, j, nxt in _expand(rank, edges, cur.key):
            if nxt in index:
                continue
            if len(order) >= budget:
                truncated = True
                break
            index[nxt] = len(order)
            order.append(SearchState(nxt, head, (i + 1, j + 1)))
            if nxt[t] == x:
                goal = len(order) - 1
                break
        if truncated:
            # Goals are detected on insertion, so nothing new can be found
            # once the budget blocks insertions.
            break
        head += 1

    if goal is None:
        status = "unknown" if truncated else "no"
        return OracleResult(status, None, len(order))

    swaps: list[tuple[int, int]] = []
    at: Optional[int] = goal
    while at is not None:
        st = order[at]
        if st.swap is not None:
            swaps.append(st.swap)
        at = st.parent
    cert = tuple(reversed(swaps))
    check = verify_certificate(inst, cert)
    if not check:
        raise AssertionError(
            f"oracle produced a non-verifying certificate ({check.reason} at {check.step})"
        )
    return OracleResult("yes", cert, len(order))
