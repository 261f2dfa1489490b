"""Shared helpers for the test suite.

The reference implementations below are deliberately written from scratch in
a different style from the package (plain BFS over assignment tuples,
brute-force truth tables), so that agreement between package and reference is
evidence rather than tautology.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import permutations
from pathlib import Path
from typing import Optional

import pytest

from swapreach.core import Instance

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


def ref_reachable(
    inst: Instance, cap: int = 500_000
) -> Optional[tuple[tuple[int, int], ...]]:
    """Shortest swap sequence bringing the target object to the target agent.

    Breadth-first search over assignment tuples; None when unreachable.
    Raises RuntimeError if the state space exceeds `cap` (test bug guard).
    """
    start = tuple(inst.initial_of(i) for i in range(1, inst.n + 1))
    ti = inst.target_agent - 1
    if start[ti] == inst.target_object:
        return ()
    edges = sorted(inst.edges)
    parent: dict[tuple, Optional[tuple]] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i, j in edges:
            oi, oj = cur[i - 1], cur[j - 1]
            if not (inst.prefers(i, oj, oi) and inst.prefers(j, oi, oj)):
                continue
            nxt = list(cur)
            nxt[i - 1], nxt[j - 1] = oj, oi
            nxt = tuple(nxt)
            if nxt in parent:
                continue
            parent[nxt] = (cur, (i, j))
            if nxt[ti] == inst.target_object:
                seq = []
                state = nxt
                while parent[state] is not None:
                    state, swap = parent[state]
                    seq.append(swap)
                return tuple(reversed(seq))
            queue.append(nxt)
            if len(parent) > cap:
                raise RuntimeError("reference search exceeded its state cap")
    return None


def ref_sat(n_vars: int, clauses) -> bool:
    """Truth-table satisfiability for arbitrary clause lengths."""
    for bits in range(1 << n_vars):
        if all(
            any(
                (bits >> (abs(lit) - 1)) & 1 == (1 if lit > 0 else 0)
                for lit in clause
            )
            for clause in clauses
        ):
            return True
    return False


def sat_assignments(n_vars: int, clauses) -> list[int]:
    """All satisfying bit patterns (bit v-1 = variable v)."""
    out = []
    for bits in range(1 << n_vars):
        if all(
            any(
                (bits >> (abs(lit) - 1)) & 1 == (1 if lit > 0 else 0)
                for lit in clause
            )
            for clause in clauses
        ):
            out.append(bits)
    return out


def rand_caterpillar_formula(rng: random.Random, n_vars: int):
    """Random formula where each variable occurs twice positive, once negative.

    Clause sizes 1..3 with distinct variables inside each clause.
    """
    from swapreach.generators import RestrictedFormula

    tokens = []
    for v in range(1, n_vars + 1):
        tokens.extend([v, v, -v])
    rng.shuffle(tokens)
    clauses = []
    while tokens:
        want = rng.randint(1, 3)
        clause: list[int] = []
        for tok in list(tokens):
            if len(clause) >= want:
                break
            if abs(tok) not in {abs(l) for l in clause}:
                clause.append(tok)
                tokens.remove(tok)
        clauses.append(tuple(clause))
    rng.shuffle(clauses)
    return RestrictedFormula(n_vars=n_vars, clauses=tuple(clauses))


def spine_and_hairs_ok(inst: Instance) -> None:
    """Assert the caterpillar layout: a tree with a single vertex of degree
    above two, and every off-spine vertex within two edges of the spine."""
    from collections import deque

    adj: dict[int, set[int]] = {v: set() for v in range(1, inst.n + 1)}
    for i, j in inst.edges:
        adj[i].add(j)
        adj[j].add(i)
    assert len(inst.edges) == inst.n - 1
    seen = {1}
    stack = [1]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    assert len(seen) == inst.n  # connected, hence a tree
    high = [v for v in adj if len(adj[v]) > 2]
    assert high == [inst.target_agent]
    hub = high[0]
    tail = inst.holder("t")
    parent: dict[int, int | None] = {hub: None}
    queue = deque([hub])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                queue.append(u)
    spine = set()
    walk: int | None = tail
    while walk is not None:
        spine.add(walk)
        walk = parent[walk]
    dist = {v: 0 for v in spine}
    queue = deque(spine)
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    assert all(d <= 2 for d in dist.values())


def all_clique_formulas(max_vars: int = 3, max_clauses: int = 3):
    """Every formula accepted by the clique reduction, up to symmetry choices.

    Clauses are taken as unordered sets of literals (written in a fixed
    canonical order), formulas as unordered sets of distinct clauses; every
    variable 1..v must occur.  Yields RestrictedFormula objects.
    """
    from itertools import combinations

    from swapreach.generators import RestrictedFormula, validate_restricted

    out = []
    for v in range(2, max_vars + 1):
        universe = []
        for size in (2, 3):
            for var_set in combinations(range(1, v + 1), size):
                for signs in range(1 << size):
                    universe.append(
                        tuple(
                            var if not (signs >> k) & 1 else -var
                            for k, var in enumerate(var_set)
                        )
                    )
        for count in range(1, max_clauses + 1):
            for chosen in combinations(universe, count):
                if any(
                    not any(abs(lit) == var for clause in chosen for lit in clause)
                    for var in range(1, v + 1)
                ):
                    continue
                f = RestrictedFormula(n_vars=v, clauses=chosen)
                if validate_restricted(f, shape="clique") is None:
                    out.append(f)
    return out
