"""Linear-time 2-SAT via strongly connected components of the implication graph.

A clause (a or b) contributes the implications (not a -> b) and (not b -> a).
The formula is satisfiable exactly when no variable shares a component with
its negation. We use Kosaraju's two-pass DFS: the second pass discovers
components in topological order of the condensation, so a variable is set
true precisely when its positive literal's component comes later than its
negative literal's component. That classic rule yields a valid model, and we
re-check the model against the clause list before returning it anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class TwoSatFormula:
    """Binary clauses over variables 1..n_vars. Literal k>0 means v_k, k<0 its negation."""

    n_vars: int
    clauses: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vars < 0:
            raise ValueError("negative variable count")
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 2:
                raise ValueError(f"clause {c!r} is not binary")
            for lit in c:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"malformed literal {lit!r}")


def _node(lit: int) -> int:
    # negative literal -> even node, positive -> odd; node ^ 1 is the negation
    v = abs(lit) - 1
    return 2 * v + (1 if lit > 0 else 0)


def solve_2sat(f: TwoSatFormula) -> Optional[dict[int, bool]]:
    """Return a satisfying model (variable -> bool) or None when unsatisfiable."""
    nn = 2 * f.n_vars
    adj: list[list[int]] = [[] for _ in range(nn)]
    radj: list[list[int]] = [[] for _ in range(nn)]
    for a, b in f.clauses:
        # (a or b): not a implies b, not b implies a
        for src, dst in ((_node(-a), _node(b)), (_node(-b), _node(a))):
            adj[src].append(dst)
            radj[dst].append(src)

    # pass 1: DFS finish order on the implication graph (iterative: the
    # instances coming out of the path solver can chain implications long
    # enough to trip the recursion limit)
    visited = [False] * nn
    finish: list[int] = []
    for s in range(nn):
        if visited[s]:
            continue
        visited[s] = True
        stack: list[tuple[int, int]] = [(s, 0)]
        while stack:
            v, ei = stack[-1]
            if ei < len(adj[v]):
                stack[-1] = (v, ei + 1)
                u = adj[v][ei]
                if not visited[u]:
                    visited[u] = True
                    stack.append((u, 0))
            else:
                finish.append(v)
                stack.pop()

    # pass 2: reverse graph in reverse finish order; component ids come out
    # in topological order of the condensation
    comp = [-1] * nn
    cid = 0
    for s in reversed(finish):
        if comp[s] != -1:
            continue
        comp[s] = cid
        stack2 = [s]
        while stack2:
            v = stack2.pop()
            for u in radj[v]:
                if comp[u] == -1:
                    comp[u] = cid
                    stack2.append(u)
        cid += 1

    model: dict[int, bool] = {}
    for v in range(1, f.n_vars + 1):
        pos, neg = comp[_node(v)], comp[_node(-v)]
        if pos == neg:
            return None
        model[v] = pos > neg

    for a, b in f.clauses:  # self-check; a failure here is a solver bug
        if not ((model[abs(a)] == (a > 0)) or (model[abs(b)] == (b > 0))):
            raise AssertionError(f"2-SAT model violates clause ({a},{b})")
    return model
