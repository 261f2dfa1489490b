"""Linear-time solver for preference lists of length at most three.

The circulation of the target object is captured by a digraph D on the
agents: an arc (i, j) means the target object could move from i to j while j
still holds her starting object. With lists capped at three entries, every
vertex other than the object's holder has at most one outgoing arc, so D
decomposes into a few deterministic walks and reachability reduces to
following them. When no direct route exists, the one remaining possibility
is that the asking agent first accepts an intermediate object x_w; digraphs
D1 (circulation of x_w) and D2/D3 (the target's route after the x_w detour)
cover the two ways the detour can interleave with the main route.

Everything below works on the canonical relabeling produced by
core.canonicalize: asking agent 1, target object x_n starting at agent n,
and agent i starting with object x_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    CapabilityError,
    Instance,
    SwapSequence,
    canonicalize,
    verify_certificate,
)


@dataclass(frozen=True)
class Digraph:
    """Arc structure over agents 1..n with per-vertex successor tuples."""

    n: int
    out: tuple[tuple[int, ...], ...]

    def out_of(self, v: int) -> tuple[int, ...]:
        return self.out[v - 1]

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((v, u) for v in range(1, self.n + 1) for u in self.out[v - 1])

    def delete_vertices(self, dead: set[int]) -> "Digraph":
        new_out = tuple(
            () if v in dead else tuple(u for u in self.out[v - 1] if u not in dead)
            for v in range(1, self.n + 1)
        )
        return Digraph(self.n, new_out)


@dataclass(frozen=True)
class Len3Result:
    decision: bool
    certificate: Optional[SwapSequence]
    counters: dict[str, int] = field(compare=False)

    def __bool__(self) -> bool:
        return self.decision


def _require_canonical(inst: Instance) -> None:
    if inst.initial != inst.objects:
        raise ValueError("expected canonical form: agent i starts with the i-th object")
    if inst.target_agent != 1 or inst.target_object != inst.objects[-1]:
        raise ValueError("expected canonical form: target (agent 1, last object)")


def _require_short_lists(inst: Instance) -> None:
    if inst.max_list_len() > 3:
        raise CapabilityError(
            "preference lists longer than 3 entries; this solver only handles lists of length <= 3",
            alternatives=("path", "oracle"),
        )


def _check_degrees(d: Digraph, source: int) -> None:
    # With three-entry lists an arc out of v pins three distinct objects in
    # v's list, so non-source vertices have at most one successor and the
    # source (whose own object is the one circulating) at most two. The
    # walk enumeration below relies on this.
    for v in range(1, d.n + 1):
        cap = 2 if v == source else 1
        assert len(d.out[v - 1]) <= cap, f"out-degree of {v} exceeds {cap}"
    assert all(source not in d.out[v - 1] for v in range(1, d.n + 1)), (
        "circulating object cannot return to its holder"
    )


def _build_circulation(inst: Instance, carried: str, counters: Optional[dict] = None) -> Digraph:
    """Arcs (i,j) along which `carried` can move i -> j with j still at start."""
    succ: list[list[int]] = [[] for _ in range(inst.n)]
    checks = 0
    for i, j in sorted(inst.edges):
        xi, xj = inst.objects[i - 1], inst.objects[j - 1]
        checks += 2
        if inst.prefers(i, xj, carried) and inst.prefers(j, carried, xj):
            succ[i - 1].append(j)
        if inst.prefers(j, xi, carried) and inst.prefers(i, carried, xi):
            succ[j - 1].append(i)
    if counters is not None:
        counters["arc_checks"] = counters.get("arc_checks", 0) + checks
        counters["digraphs_built"] = counters.get("digraphs_built", 0) + 1
    return Digraph(inst.n, tuple(tuple(sorted(s)) for s in succ))


def build_D(inst: Instance, counters: Optional[dict] = None) -> Digraph:
    """Circulation digraph of the target object x_n (canonical instance)."""
    _require_canonical(inst)
    _require_short_lists(inst)
    d = _build_circulation(inst, inst.objects[-1], counters)
    _check_degrees(d, inst.n)
    return d


def build_D1(inst: Instance, w: str, counters: Optional[dict] = None) -> Digraph:
    """Circulation digraph of the detour object x_w (canonical instance)."""
    _require_canonical(inst)
    _require_short_lists(inst)
    if w not in inst.objects:
        raise ValueError(f"unknown object {w!r}")
    d = _build_circulation(inst, w, counters)
    _check_degrees(d, inst.objects.index(w) + 1)
    return d


def _replaced_final_arcs(inst: Instance, w: str, counters: Optional[dict] = None) -> list[int]:
    """Agents j that can hand x_n to agent 1 once agent 1 holds x_w.

    Agent 1 upgrades x_w -> x_n by construction of w; agent j must accept
    x_w in exchange, and {j,1} must be an edge (the arc is a physical swap).
    """
    xn = inst.objects[-1]
    out = []
    for j in range(2, inst.n + 1):
        if counters is not None:
            counters["arc_checks"] = counters.get("arc_checks", 0) + 1
        if inst.adjacent(j, 1) and inst.prefers(j, w, xn):
            out.append(j)
    return out


def _with_final_arcs_into_1(d: Digraph, finals: Sequence[int]) -> Digraph:
    finals_set = set(finals)
    new_out = []
    for v in range(1, d.n + 1):
        succ = [u for u in d.out[v - 1] if u != 1]
        if v in finals_set:
            succ.append(1)
        new_out.append(tuple(sorted(succ)))
    return Digraph(d.n, tuple(new_out))


def build_D2(
    inst: Instance,
    D: Digraph,
    path_agents: Sequence[int],
    counters: Optional[dict] = None,
) -> Digraph:
    """D with the detour path's interior removed and arcs into 1 rebuilt.

    `path_agents` are the interior agents of the x_w path (between n and 1).
    Arcs into agent 1 are replaced: after the detour she holds x_w, so the
    original conditions for handing her x_n no longer describe reality.
    """
    _require_canonical(inst)
    w = _find_w(inst)
    if w is None:
        raise ValueError("agent 1's list has no middle object between x_n and x_1")
    d = D.delete_vertices(set(path_agents))
    return _with_final_arcs_into_1(d, _replaced_final_arcs(inst, w, counters))


def build_D3(
    inst: Instance,
    D: Digraph,
    w: str,
    path_agents: Sequence[int],
    counters: Optional[dict] = None,
) -> Digraph:
    """Like build_D2 but the detour avoided n: w's agent is removed as well."""
    _require_canonical(inst)
    w_agent = inst.objects.index(w) + 1
    d = D.delete_vertices(set(path_agents) | {w_agent})
    return _with_final_arcs_into_1(d, _replaced_final_arcs(inst, w, counters))


def constrained_path(
    digraph: Digraph,
    frm: int,
    to: int,
    first_arc_constraint: Optional[tuple[str, tuple[int, int]]] = None,
    counters: Optional[dict] = None,
) -> Optional[list[int]]:
    """A simple directed path frm -> to, optionally constraining the first arc.

    `first_arc_constraint` is None, ("require", (a,b)) or ("forbid", (a,b)).
    Backtracking DFS; with the degree bounds of the derived digraphs this
    degenerates to at most two deterministic walks.
    """
    kind, arc = first_arc_constraint if first_arc_constraint else (None, None)
    if kind not in (None, "require", "forbid"):
        raise ValueError(f"unknown first-arc constraint {kind!r}")
    if frm == to:
        return None if kind == "require" else [frm]

    def successors(v: int, depth: int) -> list[int]:
        outs = digraph.out_of(v)
        if depth == 0:
            if kind == "require":
                outs = tuple(u for u in outs if (v, u) == arc)
            elif kind == "forbid":
                outs = tuple(u for u in outs if (v, u) != arc)
        return [u for u in outs if u not in onpath]

    path = [frm]
    onpath = {frm}
    iters = [iter(successors(frm, 0))]
    steps = 0
    while iters:
        u = next(iters[-1], None)
        if u is None:
            iters.pop()
            onpath.discard(path.pop())
            continue
        steps += 1
        path.append(u)
        onpath.add(u)
        if u == to:
            if counters is not None:
                counters["walk_steps"] = counters.get("walk_steps", 0) + steps
            return path
        iters.append(iter(successors(u, len(iters))))
    if counters is not None:
        counters["walk_steps"] = counters.get("walk_steps", 0) + steps
    return None


def _find_w(inst: Instance) -> Optional[str]:
    """The unique object strictly between x_n and x_1 in agent 1's list."""
    lst = inst.pref(1)
    xn = inst.objects[-1]
    x1 = inst.objects[0]
    if xn not in lst:
        return None
    i_n = lst.index(xn)
    i_1 = lst.index(x1)
    between = lst[i_n + 1 : i_1]
    assert len(between) <= 1, "three-entry list admits at most one middle object"
    return between[0] if between else None


def _pairs(path: Sequence[int]) -> list[tuple[int, int]]:
    return [(path[k], path[k + 1]) for k in range(len(path) - 1)]


def solve_len3(inst: Instance) -> Len3Result:
    """Decide reachability for an instance whose lists have at most 3 entries.

    Returns a verified certificate on yes. Raises CapabilityError when some
    list is longer than three entries.
    """
    _require_short_lists(inst)
    counters: dict[str, int] = {"arc_checks": 0, "walk_steps": 0, "digraphs_built": 0}
    if inst.initial_of(inst.target_agent) == inst.target_object:
        return Len3Result(True, (), counters)

    canon, maps = canonicalize(inst)
    n = canon.n
    D = build_D(canon, counters)

    def finish(cert_canon: list[tuple[int, int]]) -> Len3Result:
        cert = maps.certificate_back(cert_canon)
        check = verify_certificate(inst, cert)
        if not check:
            raise AssertionError(
                f"synthesized certificate failed verification ({check.reason} at step {check.step})"
            )
        return Len3Result(True, cert, counters)

    direct = constrained_path(D, n, 1, counters=counters)
    if direct is not None:
        return finish(_pairs(direct))

    w = _find_w(canon)
    if w is None:
        return Len3Result(False, None, counters)
    w_agent = canon.objects.index(w) + 1

    D1 = build_D1(canon, w, counters)
    for first_hop in D1.out_of(w_agent):
        p1 = constrained_path(
            D1, w_agent, 1, ("require", (w_agent, first_hop)), counters
        )
        if p1 is None:
            continue
        if first_hop == n:
            # detour starts by swapping x_w with the holder of x_n; the two
            # routes share that first swap
            interior = p1[2:-1]
            D2 = build_D2(canon, D, interior, counters)
            p2 = constrained_path(D2, n, 1, ("require", (n, w_agent)), counters)
            if p2 is not None:
                cert = [(w_agent, n)] + _pairs(p1[1:]) + _pairs(p2[1:])
                return finish(cert)
        else:
            interior = p1[1:-1]
            if n in interior:
                # the detour would displace x_n itself; this branch cannot
                # be completed (the route digraph loses vertex n)
                continue
            D3 = build_D3(canon, D, w, interior, counters)
            p2 = constrained_path(D3, n, 1, ("forbid", (n, w_agent)), counters)
            if p2 is not None:
                return finish(_pairs(p1) + _pairs(p2))

    return Len3Result(False, None, counters)
