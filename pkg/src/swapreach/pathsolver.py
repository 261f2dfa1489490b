"""Polynomial-time decision procedure for reachability on path graphs.

The solver works in the coordinates of :class:`~swapreach.core.PathInstance`:
agents are positions ``1..n`` on a path, the object initially held by
position ``p`` is the integer ``p``, and the question is whether object
``x = n`` can travel left to the target agent ``I`` through rational swaps.

The structure the solver exploits:

*   In any successful sequence every object travels in one direction only —
    an agent never accepts an object she gave away earlier, so an object
    that turned around would eventually force exactly that.  ``x`` travels
    left and crosses each of the edges between ``I`` and ``n`` exactly once,
    which means exactly ``n - I`` objects travel right, one crossing ``x``
    per edge.  Call the object crossing ``x`` on edge ``{I+t-1, I+t}`` the
    type-``t`` right mover.
*   For two fixed objects and a fixed agent who must end up holding one of
    them there is at most one edge where the two can ever be exchanged
    (:func:`swap_edge`).  Applied to ``x`` this gives every object a single
    plausible crossing edge — its *type* (:func:`compute_types`).  Applied
    to the type-1 object ``z`` (the one the target agent trades away last)
    it pins where every left mover must cross ``z``.
*   Counting the left steps a candidate needs before its ``z`` crossing
    sorts each type's candidates into "may start right of the chosen mover"
    (subtype ``r``) and "must start left of it" (subtype ``l``), which cuts
    every type down to at most two viable candidates
    (:func:`compute_subtypes`, :func:`prune_candidates`,
    :func:`resolve_type0`).
*   Candidates of consecutive types interleave into *blocks*
    (:func:`compute_blocks`).  Each block admits at most two workable
    selections of right movers (:func:`block_selections`); a selection can
    be vetted on its own (:func:`selection_consistent`) and two blocks can
    disagree only pairwise (:func:`selections_compatible`), so the global
    choice reduces to 2-SAT with one variable per block.
*   A satisfying assignment is enacted by a greedy simulation and the swap
    sequence is replayed for verification before the solver answers yes.

Everything is deterministic; ties break by path position throughout.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .core import Instance, PathInstance, SwapSequence, canonicalize_path, verify_certificate
from .twosat import TwoSatFormula, solve_2sat

SUBTYPE_L = "l"
SUBTYPE_R = "r"

_COUNTER_KEYS = (
    "edge_scans",
    "scan_steps",
    "pair_checks",
    "fixpoint_rounds",
    "enact_swaps",
    "z_tried",
)


class InternalInvariantError(AssertionError):
    """An accepted intermediate state violated a structural guarantee.

    Raising this is a bug signal about the solver itself, never a statement
    about the input instance.
    """


def _bump(counters: dict[str, int] | None, key: str, amount: int = 1) -> None:
    if counters is not None:
        counters[key] = counters.get(key, 0) + amount


# -- the unique meeting edge ---------------------------------------------------


def swap_edge(
    p: PathInstance, i: int, w: int, y: int, counters: dict[str, int] | None = None
) -> int | None:
    """Left endpoint of the unique edge where ``w`` and ``y`` could be swapped.

    ``i`` is the position that must end up holding ``w`` after the swaps
    under consideration.  Since objects only ever move toward their final
    position, there is at most one chance for the two objects to sit on
    neighbouring agents who both agree to trade.  The walk starts at the
    anchor ``e`` — the holder of ``y`` when ``i`` lies beyond it, otherwise
    ``i`` itself, which must then rank ``w`` above ``y`` — and hands ``y``
    toward ``w`` while every intermediate agent prefers ``w`` over ``y``;
    the first agent preferring ``y`` over ``w`` marks the meeting edge.  An
    agent ranking neither object can never make the required exchange, so
    she kills the edge.

    Returns ``j`` for the edge ``{j, j+1}``, or ``None`` when no edge exists.
    """
    if w == y:
        raise ValueError("swap_edge needs two distinct objects")
    _bump(counters, "edge_scans")
    pw, py = w, y  # objects are named by their initial positions
    if py < pw:
        # y sits left of w, so w travels leftward to meet it.
        if i > pw:
            return None
        if i < py:
            e = py
        else:
            if not p.prefers(i, w, y):
                return None
            e = i
        for d in range(e + 1, pw + 1):
            _bump(counters, "scan_steps")
            if p.prefers(d, y, w):
                return d - 1
            if not p.prefers(d, w, y):
                return None
        return None
    # y sits right of w: the mirrored walk, scanning leftward.
    if i < pw:
        return None
    if i > py:
        e = py
    else:
        if not p.prefers(i, w, y):
            return None
        e = i
    for d in range(e - 1, pw - 1, -1):
        _bump(counters, "scan_steps")
        if p.prefers(d, y, w):
            return d
        if not p.prefers(d, w, y):
            return None
    return None


# -- typing state --------------------------------------------------------------


@dataclass
class ObjectTyping:
    """Typing state for every object except ``x``.

    ``type_of[y]`` is the index of the edge on which ``y`` could cross ``x``
    (0 when no such edge exists), ``subtype_of[y]`` is ``"l"``/``"r"``/
    ``None``, ``candidate[y]`` says whether ``y`` is still in the running as
    the right mover of its type, and ``z_edge[y]`` caches the left endpoint
    of the edge where ``y`` would cross the current type-1 object (filled by
    the pipeline stages that need it).
    """

    n: int
    target: int
    type_of: dict[int, int]
    subtype_of: dict[int, str | None]
    candidate: dict[int, bool]
    z_edge: dict[int, int | None]

    @property
    def max_type(self) -> int:
        return self.n - self.target

    def copy(self) -> "ObjectTyping":
        return ObjectTyping(
            n=self.n,
            target=self.target,
            type_of=dict(self.type_of),
            subtype_of=dict(self.subtype_of),
            candidate=dict(self.candidate),
            z_edge=dict(self.z_edge),
        )

    def objects_of_type(self, alpha: int) -> list[int]:
        return sorted(y for y, t in self.type_of.items() if t == alpha)

    def candidates_of_type(self, alpha: int) -> list[int]:
        return sorted(
            y for y, t in self.type_of.items() if t == alpha and self.candidate[y]
        )

    def pair_of(self, alpha: int) -> tuple[int, int]:
        """The (leftmost, rightmost) surviving candidate of a type.

        A single survivor plays both roles.
        """
        return _pair_checked(self.candidates_of_type(alpha), alpha)

    def candidate_buckets(self) -> dict[int, list[int]]:
        """Surviving candidates grouped by type, each list in path order.

        One pass over the typing; equivalent to calling candidates_of_type
        for every type but without the per-type rescan.
        """
        buckets: dict[int, list[int]] = {}
        for y in sorted(self.type_of):
            if self.candidate[y]:
                buckets.setdefault(self.type_of[y], []).append(y)
        return buckets

    def demote(self, y: int) -> None:
        """Re-type an object to 0; it is no longer a possible right mover."""
        self.type_of[y] = 0
        self.subtype_of[y] = None
        self.candidate[y] = False


def _pair_checked(cands: list[int], alpha: int) -> tuple[int, int]:
    if not cands:
        raise InternalInvariantError(f"type {alpha} has no candidate left")
    if len(cands) > 2:
        raise InternalInvariantError(f"type {alpha} kept {len(cands)} candidates")
    return cands[0], cands[-1]


def compute_types(
    p: PathInstance, counters: dict[str, int] | None = None
) -> ObjectTyping:
    """Assign every object the index of its crossing edge with ``x``.

    Objects with no crossing edge get type 0: they can never be exchanged
    with ``x`` and therefore never travel right in a successful sequence.
    """
    target = p.target
    type_of: dict[int, int] = {}
    subtype_of: dict[int, str | None] = {}
    candidate: dict[int, bool] = {}
    z_edge: dict[int, int | None] = {}
    for y in range(1, p.n):
        e = swap_edge(p, target, p.x, y, counters)
        if e is None:
            t = 0
        else:
            t = e - target + 1
            if t < 1:
                raise InternalInvariantError("crossing edge left of the target agent")
        type_of[y] = t
        subtype_of[y] = None
        candidate[y] = t >= 2
        z_edge[y] = None
    return ObjectTyping(
        n=p.n,
        target=target,
        type_of=type_of,
        subtype_of=subtype_of,
        candidate=candidate,
        z_edge=z_edge,
    )


def _retype_for_z(p: PathInstance, z: int, t: ObjectTyping) -> ObjectTyping | None:
    """Specialise a fresh typing to one choice of the type-1 object.

    Right movers keep their relative order and ``z`` is the leftmost of
    them, so the other type-1 objects and every candidate starting left of
    ``z`` are out.  Returns None when that already empties a type.
    """
    out = t.copy()
    for y in sorted(out.type_of):
        if y == z:
            out.candidate[y] = False
            continue
        ty = out.type_of[y]
        if ty == 1 or (ty >= 2 and y < z):
            out.demote(y)
    surviving = out.candidate_buckets()
    for alpha in range(2, out.max_type + 1):
        if not surviving.get(alpha):
            return None
    return out


def compute_subtypes(
    p: PathInstance,
    z: int,
    t: ObjectTyping,
    counters: dict[str, int] | None = None,
) -> ObjectTyping | None:
    """Classify each candidate by where it would have to cross ``z``.

    A candidate of type ``alpha`` sitting ``h`` left-steps away from its
    ``z`` crossing is passed, before that crossing, only by right movers of
    types ``2..h+1``.  If ``alpha`` itself falls in that range the candidate
    may start right of the type-``alpha`` mover (subtype ``r``); otherwise
    it must start left of it (subtype ``l``).  A candidate with no ``z``
    crossing at all can never travel left, so it is forced right and the
    rest of its type drops out; two such candidates in one type is an
    immediate dead end for this ``z``.
    """
    out = t.copy()
    target = out.target
    by_type = out.candidate_buckets()
    for alpha in range(2, out.max_type + 1):
        forced: list[int] = []
        cands = by_type.get(alpha, [])
        for y in cands:
            e = swap_edge(p, target, z, y, counters)
            out.z_edge[y] = e
            if e is None:
                forced.append(y)
            else:
                h = y - e - 1
                out.subtype_of[y] = SUBTYPE_R if alpha <= h + 1 else SUBTYPE_L
        if len(forced) >= 2:
            return None
        if forced:
            keeper = forced[0]
            out.subtype_of[keeper] = SUBTYPE_L
            for y in cands:
                if y != keeper:
                    out.demote(y)
    return out


def prune_candidates(t: ObjectTyping) -> ObjectTyping | None:
    """Keep at most two candidates per type: the last ``l`` and first ``r``.

    Along the path a type's candidates must read as a run of ``l`` followed
    by a run of ``r``: an ``r`` left of an ``l`` means one of them could
    neither travel right (its crossing count with ``z`` cannot match) nor
    stay left of the chosen mover, so the attempt with this ``z`` fails.
    Of an ordered run only the two innermost candidates can ever be picked;
    the rest are re-typed to 0.
    """
    out = t.copy()
    by_type = out.candidate_buckets()
    for alpha in range(2, out.max_type + 1):
        cands = by_type.get(alpha, [])
        subs = [out.subtype_of[y] for y in cands]
        if any(s not in (SUBTYPE_L, SUBTYPE_R) for s in subs):
            raise InternalInvariantError("candidate without a subtype")
        if SUBTYPE_R in subs:
            first_r = subs.index(SUBTYPE_R)
            if SUBTYPE_L in subs[first_r:]:
                return None
        keep = set()
        ells = [y for y, s in zip(cands, subs) if s == SUBTYPE_L]
        arrs = [y for y, s in zip(cands, subs) if s == SUBTYPE_R]
        if ells:
            keep.add(ells[-1])
        if arrs:
            keep.add(arrs[0])
        for y in cands:
            if y not in keep:
                out.demote(y)
    return out


def resolve_type0(
    p: PathInstance,
    z: int,
    t: ObjectTyping,
    counters: dict[str, int] | None = None,
) -> ObjectTyping | None:
    """Settle every type-0 object's crossing with ``z`` and prune the fallout.

    Each type-0 object right of ``z`` travels left and must cross ``z``
    somewhere, so its crossing edge has to exist.  Its distance ``h`` from
    that edge then rules out candidates on the wrong side: a right mover of
    type <= h+1 cannot start right of it and one of type > h+1 cannot start
    left of it.  Demotions create new type-0 objects, so this iterates to a
    fixed point, together with an ordering rule — a candidate needs a
    possible lower-type mover on its left and a possible higher-type mover
    on its right, or it could never slot into the mover order.  Afterwards
    every type-0 object must meet ``z`` exactly where the surviving layout
    says it will, with both agents at that edge willing to trade.
    """
    out = t.copy()
    target = out.target
    maxt = out.max_type
    corridor = range(z + 1, out.n)
    all_objects = sorted(out.type_of)

    cache: dict[int, int | None] = {}

    def zedge(y: int) -> int | None:
        if y not in cache:
            e = out.z_edge.get(y)
            if e is None:
                e = swap_edge(p, target, z, y, counters)
                out.z_edge[y] = e
            cache[y] = e
        return cache[y]

    def some_type_empty(by_type: dict[int, list[int]]) -> bool:
        return any(not by_type.get(a) for a in range(2, maxt + 1))

    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        if rounds > out.n + 2:
            raise InternalInvariantError("type-0 pruning failed to reach a fixed point")
        _bump(counters, "fixpoint_rounds")
        # A left mover's crossing distance pins which movers may pass it.
        for y in corridor:
            if out.type_of[y] != 0:
                continue
            e = zedge(y)
            if e is None:
                return None
            h = y - e - 1
            for w in all_objects:
                if not out.candidate[w]:
                    continue
                tw = out.type_of[w]
                if (w > y and tw <= h + 1) or (w < y and tw > h + 1):
                    out.demote(w)
                    changed = True
        by_type = out.candidate_buckets()
        if some_type_empty(by_type):
            return None
        # Movers must appear in type order, so every candidate needs room on
        # both sides: some candidate of each lower type to its left and of
        # each higher type to its right.
        minpos = {a: by_type[a][0] for a in range(2, maxt + 1)}
        maxpos = {a: by_type[a][-1] for a in range(2, maxt + 1)}
        prefix_need: dict[int, int] = {}  # max over lower types of their min position
        running = 0
        for a in range(2, maxt + 1):
            prefix_need[a] = running
            running = max(running, minpos[a])
        suffix_need: dict[int, int] = {}  # min over higher types of their max position
        running = out.n + 1
        for a in range(maxt, 1, -1):
            suffix_need[a] = running
            running = min(running, maxpos[a])
        for a in range(2, maxt + 1):
            for y in by_type[a]:
                if prefix_need[a] >= y or suffix_need[a] <= y:
                    out.demote(y)
                    changed = True
        if some_type_empty(out.candidate_buckets()):
            return None

    by_type = out.candidate_buckets()
    # No type-0 object may sit between the two candidates of one type: the
    # fixed point above always demotes one side of such a sandwich.
    for alpha in range(2, maxt + 1):
        lo, hi = _pair_checked(by_type.get(alpha, []), alpha)
        for y in range(lo + 1, hi):
            if out.type_of[y] == 0:
                raise InternalInvariantError(
                    "type-0 object between candidates of one type"
                )

    # Placement: the number of movers a type-0 object lets through is fixed
    # by the candidate layout alone, so its crossing edge is forced too.
    ends = sorted(by_type[a][-1] for a in range(2, maxt + 1))
    for y in corridor:
        if out.type_of[y] != 0:
            continue
        e = zedge(y)
        if e is None:
            return None
        q = bisect_left(ends, y)
        if e != y - q - 1:
            return None
        _bump(counters, "pair_checks")
        if not (p.prefers(e, y, z) and p.prefers(e + 1, z, y)):
            return None
    return out


# -- blocks and selections -----------------------------------------------------


@dataclass(frozen=True)
class Block:
    """A maximal run of consecutive types whose candidates share a subpath."""

    index: int
    lo: int
    hi: int
    span: tuple[int, int]
    members: tuple[int, ...]

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1


def compute_blocks(t: ObjectTyping) -> list[Block]:
    """Group the surviving candidates into blocks of consecutive types.

    Starting from the lowest unplaced type, a block swallows the next type
    whenever that type's candidates reach into the block's current span.
    The result partitions the candidates; each block occupies a contiguous
    stretch of the path that contains nothing but its members, starts with
    the low type's left candidate and ends with the high type's right one.
    """
    maxt = t.max_type
    by_type = t.candidate_buckets()
    blocks: list[Block] = []
    alpha = 2
    prev_end = 0
    while alpha <= maxt:
        lo = alpha
        hi = alpha
        cands = by_type.get(alpha, [])
        members = set(cands)
        span_lo, span_hi = cands[0], cands[-1]
        while hi < maxt:
            nxt = by_type.get(hi + 1, [])
            if any(span_lo <= c <= span_hi for c in nxt):
                members.update(nxt)
                hi += 1
                span_lo = min(span_lo, nxt[0])
                span_hi = max(span_hi, nxt[-1])
            else:
                break
        mem = sorted(members)
        # The range equality also rules out candidates of later types inside
        # the span: such an intruder would be a span position missing from
        # the members (types partition the objects).
        if mem != list(range(span_lo, span_hi + 1)):
            raise InternalInvariantError("block span contains a non-member")
        lo_pair = _pair_checked(by_type.get(lo, []), lo)
        hi_pair = _pair_checked(by_type.get(hi, []), hi)
        if mem[0] != lo_pair[0] or mem[-1] != hi_pair[1]:
            raise InternalInvariantError("block does not run left-low to right-high")
        if span_lo <= prev_end:
            raise InternalInvariantError("block spans out of order")
        prev_end = span_hi
        blocks.append(
            Block(index=len(blocks), lo=lo, hi=hi, span=(span_lo, span_hi), members=tuple(mem))
        )
        alpha = hi + 1
    return blocks


@dataclass(frozen=True)
class BlockSelection:
    """One way to pick the right mover of every type in a block.

    ``selected[k]`` is the mover of type ``lo + k``.  Kind ``"R"`` picks
    every rightmost candidate; kind ``"L"`` picks left candidates up to some
    cut and rightmost ones above it — the only other arrangement whose
    crossing counts can work out.
    """

    block: int
    kind: str
    selected: tuple[int, ...]


@dataclass(frozen=True)
class ConflictSet:
    """Pairs of selections, keyed (block index, option index), that clash."""

    pairs: frozenset[tuple[tuple[int, int], tuple[int, int]]]

    def in_conflict(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        return (a, b) in self.pairs or (b, a) in self.pairs


def block_selections(
    p: PathInstance,
    z: int,
    t: ObjectTyping,
    b: Block,
    counters: dict[str, int] | None = None,
) -> list[BlockSelection]:
    """The at most two usable right-mover selections of a block.

    Picking a type's right candidate forces every higher type in the block
    to its right candidate as well, so any workable selection takes left
    candidates up to a cut and right candidates above it.  All-right is
    always structurally possible; a genuine cut is validated by checking,
    for every two-candidate type below it, that the pair's own crossing
    edge sits exactly where the selection's crossing counts place it.
    """
    target = t.target
    span = range(b.lo, b.hi + 1)
    by_type: dict[int, list[int]] = {}
    for y in b.members:  # members are exactly the span types' candidates
        by_type.setdefault(t.type_of[y], []).append(y)
    pairs = {a: _pair_checked(by_type.get(a, []), a) for a in span}
    rsel = tuple(pairs[a][1] for a in span)
    out = [BlockSelection(block=b.index, kind="R", selected=rsel)]
    lsets = []
    for cut in span:
        sel = tuple(pairs[a][0] if a <= cut else pairs[a][1] for a in span)
        if list(sel) != sorted(set(sel)):
            continue  # movers must sit in type order
        ok = True
        for a in range(b.lo, cut + 1):
            lobj, robj = pairs[a]
            if lobj == robj:
                continue
            e = swap_edge(p, target + a, lobj, robj, counters)
            if e is None:
                ok = False
                break
            between = sum(1 for s in sel if lobj < s < robj)
            if robj - e - 1 != between:
                ok = False
                break
        if ok:
            lsets.append(sel)
    distinct = sorted(set(lsets))
    if len(distinct) > 1:
        raise InternalInvariantError("more than two viable selections in a block")
    if distinct:
        out.append(BlockSelection(block=b.index, kind="L", selected=distinct[0]))
    return out


def _blocks_for(t: ObjectTyping, blocks: list[Block] | None) -> list[Block]:
    return compute_blocks(t) if blocks is None else blocks


def selection_consistent(
    p: PathInstance,
    z: int,
    t: ObjectTyping,
    s: BlockSelection,
    blocks: list[Block] | None = None,
    counters: dict[str, int] | None = None,
    type0: list[int] | None = None,
) -> bool:
    """Local viability of one block selection.

    Checks, always at the arithmetically forced meeting edge and with both
    endpoint agents willing: (a) each selected mover against each unselected
    candidate of the block, (b) each selected mover against every type-0
    object it must pass, (c) each unselected candidate against ``z``, and
    (d) both agents of each crossing with ``x`` itself.  ``type0`` may carry
    the precomputed type-0 objects right of ``z`` (in path order) to spare
    the scan when calling repeatedly for one typing.
    """
    blocks = _blocks_for(t, blocks)
    b = blocks[s.block]
    target = t.target
    sel = list(s.selected)
    selset = set(sel)
    nonsel = [y for y in b.members if y not in selset]

    def crossing_ok(mover: int, stayer: int, edge: int) -> bool:
        _bump(counters, "pair_checks")
        if swap_edge(p, target + t.type_of[mover], mover, stayer, counters) != edge:
            return False
        return p.prefers(edge, stayer, mover) and p.prefers(edge + 1, mover, stayer)

    for m in sel:
        for y in nonsel:
            if m > y:
                continue  # already in final relative order, never swapped
            q = sum(1 for s2 in sel if m < s2 < y)
            if not crossing_ok(m, y, y - q - 1):
                return False
    if type0 is None:
        type0 = [y for y in range(z + 1, t.n) if t.type_of[y] == 0]
    for m in sel:
        for y in type0:
            if y < m:
                continue
            q = sum(1 for s2 in sel if m < s2 < y)
            q += sum(
                c.width
                for c in blocks
                if c.index != b.index and m < c.span[0] and c.span[1] < y
            )
            if not crossing_ok(m, y, y - q - 1):
                return False
    for y in nonsel:
        e = t.z_edge.get(y)
        if e is None:
            return False  # a candidate with no route back to z cannot stay
        q = (b.lo - 2) + sum(1 for s2 in sel if s2 < y)
        if e != y - q - 1:
            return False
        _bump(counters, "pair_checks")
        if not (p.prefers(e, y, z) and p.prefers(e + 1, z, y)):
            return False
    for k, m in enumerate(sel):
        a = b.lo + k
        _bump(counters, "pair_checks")
        if not (p.prefers(target + a - 1, p.x, m) and p.prefers(target + a, m, p.x)):
            return False
    return True


def selections_compatible(
    p: PathInstance,
    z: int,
    t: ObjectTyping,
    s_b: BlockSelection,
    s_c: BlockSelection,
    blocks: list[Block] | None = None,
    counters: dict[str, int] | None = None,
) -> bool:
    """Whether two block selections can coexist.

    The later block's unselected candidates travel left through the earlier
    block's movers.  The number of movers between such a pair is fixed by
    the two selections (plus one mover per type of every block in between),
    so each pair must meet exactly at its own crossing edge with both
    agents willing.
    """
    blocks = _blocks_for(t, blocks)
    bb = blocks[s_b.block]
    cc = blocks[s_c.block]
    if not bb.lo < cc.lo:
        raise ValueError("selections must be passed in block order")
    target = t.target
    sel_b = s_b.selected
    sel_c = set(s_c.selected)
    non_c = [y for y in cc.members if y not in sel_c]
    gap = cc.lo - bb.hi - 1
    for m in sel_b:
        for y in non_c:
            q = (
                sum(1 for s2 in sel_b if s2 > m)
                + sum(1 for s2 in s_c.selected if s2 < y)
                + gap
            )
            e = y - q - 1
            _bump(counters, "pair_checks")
            if swap_edge(p, target + t.type_of[m], m, y, counters) != e:
                return False
            if not (p.prefers(e, y, m) and p.prefers(e + 1, m, y)):
                return False
    return True


# -- putting it together -------------------------------------------------------


@dataclass
class PathResult:
    """Outcome of a path solve: decision, certificate, counters, trace."""

    decision: bool
    certificate: SwapSequence | None
    counters: dict[str, int]
    trace: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.decision


def _enact(p: PathInstance, movers: set[int], counters: dict[str, int] | None) -> list[tuple[int, int]]:
    """Greedy simulation: repeatedly swap the leftmost (mover, non-mover) pair.

    With directions fixed, which pairs cross and on which edge is already
    determined, so any order works; leftmost-first keeps output stable.
    Stops as soon as the target holds ``x``.
    """
    arr = list(range(p.n + 1))  # arr[pos] = object; slot 0 unused
    seq: list[tuple[int, int]] = []
    cap = p.n * p.n + p.n + 1
    start = 1  # a swap at q can enable new pairs no further left than q - 1
    while arr[p.target] != p.x:
        if len(seq) > cap:
            raise InternalInvariantError("enactment exceeded the swap budget")
        for q in range(start, p.n):
            if arr[q] in movers and arr[q + 1] not in movers:
                arr[q], arr[q + 1] = arr[q + 1], arr[q]
                seq.append((q, q + 1))
                _bump(counters, "enact_swaps")
                start = max(1, q - 1)
                break
        else:
            raise InternalInvariantError("enactment stalled before reaching the target")
    order = [o for o in arr[1:] if o in movers]
    if order != sorted(order):
        raise InternalInvariantError("right movers changed relative order")
    return seq


def _replay_ok(p: PathInstance, seq: list[tuple[int, int]]) -> bool:
    """Replay a canonical-coordinate sequence and check every swap is rational."""
    arr = list(range(p.n + 1))
    for i, j in seq:
        if j != i + 1 or not 1 <= i < p.n:
            return False
        oi, oj = arr[i], arr[j]
        if not (p.prefers(i, oj, oi) and p.prefers(j, oi, oj)):
            return False
        arr[i], arr[j] = oj, oi
    return arr[p.target] == p.x


def solve_path(p: PathInstance, trace: bool = False) -> PathResult:
    """Decide whether ``x`` can reach the target agent on a path.

    Tries every plausible type-1 object ``z`` in path order; for each, runs
    the typing pipeline, reduces the per-block choices to 2-SAT, and on a
    satisfiable outcome enacts and verifies an actual swap sequence.  The
    answer is yes iff some ``z`` succeeds.
    """
    counters: dict[str, int] = {k: 0 for k in _COUNTER_KEYS}
    lines: list[str] = []

    def log(msg: str) -> None:
        if trace:
            lines.append(msg)

    def finish(decision: bool, cert: SwapSequence | None) -> PathResult:
        counters["total_ops"] = sum(counters[k] for k in _COUNTER_KEYS)
        return PathResult(decision, cert, counters, tuple(lines))

    target = p.target
    if p.x not in p.pref(target):
        log("target agent does not rank the target object: no")
        return finish(False, None)
    t0 = compute_types(p, counters)
    if trace:
        log(f"types: {{{', '.join(f'{y}: {t0.type_of[y]}' for y in sorted(t0.type_of))}}}")
    types_present = set(t0.type_of.values())
    for a in range(1, t0.max_type + 1):
        if a not in types_present:
            log(f"no object of type {a}: no")
            return finish(False, None)

    for z in t0.objects_of_type(1):
        counters["z_tried"] += 1
        tz = _retype_for_z(p, z, t0)
        if tz is None:
            log(f"z={z}: a type lost all candidates")
            continue
        tz = compute_subtypes(p, z, tz, counters)
        if tz is None:
            log(f"z={z}: two candidates of one type cannot reach z")
            continue
        tz = prune_candidates(tz)
        if tz is None:
            log(f"z={z}: candidate subtypes out of order")
            continue
        tz = resolve_type0(p, z, tz, counters)
        if tz is None:
            log(f"z={z}: a left mover cannot cross z where it must")
            continue
        blocks = compute_blocks(tz)
        if trace:
            log(
                f"z={z}: blocks "
                + ", ".join(f"[{b.lo},{b.hi}]@{b.span}" for b in blocks)
                if blocks
                else f"z={z}: no blocks"
            )
        type0 = [y for y in range(z + 1, tz.n) if tz.type_of[y] == 0]
        options = [block_selections(p, z, tz, b, counters) for b in blocks]
        alive: list[list[int]] = []
        dead = False
        for b, opts in zip(blocks, options):
            live = [
                i
                for i, s in enumerate(opts)
                if selection_consistent(
                    p, z, tz, s, blocks=blocks, counters=counters, type0=type0
                )
            ]
            if trace:
                for i, s in enumerate(opts):
                    mark = "ok" if i in live else "rejected"
                    log(f"z={z}: block {b.index} {s.kind}={s.selected} {mark}")
            if not live:
                dead = True
                break
            alive.append(live)
        if dead:
            log(f"z={z}: a block lost both selections")
            continue

        pairs: set[tuple[tuple[int, int], tuple[int, int]]] = set()
        # Only a later block with an unselected candidate can clash with an
        # earlier one (the check walks that candidate through the earlier
        # movers), so blocks whose every live option selects all members are
        # compatible with everything and need no pairing at all.
        contested = [
            ci
            for ci in range(len(blocks))
            if any(
                len(options[ci][jj].selected) < len(blocks[ci].members)
                for jj in alive[ci]
            )
        ]
        for ci in contested:
            for bi in range(ci):
                for ii in alive[bi]:
                    for jj in alive[ci]:
                        if not selections_compatible(
                            p,
                            z,
                            tz,
                            options[bi][ii],
                            options[ci][jj],
                            blocks=blocks,
                            counters=counters,
                        ):
                            pairs.add(((bi, ii), (ci, jj)))
        conflicts = ConflictSet(frozenset(pairs))

        # Propagate forced blocks: a block with one live option eliminates
        # everything in conflict with that option.
        changed = True
        rounds = 0
        while changed and not dead:
            changed = False
            rounds += 1
            if rounds > len(blocks) + 2:
                raise InternalInvariantError("selection propagation failed to settle")
            for bi in range(len(blocks)):
                if len(alive[bi]) != 1:
                    continue
                ii = alive[bi][0]
                for ci in range(len(blocks)):
                    if ci == bi:
                        continue
                    keep = [
                        jj
                        for jj in alive[ci]
                        if not conflicts.in_conflict((bi, ii), (ci, jj))
                    ]
                    if len(keep) != len(alive[ci]):
                        alive[ci] = keep
                        changed = True
                        if not keep:
                            dead = True
        if dead:
            log(f"z={z}: propagation of forced selections emptied a block")
            continue

        var_of = {
            bi: v
            for v, bi in enumerate(
                (bi for bi in range(len(blocks)) if len(alive[bi]) == 2), start=1
            )
        }

        def lit(bi: int, ii: int) -> int:
            v = var_of[bi]
            return v if ii == alive[bi][0] else -v

        clauses = []
        for (bi, ii), (ci, jj) in sorted(pairs):
            if bi in var_of and ci in var_of and ii in alive[bi] and jj in alive[ci]:
                clauses.append((-lit(bi, ii), -lit(ci, jj)))
        model = solve_2sat(TwoSatFormula(len(var_of), tuple(clauses)))
        if model is None:
            log(f"z={z}: block choices unsatisfiable")
            continue
        chosen: list[BlockSelection] = []
        for bi in range(len(blocks)):
            if len(alive[bi]) == 1:
                chosen.append(options[bi][alive[bi][0]])
            else:
                pick = alive[bi][0] if model[var_of[bi]] else alive[bi][1]
                chosen.append(options[bi][pick])
        movers = {z} | {m for s in chosen for m in s.selected}
        seq = _enact(p, movers, counters)
        if not _replay_ok(p, seq):
            raise InternalInvariantError(
                "accepted selection failed to produce a verifying sequence"
            )
        log(f"z={z}: movers {sorted(movers)} -> {len(seq)} swaps")
        return finish(True, tuple(seq))
    return finish(False, None)


def solve_path_instance(inst: Instance, trace: bool = False) -> PathResult:
    """Decide a path-graph instance, returning the certificate in its labels."""
    if inst.initial_of(inst.target_agent) == inst.target_object:
        counters = {k: 0 for k in _COUNTER_KEYS}
        counters["total_ops"] = 0
        return PathResult(True, (), counters, ())
    p = canonicalize_path(inst)
    res = solve_path(p, trace=trace)
    if not res.decision:
        return res
    cert = p.certificate_back(res.certificate)
    check = verify_certificate(inst, cert)
    if not check:
        raise InternalInvariantError(
            f"path certificate failed verification: {check.reason}"
        )
    return PathResult(True, cert, res.counters, res.trace)
