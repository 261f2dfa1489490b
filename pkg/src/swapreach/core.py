"""Core data model for reachable-object instances.

Agents are integers 1..n. Objects are short string identifiers. Preferences
are strict partial lists (most preferred first); an agent never accepts an
object missing from her list. An instance carries an undirected social
network, a bijective initial assignment, and the query: can `target_object`
reach `target_agent` through pairwise swaps, where a swap is a rational trade
(both sides strictly improve) between adjacent agents?
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Assignment = dict[int, str]
Swap = tuple[int, int]
SwapSequence = tuple[Swap, ...]

_BIG = 1 << 30


class FormatError(ValueError):
    """Raised on malformed instance/certificate text; carries a line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class CapabilityError(ValueError):
    """An instance falls outside a solver's supported fragment.

    `alternatives` names solver choices that can handle the instance, so the
    CLI can suggest a usable --algo.
    """

    def __init__(self, message: str, alternatives: tuple[str, ...] = ()):
        self.alternatives = alternatives
        super().__init__(message)


def _check_token(kind: str, tok: str) -> str:
    if not tok or any(c.isspace() for c in tok) or "#" in tok or "=" in tok:
        raise ValueError(f"invalid {kind} identifier {tok!r}")
    return tok


@dataclass(frozen=True)
class Instance:
    """An immutable reachable-object instance.

    `prefs[i-1]` is agent i's list, `initial[i-1]` her starting object. The
    initial object must appear in the list (by convention at the bottom; any
    position is accepted but entries below it are dead weight).
    """

    n: int
    objects: tuple[str, ...]
    prefs: tuple[tuple[str, ...], ...]
    edges: frozenset[tuple[int, int]]
    initial: tuple[str, ...]
    target_agent: int
    target_object: str
    _ranks: tuple[dict[str, int], ...] = field(
        init=False, repr=False, compare=False, hash=False, default=()
    )

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one agent")
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "prefs", tuple(tuple(p) for p in self.prefs))
        object.__setattr__(self, "initial", tuple(self.initial))
        if len(self.objects) != self.n:
            raise ValueError(f"expected {self.n} objects, got {len(self.objects)}")
        for o in self.objects:
            _check_token("object", o)
        if len(set(self.objects)) != self.n:
            raise ValueError("duplicate object identifiers")
        if len(self.prefs) != self.n:
            raise ValueError(f"expected {self.n} preference lists")
        known = set(self.objects)
        for i, lst in enumerate(self.prefs, start=1):
            if len(set(lst)) != len(lst):
                raise ValueError(f"agent {i}: duplicate entries in preference list")
            for o in lst:
                if o not in known:
                    raise ValueError(f"agent {i}: unknown object {o!r} in preferences")
        if len(self.initial) != self.n or set(self.initial) != known:
            raise ValueError("initial assignment is not a bijection onto the objects")
        for i in range(1, self.n + 1):
            if self.initial[i - 1] not in self.prefs[i - 1]:
                raise ValueError(
                    f"agent {i}: initial object {self.initial[i - 1]!r} missing from her list"
                )
        norm = set()
        for e in self.edges:
            try:
                i, j = e
            except (TypeError, ValueError):
                raise ValueError(f"malformed edge {e!r}") from None
            if i == j:
                raise ValueError(f"self-loop at agent {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e!r} references an unknown agent")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))
        if not 1 <= self.target_agent <= self.n:
            raise ValueError(f"unknown target agent {self.target_agent}")
        if self.target_object not in known:
            raise ValueError(f"unknown target object {self.target_object!r}")
        if self.target_object not in self.prefs[self.target_agent - 1]:
            raise ValueError(
                "target object is neither listed by nor assigned to the target agent"
            )
        ranks = tuple({o: r for r, o in enumerate(lst)} for lst in self.prefs)
        object.__setattr__(self, "_ranks", ranks)

    # -- accessors ---------------------------------------------------------

    def pref(self, i: int) -> tuple[str, ...]:
        return self.prefs[i - 1]

    def initial_of(self, i: int) -> str:
        return self.initial[i - 1]

    def rank(self, i: int, o: str) -> int:
        """Position of o in agent i's list (0 = best); _BIG when unlisted."""
        return self._ranks[i - 1].get(o, _BIG)

    def prefers(self, i: int, a: str, b: str) -> bool:
        """True iff agent i strictly prefers a to b (false unless both listed)."""
        ra = self._ranks[i - 1].get(a)
        rb = self._ranks[i - 1].get(b)
        return ra is not None and rb is not None and ra < rb

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def holder(self, o: str) -> int:
        return self.initial.index(o) + 1

    def initial_assignment(self) -> Assignment:
        return {i: self.initial[i - 1] for i in range(1, self.n + 1)}

    def max_list_len(self) -> int:
        return max((len(p) for p in self.prefs), default=0)

    def path_order(self) -> Optional[list[int]]:
        """Agents in path order if the graph is a spanning path, else None.

        The returned order starts at the lower-numbered endpoint (n == 1 is
        the one-vertex path).
        """
        if self.n == 1:
            return [] if self.edges else [1]
        if len(self.edges) != self.n - 1:
            return None
        adj: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        ends = sorted(i for i, nb in adj.items() if len(nb) == 1)
        if len(ends) != 2 or any(len(nb) > 2 for nb in adj.values()):
            return None
        order = [ends[0]]
        prev = None
        while len(order) < self.n:
            nxt = [v for v in adj[order[-1]] if v != prev]
            if len(nxt) != 1:
                return None
            prev = order[-1]
            order.append(nxt[0])
        return order if order[-1] == ends[1] else None

    def is_cycle(self) -> bool:
        if self.n < 3 or len(self.edges) != self.n:
            return False
        adj: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        if any(len(nb) != 2 for nb in adj.values()):
            return False
        seen = {1}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return len(seen) == self.n


# -- swap semantics ---------------------------------------------------------


def admits_swap(inst: Instance, a: Assignment, i: int, j: int) -> bool:
    """Whether assignment `a` admits a swap between agents i and j.

    Requires {i,j} to be an edge and the exchange to be a rational trade:
    each agent strictly prefers the object she receives to the one she holds.
    """
    if i not in a or j not in a:
        raise ValueError(f"unknown agent in swap ({i},{j})")
    if i == j or not inst.adjacent(i, j):
        return False
    return inst.prefers(i, a[j], a[i]) and inst.prefers(j, a[i], a[j])


def apply_swap(a: Assignment, i: int, j: int) -> Assignment:
    """Exchange the objects of i and j (caller guarantees admits_swap)."""
    if i == j or i not in a or j not in a:
        raise ValueError(f"cannot swap agents ({i},{j})")
    out = dict(a)
    out[i], out[j] = a[j], a[i]
    return out


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of a certificate replay. Falsy when the replay failed.

    `step` is the 0-based index of the offending swap (None when the failure
    is global, e.g. the final assignment misses the target), and `reason` is
    a stable machine-readable tag.
    """

    ok: bool
    step: Optional[int] = None
    reason: Optional[str] = None
    final: Optional[Assignment] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(inst: Instance, seq: Sequence[Swap]) -> VerifyResult:
    """Replay `seq` from the initial assignment and validate every step.

    Checks adjacency, rationality, the once-per-(object, edge) rule, a length
    sanity bound (an object crosses each edge at most once, so no valid
    sequence exceeds n * |edges| swaps), and finally that the target agent
    holds the target object.
    """
    if len(seq) > inst.n * len(inst.edges):
        return VerifyResult(False, step=None, reason="too-long")
    a = inst.initial_assignment()
    used: set[tuple[str, tuple[int, int]]] = set()
    for k, pair in enumerate(seq):
        try:
            i, j = pair
        except (TypeError, ValueError):
            return VerifyResult(False, step=k, reason="malformed-step")
        if not (1 <= i <= inst.n and 1 <= j <= inst.n) or i == j:
            return VerifyResult(False, step=k, reason="unknown-agent")
        e = (min(i, j), max(i, j))
        if e not in inst.edges:
            return VerifyResult(False, step=k, reason="not-adjacent")
        oi, oj = a[i], a[j]
        if not (inst.prefers(i, oj, oi) and inst.prefers(j, oi, oj)):
            return VerifyResult(False, step=k, reason="irrational")
        if (oi, e) in used or (oj, e) in used:
            return VerifyResult(False, step=k, reason="object-edge-reuse")
        used.add((oi, e))
        used.add((oj, e))
        a[i], a[j] = oj, oi
    if a[inst.target_agent] != inst.target_object:
        return VerifyResult(False, step=None, reason="target-not-reached", final=a)
    return VerifyResult(True, final=a)


# -- canonical forms --------------------------------------------------------


@dataclass(frozen=True)
class Relabeling:
    """Bidirectional agent/object maps produced by canonicalize()."""

    agent_to_canon: dict[int, int]
    agent_from_canon: dict[int, int]
    object_to_canon: dict[str, str]
    object_from_canon: dict[str, str]

    def certificate_back(self, seq: Sequence[Swap]) -> SwapSequence:
        return tuple((self.agent_from_canon[i], self.agent_from_canon[j]) for i, j in seq)


def canonicalize(inst: Instance) -> tuple[Instance, Relabeling]:
    """Relabel so the target agent is 1, the holder of the target object is n,
    and object names become x1..xn with xi initially at agent i.

    When the target agent already holds the target object only the target→1
    relabeling applies. Certificates on the canonical instance translate back
    through the returned maps.
    """
    holder = inst.holder(inst.target_object)
    order = [inst.target_agent]
    middle = [
        i
        for i in range(1, inst.n + 1)
        if i != inst.target_agent and i != holder
    ]
    order.extend(middle)
    if holder != inst.target_agent:
        order.append(holder)
    a_from = {new: old for new, old in enumerate(order, start=1)}
    a_to = {old: new for new, old in a_from.items()}
    o_to = {inst.initial_of(a_from[new]): f"x{new}" for new in a_from}
    o_from = {v: k for k, v in o_to.items()}
    new_objects = tuple(f"x{i}" for i in range(1, inst.n + 1))
    new_prefs = tuple(
        tuple(o_to[o] for o in inst.pref(a_from[i])) for i in range(1, inst.n + 1)
    )
    new_edges = frozenset((a_to[i], a_to[j]) for i, j in inst.edges)
    canon = Instance(
        n=inst.n,
        objects=new_objects,
        prefs=new_prefs,
        edges=new_edges,
        initial=new_objects,
        target_agent=1,
        target_object=o_to[inst.target_object],
    )
    return canon, Relabeling(a_to, a_from, o_to, o_from)


@dataclass(frozen=True)
class PathInstance:
    """A path instance in solver coordinates.

    Positions run 1..n left to right, the object initially at position p is
    the integer p, the target object x is n (initially at position n, the
    right end), and the target agent sits at position `target` < n. `prefs`
    holds the pruned integer lists: entries below an agent's own initial are
    dropped, and the target agent's list is cut to start at x.
    """

    n: int
    prefs: tuple[tuple[int, ...], ...]
    target: int
    agent_at: tuple[int, ...]  # agent_at[p-1] = original agent id at position p
    object_names: tuple[str, ...]  # object_names[k-1] = original name of object k
    reflected: bool = False

    @property
    def x(self) -> int:
        return self.n

    def pref(self, p: int) -> tuple[int, ...]:
        return self.prefs[p - 1]

    def _rank_tables(self) -> tuple[dict[int, int], ...]:
        tables = getattr(self, "_ranks", None)
        if tables is None:
            tables = tuple({o: r for r, o in enumerate(lst)} for lst in self.prefs)
            object.__setattr__(self, "_ranks", tables)
        return tables

    def prefers(self, p: int, a: int, b: int) -> bool:
        """True iff position p strictly prefers a to b (false unless both listed)."""
        table = self._rank_tables()[p - 1]
        ra = table.get(a)
        rb = table.get(b)
        return ra is not None and rb is not None and ra < rb

    def certificate_back(self, seq: Sequence[Swap]) -> SwapSequence:
        return tuple((self.agent_at[i - 1], self.agent_at[j - 1]) for i, j in seq)


def canonicalize_path(inst: Instance) -> PathInstance:
    """Project a path-graph instance into solver coordinates.

    Reflects the path so the holder of the target object sits to the right of
    the target agent, drops the agents beyond the holder (their objects can
    never take part in a useful swap), renames objects to initial positions,
    and prunes lists as described on PathInstance.

    Raises ValueError when the graph is not a path or when the target agent
    already holds the target object (that case is trivially yes and is
    handled before canonicalization).
    """
    order = inst.path_order()
    if order is None:
        raise ValueError("graph is not a path")
    holder = inst.holder(inst.target_object)
    if holder == inst.target_agent:
        raise ValueError("target agent already holds the target object")
    pos = {agent: p for p, agent in enumerate(order, start=1)}
    reflected = pos[holder] < pos[inst.target_agent]
    if reflected:
        order = order[::-1]
        pos = {agent: p for p, agent in enumerate(order, start=1)}
    keep = order[: pos[holder]]
    n = len(keep)
    target = pos[inst.target_agent]
    obj_id = {inst.initial_of(agent): p for p, agent in enumerate(keep, start=1)}
    prefs = []
    for p, agent in enumerate(keep, start=1):
        lst = [obj_id[o] for o in inst.pref(agent) if o in obj_id]
        if p in lst:
            lst = lst[: lst.index(p) + 1]
        if p == target and n in lst:
            lst = lst[lst.index(n):]
        prefs.append(tuple(lst))
    return PathInstance(
        n=n,
        prefs=tuple(prefs),
        target=target,
        agent_at=tuple(keep),
        object_names=tuple(inst.initial_of(agent) for agent in keep),
        reflected=reflected,
    )


# -- text formats ------------------------------------------------------------


def parse_instance(text: str) -> Instance:
    """Parse the line-oriented instance format.

    Unknown keys, bad counts, and malformed fields raise FormatError with the
    offending line number. A missing `pref` line means the agent only lists
    her initial object; a pref list missing the initial object gets it
    appended at the bottom.
    """
    n: Optional[int] = None
    objects: Optional[list[str]] = None
    edges: Optional[set[tuple[int, int]]] = None
    graph_kind: Optional[str] = None
    assign: dict[int, str] = {}
    assign_lines: dict[int, int] = {}
    prefs: dict[int, list[str]] = {}
    pref_lines: dict[int, int] = {}
    target: Optional[tuple[int, str]] = None
    target_line: Optional[int] = None

    def agent_no(tok: str, ln: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise FormatError(f"expected an agent number, got {tok!r}", ln) from None
        if n is not None and not 1 <= v <= n:
            raise FormatError(f"agent {v} out of range 1..{n}", ln)
        return v

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise FormatError("expected 'key: value'", ln)
        key = key.strip()
        rest = rest.strip()
        if key == "agents":
            try:
                n = int(rest)
            except ValueError:
                raise FormatError(f"agents wants an integer, got {rest!r}", ln) from None
            if n < 1:
                raise FormatError("agents must be positive", ln)
        elif key == "objects":
            objects = rest.split()
            if not objects:
                raise FormatError("objects line is empty", ln)
        elif key == "edges":
            edges = set()
            for tok in rest.split():
                left, sep2, right = tok.partition("-")
                if not sep2:
                    raise FormatError(f"edge {tok!r} is not of the form i-j", ln)
                edges.add((agent_no(left, ln), agent_no(right, ln)))
        elif key == "graph":
            if rest not in ("path", "clique", "cycle"):
                raise FormatError(f"unknown graph shorthand {rest!r}", ln)
            graph_kind = rest
        elif key == "assign":
            for tok in rest.split():
                who, sep2, obj = tok.partition("=")
                if not sep2 or not obj:
                    raise FormatError(f"assignment {tok!r} is not agent=object", ln)
                a = agent_no(who, ln)
                if a in assign:
                    raise FormatError(f"agent {a} assigned twice", ln)
                assign[a] = obj
                assign_lines[a] = ln
        elif key.startswith("pref"):
            a = agent_no(key[4:].strip(), ln)
            if a in prefs:
                raise FormatError(f"duplicate pref line for agent {a}", ln)
            prefs[a] = rest.split()
            pref_lines[a] = ln
        elif key == "target":
            fields = dict(tok.partition("=")[::2] for tok in rest.split())
            if set(fields) != {"agent", "object"}:
                raise FormatError("target wants 'agent=<i> object=<o>'", ln)
            target = (agent_no(fields["agent"], ln), fields["object"])
            target_line = ln
        else:
            raise FormatError(f"unknown key {key!r}", ln)

    if n is None:
        raise FormatError("missing 'agents:' line")
    if objects is None:
        raise FormatError("missing 'objects:' line")
    if target is None:
        raise FormatError("missing 'target:' line")
    if len(assign) != n:
        raise FormatError(f"assignment covers {len(assign)} of {n} agents")
    known = set(objects)
    for a, lst in prefs.items():
        for o in lst:
            if o not in known:
                raise FormatError(
                    f"agent {a}: unknown object {o!r} in preferences", pref_lines[a]
                )
    for a, o in assign.items():
        if o not in known:
            raise FormatError(
                f"agent {a}: unknown object {o!r} in assignment", assign_lines[a]
            )
    if target[1] not in known:
        raise FormatError(f"unknown target object {target[1]!r}", target_line)
    if edges is None:
        if graph_kind == "path":
            edges = {(i, i + 1) for i in range(1, n)}
        elif graph_kind == "cycle":
            edges = {(i, i + 1) for i in range(1, n)} | ({(1, n)} if n > 2 else set())
        elif graph_kind == "clique":
            edges = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        else:
            raise FormatError("missing 'edges:' (or 'graph:') line")
    initial = tuple(assign[i] for i in range(1, n + 1))
    full_prefs = []
    for i in range(1, n + 1):
        lst = prefs.get(i, [])
        if assign[i] not in lst:
            lst = lst + [assign[i]]
        full_prefs.append(tuple(lst))
    try:
        return Instance(
            n=n,
            objects=tuple(objects),
            prefs=tuple(full_prefs),
            edges=frozenset(edges),
            initial=initial,
            target_agent=target[0],
            target_object=target[1],
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def serialize_instance(inst: Instance) -> str:
    lines = [
        f"agents: {inst.n}",
        "objects: " + " ".join(inst.objects),
        "edges: " + " ".join(f"{i}-{j}" for i, j in sorted(inst.edges)),
        "assign: " + " ".join(f"{i}={inst.initial_of(i)}" for i in range(1, inst.n + 1)),
    ]
    lines.extend(
        f"pref {i}: " + " ".join(inst.pref(i)) for i in range(1, inst.n + 1)
    )
    lines.append(f"target: agent={inst.target_agent} object={inst.target_object}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> SwapSequence:
    swaps = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("expected two agent numbers per line", ln)
        try:
            swaps.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"bad agent pair {line!r}", ln) from None
    return tuple(swaps)


def serialize_certificate(seq: Sequence[Swap]) -> str:
    return "".join(f"{i} {j}\n" for i, j in seq)
