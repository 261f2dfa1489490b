"""Instance generators: SAT reductions and seeded random instances.

Two constructions turn restricted CNF formulas into reachability questions:

*   :func:`gen_clique_instance` — complete graph, every preference list of
    length at most 4.  Works for formulas whose clauses have two or three
    literals and where every variable occurs exactly once negatively and
    once or twice positively.
*   :func:`gen_caterpillar_instance` — a tree with one high-degree hub,
    a clause path hanging off it, and hairs of at most two edges.  Works
    for formulas (clause size up to 3) where every variable occurs exactly
    twice positively and once negatively.

Both are faithful at small scale: the generated instance is a yes instance
exactly when the formula is satisfiable (the test suite checks this against
the brute-force oracle).  :func:`gen_random` produces seeded random
instances on standard graph shapes for sweeps and benchmarks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import Instance


@dataclass(frozen=True)
class RestrictedFormula:
    """A CNF formula; clause literals are signed 1-based variable ids."""

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for j, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ValueError(f"clause {j} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise ValueError(f"clause {j}: literal {lit} out of range")

    def occurrences(self, var: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        """(positive, negative) occurrence lists of (clause, position), 1-based."""
        pos, neg = [], []
        for j, clause in enumerate(self.clauses, start=1):
            for z, lit in enumerate(clause, start=1):
                if lit == var:
                    pos.append((j, z))
                elif lit == -var:
                    neg.append((j, z))
        return pos, neg

    def satisfiable(self) -> bool:
        """Brute-force satisfiability (fine for the sizes the reductions see)."""
        for bits in itertools.product((False, True), repeat=self.n_vars):
            if all(
                any(bits[abs(l) - 1] == (l > 0) for l in clause)
                for clause in self.clauses
            ):
                return True
        return False


def validate_restricted(f: RestrictedFormula, shape: str = "clique") -> str | None:
    """Check the occurrence restriction; return None or the first violation.

    Shape "clique": clause sizes 2 or 3, every variable once negative and
    once or twice positive, no clause repeats a variable, clauses distinct.
    Shape "caterpillar": clause sizes 1..3, every variable exactly twice
    positive and once negative, no clause repeats a variable.
    """
    if shape not in ("clique", "caterpillar"):
        raise ValueError(f"unknown shape {shape!r}")
    sizes = (2, 3) if shape == "clique" else (1, 2, 3)
    for j, clause in enumerate(f.clauses, start=1):
        if len(clause) not in sizes:
            return f"clause {j} has {len(clause)} literals (want {sizes})"
        vars_seen = [abs(l) for l in clause]
        if len(set(vars_seen)) != len(vars_seen):
            dup = next(v for v in vars_seen if vars_seen.count(v) > 1)
            return f"clause {j} mentions variable {dup} more than once"
    if shape == "clique" and len(set(f.clauses)) != len(f.clauses):
        return "duplicate clauses"
    for v in range(1, f.n_vars + 1):
        pos, neg = f.occurrences(v)
        if len(neg) != 1:
            return f"variable {v} occurs {len(neg)} times negatively (want 1)"
        want_pos = (1, 2) if shape == "clique" else (2,)
        if len(pos) not in want_pos:
            return (
                f"variable {v} occurs {len(pos)} times positively "
                f"(want {' or '.join(map(str, want_pos))})"
            )
    return None


def parse_dimacs(text: str) -> RestrictedFormula:
    """Parse DIMACS CNF. Clauses are 0-terminated; 'c' lines are comments."""
    n_vars = None
    n_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {ln}: bad problem line {line!r}")
            n_vars, n_clauses = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ValueError(f"line {ln}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise ValueError(f"line {ln}: empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if n_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    if n_clauses is not None and len(clauses) != n_clauses:
        raise ValueError(f"problem line promised {n_clauses} clauses, found {len(clauses)}")
    return RestrictedFormula(n_vars=n_vars, clauses=tuple(clauses))


@dataclass(frozen=True)
class GeneratedInstance:
    """A generated instance plus the gadget name of each agent."""

    instance: Instance
    agent_names: tuple[str, ...]

    def annotated_text(self) -> str:
        from .core import serialize_instance

        header = "".join(
            f"# agent {k} = {name}\n"
            for k, name in enumerate(self.agent_names, start=1)
        )
        return header + serialize_instance(self.instance)


# -- clique construction -------------------------------------------------------


def gen_clique(f: RestrictedFormula) -> GeneratedInstance:
    """Complete-graph reduction; lists stay within 4 entries.

    One chain of agents A_1..A_m threads the clauses: A_j hands the token of
    clause j-1 onward only after some B agent of clause j releases b_j^z,
    which in turn requires the tau object of a literal of clause j — and
    that object is free exactly when the corresponding literal is satisfied
    by the assignment the X agents commit to.  The D agents meter each
    clause's tau objects so a variable cannot serve both polarities.
    """
    err = validate_restricted(f, "clique")
    if err:
        raise ValueError(err)
    m = len(f.clauses)
    pos_occ: dict[int, list[tuple[int, int]]] = {}
    neg_occ: dict[int, tuple[int, int]] = {}
    for v in range(1, f.n_vars + 1):
        pos, neg = f.occurrences(v)
        pos_occ[v] = pos
        neg_occ[v] = neg[0]

    def occ(v: int) -> int:
        return len(pos_occ[v]) + 1

    def tau(j: int, z: int) -> str:
        lit = f.clauses[j - 1][z - 1]
        v = abs(lit)
        if lit < 0:
            return f"x{v}^1" if occ(v) == 2 else f"x{v}^2"
        if (j, z) == pos_occ[v][0]:
            return f"x{v}^1"
        return f"x{v}^2"

    names: list[str] = []
    initials: list[str] = []
    prefs: list[tuple[str, ...]] = []

    def add(name: str, initial: str, above: list[str]) -> None:
        names.append(name)
        initials.append(initial)
        prefs.append(tuple(above + [initial]))

    for j in range(1, m + 1):
        width = len(f.clauses[j - 1])
        a_initial = "x" if j == 1 else f"a{j - 1}"
        add(f"A{j}", a_initial, [f"b{j}^{z}" for z in range(1, width + 1)])
        for z in range(1, width + 1):
            above = [tau(j, z), "x"] + ([f"a{j - 1}"] if j >= 2 else [])
            add(f"B{j}^{z}", f"b{j}^{z}", above)
        for z in range(1, width + 1):
            add(f"D{j}^{z}", f"d{j}^{z}", [f"a{j}", "x", tau(j, z)])
    for v in range(1, f.n_vars + 1):
        (p1j, p1z) = pos_occ[v][0]
        (nj, nz) = neg_occ[v]
        d_first = f"d{p1j}^{p1z}"
        d_neg = f"d{nj}^{nz}"
        if occ(v) == 2:
            add(f"X{v}^1", f"x{v}^1", [d_first, d_neg])
        else:
            (p2j, p2z) = pos_occ[v][1]
            add(f"X{v}^1", f"x{v}^2", [d_first, f"x{v}^1", d_neg])
            add(f"X{v}^2", f"x{v}^1", [f"d{p2j}^{p2z}", f"x{v}^2"])
    add("I", f"a{m}", ["x"])

    n = len(names)
    inst = Instance(
        n=n,
        objects=tuple(initials),
        prefs=tuple(prefs),
        edges=frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)),
        initial=tuple(initials),
        target_agent=n,
        target_object="x",
    )
    if inst.max_list_len() > 4:
        raise AssertionError("clique construction produced a list longer than 4")
    return GeneratedInstance(instance=inst, agent_names=tuple(names))


def gen_clique_instance(f: RestrictedFormula) -> Instance:
    return gen_clique(f).instance


# -- caterpillar construction ---------------------------------------------------


def gen_caterpillar(f: RestrictedFormula) -> GeneratedInstance:
    """Tree reduction: one hub, a clause path, hairs of length at most two.

    Every variable contributes nine agents hanging off the hub; the clause
    path C_m..C_1-T relays the token t toward the hub only if each clause
    can swallow the occurrence object of one of its literals, which the
    variable gadgets release according to the chosen assignment.
    """
    err = validate_restricted(f, "caterpillar")
    if err:
        raise ValueError(err)
    m = len(f.clauses)
    n_vars = f.n_vars
    occ_obj: dict[tuple[int, int], str] = {}
    p1: dict[int, int] = {}
    p2: dict[int, int] = {}
    nn: dict[int, int] = {}
    for v in range(1, n_vars + 1):
        pos, neg = f.occurrences(v)
        occ_obj[pos[0]] = f"x{v}^p1"
        occ_obj[pos[1]] = f"x{v}^p2"
        occ_obj[neg[0]] = f"x{v}^n"
        p1[v], p2[v], nn[v] = pos[0][0], pos[1][0], neg[0][0]

    def clause_objs(j: int) -> list[str]:
        return [occ_obj[(j, z)] for z in range(1, len(f.clauses[j - 1]) + 1)]

    names: list[str] = []
    initials: list[str] = []
    prefs: list[tuple[str, ...]] = []

    def add(name: str, initial: str, above: list[str]) -> None:
        names.append(name)
        initials.append(initial)
        prefs.append(tuple(above + [initial]))

    for v in range(1, n_vars + 1):
        add(f"D{v}^1", f"+{v}", [f"v{v}", f"-{v}"])
        add(f"D{v}^2", f"-{v}", [f"+{v}"])
        add(f"X{v}^p1", f"++{v}", [f"c{m - p1[v] + 1}", f"x{v}^p1", f"+{v}"])
        add(f"P{v}^1", f"x{v}^p1", [f"+{v}"])
        add(f"X{v}^p2", f"p{v}", [f"c{m - p2[v] + 1}", f"x{v}^p2", f"++{v}"])
        add(f"P{v}^2", f"x{v}^p2", [f"++{v}"])
        add(f"X{v}^n", f"n{v}", [f"c{m - nn[v] + 1}", f"x{v}^n", f"-{v}"])
        add(f"N{v}", f"x{v}^n", [f"-{v}"])
        h_initial = "c" + str(m) if v == n_vars else f"v{v + 1}"
        add(f"H{v}", h_initial, [f"p{v}", f"n{v}"])
    for j in range(1, m):
        above = clause_objs(j + 1) + ["t"]
        for k in range(j, 0, -1):
            above.extend(clause_objs(k))
            above.append(f"c{j - k + 1}")
        above.pop()  # the pattern ends on this agent's own initial c_j
        add(f"C{j}", f"c{j}", above)
    hub_above = ["t"]
    for k in range(m, 0, -1):
        hub_above.extend(clause_objs(k))
        hub_above.append(f"c{m - k + 1}")
    for v in range(n_vars, 0, -1):
        hub_above.extend([f"p{v}", f"n{v}", f"-{v}", f"++{v}", f"+{v}", f"v{v}"])
    hub_above.pop()  # v1 is the hub's own initial
    add(f"C{m}", "v1", hub_above)
    add("T", "t", clause_objs(1))

    agent_no = {name: k for k, name in enumerate(names, start=1)}
    hub = agent_no[f"C{m}"]
    edges = set()
    spine = [f"C{j}" for j in range(m, 0, -1)] + ["T"]
    for a, b in zip(spine, spine[1:]):
        edges.add((agent_no[a], agent_no[b]))
    for v in range(1, n_vars + 1):
        for leafward in (f"D{v}^1", f"X{v}^p1", f"X{v}^p2", f"X{v}^n", f"H{v}"):
            edges.add((hub, agent_no[leafward]))
        for a, b in (
            (f"D{v}^1", f"D{v}^2"),
            (f"X{v}^p1", f"P{v}^1"),
            (f"X{v}^p2", f"P{v}^2"),
            (f"X{v}^n", f"N{v}"),
        ):
            edges.add((agent_no[a], agent_no[b]))

    n = len(names)
    inst = Instance(
        n=n,
        objects=tuple(initials),
        prefs=tuple(prefs),
        edges=frozenset(edges),
        initial=tuple(initials),
        target_agent=hub,
        target_object="t",
    )
    spine_ids = tuple(agent_no[a] for a in spine)
    _assert_caterpillar_shape(inst, hub, spine_ids)
    return GeneratedInstance(instance=inst, agent_names=tuple(names))


def gen_caterpillar_instance(f: RestrictedFormula) -> Instance:
    return gen_caterpillar(f).instance


def _assert_caterpillar_shape(inst: Instance, hub: int, spine: tuple[int, ...]) -> None:
    """Tree, exactly one vertex of degree > 2, hairs off the spine ≤ 2 edges."""
    adj: dict[int, set[int]] = {i: set() for i in range(1, inst.n + 1)}
    for i, j in inst.edges:
        adj[i].add(j)
        adj[j].add(i)
    if len(inst.edges) != inst.n - 1:
        raise AssertionError("caterpillar construction is not a tree")
    seen = {hub}
    frontier = [hub]
    while frontier:
        v = frontier.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    if len(seen) != inst.n:
        raise AssertionError("caterpillar construction is disconnected")
    high = [v for v, nb in adj.items() if len(nb) > 2]
    if high != [hub]:
        raise AssertionError(f"expected the hub as the only branching vertex, got {high}")
    on_spine = set(spine)
    for a, b in zip(spine, spine[1:]):
        if b not in adj[a]:
            raise AssertionError("clause path broken")
    for v in adj[hub] - on_spine:
        for u in adj[v] - {hub}:
            if adj[u] != {v}:
                raise AssertionError("hair longer than two edges")
    for s in spine:
        if s != hub and (adj[s] - on_spine):
            raise AssertionError("hair attached away from the hub")


def chain_instance(n: int) -> Instance:
    """Deterministic yes instance on a path, solvable with three-entry lists.

    Object o_n travels the whole path: agent i ranks o_{i-1} above o_n above
    her own o_i, so each hand-off toward agent 1 is rational.  Useful as a
    benchmark family because solvers should stay linear on it.
    """
    if n < 2:
        raise ValueError("need at least two agents")
    objs = tuple(f"o{k}" for k in range(1, n + 1))
    prefs: list[tuple[str, ...]] = [(objs[-1], objs[0])]
    for i in range(2, n + 1):
        entries = [objs[i - 2], objs[-1], objs[i - 1]]
        prefs.append(tuple(dict.fromkeys(entries)))
    return Instance(
        n=n,
        objects=objs,
        prefs=tuple(prefs),
        edges=frozenset((i, i + 1) for i in range(1, n)),
        initial=objs,
        target_agent=1,
        target_object=objs[-1],
    )


# -- random instances -----------------------------------------------------------


def gen_random(
    kind: str,
    n: int,
    seed: int,
    list_len_bound: int | None = None,
) -> Instance:
    """Seeded random instance on a standard graph shape.

    kind is one of path, cycle, clique, random (spanning tree plus a few
    chords).  Preference lists are uniform random ordered subsets of the
    other objects with the agent's initial at the bottom, truncated to
    list_len_bound entries when given; the target pair is random with the
    target object forced into the target agent's list.
    """
    if n < 2:
        raise ValueError("need at least two agents")
    if list_len_bound is not None and list_len_bound < 1:
        raise ValueError("list_len_bound must be positive")
    rng = random.Random(seed)
    objs = tuple(f"o{k}" for k in range(1, n + 1))
    if kind == "path":
        edges = {(i, i + 1) for i in range(1, n)}
    elif kind == "cycle":
        edges = {(i, i + 1) for i in range(1, n)}
        if n > 2:
            edges.add((1, n))
    elif kind == "clique":
        edges = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    elif kind == "random":
        edges = {(rng.randint(1, v - 1), v) for v in range(2, n + 1)}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if (i, j) not in edges and rng.random() < 2.0 / n:
                    edges.add((i, j))
    else:
        raise ValueError(f"unknown kind {kind!r}")

    cap = n - 1 if list_len_bound is None else min(n - 1, list_len_bound - 1)
    prefs = []
    for i in range(1, n + 1):
        others = [o for o in objs if o != objs[i - 1]]
        rng.shuffle(others)
        k = rng.randint(0, cap)
        prefs.append(others[:k] + [objs[i - 1]])
    ta = rng.randint(1, n)
    tobj = objs[rng.randint(1, n) - 1]
    lst = prefs[ta - 1]
    if tobj not in lst:
        lst.insert(rng.randint(0, len(lst) - 1), tobj)
        if list_len_bound is not None and len(lst) > list_len_bound:
            drop = next(
                k
                for k in range(len(lst) - 1, -1, -1)
                if lst[k] != tobj and lst[k] != objs[ta - 1]
            )
            lst.pop(drop)
    return Instance(
        n=n,
        objects=objs,
        prefs=tuple(tuple(p) for p in prefs),
        edges=frozenset(edges),
        initial=objs,
        target_agent=ta,
        target_object=tobj,
    )
