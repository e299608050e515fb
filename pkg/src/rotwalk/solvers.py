"""Searching for consistent rotation maps on regular graphs.

Two different problems hide behind "consistent", and they have very
different difficulty:

* permutation criterion — every rotation-map column a permutation.  This
  is solvable in polynomial time for EVERY regular graph: the arcs of a
  d-regular graph form a d-regular bipartite graph (left copy of V to
  right copy of V, one edge per arc), which always decomposes into d
  perfect matchings; each matching becomes one column.  Implemented by
  the ``matching`` method with repeated Hopcroft-Karp passes.

* involution criterion — every label class a perfect matching, i.e. a
  proper d-edge-coloring of a d-regular graph.  Deciding whether one
  exists is the hard "Class 1 vs Class 2" question, so this side is a
  heuristic suite: ``greedy-coloring``, ``vizing`` (Misra-Gries on a
  d+1 palette plus a pass that tries to empty the extra color class),
  and ``local-search`` (Kempe-chain moves with random restarts).

``exhaustive`` backtracking is the ground-truth oracle for either
criterion on small instances (n*d bounded by a configured ceiling).  It
is the only method allowed to claim infeasibility.

Solved outcomes are always re-validated through the rotmap checkers:
the checker, not the solver, is the source of truth.  All tie-breaking
is by lowest vertex index then lowest label, and all randomness flows
from the config seed, so identical (graph, config) inputs reproduce
identical outcomes and stats (wall-clock time aside).
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import ConfigError, RotwalkError, ValidationError
from .graphs import FamilySpec, RegularGraph, generate_graph
from .rotmap import (
    RotationMap,
    check_involution_consistent,
    check_permutation_consistent,
)
from .version import REPORT_VERSION

CRITERIA = ("permutation", "involution")
METHODS = ("matching", "greedy-coloring", "vizing", "local-search", "exhaustive")
STATUSES = ("solved", "infeasible-proven", "budget-exhausted")


@dataclass(frozen=True)
class SolverConfig:
    """Criterion, method, seed, and budgets for one solve.

    ``max_iterations`` caps each local-search restart; ``time_budget``
    (seconds) is a soft wall-clock guard checked between iterations, so
    runs whose iteration caps bind first stay fully deterministic.
    ``exhaustive_ceiling`` caps n*d for the exhaustive method.
    """

    criterion: str = "permutation"
    method: str = "matching"
    seed: int = 0
    max_iterations: int = 5000
    max_restarts: int = 10
    time_budget: float = 30.0
    exhaustive_ceiling: int = 40

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise ConfigError(f"unknown criterion {self.criterion!r}; expected one of {CRITERIA}")
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.max_iterations < 1 or self.max_restarts < 1:
            raise ConfigError("iteration and restart budgets must be positive")
        if self.time_budget <= 0:
            raise ConfigError("time budget must be positive")
        if self.exhaustive_ceiling < 1:
            raise ConfigError("exhaustive ceiling must be positive")


@dataclass(frozen=True)
class SolverStats:
    """iterations: matching phases / edges colored / search nodes /
    local-search moves, depending on method.  conflict_trace records the
    conflict count at each local-search iteration (empty otherwise).
    best_conflicts is 0 for solved outcomes; for coloring heuristics it
    is the conflict count of the best labeling found, and for exhaustive
    outcomes the fewest unassigned slots over all partial assignments."""

    iterations: int
    restarts: int
    wall_ms: float
    best_conflicts: int
    conflict_trace: tuple[int, ...] = ()


@dataclass(frozen=True)
class SolverOutcome:
    status: str
    criterion: str
    method: str
    seed: int
    n: int
    d: int
    rotation_map: RotationMap | None
    certificate: str | None
    stats: SolverStats

    def to_report(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "status": self.status,
            "criterion": self.criterion,
            "method": self.method,
            "seed": self.seed,
            "n": self.n,
            "d": self.d,
            "iterations": self.stats.iterations,
            "restarts": self.stats.restarts,
            "best_conflicts": self.stats.best_conflicts,
            "wall_ms": self.stats.wall_ms,
        }


def solve(graph: RegularGraph, config: SolverConfig | None = None) -> SolverOutcome:
    """Dispatch to the solver matching (criterion, method)."""
    if config is None:
        config = SolverConfig()
    if config.method == "matching":
        if config.criterion != "permutation":
            raise ConfigError("the matching method solves the permutation criterion only")
        return solve_permutation(graph, config)
    if config.method == "exhaustive":
        return exhaustive_search(graph, config)
    if config.criterion != "involution":
        raise ConfigError(f"method {config.method!r} targets the involution criterion only")
    return solve_edge_coloring(graph, config)


def stress_run(
    spec: FamilySpec, config: SolverConfig | None = None, max_tries: int = 100
) -> tuple[SolverOutcome, dict]:
    """Generate the spec'd graph, solve it, and return (outcome, stats report)."""
    graph = generate_graph(spec, max_tries=max_tries)
    outcome = solve(graph, config)
    return outcome, outcome.to_report()


# ---------------------------------------------------------------------------
# Permutation criterion: matching decomposition


def _perfect_matching(adj: list[list[int]], n: int) -> tuple[list[int] | None, int]:
    """Perfect matching of a balanced bipartite graph, or None.

    adj[u] lists the right-vertices of left-vertex u.  Hopcroft-Karp
    with an iterative augmenting DFS (paths can reach length ~2n).
    Returns (match or None, BFS phases used).
    """
    inf = n + 2
    match_l = [-1] * n
    match_r = [-1] * n
    dist = [0] * n
    phases = 0

    def bfs() -> bool:
        queue = deque()
        for u in range(n):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                x = match_r[w]
                if x == -1:
                    found = True
                elif dist[x] == inf:
                    dist[x] = dist[u] + 1
                    queue.append(x)
        return found

    def augment(source: int) -> bool:
        stack = [source]
        iters = [iter(adj[source])]
        via: list[int] = []
        while stack:
            u = stack[-1]
            descended = False
            for w in iters[-1]:
                x = match_r[w]
                if x == -1:
                    via.append(w)
                    for left, right in zip(stack, via):
                        match_l[left] = right
                        match_r[right] = left
                    return True
                if dist[x] == dist[u] + 1:
                    via.append(w)
                    stack.append(x)
                    iters.append(iter(adj[x]))
                    descended = True
                    break
            if not descended:
                dist[u] = inf
                stack.pop()
                iters.pop()
                if via:
                    via.pop()
        return False

    while bfs():
        phases += 1
        progress = 0
        for source in range(n):
            if match_l[source] == -1 and augment(source):
                progress += 1
        if progress == 0:
            break
    if any(m == -1 for m in match_l):
        return None, phases
    return match_l, phases


def solve_permutation(graph: RegularGraph, config: SolverConfig | None = None) -> SolverOutcome:
    """Decompose the arc graph into d perfect matchings; always solves.

    Column k of the output is the k-th matching.  Each matching removes
    one arc per vertex on both sides, so the residual arc graph stays
    regular and keeps a perfect matching — failure would be a defect,
    not a search miss, and raises.
    """
    if config is None:
        config = SolverConfig()
    start = time.perf_counter()
    n, d = graph.n, graph.d
    remaining = [[int(w) for w in graph.neighbors[v]] for v in range(n)]
    columns = []
    phases_total = 0
    for _ in range(d):
        match, phases = _perfect_matching(remaining, n)
        phases_total += phases
        if match is None:
            raise RotwalkError(
                "internal defect: residual arc graph lost its perfect matching"
            )
        columns.append(match)
        for v in range(n):
            remaining[v].remove(match[v])
    rot = RotationMap(np.column_stack(columns))
    if not check_permutation_consistent(rot).consistent:
        raise RotwalkError("internal defect: matching output failed the permutation checker")
    stats = SolverStats(
        iterations=phases_total,
        restarts=0,
        wall_ms=(time.perf_counter() - start) * 1000.0,
        best_conflicts=0,
    )
    return SolverOutcome(
        status="solved",
        criterion="permutation",
        method="matching",
        seed=config.seed,
        n=n,
        d=d,
        rotation_map=rot,
        certificate=None,
        stats=stats,
    )


# ---------------------------------------------------------------------------
# Involution criterion: edge colorings


@dataclass(frozen=True)
class EdgeColoring:
    """A proper edge coloring: labels[i] colors edges[i]; colors dense 0-based."""

    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]
    num_colors: int


def rotation_from_coloring(graph: RegularGraph, labels) -> RotationMap:
    """Convert a proper d-edge-coloring (labels over graph.edges() order)
    into the rotation map whose label classes are the color classes."""
    n, d = graph.n, graph.d
    entries = np.full((n, d), -1, dtype=np.int64)
    for (u, v), c in zip(graph.edges(), labels):
        if not (0 <= c < d):
            raise ValidationError(f"color {c} out of range 0..{d - 1}")
        if entries[u, c] != -1 or entries[v, c] != -1:
            raise ValidationError(f"color {c} repeats at vertex {min(u, v) + 1}")
        entries[u, c] = v
        entries[v, c] = u
    if (entries == -1).any():
        raise ValidationError("coloring does not place every label at every vertex")
    return RotationMap(entries)


def greedy_coloring(graph: RegularGraph) -> EdgeColoring:
    """Smallest free color per edge, edges in sorted order, open palette."""
    edges = graph.edges()
    busy = [set() for _ in range(graph.n)]
    labels = []
    for u, v in edges:
        c = 0
        while c in busy[u] or c in busy[v]:
            c += 1
        labels.append(c)
        busy[u].add(c)
        busy[v].add(c)
    return EdgeColoring(tuple(edges), tuple(labels), len(set(labels)))


def _alternating_path(at, start, first_color, second_color):
    """Edges of the maximal path from ``start`` alternating the two colors.

    ``at[v][c]`` is the neighbor joined to v by color c (-1 if none).
    ``start`` must miss ``second_color`` so that it is a path endpoint.
    """
    path = []
    x, color = start, first_color
    while at[x][color] != -1:
        y = at[x][color]
        path.append((x, y))
        x = y
        color = second_color if color == first_color else first_color
    return path


def vizing_color(graph: RegularGraph) -> EdgeColoring:
    """Proper edge coloring with at most d+1 colors, deterministic.

    Per edge: first the smallest color free at both endpoints; when none
    exists, the fan-rotation construction on the d+1 palette (build a
    maximal fan, invert one alternating path, rotate a fan prefix).
    A final pass tries to drain the rarest color class via direct
    recolorings and single Kempe-chain inversions, which is what turns
    even cycles into 2 colors and K_4 into 3 instead of wasting the
    spare color.
    """
    n, d = graph.n, graph.d
    edges = graph.edges()
    palette = d + 1
    at = [[-1] * palette for _ in range(n)]
    color_of: dict[tuple[int, int], int] = {}

    def key(a, b):
        return (a, b) if a < b else (b, a)

    def assign(a, b, c):
        at[a][c] = b
        at[b][c] = a
        color_of[key(a, b)] = c

    def unassign(a, b):
        c = color_of.pop(key(a, b))
        at[a][c] = -1
        at[b][c] = -1
        return c

    def free(x):
        for c in range(palette):
            if at[x][c] == -1:
                return c
        raise RotwalkError("internal defect: vertex saturated a d+1 palette")

    def invert(path, first_color, second_color):
        # Two-phase so intermediate states never hold a double color.
        for a, b in path:
            unassign(a, b)
        for i, (a, b) in enumerate(path):
            assign(a, b, second_color if i % 2 == 0 else first_color)

    for u, v in edges:
        shared = next(
            (c for c in range(palette) if at[u][c] == -1 and at[v][c] == -1), -1
        )
        if shared != -1:
            assign(u, v, shared)
            continue
        # Maximal fan of u starting at v: each next spoke's color is free
        # at the previous fan vertex.
        fan = [v]
        in_fan = {v}
        while True:
            last = fan[-1]
            grown = False
            for c in range(palette):
                if at[last][c] != -1:
                    continue
                w = at[u][c]
                if w != -1 and w not in in_fan:
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break
            if not grown:
                break
        cu = free(u)
        cl = free(fan[-1])
        if at[u][cl] != -1:
            invert(_alternating_path(at, u, cl, cu), cl, cu)
        # cl is now free at u; find the shortest fan prefix whose tip
        # also misses cl and which is still a fan after the inversion.
        target = -1
        for i in range(len(fan)):
            if at[fan[i]][cl] != -1:
                continue
            prefix_ok = True
            for j in range(1, i + 1):
                if at[fan[j - 1]][color_of[key(u, fan[j])]] != -1:
                    prefix_ok = False
                    break
            if prefix_ok:
                target = i
                break
        if target == -1:
            raise RotwalkError("internal defect: no rotatable fan prefix")
        for j in range(target):
            c = unassign(u, fan[j + 1])
            assign(u, fan[j], c)
        assign(u, fan[target], cl)

    # Drain pass: try to empty the rarest color class.
    used, counts = np.unique([color_of[key(u, v)] for u, v in edges], return_counts=True)
    if len(used) > d:
        rare = int(used[counts == counts.min()].max())
        for u, v in edges:
            if color_of.get(key(u, v)) != rare:
                continue
            unassign(u, v)
            shared = next(
                (
                    c
                    for c in range(palette)
                    if c != rare and at[u][c] == -1 and at[v][c] == -1
                ),
                -1,
            )
            if shared != -1:
                assign(u, v, shared)
                continue
            fixed = False
            for a in [c for c in range(palette) if c != rare and at[u][c] == -1]:
                for b in [c for c in range(palette) if c != rare and at[v][c] == -1]:
                    if a == b:
                        continue
                    # b is busy at u; invert u's (b, a)-path unless it
                    # runs into v, then b is free at both ends.
                    path = _alternating_path(at, u, b, a)
                    touched = {u} | {y for _, y in path}
                    if v in touched:
                        continue
                    invert(path, b, a)
                    assign(u, v, b)
                    fixed = True
                    break
                if fixed:
                    break
            if not fixed:
                assign(u, v, rare)

    raw = [color_of[key(u, v)] for u, v in edges]
    dense = {c: i for i, c in enumerate(sorted(set(raw)))}
    labels = tuple(dense[c] for c in raw)
    return EdgeColoring(tuple(edges), labels, len(dense))


def _conflict_total(n, d, edges, labels) -> int:
    counts = np.zeros((n, d), dtype=np.int64)
    for (u, v), c in zip(edges, labels):
        counts[u][c] += 1
        counts[v][c] += 1
    return int(np.maximum(counts - 1, 0).sum())


def _collapse_to_d(n, d, edges, labels) -> list[int]:
    """Force labels >= d down into 0..d-1, greedily minimizing new conflicts."""
    counts = np.zeros((n, d), dtype=np.int64)
    collapsed = list(labels)
    for (u, v), c in zip(edges, collapsed):
        if c < d:
            counts[u][c] += 1
            counts[v][c] += 1
    for e, (u, v) in enumerate(edges):
        if collapsed[e] < d:
            continue
        deltas = [(int(counts[u][c] >= 1) + int(counts[v][c] >= 1), c) for c in range(d)]
        _, best = min(deltas)
        collapsed[e] = best
        counts[u][best] += 1
        counts[v][best] += 1
    return collapsed


def solve_edge_coloring(graph: RegularGraph, config: SolverConfig) -> SolverOutcome:
    """Involution-criterion solving via the configured coloring method."""
    if config.criterion != "involution":
        raise ConfigError("solve_edge_coloring handles the involution criterion only")
    if config.method == "exhaustive":
        return exhaustive_search(graph, config)
    if config.method == "local-search":
        return _local_search(graph, config)
    if config.method not in ("greedy-coloring", "vizing"):
        raise ConfigError(f"method {config.method!r} is not an edge-coloring method")
    start = time.perf_counter()
    n, d = graph.n, graph.d
    coloring = greedy_coloring(graph) if config.method == "greedy-coloring" else vizing_color(graph)
    wall = lambda: (time.perf_counter() - start) * 1000.0  # noqa: E731
    if coloring.num_colors == d:
        rot = rotation_from_coloring(graph, coloring.labels)
        if not check_involution_consistent(rot).consistent:
            raise RotwalkError("internal defect: coloring output failed the involution checker")
        stats = SolverStats(len(coloring.edges), 0, wall(), 0)
        return SolverOutcome(
            "solved", "involution", config.method, config.seed, n, d, rot, None, stats
        )
    collapsed = _collapse_to_d(n, d, coloring.edges, coloring.labels)
    best = _conflict_total(n, d, coloring.edges, collapsed)
    stats = SolverStats(len(coloring.edges), 0, wall(), best)
    return SolverOutcome(
        "budget-exhausted", "involution", config.method, config.seed, n, d, None, None, stats
    )


# ---------------------------------------------------------------------------
# Local search with Kempe-chain moves


def _local_search(graph: RegularGraph, config: SolverConfig) -> SolverOutcome:
    """Minimize the repeated-incident-label count over full d-labelings.

    Objective: sum over vertices of (occurrences - 1) for each over-used
    label; zero means a proper d-edge-coloring.  Moves: relabel one
    conflicted edge to a least-damage label (ties broken by the seeded
    rng), or with probability 1/4 invert a random two-label Kempe
    component through a conflicted edge.  Fresh randomized-greedy
    labelings per restart; the best restart wins, ties to the earliest.
    """
    start = time.perf_counter()
    n, d = graph.n, graph.d
    edges = graph.edges()
    m = len(edges)
    edges_at = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        edges_at[u].append(e)
        edges_at[v].append(e)

    trace: list[int] = []
    total_iterations = 0
    restarts_run = 0
    best_conflicts = None
    best_labels = None
    timed_out = False

    for restart in range(config.max_restarts):
        if timed_out:
            break
        restarts_run += 1
        rng = random.Random(config.seed * 1_000_003 + restart)

        counts = [[0] * d for _ in range(n)]
        labels = [0] * m
        order = list(range(m))
        rng.shuffle(order)
        for e in order:
            u, v = edges[e]
            deltas = [(int(counts[u][c] > 0) + int(counts[v][c] > 0), c) for c in range(d)]
            _, c = min(deltas)
            labels[e] = c
            counts[u][c] += 1
            counts[v][c] += 1

        score = [sum(k - 1 for k in counts[v] if k > 1) for v in range(n)]
        conflicts = sum(score)

        iterations = 0
        while conflicts > 0 and iterations < config.max_iterations:
            if time.perf_counter() - start > config.time_budget:
                timed_out = True
                break
            iterations += 1
            trace.append(conflicts)

            hot = [v for v in range(n) if score[v] > 0]
            v = hot[rng.randrange(len(hot))]
            over = [c for c in range(d) if counts[v][c] > 1]
            a = over[rng.randrange(len(over))]
            offenders = [e for e in edges_at[v] if labels[e] == a]
            e = offenders[rng.randrange(len(offenders))]
            eu, ev = edges[e]

            if d > 1 and rng.random() < 0.25:
                others = [c for c in range(d) if c != a]
                b = others[rng.randrange(len(others))]
                component = _kempe_component(edges, edges_at, labels, e, a, b)
                touched = set()
                for ce in component:
                    cu, cv = edges[ce]
                    touched.add(cu)
                    touched.add(cv)
                before = sum(score[x] for x in touched)
                for ce in sorted(component):
                    cu, cv = edges[ce]
                    old = labels[ce]
                    new = b if old == a else a
                    labels[ce] = new
                    for x in (cu, cv):
                        counts[x][old] -= 1
                        counts[x][new] += 1
                for x in touched:
                    score[x] = sum(k - 1 for k in counts[x] if k > 1)
                conflicts += sum(score[x] for x in touched) - before
            else:
                deltas = []
                for c in range(d):
                    if c == a:
                        continue
                    delta = (
                        int(counts[eu][c] > 0)
                        + int(counts[ev][c] > 0)
                        - int(counts[eu][a] > 1)
                        - int(counts[ev][a] > 1)
                    )
                    deltas.append((delta, c))
                lowest = min(dl for dl, _ in deltas)
                choices = [c for dl, c in deltas if dl == lowest]
                c = choices[rng.randrange(len(choices))]
                before = score[eu] + (score[ev] if ev != eu else 0)
                labels[e] = c
                for x in (eu, ev):
                    counts[x][a] -= 1
                    counts[x][c] += 1
                for x in {eu, ev}:
                    score[x] = sum(k - 1 for k in counts[x] if k > 1)
                conflicts += score[eu] + score[ev] - before

        total_iterations += iterations
        if best_conflicts is None or conflicts < best_conflicts:
            best_conflicts = conflicts
            best_labels = list(labels)
        if best_conflicts == 0:
            break

    wall = (time.perf_counter() - start) * 1000.0
    stats = SolverStats(total_iterations, restarts_run, wall, best_conflicts, tuple(trace))
    if best_conflicts == 0:
        rot = rotation_from_coloring(graph, best_labels)
        if not check_involution_consistent(rot).consistent:
            raise RotwalkError("internal defect: local-search output failed the involution checker")
        return SolverOutcome(
            "solved", "involution", "local-search", config.seed, n, d, rot, None, stats
        )
    return SolverOutcome(
        "budget-exhausted", "involution", "local-search", config.seed, n, d, None, None, stats
    )


def _kempe_component(edges, edges_at, labels, e0, a, b):
    """Edge ids of the connected {a, b}-labeled subgraph containing e0.

    Well-defined for improper labelings too, where the component may
    branch instead of forming a simple path or cycle.
    """
    component = {e0}
    stack = [edges[e0][0], edges[e0][1]]
    seen = set(stack)
    while stack:
        x = stack.pop()
        for e in edges_at[x]:
            if e not in component and labels[e] in (a, b):
                component.add(e)
                for y in edges[e]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
    return component


# ---------------------------------------------------------------------------
# Exhaustive oracle


def exhaustive_search(graph: RegularGraph, config: SolverConfig) -> SolverOutcome:
    """Complete backtracking for either criterion on small instances.

    The only method entitled to return infeasible-proven.  Symmetry
    pruning fixes vertex 1's labels: its edges (involution) or its row
    (permutation) can always be brought to canonical order by renaming
    labels, so the restricted search is still complete.
    """
    n, d = graph.n, graph.d
    if n * d > config.exhaustive_ceiling:
        raise ConfigError(
            f"instance has {n * d} arc slots, above the exhaustive ceiling "
            f"{config.exhaustive_ceiling}"
        )
    start = time.perf_counter()
    if config.criterion == "involution":
        found, labels, nodes, deepest, timed_out = _exhaustive_coloring(graph, config, start)
        total = len(graph.edges())
    else:
        found, rows, nodes, deepest, timed_out = _exhaustive_rows(graph, config, start)
        total = n
    wall = (time.perf_counter() - start) * 1000.0
    if found:
        if config.criterion == "involution":
            rot = rotation_from_coloring(graph, labels)
            report = check_involution_consistent(rot)
        else:
            rot = RotationMap(np.array(rows, dtype=np.int64))
            report = check_permutation_consistent(rot)
        if not report.consistent:
            raise RotwalkError("internal defect: exhaustive output failed the checker")
        stats = SolverStats(nodes, 0, wall, 0)
        return SolverOutcome(
            "solved", config.criterion, "exhaustive", config.seed, n, d, rot, None, stats
        )
    stats = SolverStats(nodes, 0, wall, total - deepest)
    if timed_out:
        return SolverOutcome(
            "budget-exhausted", config.criterion, "exhaustive", config.seed, n, d, None, None, stats
        )
    if config.criterion == "involution":
        certificate = (
            f"complete backtracking over {d}-label colorings of {total} edges "
            f"(vertex 1's labels fixed by symmetry) explored {nodes} assignments; "
            "no proper coloring exists"
        )
    else:
        certificate = (
            f"complete backtracking over neighbor orderings of {total} vertices "
            f"(vertex 1's row fixed by symmetry) explored {nodes} assignments; "
            "no column-wise permutation labeling exists"
        )
    return SolverOutcome(
        "infeasible-proven", config.criterion, "exhaustive", config.seed, n, d, None,
        certificate, stats,
    )


def _exhaustive_coloring(graph, config, start):
    """Backtrack proper d-edge-colorings; vertex 0's edges pinned to 0..d-1."""
    n, d = graph.n, graph.d
    edges = graph.edges()
    m = len(edges)
    busy = [[False] * d for _ in range(n)]
    labels = [-1] * m
    # Sorted edges put vertex 0's d edges first, in neighbor order.
    for c in range(d):
        u, v = edges[c]
        labels[c] = c
        busy[u][c] = busy[v][c] = True
    state = {"nodes": 0, "deepest": d, "timed_out": False}

    def backtrack(idx: int) -> bool:
        if idx > state["deepest"]:
            state["deepest"] = idx
        if idx == m:
            return True
        u, v = edges[idx]
        for c in range(d):
            if busy[u][c] or busy[v][c]:
                continue
            state["nodes"] += 1
            if state["nodes"] % 4096 == 0 and time.perf_counter() - start > config.time_budget:
                state["timed_out"] = True
                return False
            labels[idx] = c
            busy[u][c] = busy[v][c] = True
            if backtrack(idx + 1):
                return True
            labels[idx] = -1
            busy[u][c] = busy[v][c] = False
            if state["timed_out"]:
                return False
        return False

    found = backtrack(d)
    return found, labels, state["nodes"], state["deepest"], state["timed_out"]


def _exhaustive_rows(graph, config, start):
    """Backtrack neighbor orderings per vertex; vertex 0's row pinned ascending."""
    n, d = graph.n, graph.d
    taken = [[False] * n for _ in range(d)]
    rows = [list(graph.neighbors[0])] + [[0] * d for _ in range(n - 1)]
    for j, w in enumerate(rows[0]):
        taken[j][w] = True
    state = {"nodes": 0, "deepest": 1, "timed_out": False}

    def backtrack(v: int) -> bool:
        if v > state["deepest"]:
            state["deepest"] = v
        if v == n:
            return True
        for perm in permutations(graph.neighbors[v]):
            if any(taken[j][w] for j, w in enumerate(perm)):
                continue
            state["nodes"] += 1
            if state["nodes"] % 4096 == 0 and time.perf_counter() - start > config.time_budget:
                state["timed_out"] = True
                return False
            rows[v] = [int(w) for w in perm]
            for j, w in enumerate(perm):
                taken[j][w] = True
            if backtrack(v + 1):
                return True
            for j, w in enumerate(perm):
                taken[j][w] = False
            if state["timed_out"]:
                return False
        return False

    found = backtrack(1)
    return found, rows, state["nodes"], state["deepest"], state["timed_out"]
