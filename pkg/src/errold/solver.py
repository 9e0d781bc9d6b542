"""Exact minimum detector-set computation for any detection kind.

Two strategies are offered: an exhaustive search that tries subsets in
size-then-lexicographic order (the oracle), and a branch-and-bound search
that fixes degree-forced detectors up front, branches on the remaining
vertices in descending-degree order, and prunes partial assignments that can
no longer dominate every vertex or distinguish every close pair even if all
undecided vertices become detectors.

Soundness of the pruning rests on monotonicity: dominator sets and their
differences only grow when detectors are added, so a requirement that fails
against (chosen | undecided) fails for every completion.  The same
monotonicity makes S = V(G) the feasibility test."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, bits_to_list, mask_of
from .detection import (
    DetectionKind, ERR_OLD, SYMMETRIC, verify, exists_err_old,
    forced_detectors_for_kind,
)


class SearchBudgetExceeded(Exception):
    """Node budget ran out; carries the best bound found so far."""

    def __init__(self, nodes_explored: int, best_size: int | None,
                 best_set: set[int] | None):
        self.nodes_explored = nodes_explored
        self.best_size = best_size
        self.best_set = best_set
        super().__init__(
            f"node budget exhausted after {nodes_explored} nodes"
            + (f"; best detector set so far has size {best_size}"
               if best_size is not None else "; no detector set found yet"))


@dataclass
class SolveResult:
    status: str                       # "optimal" | "infeasible"
    optimum: int | None = None
    witness: set[int] | None = None
    nodes_explored: int = 0


def minimum_detector_set(g: Graph, kind: DetectionKind,
                         strategy: str = "branch-and-bound",
                         budget: int | None = None,
                         jobs: int = 1) -> SolveResult:
    """Minimum-cardinality detector set of the given kind, or infeasible.

    Infeasibility is decided up front on S = V(G), which is conclusive by
    monotonicity.  With jobs > 1 the branch-and-bound root is split across
    worker processes; the result is identical to the serial search except
    for the advisory nodes_explored counter.
    """
    if not _feasible(g, kind):
        return SolveResult(status="infeasible", nodes_explored=1)
    if strategy == "exhaustive":
        return _solve_exhaustive(g, kind, budget)
    if strategy == "branch-and-bound":
        if jobs > 1:
            return _solve_bb_parallel(g, kind, budget, jobs)
        return _solve_bb(g, kind, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


def decision(g: Graph, kind: DetectionKind, k: int,
             strategy: str = "branch-and-bound") -> bool:
    """True iff some detector set of size <= k passes verification."""
    if k < 0:
        raise ValueError("threshold must be non-negative")
    res = minimum_detector_set(g, kind, strategy=strategy)
    return res.status == "optimal" and res.optimum <= k


def _feasible(g: Graph, kind: DetectionKind) -> bool:
    if kind == ERR_OLD:
        return exists_err_old(g).exists
    return verify(g, g.full_mask(), kind).ok


def _solve_exhaustive(g: Graph, kind: DetectionKind,
                      budget: int | None) -> SolveResult:
    nodes = 0
    for k in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            nodes += 1
            if budget is not None and nodes > budget:
                raise SearchBudgetExceeded(nodes - 1, None, None)
            if verify(g, combo, kind).ok:
                return SolveResult("optimal", k, set(combo), nodes)
    # unreachable: feasibility was established on S = V
    raise AssertionError("exhaustive search found nothing on a feasible graph")


# -- branch and bound ----------------------------------------------------------


def _branch_order(g: Graph) -> list[int]:
    # descending degree, ties by vertex id
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _prunable(g: Graph, kind: DetectionKind, chosen: int, undecided: int) -> bool:
    """True when some requirement is unreachable even if every undecided
    vertex becomes a detector."""
    potential = chosen | undecided
    d, t = kind.min_domination, kind.distinguish_threshold
    for v in range(g.n):
        if (g.adj[v] & potential).bit_count() < d:
            return True
    # once potential-domination holds, pairs at distance >= 3 cannot fail
    if kind.mode == SYMMETRIC:
        for u, v in g.pairs_within_distance_two():
            if ((g.adj[u] ^ g.adj[v]) & potential).bit_count() < t:
                return True
    else:
        for u, v in g.pairs_within_distance_two():
            du = g.adj[u] & potential
            dv = g.adj[v] & potential
            if max((du & ~dv).bit_count(), (dv & ~du).bit_count()) < t:
                return True
    return False


def _domination_lower_bound(g: Graph, kind: DetectionKind,
                            chosen: int, undecided: int) -> int:
    """Cheap admissible bound: the worst per-vertex dominator deficit must
    be covered by additional detectors."""
    d = kind.min_domination
    need = 0
    for v in range(g.n):
        have = (g.adj[v] & chosen).bit_count()
        if d - have > need:
            need = d - have
    return chosen.bit_count() + need


def _solve_bb(g: Graph, kind: DetectionKind, budget: int | None) -> SolveResult:
    forced = mask_of(forced_detectors_for_kind(g, kind))
    order = [v for v in _branch_order(g) if not (forced >> v & 1)]
    best_size: int | None = None
    best_set: int | None = None
    nodes = 0

    def rec(idx: int, chosen: int, undecided: int):
        nonlocal best_size, best_set, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise SearchBudgetExceeded(
                nodes - 1, best_size,
                set(bits_to_list(best_set)) if best_set is not None else None)
        size = chosen.bit_count()
        if best_size is not None and size >= best_size:
            return
        if _prunable(g, kind, chosen, undecided):
            return
        if best_size is not None and \
                _domination_lower_bound(g, kind, chosen, undecided) >= best_size:
            return
        if idx == len(order):
            if verify(g, chosen, kind).ok:
                best_size, best_set = size, chosen
            return
        v = order[idx]
        bit = 1 << v
        rec(idx + 1, chosen | bit, undecided & ~bit)
        rec(idx + 1, chosen, undecided & ~bit)

    rec(0, forced, g.full_mask() & ~forced)
    if best_size is None:
        return SolveResult("infeasible", nodes_explored=nodes)
    return SolveResult("optimal", best_size, set(bits_to_list(best_set)), nodes)


def _solve_bb_parallel(g: Graph, kind: DetectionKind, budget: int | None,
                       jobs: int) -> SolveResult:
    """Split the root of the search tree over the first few branch vertices.

    Every subtree is solved independently; combining by (size, subtree order)
    reproduces the serial result because the serial search only replaces a
    best solution on strict improvement."""
    import concurrent.futures

    forced = mask_of(forced_detectors_for_kind(g, kind))
    order = [v for v in _branch_order(g) if not (forced >> v & 1)]
    depth = 0
    while 2 ** depth < jobs * 2 and depth < len(order):
        depth += 1
    prefixes = list(itertools.product((1, 0), repeat=depth))
    tasks = []
    for prefix in prefixes:
        chosen = forced
        removed = 0
        for v, take in zip(order, prefix):
            if take:
                chosen |= 1 << v
            removed |= 1 << v
        tasks.append((chosen, removed))
    results = []
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_bb_subtree, g, kind, budget, chosen, removed, depth)
                   for chosen, removed in tasks]
        for fut in futures:
            results.append(fut.result())
    total_nodes = sum(r.nodes_explored for r in results)
    best = None
    for r in results:  # subtree order matches the serial branch order
        if r.status == "optimal" and (best is None or r.optimum < best.optimum):
            best = r
    if best is None:
        return SolveResult("infeasible", nodes_explored=total_nodes)
    return SolveResult("optimal", best.optimum, best.witness, total_nodes)


def _bb_subtree(g: Graph, kind: DetectionKind, budget: int | None,
                chosen: int, removed: int, depth: int) -> SolveResult:
    forced = mask_of(forced_detectors_for_kind(g, kind))
    order = [v for v in _branch_order(g) if not (forced >> v & 1)][depth:]
    best_size: int | None = None
    best_set: int | None = None
    nodes = 0

    def rec(idx: int, cur: int, undecided: int):
        nonlocal best_size, best_set, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise SearchBudgetExceeded(
                nodes - 1, best_size,
                set(bits_to_list(best_set)) if best_set is not None else None)
        size = cur.bit_count()
        if best_size is not None and size >= best_size:
            return
        if _prunable(g, kind, cur, undecided):
            return
        if idx == len(order):
            if verify(g, cur, kind).ok:
                best_size, best_set = size, cur
            return
        v = order[idx]
        bit = 1 << v
        rec(idx + 1, cur | bit, undecided & ~bit)
        rec(idx + 1, cur, undecided & ~bit)

    rec(0, chosen, g.full_mask() & ~chosen & ~removed)
    if best_size is None:
        return SolveResult("infeasible", nodes_explored=nodes)
    return SolveResult("optimal", best_size, set(bits_to_list(best_set)), nodes)
