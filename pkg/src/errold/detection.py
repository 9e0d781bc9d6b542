"""Domination and distinguishing predicates for detection systems.

A detector set S watches the open neighbourhoods of its vertices.  The four
supported variants are parameterised by a minimum domination level d, a
distinguishing threshold t, and whether pairs are separated by the symmetric
difference of their dominator sets or by a one-sided difference:

    OLD      d=1, t=1, symmetric
    RED:OLD  d=2, t=2, symmetric
    DET:OLD  d=2, t=2, one-sided
    ERR:OLD  d=3, t=3, symmetric

All checks are pure functions of an immutable Graph and a vertex set and are
safe to run from concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, ParseError, bits_to_list, mask_of

SYMMETRIC = "symmetric"
ONE_SIDED = "one-sided"


@dataclass(frozen=True)
class DetectionKind:
    name: str
    min_domination: int
    distinguish_threshold: int
    mode: str

    def __str__(self):
        return self.name


OLD = DetectionKind("OLD", 1, 1, SYMMETRIC)
RED_OLD = DetectionKind("RED:OLD", 2, 2, SYMMETRIC)
DET_OLD = DetectionKind("DET:OLD", 2, 2, ONE_SIDED)
ERR_OLD = DetectionKind("ERR:OLD", 3, 3, SYMMETRIC)

ALL_KINDS = (OLD, RED_OLD, DET_OLD, ERR_OLD)

_KIND_FLAGS = {"old": OLD, "redold": RED_OLD, "detold": DET_OLD, "err": ERR_OLD}


def kind_from_flag(flag: str) -> DetectionKind:
    """Map a CLI flag value (old|redold|detold|err) to its DetectionKind."""
    try:
        return _KIND_FLAGS[flag]
    except KeyError:
        raise ValueError(f"unknown detection kind {flag!r}; expected one of "
                         f"{sorted(_KIND_FLAGS)}") from None


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification.  Exactly one witness field is set on
    failure: either (vertex, value) for an under-dominated vertex or
    (pair, value) for an under-distinguished pair."""
    ok: bool
    vertex: int | None = None
    pair: tuple[int, int] | None = None
    value: int | None = None

    def __bool__(self):
        return self.ok


def dominators(g: Graph, detectors, v: int) -> set[int]:
    """N(v) intersected with the detector set."""
    return set(bits_to_list(g.adj[v] & _as_mask(detectors)))


def domination_profile(g: Graph, detectors) -> list[tuple[set[int], int]]:
    """Per vertex: (dominator set, domination number)."""
    smask = _as_mask(detectors)
    out = []
    for v in range(g.n):
        m = g.adj[v] & smask
        out.append((set(bits_to_list(m)), m.bit_count()))
    return out


def distinguishing_value(g: Graph, detectors, u: int, v: int,
                         mode: str = SYMMETRIC) -> int:
    """Symmetric mode: |N_S(u) symdiff N_S(v)|.  One-sided mode:
    max(|N_S(u) - N_S(v)|, |N_S(v) - N_S(u)|)."""
    if u == v:
        raise ValueError("distinguishing value is defined for distinct vertices")
    smask = _as_mask(detectors)
    du = g.adj[u] & smask
    dv = g.adj[v] & smask
    if mode == SYMMETRIC:
        return (du ^ dv).bit_count()
    if mode == ONE_SIDED:
        return max((du & ~dv).bit_count(), (dv & ~du).bit_count())
    raise ValueError(f"unknown mode {mode!r}")


def verify(g: Graph, detectors, kind: DetectionKind,
           strategy: str = "pruned") -> Verdict:
    """Check whether `detectors` is a valid set of the given kind.

    Vertices are scanned in increasing order, then pairs in lexicographic
    order, so the failure witness is deterministic.  The default 'pruned'
    strategy only tests pairs at distance <= 2 once domination has passed:
    a pair at distance >= 3 has disjoint dominator sets whose difference is
    already dom(u) + dom(v) >= 2d >= t for every supported kind.  The
    'naive' strategy scans all pairs and serves as the oracle.
    """
    smask = _as_mask(detectors)
    d, t, mode = kind.min_domination, kind.distinguish_threshold, kind.mode
    for v in range(g.n):
        got = (g.adj[v] & smask).bit_count()
        if got < d:
            return Verdict(False, vertex=v, value=got)
    if strategy == "pruned":
        pairs = g.pairs_within_distance_two()
    elif strategy == "naive":
        pairs = ((u, v) for u in range(g.n) for v in range(u + 1, g.n))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if mode == SYMMETRIC:
        for u, v in pairs:
            got = ((g.adj[u] ^ g.adj[v]) & smask).bit_count()
            if got < t:
                return Verdict(False, pair=(u, v), value=got)
    else:
        for u, v in pairs:
            du = g.adj[u] & smask
            dv = g.adj[v] & smask
            got = max((du & ~dv).bit_count(), (dv & ~du).bit_count())
            if got < t:
                return Verdict(False, pair=(u, v), value=got)
    return Verdict(True)


def is_open_dominating(g: Graph, detectors) -> bool:
    smask = _as_mask(detectors)
    return all(g.adj[v] & smask for v in range(g.n))


def verify_red_old_by_removal(g: Graph, detectors) -> bool:
    """Definitional RED:OLD oracle: S is open-dominating and S - {v} is an
    OLD set for every v in S.  The open-domination clause makes the empty
    set fail on nonempty graphs, matching the 2-dominated/2-distinguished
    characterisation."""
    smask = _as_mask(detectors)
    if not is_open_dominating(g, smask):
        return False
    for v in bits_to_list(smask):
        if not verify(g, smask & ~(1 << v), OLD).ok:
            return False
    return True


@dataclass(frozen=True)
class ExistenceResult:
    """Outcome of the ERR:OLD existence test.  On failure exactly one of
    the witness fields is set: a vertex of degree < 3, or a 4-cycle with an
    opposite pair whose open neighbourhoods differ in fewer than 3 places."""
    exists: bool
    low_degree_vertex: int | None = None
    cycle: tuple[int, int, int, int] | None = None
    pair: tuple[int, int] | None = None
    value: int | None = None

    def __bool__(self):
        return self.exists


def exists_err_old(g: Graph) -> ExistenceResult:
    """A graph permits an ERR:OLD set iff its minimum degree is at least 3
    and, for every 4-cycle, both opposite pairs have neighbourhood symmetric
    difference at least 3.  Both diagonals are checked since the cycle
    labelling is arbitrary."""
    for v in range(g.n):
        if g.degree(v) < 3:
            return ExistenceResult(False, low_degree_vertex=v)
    for a, b, c, d in g.four_cycles():
        for u, v in ((a, c), (b, d)):
            val = (g.adj[u] ^ g.adj[v]).bit_count()
            if val < 3:
                return ExistenceResult(False, cycle=(a, b, c, d), pair=(u, v), value=val)
    return ExistenceResult(True)


def forced_detectors(g: Graph) -> set[int]:
    """Vertices that belong to every ERR:OLD set: any vertex with a neighbour
    of degree exactly 3 (that neighbour needs all of its 3 neighbours as
    dominators)."""
    deg3 = mask_of(v for v in range(g.n) if g.degree(v) == 3)
    return {v for v in range(g.n) if g.adj[v] & deg3}


def forced_detectors_for_kind(g: Graph, kind: DetectionKind) -> set[int]:
    """Degree-based forcing generalised to any kind: a vertex w with degree
    exactly d needs every neighbour as a dominator, so N(w) is forced.
    (Vertices of degree < d make the instance infeasible outright.)"""
    d = kind.min_domination
    degd = mask_of(v for v in range(g.n) if g.degree(v) == d)
    return {v for v in range(g.n) if g.adj[v] & degd}


# -- detector-set file format --------------------------------------------------
#
# Whitespace-separated decimal vertex ids; '#' starts a comment line.


def parse_detector_set(text: str, g: Graph) -> set[int]:
    out: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex id {tok!r}") from None
            if not 0 <= v < g.n:
                raise ParseError(f"line {lineno}: vertex {v} outside 0..{g.n - 1}")
            out.add(v)
    return out


def serialize_detector_set(detectors) -> str:
    vs = sorted(detectors if not isinstance(detectors, int) else bits_to_list(detectors))
    return " ".join(str(v) for v in vs) + "\n"


def _as_mask(detectors) -> int:
    if isinstance(detectors, int):
        return detectors
    return mask_of(detectors)
