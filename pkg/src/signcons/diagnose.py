"""Minimal Inconsistent Cores (MICs).

A set ``W`` of non-input vertices is a MIC when the sign consistency
constraints of ``W`` cannot be satisfied jointly, while dropping any single
member makes them satisfiable. Vertices of a MIC always lie in one strongly
connected component of the graph linking each vertex with its regulators
(plus reverse links towards unobserved regulators); the over-approximation of
that graph over the whole instance bounds which vertices may co-occur.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import Mic, ValidatedInstance, Witness, validate
from .scc import component_ids, strongly_connected_components
from .solver import BudgetExceeded, Limits, SolverStats, Status, solve_ids

DEFAULT_MAX_CARDINALITY = 8
DEFAULT_BUDGET = 10**6


class Mode(enum.Enum):
    ONE = "one"
    ALL = "all"
    APPROX = "approx"


@dataclass(frozen=True)
class MicGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class CycleRelation:
    pairs: frozenset[frozenset[str]]

    def related(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.pairs


@dataclass
class DiagnosisReport:
    mode: Mode
    mics: list[Mic]
    complete: bool
    merged: MicGraph
    stats: dict = field(default_factory=dict)
    order_dependent: bool = False
    budget_exhausted: bool = False

    def to_text(self) -> str:
        lines = [str(mic) for mic in self.mics]
        if self.mode is Mode.ALL:
            lines.append(f"complete: {'true' if self.complete else 'false'}")
        return "".join(line + "\n" for line in lines)

    def to_json(self) -> str:
        doc = {
            "mode": self.mode.value,
            "mics": [list(mic.members) for mic in self.mics],
            "complete": self.complete,
            "order_dependent": self.order_dependent,
            "budget_exhausted": self.budget_exhausted,
            "merged": {
                "vertices": list(self.merged.vertices),
                "edges": [list(e) for e in self.merged.edges],
            },
            "stats": self.stats,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- connectivity -----------------------------------------------------------


def _overapprox_adj(inst: ValidatedInstance) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(inst.n)]
    for j, i, _ in inst.edges:
        if inst.is_input[i]:
            continue
        adj[j].add(i)
        if not inst.obs[j]:
            adj[i].add(j)
    return [sorted(s) for s in adj]


def overapprox_digraph(inst) -> list[tuple[str, str]]:
    """Edges into non-inputs, plus reversed copies of those leaving unobserved vertices."""
    inst = validate(inst)
    adj = _overapprox_adj(inst)
    return [(inst.names[u], inst.names[v]) for u in range(inst.n) for v in adj[u]]


def _cycle_components(inst: ValidatedInstance) -> list[int]:
    """Component id per vertex in the over-approximation; -1 for singleton components."""
    comps = strongly_connected_components(inst.n, _overapprox_adj(inst))
    cid = [-1] * inst.n
    for c, members in enumerate(comps):
        if len(members) > 1:
            for v in members:
                cid[v] = c
    return cid


def cycle_relation(inst) -> CycleRelation:
    """Unordered pairs of distinct vertices that reach each other in the over-approximation."""
    inst = validate(inst)
    comps = strongly_connected_components(inst.n, _overapprox_adj(inst))
    pairs = set()
    for members in comps:
        for u, v in itertools.combinations(members, 2):
            pairs.add(frozenset((inst.names[u], inst.names[v])))
    return CycleRelation(frozenset(pairs))


def _mic_graph_ids(inst: ValidatedInstance, ws: Iterable[int]):
    verts = set(ws)
    edges = set()
    for i in list(verts):
        for e in inst.in_edges[i]:
            j = inst.edges[e][0]
            verts.add(j)
            edges.add((j, i))
            if not inst.obs[j]:
                edges.add((i, j))
    return sorted(verts), sorted(edges)


def mic_graph(inst, members: Iterable[str]) -> MicGraph:
    """The members, their regulators, regulation edges, and reversed edges to unobserved regulators."""
    inst = validate(inst)
    verts, edges = _mic_graph_ids(inst, inst.vertex_ids(members))
    names = inst.names
    return MicGraph(
        vertices=tuple(names[v] for v in verts),
        edges=tuple((names[a], names[b]) for a, b in edges),
    )


def _strongly_connected_within(inst: ValidatedInstance, ws: Sequence[int]) -> bool:
    verts, edges = _mic_graph_ids(inst, ws)
    local = {v: k for k, v in enumerate(verts)}
    adj: list[list[int]] = [[] for _ in verts]
    for a, b in edges:
        adj[local[a]].append(local[b])
    comp = component_ids(len(verts), adj)
    return len({comp[local[v]] for v in ws}) <= 1


def members_strongly_connected(inst, members: Iterable[str]) -> bool:
    inst = validate(inst)
    return _strongly_connected_within(inst, inst.vertex_ids(members))


def merge_mics(inst, mics: Iterable[Mic]) -> MicGraph:
    """Union of the MIC graphs, for displaying overlapping inconsistency regions."""
    inst = validate(inst)
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for mic in mics:
        v, e = _mic_graph_ids(inst, inst.vertex_ids(mic.members))
        verts.update(v)
        edges.update(e)
    names = inst.names
    return MicGraph(
        vertices=tuple(names[v] for v in sorted(verts)),
        edges=tuple((names[a], names[b]) for a, b in sorted(edges)),
    )


# -- search -------------------------------------------------------------------


class _Engine:
    """Budgeted access to restricted consistency checks.

    Consistent answers are remembered as the set of vertices their witness
    satisfies; any scope inside such a set is consistent without a new search.
    """

    def __init__(self, inst: ValidatedInstance, budget: int, limits: Limits | None):
        self.budget = budget
        self.limits = limits
        self.stats = SolverStats()
        self.checks = 0
        self.cache_hits = 0
        self.partial: list[tuple[int, ...]] = []
        self.rebind(inst)

    def rebind(self, inst: ValidatedInstance) -> None:
        """Switch to another instance (e.g. with more inputs); the cache is dropped."""
        self.inst = inst
        self.satisfied: list[int] = []  # bitmasks over vertex ids
        self._regs = [
            [(inst.edges[e][0], e) for e in inst.in_edges[v]] for v in range(inst.n)
        ]

    def _charge(self) -> None:
        if self.checks >= self.budget:
            raise BudgetExceeded(f"diagnosis budget of {self.budget} checks exhausted", self.stats)
        self.checks += 1

    def _satisfied_mask(self, w: Witness) -> int:
        inst = self.inst
        names = inst.names
        x = [int(w.vertex_labels[n]) for n in names]
        y = [int(w.edge_labels[(names[s], names[d])]) for s, d, _ in inst.edges]
        mask = 0
        for v in range(inst.n):
            if not inst.is_input[v] and any(x[v] == x[j] * y[e] for j, e in self._regs[v]):
                mask |= 1 << v
        return mask

    def known_consistent(self, ws: Sequence[int]) -> bool:
        want = 0
        for v in ws:
            want |= 1 << v
        return any(want & ~m == 0 for m in self.satisfied)

    def check(self, ws: Sequence[int], use_cache: bool = True):
        """None if `ws` is inconsistent; otherwise a witness, or True on a cache hit."""
        self._charge()
        if use_cache and self.known_consistent(ws):
            self.cache_hits += 1
            return True
        res = solve_ids(self.inst, ws, self.limits)
        self.stats.add(res.stats)
        if res.status is Status.CONSISTENT:
            w = res.witness
            self.satisfied.append(self._satisfied_mask(w))
            return w
        return None

    def report_stats(self) -> dict:
        return {
            "checks": self.checks,
            "solver_calls": self.stats.calls,
            "cache_hits": self.cache_hits,
            "decisions": self.stats.decisions,
            "propagations": self.stats.propagations,
            "backtracks": self.stats.backtracks,
        }


def _check_mic(engine: _Engine, ws: Sequence[int]):
    if engine.check(ws) is not None:
        return False, None
    witnesses = {}
    for k in ws:
        rest = [v for v in ws if v != k]
        w = engine.check(rest, use_cache=False)
        if w is None:
            return False, None
        witnesses[engine.inst.names[k]] = w
    return True, witnesses


def is_mic(inst, members: Iterable[str], limits: Limits | None = None):
    """Return ``(True, removal_witnesses)`` if `members` form a MIC, else ``(False, None)``.

    Inconsistency is tested first; then each single-vertex removal must be
    consistent, and its witness is kept.
    """
    inst = validate(inst)
    ws = inst.vertex_ids(members)
    if not ws:
        raise ValueError("a MIC candidate needs at least one vertex")
    if any(inst.is_input[v] for v in ws):
        raise ValueError("MIC candidates consist of non-input vertices")
    engine = _Engine(inst, DEFAULT_BUDGET, limits)
    return _check_mic(engine, ws)


def _shrink(engine: _Engine) -> Mic | None:
    inst = engine.inst
    ws = inst.non_inputs()
    if engine.check(ws, use_cache=False) is not None:
        return None
    witnesses: dict[str, Witness] = {}
    for k in list(ws):
        rest = [v for v in ws if v != k]
        w = engine.check(rest, use_cache=False)
        if w is None:
            ws = rest
        else:
            # still a witness for every smaller scope without k
            witnesses[inst.names[k]] = w
    names = inst.vertex_names(ws)
    return Mic(names, {name: witnesses[name] for name in names})


def find_one_mic(inst, budget: int = DEFAULT_BUDGET, limits: Limits | None = None) -> Mic | None:
    """Deletion-based shrinking from the set of all non-input vertices.

    Returns None when the instance is consistent.
    """
    inst = validate(inst)
    return _shrink(_Engine(inst, budget, limits))


def _empty_graph() -> MicGraph:
    return MicGraph((), ())


def find_all_mics(
    inst,
    max_cardinality: int | None = DEFAULT_MAX_CARDINALITY,
    budget: int = DEFAULT_BUDGET,
    limits: Limits | None = None,
    dynamic_connectivity: bool = False,
) -> DiagnosisReport:
    """Enumerate every MIC of at most `max_cardinality` vertices.

    Candidates are sets of non-input vertices inside one component of the
    cycle relation, visited by increasing size; supersets of MICs are
    skipped, so a candidate is a MIC exactly when it is inconsistent. Each
    MIC found is re-verified and carries its removal witnesses. When the
    budget runs out, the MICs found so far are returned with
    ``complete=False``.
    """
    inst = validate(inst)
    engine = _Engine(inst, budget, limits)
    found: list[tuple[int, ...]] = []
    exhausted = False
    truncated = False
    try:
        if engine.check(inst.non_inputs(), use_cache=False) is None:
            found, truncated = _enumerate(engine, max_cardinality, dynamic_connectivity)
    except BudgetExceeded:
        exhausted = True
        found = engine.partial
    return _build_report(engine, Mode.ALL, found, not (exhausted or truncated), exhausted)


def _enumerate(engine: _Engine, max_cardinality, dynamic_connectivity):
    inst = engine.inst
    found = engine.partial
    cid = _cycle_components(inst)
    by_comp: dict[int, list[int]] = {}
    for v in inst.non_inputs():
        if cid[v] >= 0:
            by_comp.setdefault(cid[v], []).append(v)
    found_masks: list[int] = []

    frontier: list[tuple[int, ...]] = []
    for v in inst.non_inputs():
        if engine.check([v]) is None:
            found.append((v,))
            found_masks.append(1 << v)
        elif cid[v] >= 0:
            frontier.append((v,))

    size = 1
    while frontier:
        if max_cardinality is not None and size >= max_cardinality:
            return found, next(_extensions(frontier, set(frontier), by_comp, cid), None) is not None
        size += 1
        members = set(frontier)
        nxt = []
        for cand in _extensions(frontier, members, by_comp, cid):
            mask = 0
            for v in cand:
                mask |= 1 << v
            if any(m & ~mask == 0 for m in found_masks):
                continue
            if dynamic_connectivity and not _strongly_connected_within(inst, cand):
                # cannot be a MIC, and all proper subsets are consistent: consistent
                nxt.append(cand)
                continue
            if engine.check(cand) is None:
                found.append(cand)
                found_masks.append(mask)
            else:
                nxt.append(cand)
        frontier = nxt
    return found, False


def _extensions(frontier, members, by_comp, cid):
    """k-sets within one component all of whose (k-1)-subsets are in `members`."""
    for base in frontier:
        pool = by_comp[cid[base[0]]]
        for v in pool:
            if v <= base[-1]:
                continue
            cand = base + (v,)
            if all(cand[:t] + cand[t + 1:] in members for t in range(len(cand) - 1)):
                yield cand


def _build_report(engine: _Engine, mode: Mode, found, complete, exhausted, order_dependent=False):
    inst = engine.inst
    mics = []
    for ws in found:
        ok, witnesses = _check_mic(_Engine(inst, DEFAULT_BUDGET, engine.limits), list(ws))
        if not ok:
            raise RuntimeError(f"internal error: {inst.vertex_names(ws)} failed MIC verification")
        mics.append(Mic(inst.vertex_names(ws), witnesses))
    mics.sort(key=lambda m: m.members)
    merged = merge_mics(inst, mics) if mics else _empty_graph()
    stats = engine.report_stats()
    stats["mics"] = len(mics)
    return DiagnosisReport(
        mode=mode,
        mics=mics,
        complete=complete,
        merged=merged,
        stats=stats,
        order_dependent=order_dependent,
        budget_exhausted=exhausted,
    )


def diagnose_one(inst, budget: int = DEFAULT_BUDGET, limits: Limits | None = None) -> DiagnosisReport:
    inst = validate(inst)
    engine = _Engine(inst, budget, limits)
    try:
        mic = _shrink(engine)
    except BudgetExceeded:
        return _build_report(engine, Mode.ONE, [], False, True)
    mics = [mic] if mic else []
    stats = engine.report_stats()
    stats["mics"] = len(mics)
    return DiagnosisReport(
        mode=Mode.ONE,
        mics=mics,
        complete=False,
        merged=merge_mics(inst, mics) if mics else _empty_graph(),
        stats=stats,
    )


def approximate_all_mics(
    inst, budget: int = DEFAULT_BUDGET, limits: Limits | None = None
) -> DiagnosisReport:
    """Repeatedly find one MIC and turn its members into inputs until consistent.

    The result depends on the order in which MICs are found. Each MIC is
    verified against the instance state at the time it was found.
    """
    inst = validate(inst)
    engine = _Engine(inst, budget, limits)
    current = inst
    mics: list[Mic] = []
    exhausted = False
    try:
        while True:
            engine.rebind(current)
            mic = _shrink(engine)
            if mic is None:
                break
            mics.append(mic)
            current = current.with_inputs(current.vertex_ids(mic.members))
    except BudgetExceeded:
        exhausted = True
    stats = engine.report_stats()
    stats["mics"] = len(mics)
    stats["discovery_order"] = [list(mic.members) for mic in mics]
    return DiagnosisReport(
        mode=Mode.APPROX,
        mics=sorted(mics, key=lambda m: m.members),
        complete=False,
        merged=merge_mics(inst, mics) if mics else _empty_graph(),
        stats=stats,
        order_dependent=True,
        budget_exhausted=exhausted,
    )
