"""Consistency checking between an influence graph and an observation profile.

A profile is consistent when the partial vertex and edge labelings extend to
total ones under which every constrained (non-input) vertex receives at least
one influence matching its own sign. `check_restricted` enforces the
constraint only for a chosen set of vertices, which is what the diagnosis
module needs; its search variables are limited to the scope, the scope's
regulators and the edges between them.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import kernel
from .model import Sign, ValidatedInstance, Witness, validate

MAX_BRUTE_FORCE_FREE = 26


class Status(enum.Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


class BudgetExceeded(RuntimeError):
    """Search hit its decision or wall-clock limit before reaching an answer."""

    def __init__(self, message: str, stats: "SolverStats | None" = None):
        super().__init__(message)
        self.stats = stats


class NonTotalWitness(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass
class SolverStats:
    decisions: int = 0
    propagations: int = 0
    backtracks: int = 0
    calls: int = 0

    def add(self, other: "SolverStats") -> None:
        self.decisions += other.decisions
        self.propagations += other.propagations
        self.backtracks += other.backtracks
        self.calls += other.calls


@dataclass(frozen=True)
class ConstraintScope:
    """Non-input vertices whose sign consistency is enforced."""

    constrained: frozenset[str]

    @classmethod
    def full(cls, inst: ValidatedInstance) -> "ConstraintScope":
        return cls(frozenset(inst.names[v] for v in inst.non_inputs()))

    @classmethod
    def of(cls, names: Iterable[str]) -> "ConstraintScope":
        return cls(frozenset(names))


@dataclass(frozen=True)
class Limits:
    """Optional search budget; ``None`` means unlimited."""

    max_decisions: int | None = None
    time_limit: float | None = None


class ConsistencyResult:
    """Outcome of one search; ``witness`` is built lazily for consistent results."""

    def __init__(self, inst, status, stats, local=None, values=None):
        self.status = status
        self.stats = stats
        self._inst = inst
        self._local = local
        self._values = values

    @property
    def consistent(self) -> bool:
        return self.status is Status.CONSISTENT

    @cached_property
    def witness(self) -> Witness | None:
        if self.status is not Status.CONSISTENT:
            return None
        return _totalize(self._inst, self._local, self._values)

    def __repr__(self):
        return f"ConsistencyResult({self.status.name}, {self.stats})"


@dataclass(frozen=True)
class _Local:
    vertices: list[int]  # local index -> global vertex id
    edges: list[int]  # local edge index (CSR order) -> global edge id
    in_ptr: list[int]
    in_src: list[int]
    esign: list[int]
    vfix: list[int]
    constrained: list[int]


def _local_problem(inst: ValidatedInstance, scope: Sequence[int]) -> _Local:
    in_scope = set(scope)
    involved = set(in_scope)
    for v in scope:
        for e in inst.in_edges[v]:
            involved.add(inst.edges[e][0])
    verts = sorted(involved)
    lidx = {v: i for i, v in enumerate(verts)}
    in_ptr = [0]
    in_src: list[int] = []
    esign: list[int] = []
    gedges: list[int] = []
    for v in verts:
        if v in in_scope:
            for e in inst.in_edges[v]:
                src, _, sign = inst.edges[e]
                in_src.append(lidx[src])
                esign.append(sign)
                gedges.append(e)
        in_ptr.append(len(in_src))
    return _Local(
        vertices=verts,
        edges=gedges,
        in_ptr=in_ptr,
        in_src=in_src,
        esign=esign,
        vfix=[inst.obs[v] for v in verts],
        constrained=[1 if v in in_scope else 0 for v in verts],
    )


def _totalize(inst: ValidatedInstance, local: _Local, values: list[int]) -> Witness:
    # anything the search did not touch defaults to Plus unless fixed by the data
    vlab = [s if s else 1 for s in inst.obs]
    elab = [s if s else 1 for _, _, s in inst.edges]
    nv = len(local.vertices)
    for i, v in enumerate(local.vertices):
        vlab[v] = values[i]
    for k, e in enumerate(local.edges):
        elab[e] = values[nv + k]
    names = inst.names
    return Witness(
        vertex_labels={names[v]: Sign(vlab[v]) for v in range(inst.n)},
        edge_labels={
            (names[s], names[d]): Sign(elab[e]) for e, (s, d, _) in enumerate(inst.edges)
        },
    )


def solve_ids(
    inst: ValidatedInstance, scope: Sequence[int], limits: Limits | None = None
) -> ConsistencyResult:
    """`check_restricted` on vertex ids; the entry point used by the diagnosis engine."""
    limits = limits or Limits()
    local = _local_problem(inst, scope)
    deadline = time.monotonic() + limits.time_limit if limits.time_limit else 0.0
    max_dec = -1 if limits.max_decisions is None else limits.max_decisions
    status, values, dec, props, confl = kernel.solve(
        len(local.vertices),
        local.in_ptr,
        local.in_src,
        local.esign,
        local.vfix,
        local.constrained,
        max_dec,
        deadline,
    )
    stats = SolverStats(decisions=dec, propagations=props, backtracks=confl, calls=1)
    if status == kernel.BUDGET:
        raise BudgetExceeded("search budget exhausted", stats)
    if status == kernel.SAT:
        return ConsistencyResult(inst, Status.CONSISTENT, stats, local, values)
    return ConsistencyResult(inst, Status.INCONSISTENT, stats)


def _scope_ids(inst: ValidatedInstance, scope) -> list[int]:
    names = scope.constrained if isinstance(scope, ConstraintScope) else scope
    ids = inst.vertex_ids(names)
    bad = [inst.names[v] for v in ids if inst.is_input[v]]
    if bad:
        raise ValueError(f"input vertices cannot be constrained: {', '.join(bad)}")
    return ids


def check_consistency(inst, limits: Limits | None = None) -> ConsistencyResult:
    """Decide consistency of the whole instance (all non-input vertices constrained)."""
    inst = validate(inst)
    return solve_ids(inst, inst.non_inputs(), limits)


def check_restricted(inst, scope, limits: Limits | None = None) -> ConsistencyResult:
    """Decide whether witnessing labelings exist for exactly the vertices in `scope`."""
    inst = validate(inst)
    return solve_ids(inst, _scope_ids(inst, scope), limits)


def verify_witness(inst, scope, w: Witness) -> bool:
    """Evaluate a total labeling against the data and the scope's constraints."""
    inst = validate(inst)
    names = inst.names
    if isinstance(scope, ConstraintScope):
        scope = scope.constrained
    vl, el = w.vertex_labels, w.edge_labels
    missing = [n for n in names if n not in vl]
    missing += [f"{names[s]}->{names[d]}" for s, d, _ in inst.edges if (names[s], names[d]) not in el]
    if missing:
        raise NonTotalWitness(f"witness lacks labels for {', '.join(missing[:5])}")
    for v, s in enumerate(inst.obs):
        if s and int(vl[names[v]]) != s:
            return False
    for s, d, sign in inst.edges:
        if sign and int(el[(names[s], names[d])]) != sign:
            return False
    for v in inst.vertex_ids(scope):
        target = vl[names[v]]
        if not any(
            vl[names[inst.edges[e][0]]] * el[(names[inst.edges[e][0]], names[v])] == target
            for e in inst.in_edges[v]
        ):
            return False
    return True


def brute_force_consistent(inst, scope=None) -> bool:
    """Exhaustively try every totalization of the free vertex and edge signs."""
    inst = validate(inst)
    if scope is None:
        scope_ids = inst.non_inputs()
    else:
        scope_ids = _scope_ids(inst, scope)
    free_v = [v for v in range(inst.n) if not inst.obs[v]]
    free_e = [e for e in range(inst.m) if not inst.edges[e][2]]
    if len(free_v) + len(free_e) > MAX_BRUTE_FORCE_FREE:
        raise TooLarge(f"{len(free_v) + len(free_e)} free signs exceed {MAX_BRUTE_FORCE_FREE}")
    x = list(inst.obs)
    y = [s for _, _, s in inst.edges]
    regs = [[(inst.edges[e][0], e) for e in inst.in_edges[v]] for v in scope_ids]
    for combo in itertools.product((1, -1), repeat=len(free_v) + len(free_e)):
        for v, s in zip(free_v, combo):
            x[v] = s
        for e, s in zip(free_e, combo[len(free_v):]):
            y[e] = s
        if all(any(x[v] == x[j] * y[e] for j, e in rs) for v, rs in zip(scope_ids, regs)):
            return True
    return False
