"""Input reduction: mark vertices that can always be labeled consistently.

A non-input vertex ``i`` becomes an input when one of these holds (checked in
this order; the first that fires is recorded):

1. a self-regulation ``i -> i`` labeled ``+``;
2. an in-edge whose sign is unknown;
3. two in-edges whose given data yield influences ``+`` and ``-``;
4. ``i`` is observed and some in-edge's given influence equals its sign;
5. ``i`` is unobserved, has an in-edge, and all its targets are inputs;
6. some regulator ``j`` is unobserved, an input, and all of ``j``'s targets
   other than ``i`` are inputs.

Only the given signs are inspected, never inferred ones. Conditions 5 and 6
depend on the input set, so rounds repeat until nothing changes; the result
is the least fixpoint and independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import ValidatedInstance, validate


@dataclass
class ReductionReport:
    # (vertex name, condition 1..6, round number starting at 1)
    added_inputs: list[tuple[str, int, int]] = field(default_factory=list)

    def trace_lines(self) -> list[str]:
        return [f"{name} {cond}" for name, cond, _ in self.added_inputs]


def _given_influences(inst: ValidatedInstance, i: int) -> tuple[bool, bool]:
    pos = neg = False
    for e in inst.in_edges[i]:
        j, _, sign = inst.edges[e]
        if sign and inst.obs[j]:
            if sign * inst.obs[j] == 1:
                pos = True
            else:
                neg = True
    return pos, neg


def static_condition(inst: ValidatedInstance, i: int) -> int:
    """First of conditions 1-4 that applies to `i` (0 if none); input-independent."""
    for e in inst.in_edges[i]:
        j, _, sign = inst.edges[e]
        if j == i and sign == 1:
            return 1
    if any(not inst.edges[e][2] for e in inst.in_edges[i]):
        return 2
    pos, neg = _given_influences(inst, i)
    if pos and neg:
        return 3
    if inst.obs[i] and (pos if inst.obs[i] == 1 else neg):
        return 4
    return 0


def dynamic_condition(inst: ValidatedInstance, i: int, is_input) -> int:
    """Condition 5 or 6 for `i` relative to the input flags `is_input` (0 if neither)."""
    if (
        not inst.obs[i]
        and inst.in_edges[i]
        and all(is_input[inst.edges[e][1]] for e in inst.out_edges[i])
    ):
        return 5
    for e in inst.in_edges[i]:
        j = inst.edges[e][0]
        if inst.obs[j] or not is_input[j]:
            continue
        if all(is_input[k] for k in inst.successors(j) if k != i):
            return 6
    return 0


def first_condition(inst: ValidatedInstance, i: int, is_input) -> int:
    return static_condition(inst, i) or dynamic_condition(inst, i, is_input)


def reduce_inputs(inst) -> tuple[ValidatedInstance, ReductionReport]:
    """Extend the input set to the least fixpoint of the six conditions."""
    inst = validate(inst)
    is_input = list(inst.is_input)
    report = ReductionReport()
    pending = sorted(v for v in range(inst.n) if not is_input[v])
    rnd = 0
    while pending:
        rnd += 1
        # every vertex in a round sees the input set from the end of the previous round
        added = []
        for i in pending:
            if is_input[i]:
                continue
            cond = first_condition(inst, i, is_input)
            if cond:
                added.append((i, cond))
        if not added:
            break
        for i, cond in added:
            is_input[i] = True
            report.added_inputs.append((inst.names[i], cond, rnd))
        touched = set()
        for i, _ in added:
            for j in inst.predecessors(i):
                touched.add(j)  # condition 5 of j; condition 6 of j's other targets
                touched.update(inst.successors(j))
            touched.update(inst.successors(i))  # condition 6 with i as the regulator
        pending = sorted(v for v in touched if not is_input[v])
    return inst.with_inputs(v for v in range(inst.n) if is_input[v]), report
