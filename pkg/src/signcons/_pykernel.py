"""Pure-Python search kernel (fallback for the compiled ``_ckernel``).

Both kernels implement the same conflict-driven search over sign variables and
must return identical results; ``tests/test_kernels.py`` checks this.

Problem encoding (all arrays are plain sequences of ints):

* variables ``0 .. nv-1`` are vertex signs, ``nv + k`` is the sign of edge ``k``;
* edges are given in in-edge CSR order: edges targeting vertex ``v`` are
  ``in_ptr[v] .. in_ptr[v+1]-1``, edge ``k`` has source ``in_src[k]``;
* ``esign[k]`` / ``vfix[v]`` hold a fixed sign (1 / -1) or 0 if free;
* every vertex with ``constrained[v]`` needs some in-edge ``k`` (source ``j``)
  with ``x[v] == x[j] * y[k]``: its support clause.

Learned nogoods are clauses over sign literals ``2*var + (0 for +, 1 for -)``.
Values are 1 / -1, 0 means unassigned.
"""

import heapq
import time

SAT = 1
UNSAT = 0
BUDGET = -1

_DECAY = 1.0 / 0.95
_RESCALE_AT = 1e100
_CLOCK_EVERY = 256


def solve(nv, in_ptr, in_src, esign, vfix, constrained, max_decisions=-1, deadline=0.0):
    """Return ``(status, values, decisions, propagations, conflicts)``."""
    ne = len(in_src)
    nvars = nv + ne
    val = [0] * nvars
    level = [0] * nvars
    tpos = [0] * nvars
    reason = [-1] * nvars  # -1 decision/fact, >=0 learned clause, <= -2 support clause of vertex -r-2
    trail = []
    trail_lim = []

    edst = [0] * ne
    for v in range(nv):
        for k in range(in_ptr[v], in_ptr[v + 1]):
            edst[k] = v

    # support clauses touched by each variable
    occ = [[] for _ in range(nvars)]
    for v in range(nv):
        if not constrained[v]:
            continue
        occ[v].append(v)
        for k in range(in_ptr[v], in_ptr[v + 1]):
            j = in_src[k]
            if j != v:
                occ[j].append(v)
            occ[nv + k].append(v)

    clauses = []
    watches = [[] for _ in range(2 * nvars)]
    activity = [0.0] * nvars
    var_inc = 1.0
    heap = [(0.0, v) for v in range(nvars)]

    decisions = 0
    propagations = 0
    conflicts = 0
    qhead = 0

    def assign(var, value, why):
        val[var] = value
        level[var] = len(trail_lim)
        tpos[var] = len(trail)
        reason[var] = why
        trail.append(var)

    def check_support(i):
        # returns False on conflict
        xi = val[i]
        nonfalse = 0
        cand = -1
        cand_free = 0
        for k in range(in_ptr[i], in_ptr[i + 1]):
            j = in_src[k]
            y = val[nv + k]
            if j == i:
                if y == 1:
                    return True
                if y == 0:
                    nonfalse += 1
                    cand = k
                    cand_free = 1
                continue
            xj = val[j]
            free = (xi == 0) + (xj == 0) + (y == 0)
            if free == 0:
                if xi == xj * y:
                    return True
            else:
                nonfalse += 1
                cand = k
                cand_free = free
        if nonfalse == 0:
            return False
        if nonfalse == 1 and cand_free == 1:
            j = in_src[cand]
            y = val[nv + cand]
            why = -i - 2
            if j == i:
                assign(nv + cand, 1, why)
            elif xi == 0:
                assign(i, val[j] * y, why)
            elif val[j] == 0:
                assign(j, xi * y, why)
            else:
                assign(nv + cand, xi * val[j], why)
        return True

    def support_scope(i, limit):
        # assigned variables of clause i placed on the trail before position `limit`
        out = []
        if val[i] != 0 and tpos[i] < limit:
            out.append(i)
        for k in range(in_ptr[i], in_ptr[i + 1]):
            j = in_src[k]
            if j != i and val[j] != 0 and tpos[j] < limit:
                out.append(j)
            if val[nv + k] != 0 and tpos[nv + k] < limit:
                out.append(nv + k)
        return out

    def propagate():
        # returns conflict code: None, learned clause index, or -(vertex)-2
        nonlocal qhead, propagations
        while qhead < len(trail):
            var = trail[qhead]
            qhead += 1
            propagations += 1
            false_lit = 2 * var + (1 if val[var] == 1 else 0)
            ws = watches[false_lit]
            i = 0
            j = 0
            n_ws = len(ws)
            while i < n_ws:
                c = ws[i]
                i += 1
                lits = clauses[c]
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], lits[0]
                first = lits[0]
                fv = val[first >> 1]
                if fv != 0 and (fv == 1) == ((first & 1) == 0):
                    ws[j] = c
                    j += 1
                    continue
                moved = False
                for t in range(2, len(lits)):
                    lit = lits[t]
                    lv = val[lit >> 1]
                    if lv == 0 or (lv == 1) == ((lit & 1) == 0):
                        lits[1], lits[t] = lit, lits[1]
                        watches[lit].append(c)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = c
                j += 1
                if fv != 0:
                    while i < n_ws:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    return c
                assign(first >> 1, 1 if (first & 1) == 0 else -1, c)
            del ws[j:]
            for cv in occ[var]:
                if not check_support(cv):
                    return -cv - 2
        return None

    def bump(var):
        nonlocal var_inc
        activity[var] += var_inc
        if activity[var] > _RESCALE_AT:
            for u in range(nvars):
                activity[u] *= 1e-100
            var_inc *= 1e-100
            heap[:] = [(-activity[u], u) for u in range(nvars) if val[u] == 0]
            heapq.heapify(heap)
        elif val[var] == 0:
            heapq.heappush(heap, (-activity[var], var))

    def analyze(confl):
        cur = len(trail_lim)
        seen = set()
        learnt = []
        counter = 0
        idx = len(trail) - 1
        p = -1
        if confl >= 0:
            involved = [lit >> 1 for lit in clauses[confl]]
        else:
            involved = support_scope(-confl - 2, len(trail))
        while True:
            for u in involved:
                if u == p or u in seen or level[u] == 0:
                    continue
                seen.add(u)
                bump(u)
                if level[u] == cur:
                    counter += 1
                else:
                    learnt.append(2 * u + (1 if val[u] == 1 else 0))
            while trail[idx] not in seen:
                idx -= 1
            p = trail[idx]
            idx -= 1
            seen.discard(p)
            counter -= 1
            if counter == 0:
                break
            r = reason[p]
            if r >= 0:
                involved = [lit >> 1 for lit in clauses[r]]
            else:
                involved = support_scope(-r - 2, tpos[p])
        asserting = 2 * p + (1 if val[p] == 1 else 0)
        back = 0
        if learnt:
            best = 0
            for t in range(1, len(learnt)):
                if level[learnt[t] >> 1] > level[learnt[best] >> 1]:
                    best = t
            learnt[0], learnt[best] = learnt[best], learnt[0]
            back = level[learnt[0] >> 1]
        return [asserting] + learnt, back

    def backtrack(lvl):
        nonlocal qhead
        if len(trail_lim) <= lvl:
            return
        stop = trail_lim[lvl]
        for t in range(len(trail) - 1, stop - 1, -1):
            var = trail[t]
            val[var] = 0
            reason[var] = -1
            heapq.heappush(heap, (-activity[var], var))
        del trail[stop:]
        del trail_lim[lvl:]
        qhead = len(trail)

    def phase(var):
        if var >= nv:
            k = var - nv
            xi = val[edst[k]]
            xj = val[in_src[k]]
            if xi != 0 and xj != 0:
                return xi * xj
            return 1
        pos = 0
        neg = 0
        first = 0
        for k in range(in_ptr[var], in_ptr[var + 1]):
            j = in_src[k]
            if j == var:
                continue
            xj = val[j]
            y = val[nv + k]
            if xj == 0 or y == 0:
                continue
            s = xj * y
            if first == 0:
                first = s
            if s == 1:
                pos += 1
            else:
                neg += 1
        if pos > neg:
            return 1
        if neg > pos:
            return -1
        return first if first != 0 else 1

    def result(status):
        return status, list(val), decisions, propagations, conflicts

    # level-0 facts, then a full sweep of the support clauses
    for v in range(nv):
        if vfix[v]:
            assign(v, vfix[v], -1)
    for k in range(ne):
        if esign[k]:
            assign(nv + k, esign[k], -1)
    for v in range(nv):
        if constrained[v] and not check_support(v):
            return result(UNSAT)

    while True:
        confl = propagate()
        if confl is not None:
            conflicts += 1
            if not trail_lim:
                return result(UNSAT)
            lits, back = analyze(confl)
            backtrack(back)
            if len(lits) == 1:
                assign(lits[0] >> 1, 1 if (lits[0] & 1) == 0 else -1, -1)
            else:
                c = len(clauses)
                clauses.append(lits)
                watches[lits[0]].append(c)
                watches[lits[1]].append(c)
                assign(lits[0] >> 1, 1 if (lits[0] & 1) == 0 else -1, c)
            var_inc *= _DECAY
            if deadline and conflicts % _CLOCK_EVERY == 0 and time.monotonic() > deadline:
                return result(BUDGET)
            continue

        var = -1
        while heap:
            neg_act, u = heap[0]
            if val[u] != 0 or -neg_act != activity[u]:
                heapq.heappop(heap)
                continue
            var = u
            break
        if var < 0:
            return result(SAT)
        if max_decisions >= 0 and decisions >= max_decisions:
            return result(BUDGET)
        decisions += 1
        if deadline and decisions % _CLOCK_EVERY == 0 and time.monotonic() > deadline:
            return result(BUDGET)
        trail_lim.append(len(trail))
        assign(var, phase(var), -1)
