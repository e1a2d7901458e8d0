# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled search kernel; mirrors ``_pykernel.solve`` step for step."""

from libcpp.vector cimport vector
import time

cdef int SAT = 1
cdef int UNSAT = 0
cdef int BUDGET = -1
cdef double DECAY = 1.0 / 0.95
cdef double RESCALE_AT = 1e100
cdef int CLOCK_EVERY = 256


cdef class _Heap:
    # max-activity, then min-index, over variables
    cdef vector[int] heap
    cdef vector[int] pos
    cdef double* act

    def __cinit__(self, int nvars):
        self.pos.assign(nvars, -1)

    cdef inline bint before(self, int a, int b):
        if self.act[a] != self.act[b]:
            return self.act[a] > self.act[b]
        return a < b

    cdef void up(self, int i):
        cdef int v = self.heap[i]
        cdef int parent
        while i > 0:
            parent = (i - 1) >> 1
            if not self.before(v, self.heap[parent]):
                break
            self.heap[i] = self.heap[parent]
            self.pos[self.heap[i]] = i
            i = parent
        self.heap[i] = v
        self.pos[v] = i

    cdef void down(self, int i):
        cdef int v = self.heap[i]
        cdef int n = self.heap.size()
        cdef int child
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            if child + 1 < n and self.before(self.heap[child + 1], self.heap[child]):
                child += 1
            if not self.before(self.heap[child], v):
                break
            self.heap[i] = self.heap[child]
            self.pos[self.heap[i]] = i
            i = child
        self.heap[i] = v
        self.pos[v] = i

    cdef void insert(self, int v):
        if self.pos[v] >= 0:
            return
        self.heap.push_back(v)
        self.pos[v] = self.heap.size() - 1
        self.up(self.heap.size() - 1)

    cdef void increased(self, int v):
        if self.pos[v] >= 0:
            self.up(self.pos[v])

    cdef void rebuild(self):
        # underflow can create new ties, so restore the order from scratch
        cdef vector[int] members = self.heap
        cdef size_t q
        for q in range(members.size()):
            self.pos[members[q]] = -1
        self.heap.clear()
        for q in range(members.size()):
            self.insert(members[q])

    cdef int pop(self):
        cdef int top = self.heap[0]
        cdef int last = self.heap.back()
        self.heap.pop_back()
        self.pos[top] = -1
        if self.heap.size() > 0:
            self.heap[0] = last
            self.pos[last] = 0
            self.down(0)
        return top


cdef class _Solver:
    cdef int nv, ne, nvars
    cdef vector[int] in_ptr, in_src, edst, esign, vfix, constrained
    cdef vector[int] val, level, tpos, reason, trail, trail_lim
    cdef vector[int] occ_ptr, occ
    cdef vector[int] cl_start, cl_len, cl_lits
    cdef vector[vector[int]] watches
    cdef vector[double] activity
    cdef double var_inc
    cdef _Heap heap
    cdef vector[char] seen
    cdef vector[int] involved
    cdef vector[int] learnt
    cdef long decisions, propagations, conflicts
    cdef int qhead

    def __cinit__(self, int nv, in_ptr, in_src, esign, vfix, constrained):
        cdef int v, k, j
        self.nv = nv
        self.ne = len(in_src)
        self.nvars = nv + self.ne
        self.in_ptr = in_ptr
        self.in_src = in_src
        self.esign = esign
        self.vfix = vfix
        self.constrained = constrained
        self.edst.assign(self.ne, 0)
        for v in range(nv):
            for k in range(self.in_ptr[v], self.in_ptr[v + 1]):
                self.edst[k] = v
        self.val.assign(self.nvars, 0)
        self.level.assign(self.nvars, 0)
        self.tpos.assign(self.nvars, 0)
        self.reason.assign(self.nvars, -1)
        self.seen.assign(self.nvars, 0)
        self.activity.assign(self.nvars, 0.0)
        self.var_inc = 1.0
        self.watches.resize(2 * self.nvars)

        # CSR occurrence lists of support clauses, same order as the Python kernel
        cdef vector[int] counts
        counts.assign(self.nvars, 0)
        for v in range(nv):
            if not self.constrained[v]:
                continue
            counts[v] += 1
            for k in range(self.in_ptr[v], self.in_ptr[v + 1]):
                j = self.in_src[k]
                if j != v:
                    counts[j] += 1
                counts[nv + k] += 1
        self.occ_ptr.assign(self.nvars + 1, 0)
        for v in range(self.nvars):
            self.occ_ptr[v + 1] = self.occ_ptr[v] + counts[v]
        self.occ.assign(self.occ_ptr[self.nvars], 0)
        cdef vector[int] fill = self.occ_ptr
        for v in range(nv):
            if not self.constrained[v]:
                continue
            self.occ[fill[v]] = v
            fill[v] += 1
            for k in range(self.in_ptr[v], self.in_ptr[v + 1]):
                j = self.in_src[k]
                if j != v:
                    self.occ[fill[j]] = v
                    fill[j] += 1
                self.occ[fill[nv + k]] = v
                fill[nv + k] += 1

        self.heap = _Heap(self.nvars)
        self.heap.act = &self.activity[0] if self.nvars > 0 else NULL
        for v in range(self.nvars):
            self.heap.insert(v)
        self.decisions = 0
        self.propagations = 0
        self.conflicts = 0
        self.qhead = 0

    cdef inline void assign(self, int var, int value, int why):
        self.val[var] = value
        self.level[var] = self.trail_lim.size()
        self.tpos[var] = self.trail.size()
        self.reason[var] = why
        self.trail.push_back(var)

    cdef bint check_support(self, int i):
        cdef int nv = self.nv
        cdef int xi = self.val[i]
        cdef int nonfalse = 0, cand = -1, cand_free = 0
        cdef int k, j, y, xj, free
        for k in range(self.in_ptr[i], self.in_ptr[i + 1]):
            j = self.in_src[k]
            y = self.val[nv + k]
            if j == i:
                if y == 1:
                    return True
                if y == 0:
                    nonfalse += 1
                    cand = k
                    cand_free = 1
                continue
            xj = self.val[j]
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
            j = self.in_src[cand]
            y = self.val[nv + cand]
            if j == i:
                self.assign(nv + cand, 1, -i - 2)
            elif xi == 0:
                self.assign(i, self.val[j] * y, -i - 2)
            elif self.val[j] == 0:
                self.assign(j, xi * y, -i - 2)
            else:
                self.assign(nv + cand, xi * self.val[j], -i - 2)
        return True

    cdef void support_scope(self, int i, int limit):
        cdef int nv = self.nv
        cdef int k, j
        self.involved.clear()
        if self.val[i] != 0 and self.tpos[i] < limit:
            self.involved.push_back(i)
        for k in range(self.in_ptr[i], self.in_ptr[i + 1]):
            j = self.in_src[k]
            if j != i and self.val[j] != 0 and self.tpos[j] < limit:
                self.involved.push_back(j)
            if self.val[nv + k] != 0 and self.tpos[nv + k] < limit:
                self.involved.push_back(nv + k)

    cdef void clause_vars(self, int c):
        cdef int t
        self.involved.clear()
        for t in range(self.cl_start[c], self.cl_start[c] + self.cl_len[c]):
            self.involved.push_back(self.cl_lits[t] >> 1)

    cdef inline bint lit_true(self, int lit):
        cdef int v = self.val[lit >> 1]
        return v != 0 and ((v == 1) == ((lit & 1) == 0))

    cdef int propagate(self):
        # conflict code: -1 none, >= 0 learned clause, <= -2 support clause
        cdef int var, false_lit, i, j, n_ws, c, base, length, first, fv, t, lit, lv, tmp, cv
        cdef bint moved
        while self.qhead < <int>self.trail.size():
            var = self.trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = 2 * var + (1 if self.val[var] == 1 else 0)
            i = 0
            j = 0
            n_ws = self.watches[false_lit].size()
            while i < n_ws:
                c = self.watches[false_lit][i]
                i += 1
                base = self.cl_start[c]
                length = self.cl_len[c]
                if self.cl_lits[base] == false_lit:
                    self.cl_lits[base] = self.cl_lits[base + 1]
                    self.cl_lits[base + 1] = false_lit
                first = self.cl_lits[base]
                fv = self.val[first >> 1]
                if fv != 0 and ((fv == 1) == ((first & 1) == 0)):
                    self.watches[false_lit][j] = c
                    j += 1
                    continue
                moved = False
                for t in range(2, length):
                    lit = self.cl_lits[base + t]
                    lv = self.val[lit >> 1]
                    if lv == 0 or ((lv == 1) == ((lit & 1) == 0)):
                        tmp = self.cl_lits[base + 1]
                        self.cl_lits[base + 1] = lit
                        self.cl_lits[base + t] = tmp
                        self.watches[lit].push_back(c)
                        moved = True
                        break
                if moved:
                    continue
                self.watches[false_lit][j] = c
                j += 1
                if fv != 0:
                    while i < n_ws:
                        self.watches[false_lit][j] = self.watches[false_lit][i]
                        j += 1
                        i += 1
                    self.watches[false_lit].resize(j)
                    return c
                self.assign(first >> 1, 1 if (first & 1) == 0 else -1, c)
            self.watches[false_lit].resize(j)
            for t in range(self.occ_ptr[var], self.occ_ptr[var + 1]):
                cv = self.occ[t]
                if not self.check_support(cv):
                    return -cv - 2
        return -1

    cdef void bump(self, int var):
        cdef int u
        self.activity[var] += self.var_inc
        if self.activity[var] > RESCALE_AT:
            for u in range(self.nvars):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap.rebuild()
        else:
            self.heap.increased(var)

    cdef int analyze(self, int confl):
        # fills self.learnt (asserting literal first), returns the backjump level
        cdef int cur = self.trail_lim.size()
        cdef int counter = 0
        cdef int idx = self.trail.size() - 1
        cdef int p = -1
        cdef int u, t, r, best, tmp
        cdef size_t q
        self.learnt.clear()
        self.learnt.push_back(0)
        if confl >= 0:
            self.clause_vars(confl)
        else:
            self.support_scope(-confl - 2, self.trail.size())
        while True:
            for q in range(self.involved.size()):
                u = self.involved[q]
                if u == p or self.seen[u] or self.level[u] == 0:
                    continue
                self.seen[u] = 1
                self.bump(u)
                if self.level[u] == cur:
                    counter += 1
                else:
                    self.learnt.push_back(2 * u + (1 if self.val[u] == 1 else 0))
            while not self.seen[self.trail[idx]]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            self.seen[p] = 0
            counter -= 1
            if counter == 0:
                break
            r = self.reason[p]
            if r >= 0:
                self.clause_vars(r)
            else:
                self.support_scope(-r - 2, self.tpos[p])
        for q in range(1, self.learnt.size()):
            self.seen[self.learnt[q] >> 1] = 0
        self.learnt[0] = 2 * p + (1 if self.val[p] == 1 else 0)
        if self.learnt.size() == 1:
            return 0
        # tail = learnt[1:], move its highest-level literal to learnt[1]
        best = 1
        for t in range(2, self.learnt.size()):
            if self.level[self.learnt[t] >> 1] > self.level[self.learnt[best] >> 1]:
                best = t
        tmp = self.learnt[1]
        self.learnt[1] = self.learnt[best]
        self.learnt[best] = tmp
        return self.level[self.learnt[1] >> 1]

    cdef void backtrack(self, int lvl):
        cdef int stop, t, var
        if <int>self.trail_lim.size() <= lvl:
            return
        stop = self.trail_lim[lvl]
        t = self.trail.size() - 1
        while t >= stop:
            var = self.trail[t]
            self.val[var] = 0
            self.reason[var] = -1
            self.heap.insert(var)
            t -= 1
        self.trail.resize(stop)
        self.trail_lim.resize(lvl)
        self.qhead = self.trail.size()

    cdef int phase(self, int var):
        cdef int nv = self.nv
        cdef int k, j, xi, xj, y, s
        cdef int pos = 0, neg = 0, first = 0
        if var >= nv:
            k = var - nv
            xi = self.val[self.edst[k]]
            xj = self.val[self.in_src[k]]
            if xi != 0 and xj != 0:
                return xi * xj
            return 1
        for k in range(self.in_ptr[var], self.in_ptr[var + 1]):
            j = self.in_src[k]
            if j == var:
                continue
            xj = self.val[j]
            y = self.val[nv + k]
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

    cdef int run(self, long max_decisions, double deadline):
        cdef int v, k, confl, back, c, var, lit
        cdef size_t q
        for v in range(self.nv):
            if self.vfix[v]:
                self.assign(v, self.vfix[v], -1)
        for k in range(self.ne):
            if self.esign[k]:
                self.assign(self.nv + k, self.esign[k], -1)
        for v in range(self.nv):
            if self.constrained[v] and not self.check_support(v):
                return UNSAT
        while True:
            confl = self.propagate()
            if confl != -1:
                self.conflicts += 1
                if self.trail_lim.size() == 0:
                    return UNSAT
                back = self.analyze(confl)
                self.backtrack(back)
                lit = self.learnt[0]
                if self.learnt.size() == 1:
                    self.assign(lit >> 1, 1 if (lit & 1) == 0 else -1, -1)
                else:
                    c = self.cl_start.size()
                    self.cl_start.push_back(self.cl_lits.size())
                    self.cl_len.push_back(self.learnt.size())
                    for q in range(self.learnt.size()):
                        self.cl_lits.push_back(self.learnt[q])
                    self.watches[self.learnt[0]].push_back(c)
                    self.watches[self.learnt[1]].push_back(c)
                    self.assign(lit >> 1, 1 if (lit & 1) == 0 else -1, c)
                self.var_inc *= DECAY
                if deadline > 0 and self.conflicts % CLOCK_EVERY == 0 and time.monotonic() > deadline:
                    return BUDGET
                continue

            var = -1
            while self.heap.heap.size() > 0:
                v = self.heap.pop()
                if self.val[v] == 0:
                    var = v
                    break
            if var < 0:
                return SAT
            if max_decisions >= 0 and self.decisions >= max_decisions:
                return BUDGET
            self.decisions += 1
            if deadline > 0 and self.decisions % CLOCK_EVERY == 0 and time.monotonic() > deadline:
                return BUDGET
            self.trail_lim.push_back(self.trail.size())
            self.assign(var, self.phase(var), -1)


def solve(int nv, in_ptr, in_src, esign, vfix, constrained, long max_decisions=-1, double deadline=0.0):
    """Return ``(status, values, decisions, propagations, conflicts)``."""
    cdef _Solver s = _Solver(nv, in_ptr, in_src, esign, vfix, constrained)
    cdef int status = s.run(max_decisions, deadline)
    return status, list(s.val), s.decisions, s.propagations, s.conflicts
