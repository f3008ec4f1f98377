# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled search kernels; same contract as ``_kernels_py``.

Masks and counts are 64-bit.  Callers keep masks within 63 bits; a count
that would overflow raises ``OverflowError`` so the caller can retry with
the arbitrary-precision fallback.
"""

from libc.stdint cimport uint64_t, int64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.pair cimport pair

cdef uint64_t U64MAX = 0xFFFFFFFFFFFFFFFF


cdef inline bint add_ovf(uint64_t a, uint64_t b, uint64_t* out) nogil:
    if a > U64MAX - b:
        return True
    out[0] = a + b
    return False


cdef inline bint mul_ovf(uint64_t a, uint64_t b, uint64_t* out) nogil:
    if a != 0 and b > U64MAX // a:
        return True
    out[0] = a * b
    return False


# ------------------------------------------------------------ strips

cdef struct StripCtx:
    int npos
    int limit
    bint stop
    bint overflow
    uint64_t root_total


cdef class _Strip:
    cdef vector[vector[vector[pair[uint64_t, int]]]] succ
    cdef vector[int] final_ok
    cdef vector[unordered_map[uint64_t, uint64_t]] memo
    cdef StripCtx ctx

    cdef uint64_t go(self, int pos, uint64_t used, int r):
        cdef uint64_t total = 0, sub
        cdef size_t i
        cdef pair[uint64_t, int] opt
        if pos == self.ctx.npos:
            return <uint64_t>(self.final_ok[r] != 0)
        if self.memo[r].count(used):
            return self.memo[r][used]
        cdef vector[pair[uint64_t, int]]* lst = &self.succ[pos & 1][r]
        for i in range(lst.size()):
            opt = lst[0][i]
            if used & opt.first:
                continue
            sub = self.go(pos + 1, used | opt.first, opt.second)
            if self.ctx.overflow:
                return 0
            if add_ovf(total, sub, &total):
                self.ctx.overflow = True
                return 0
            if self.ctx.stop:
                return total
            if self.ctx.limit and pos == 1 and self.ctx.root_total + total >= <uint64_t>self.ctx.limit:
                self.ctx.stop = True
                return total
        self.memo[r][used] = total
        return total


def strip_count(int npos, start_opts, succ, final_ok, int limit=0):
    if npos == 0:
        return 1
    cdef _Strip s = _Strip()
    cdef int R = len(final_ok)
    cdef int p, r
    s.succ.resize(2)
    for p in range(2):
        s.succ[p].resize(R)
        for r in range(R):
            for mask, r2 in succ[p][r]:
                s.succ[p][r].push_back(pair[uint64_t, int](<uint64_t>mask, <int>r2))
    for r in range(R):
        if final_ok[r]:
            s.final_ok.push_back(1)
        else:
            s.final_ok.push_back(0)
    s.memo.resize(R)
    s.ctx.npos = npos
    s.ctx.limit = limit
    s.ctx.stop = False
    s.ctx.overflow = False
    s.ctx.root_total = 0
    cdef uint64_t sub
    for mask, r0 in start_opts:
        sub = s.go(1, <uint64_t>mask, <int>r0)
        if s.ctx.overflow or add_ovf(s.ctx.root_total, sub, &s.ctx.root_total):
            raise OverflowError("strip count exceeds 64 bits")
        if s.ctx.stop or (limit and s.ctx.root_total >= <uint64_t>limit):
            return min(s.ctx.root_total, <uint64_t>limit)
    return s.ctx.root_total


# ------------------------------------------------------------ hamiltonian

cdef class _Ham:
    cdef int n, start, end
    cdef bint cycle, check_out, overflow
    cdef vector[vector[int]] outs
    cdef vector[vector[uint64_t]] outm
    cdef vector[vector[int]] ins
    cdef vector[uint64_t] back  # multiplicity of v -> start
    cdef vector[char] visited
    cdef vector[int] pin, pout

    cdef uint64_t go(self, int cur, int depth):
        cdef uint64_t total = 0, sub, prod
        cdef size_t i, j
        cdef int v, w, x
        cdef bint dead
        if depth == self.n:
            return self.back[cur] if self.cycle else 1
        for i in range(self.outs[cur].size()):
            v = self.outs[cur][i]
            if self.visited[v]:
                continue
            if v == self.end and depth != self.n - 1:
                continue
            dead = False
            for j in range(self.outs[cur].size()):
                w = self.outs[cur][j]
                if w != v and not self.visited[w]:
                    self.pin[w] -= 1
                    if self.pin[w] == 0:
                        dead = True
            self.visited[v] = 1
            for j in range(self.ins[v].size()):
                x = self.ins[v][j]
                if not self.visited[x]:
                    self.pout[x] -= 1
                    if self.pout[x] == 0 and self.check_out and x != self.end:
                        dead = True
            if not dead:
                sub = self.go(v, depth + 1)
                if sub:
                    if mul_ovf(self.outm[cur][i], sub, &prod) or add_ovf(total, prod, &total):
                        self.overflow = True
            for j in range(self.ins[v].size()):
                x = self.ins[v][j]
                if not self.visited[x]:
                    self.pout[x] += 1
            self.visited[v] = 0
            for j in range(self.outs[cur].size()):
                w = self.outs[cur][j]
                if w != v and not self.visited[w]:
                    self.pin[w] += 1
            if self.overflow:
                return 0
        return total


def ham_count(int n, out_nbrs, int start, int end, bint cycle):
    if n == 0:
        return 0
    cdef _Ham h = _Ham()
    cdef int v, w, x
    h.n = n
    h.start = start
    h.end = end
    h.cycle = cycle
    h.check_out = cycle or end >= 0
    h.overflow = False
    h.outs.resize(n)
    h.outm.resize(n)
    h.ins.resize(n)
    h.back.resize(n, 0)
    h.visited.resize(n, 0)
    h.pin.resize(n, 0)
    h.pout.resize(n, 0)
    for v in range(n):
        for w, m in out_nbrs[v]:
            if w == v:
                continue
            h.outs[v].push_back(w)
            h.outm[v].push_back(<uint64_t>m)
            h.ins[w].push_back(v)
            if w == start:
                h.back[v] = <uint64_t>m
    if n == 1:
        if cycle:
            return 0
        return 1 if end in (-1, start) else 0
    h.visited[start] = 1
    for w in range(n):
        h.pin[w] = h.ins[w].size()
    for x in range(n):
        for w in h.outs[x]:
            if w != start or cycle:
                h.pout[x] += 1
    cdef uint64_t r = h.go(start, 1)
    if h.overflow:
        raise OverflowError("hamiltonian count exceeds 64 bits")
    return r


# ------------------------------------------------------------ trails

cdef struct Arc:
    int edge
    int frm
    int to
    int dirbit
    int gfrom
    int gto


cdef class _Trail:
    cdef vector[Arc] arcs
    cdef vector[vector[int]] by_from
    cdef vector[unordered_map[uint64_t, uint64_t]] memo
    cdef uint64_t full
    cdef bint alternate, overflow

    cdef uint64_t go(self, uint64_t used, int last):
        cdef uint64_t total = 0, sub
        cdef size_t i
        cdef int j
        cdef Arc la, b
        if used == self.full:
            return 1
        if self.memo[last].count(used):
            return self.memo[last][used]
        la = self.arcs[last]
        for i in range(self.by_from[la.to].size()):
            j = self.by_from[la.to][i]
            b = self.arcs[j]
            if (used >> b.edge) & 1:
                continue
            if b.gfrom == la.gto:
                continue
            if self.alternate and b.dirbit == la.dirbit:
                continue
            sub = self.go(used | ((<uint64_t>1) << b.edge), j)
            if self.overflow or add_ovf(total, sub, &total):
                self.overflow = True
                return 0
        self.memo[last][used] = total
        return total


def trail_count(int nedges, arcs, int start, bint alternate):
    if nedges == 0:
        return 1
    cdef _Trail t = _Trail()
    cdef Arc a
    cdef int nv = 0, i
    for e, frm, to, d, gf, gt in arcs:
        a.edge = e
        a.frm = frm
        a.to = to
        a.dirbit = d
        a.gfrom = gf
        a.gto = gt
        t.arcs.push_back(a)
        nv = max(nv, frm + 1, to + 1)
    t.by_from.resize(nv)
    for i in range(<int>t.arcs.size()):
        t.by_from[t.arcs[i].frm].push_back(i)
    t.memo.resize(t.arcs.size())
    t.full = ((<uint64_t>1) << nedges) - 1 if nedges < 64 else U64MAX
    t.alternate = alternate
    t.overflow = False
    cdef uint64_t total = 0, sub
    for i in range(<int>t.arcs.size()):
        if start >= 0 and t.arcs[i].frm != start:
            continue
        sub = t.go((<uint64_t>1) << t.arcs[i].edge, i)
        if t.overflow or add_ovf(total, sub, &total):
            raise OverflowError("trail count exceeds 64 bits")
    return total
