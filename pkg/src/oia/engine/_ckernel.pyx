# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled run kernel: identical semantics to the pure-Python kernel,
minus tracing.  Kept deliberately parallel with ``_pykernel.run_kernel``
so the two stay reviewable side by side."""

from libc.stdlib cimport calloc, free


cdef inline int _bit(const char* src, int ncells, int gx, int gy) noexcept:
    cdef int a = gx - gy
    cdef int lo = (a + 1) >> 1 if a > 0 else 0
    cdef int hi = (gx + gy) >> 1
    cdef int s, d, mirror
    cdef char p, q
    if hi > ncells - 1:
        hi = ncells - 1
    for s in range(lo, hi + 1):
        p = src[s]
        if p == 0:
            continue
        d = 2 * s - gx
        if d == 0:
            if gy == 0:
                return -1
            return 1
        mirror = gx - s
        if mirror < 0 or mirror > ncells - 1:
            return 1
        q = src[mirror]
        if q == 0 or q == p:
            return 1
    return 0


def run_kernel_c(cm, list tape, int det_gx, int det_gy, long max_moves):
    """Returns (outcome, moves, halt_state, reason); see the Python kernel."""
    cdef int ncells = len(tape)
    cdef int n = ncells - 2
    cdef int limit = 2 * (n + 1)
    cdef int nsyms = cm.nsyms
    cdef int nstates = cm.nstates
    cdef int budget = cm.budget
    cdef int size = nstates * nsyms * 2

    cdef char* src = <char*>calloc(ncells, sizeof(char))
    cdef int* counts = <int*>calloc(ncells, sizeof(int))
    cdef int* tp = <int*>calloc(ncells, sizeof(int))
    cdef int* nxt_a = <int*>calloc(size, sizeof(int))
    cdef char* hm_a = <char*>calloc(size, sizeof(char))
    cdef char* dgx_a = <char*>calloc(size, sizeof(char))
    cdef char* dgy_a = <char*>calloc(size, sizeof(char))
    cdef char* tog_a = <char*>calloc(size, sizeof(char))
    cdef char* flag_a = <char*>calloc(nstates, sizeof(char))

    cdef int i, state, head, gx, gy, bit, newbit, idx, nxt, tog, tcell
    cdef int open_cell, open_len, flag, hm, dgx, dgy, total, done, step, k, axis
    cdef long moves = 0, dispatches = 0
    cdef list l
    cdef int outcome = -1
    cdef str reason = ""

    try:
        for i in range(ncells):
            tp[i] = tape[i]
        l = cm.next_state
        for i in range(size):
            nxt_a[i] = l[i]
        l = cm.head_move
        for i in range(size):
            hm_a[i] = l[i]
        l = cm.dgx
        for i in range(size):
            dgx_a[i] = l[i]
        l = cm.dgy
        for i in range(size):
            dgy_a[i] = l[i]
        l = cm.toggle
        for i in range(size):
            tog_a[i] = l[i]
        l = cm.flags
        for i in range(nstates):
            flag_a[i] = l[i]

        state = cm.start
        head = 0
        gx, gy = det_gx, det_gy
        open_cell, open_len = -1, 0

        if not (0 <= gx <= limit and 0 <= gy <= limit):
            return 5, 0, state, "detector start out of bounds"

        while True:
            bit = _bit(src, ncells, gx, gy)
            if bit < 0:
                return 5, moves, state, "ON source coincident with detector"

            flag = flag_a[state]
            if flag != 0:
                if open_len > 0 and open_len % 2 == 1:
                    counts[open_cell] += 1
                    if counts[open_cell] > budget:
                        return 3, moves, state, "toggle budget exceeded"
                if flag == 1:
                    if bit == 0:
                        return 0, moves, state, ""
                    return 1, moves, state, "accept state with detector bit 1"
                return 1, moves, state, ""

            if moves > max_moves or dispatches > max_moves:
                return 4, moves, state, "move budget exhausted"
            dispatches += 1

            idx = (state * nsyms + tp[head]) * 2 + bit
            nxt = nxt_a[idx]

            tog = tog_a[idx] if nxt != -1 else 0
            tcell = head if tog != 0 else -1
            if open_len > 0 and open_cell != tcell:
                if open_len % 2 == 1:
                    counts[open_cell] += 1
                    if counts[open_cell] > budget:
                        return 3, moves, state, "toggle budget exceeded"
                open_cell, open_len = -1, 0

            if nxt == -1:
                return 2, moves, state, "no table entry"

            if tcell >= 0:
                if open_cell == tcell:
                    open_len += 1
                else:
                    open_cell, open_len = tcell, 1
                src[tcell] = tog if src[tcell] == 0 else 0

            hm = hm_a[idx]
            if hm != 0:
                head += hm
                if head < 0 or head > ncells - 1:
                    return 5, moves, state, "head out of bounds"
                moves += 1

            state = nxt

            dgx = dgx_a[idx]
            dgy = dgy_a[idx]
            total = (dgx if dgx >= 0 else -dgx) + (dgy if dgy >= 0 else -dgy)
            done = 0
            for axis in range(2):
                if axis == 0:
                    step = 1 if dgy > 0 else -1
                    k = dgy if dgy >= 0 else -dgy
                else:
                    step = 1 if dgx > 0 else -1
                    k = dgx if dgx >= 0 else -dgx
                for i in range(k):
                    if axis == 0:
                        gy += step
                    else:
                        gx += step
                    if gx < 0 or gx > limit or gy < 0 or gy > limit:
                        return 5, moves, state, "detector out of bounds"
                    moves += 1
                    done += 1
                    newbit = _bit(src, ncells, gx, gy)
                    if newbit < 0:
                        return 5, moves, state, "ON source coincident with detector"
                    if newbit != bit:
                        done = total + 1
                        break
                if done > total:
                    break
    finally:
        free(src); free(counts); free(tp); free(nxt_a); free(hm_a)
        free(dgx_a); free(dgy_a); free(tog_a); free(flag_a)
