# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled simulation kernel.

Mirrors _kernel_py operation for operation: same splitmix64 streams, same
draw order, same float expressions, so results are bit-identical to the
pure-Python backend.  Keep the two files in sync when touching either.

Error codes: 0 ok, 1 capacity-safety violation, 2 event time decreased,
3 allocation failure.
"""

from libc.math cimport log1p
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memmove

ctypedef unsigned long long u64
ctypedef long long i64


cdef inline u64 _mix(u64 z) noexcept nogil:
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double _next_u(u64 *s) noexcept nogil:
    s[0] = s[0] + <u64>0x9E3779B97F4A7C15
    return <double>(_mix(s[0]) >> 11) * (1.0 / 9007199254740992.0)


cdef inline double _sample(int kind, double p0, double p1, double u) noexcept nogil:
    if kind == 0:
        return -p0 * log1p(-u)
    if kind == 1:
        return p0
    return p0 + u * (p1 - p0)


cdef inline i64 _first_greater(const double *arr, i64 off, i64 ln, double u) noexcept nogil:
    cdef i64 lo = 0
    cdef i64 hi = ln
    cdef i64 mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[off + mid] > u:
            hi = mid
        else:
            lo = mid + 1
    return lo if lo < ln else ln - 1


# release heap: parallel (time, slot) arrays, min on time

cdef int _heap_push(double **ht_p, i64 **hs_p, i64 *hn, i64 *hcap,
                    double t, i64 slot) noexcept nogil:
    cdef i64 n = hn[0]
    cdef i64 cap = hcap[0]
    cdef double *ht
    cdef i64 *hs
    cdef i64 j, parent
    cdef double tt
    cdef i64 ss
    if n == cap:
        cap = cap * 2
        ht = <double *>realloc(ht_p[0], cap * sizeof(double))
        if ht == NULL:
            return 3
        ht_p[0] = ht
        hs = <i64 *>realloc(hs_p[0], cap * sizeof(i64))
        if hs == NULL:
            return 3
        hs_p[0] = hs
        hcap[0] = cap
    ht = ht_p[0]
    hs = hs_p[0]
    ht[n] = t
    hs[n] = slot
    j = n
    while j > 0:
        parent = (j - 1) >> 1
        if ht[parent] <= ht[j]:
            break
        tt = ht[parent]; ht[parent] = ht[j]; ht[j] = tt
        ss = hs[parent]; hs[parent] = hs[j]; hs[j] = ss
        j = parent
    hn[0] = n + 1
    return 0


cdef void _heap_pop(double *ht, i64 *hs, i64 *hn) noexcept nogil:
    # caller reads ht[0]/hs[0] before calling; this removes the root
    cdef i64 n = hn[0] - 1
    cdef double t = ht[n]
    cdef i64 s = hs[n]
    cdef i64 j = 0
    cdef i64 c
    while True:
        c = 2 * j + 1
        if c >= n:
            break
        if c + 1 < n and ht[c + 1] < ht[c]:
            c += 1
        if ht[c] < t:
            ht[j] = ht[c]
            hs[j] = hs[c]
            j = c
        else:
            break
    ht[j] = t
    hs[j] = s
    hn[0] = n


# reservation timeline: per resource, sorted breakpoint arrays + base level

cdef inline i64 _tl_upper(const double *ts, i64 h, i64 n, double x) noexcept nogil:
    cdef i64 lo = h
    cdef i64 hi = n
    cdef i64 mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if ts[mid] > x:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef inline i64 _tl_lower(const double *ts, i64 h, i64 n, double x) noexcept nogil:
    cdef i64 lo = h
    cdef i64 hi = n
    cdef i64 mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if ts[mid] >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef void _tl_fold_one(double *ts, i64 *ds, i64 *n, i64 *head, i64 *base,
                       double t) noexcept nogil:
    cdef i64 h = head[0]
    cdef i64 nn = n[0]
    while h < nn and ts[h] <= t:
        base[0] += ds[h]
        h += 1
    if h > 64 and 2 * h > nn:
        memmove(ts, ts + h, (nn - h) * sizeof(double))
        memmove(ds, ds + h, (nn - h) * sizeof(i64))
        nn -= h
        n[0] = nn
        h = 0
    head[0] = h


cdef i64 _tl_max(const double *ts, const i64 *ds, i64 h, i64 n, i64 base,
                 double start, double end) noexcept nogil:
    cdef i64 j = _tl_upper(ts, h, n, start)
    cdef i64 level = base
    cdef i64 idx
    cdef i64 peak
    for idx in range(h, j):
        level += ds[idx]
    peak = level
    while j < n and ts[j] < end:
        level += ds[j]
        if level > peak:
            peak = level
        j += 1
    return peak


cdef int _tl_commit(double **ts_p, i64 **ds_p, i64 *n, i64 *cap, i64 head,
                    double at, i64 amount) noexcept nogil:
    cdef double *ts = ts_p[0]
    cdef i64 *ds = ds_p[0]
    cdef i64 nn = n[0]
    cdef i64 newcap
    cdef i64 j = _tl_lower(ts, head, nn, at)
    if j < nn and ts[j] == at:
        ds[j] += amount
        return 0
    if nn == cap[0]:
        newcap = cap[0] * 2
        ts = <double *>realloc(ts_p[0], newcap * sizeof(double))
        if ts == NULL:
            return 3
        ts_p[0] = ts
        ds = <i64 *>realloc(ds_p[0], newcap * sizeof(i64))
        if ds == NULL:
            return 3
        ds_p[0] = ds
        cap[0] = newcap
    if j < nn:
        memmove(ts + j + 1, ts + j, (nn - j) * sizeof(double))
        memmove(ds + j + 1, ds + j, (nn - j) * sizeof(i64))
    ts[j] = at
    ds[j] = amount
    n[0] = nn + 1
    return 0


cdef int _tl_ok(const double *ts, const i64 *ds, i64 h, i64 n, i64 base,
                i64 c) noexcept nogil:
    cdef i64 level = base
    cdef i64 idx
    if level < 0 or level > c:
        return 0
    for idx in range(h, n):
        level += ds[idx]
        if level < 0 or level > c:
            return 0
    return 1


def simulate(
    int k,
    int m,
    long long[::1] capacities,
    int arr_kind,
    double arr_p0,
    double arr_p1,
    double[::1] class_cum,
    int[::1] hold_kind,
    double[::1] hold_p0,
    double[::1] hold_p1,
    int[::1] delay_kind,
    double[::1] delay_p0,
    double[::1] delay_p1,
    double[::1] dem_cum,
    long long[::1] dem_off,
    long long[::1] dem_len,
    long long warmup,
    long long measured,
    u64 s_arr,
    u64 s_lab,
    u64 s_dem,
    u64 s_hold,
    u64 s_del,
    int reserved,
    long long[::1] arrivals_out,
    long long[::1] accepted_out,
    long long[::1] blocked_out,
    unsigned char[::1] record,
):
    cdef i64 total = warmup + measured
    cdef unsigned char *rec = NULL
    if record.shape[0] >= total and record.shape[0] > 0:
        rec = &record[0]

    cdef const double *cum_ptr = &dem_cum[0]
    cdef const double *ccum_ptr = &class_cum[0]

    cdef i64 *engaged = NULL
    cdef i64 *dems = NULL
    cdef i64 *arrivals = NULL
    cdef i64 *accepted = NULL
    cdef i64 *blocked = NULL

    cdef double *heap_t = NULL
    cdef i64 *heap_s = NULL
    cdef i64 heap_n = 0
    cdef i64 heap_cap = 1024

    cdef i64 *slot_dem = NULL
    cdef i64 *free_slots = NULL
    cdef i64 nfree = 0
    cdef i64 slot_cap = 1024

    cdef double **tl_time = NULL
    cdef i64 **tl_delta = NULL
    cdef i64 *tl_n = NULL
    cdef i64 *tl_cap = NULL
    cdef i64 *tl_head = NULL
    cdef i64 *tl_base = NULL

    cdef int err = 0
    cdef i64 i, l, n, slot, base_idx
    cdef int ok, hold_any
    cdef double t, dt, u, theta, delay, start, end
    cdef i64 rel_s

    engaged = <i64 *>malloc(k * sizeof(i64))
    dems = <i64 *>malloc(k * sizeof(i64))
    arrivals = <i64 *>malloc(m * sizeof(i64))
    accepted = <i64 *>malloc(m * sizeof(i64))
    blocked = <i64 *>malloc(m * sizeof(i64))
    if engaged == NULL or dems == NULL or arrivals == NULL \
            or accepted == NULL or blocked == NULL:
        err = 3
    if err == 0:
        for i in range(k):
            engaged[i] = 0
        for l in range(m):
            arrivals[l] = 0
            accepted[l] = 0
            blocked[l] = 0

    if err == 0 and not reserved:
        heap_t = <double *>malloc(heap_cap * sizeof(double))
        heap_s = <i64 *>malloc(heap_cap * sizeof(i64))
        slot_dem = <i64 *>malloc(slot_cap * k * sizeof(i64))
        free_slots = <i64 *>malloc(slot_cap * sizeof(i64))
        if heap_t == NULL or heap_s == NULL or slot_dem == NULL or free_slots == NULL:
            err = 3
        else:
            for i in range(slot_cap):
                free_slots[i] = slot_cap - 1 - i
            nfree = slot_cap

    if err == 0 and reserved:
        tl_time = <double **>malloc(k * sizeof(double *))
        tl_delta = <i64 **>malloc(k * sizeof(i64 *))
        tl_n = <i64 *>malloc(k * sizeof(i64))
        tl_cap = <i64 *>malloc(k * sizeof(i64))
        tl_head = <i64 *>malloc(k * sizeof(i64))
        tl_base = <i64 *>malloc(k * sizeof(i64))
        if tl_time == NULL or tl_delta == NULL or tl_n == NULL \
                or tl_cap == NULL or tl_head == NULL or tl_base == NULL:
            err = 3
        else:
            for i in range(k):
                tl_time[i] = NULL
                tl_delta[i] = NULL
                tl_n[i] = 0
                tl_cap[i] = 1024
                tl_head[i] = 0
                tl_base[i] = 0
            for i in range(k):
                tl_time[i] = <double *>malloc(1024 * sizeof(double))
                tl_delta[i] = <i64 *>malloc(1024 * sizeof(i64))
                if tl_time[i] == NULL or tl_delta[i] == NULL:
                    err = 3

    if err == 0:
        with nogil:
            t = 0.0
            n = 0
            while n < total:
                u = _next_u(&s_arr)
                dt = _sample(arr_kind, arr_p0, arr_p1, u)
                if dt < 0.0:
                    err = 2
                    break
                t = t + dt

                if reserved:
                    for i in range(k):
                        _tl_fold_one(tl_time[i], tl_delta[i], &tl_n[i],
                                     &tl_head[i], &tl_base[i], t)
                else:
                    while heap_n > 0 and heap_t[0] <= t:
                        rel_s = heap_s[0]
                        _heap_pop(heap_t, heap_s, &heap_n)
                        for i in range(k):
                            engaged[i] = engaged[i] - slot_dem[rel_s * k + i]
                            if engaged[i] < 0:
                                err = 1
                                break
                        if err != 0:
                            break
                        free_slots[nfree] = rel_s
                        nfree += 1
                    if err != 0:
                        break

                u = _next_u(&s_lab)
                l = _first_greater(ccum_ptr, 0, m, u)

                base_idx = l * k
                for i in range(k):
                    u = _next_u(&s_dem)
                    dems[i] = _first_greater(cum_ptr, dem_off[base_idx + i],
                                             dem_len[base_idx + i], u)

                u = _next_u(&s_hold)
                theta = _sample(hold_kind[l], hold_p0[l], hold_p1[l], u)

                if reserved:
                    u = _next_u(&s_del)
                    delay = _sample(delay_kind[l], delay_p0[l], delay_p1[l], u)
                    start = t + delay
                    end = start + theta
                    if start == end:
                        ok = 1
                        for i in range(k):
                            if dems[i] > capacities[i]:
                                ok = 0
                                break
                    else:
                        ok = 1
                        for i in range(k):
                            if dems[i] == 0:
                                continue
                            if _tl_max(tl_time[i], tl_delta[i], tl_head[i],
                                       tl_n[i], tl_base[i], start, end) + dems[i] \
                                    > capacities[i]:
                                ok = 0
                                break
                        if ok:
                            for i in range(k):
                                if dems[i] == 0:
                                    continue
                                err = _tl_commit(&tl_time[i], &tl_delta[i],
                                                 &tl_n[i], &tl_cap[i],
                                                 tl_head[i], start, dems[i])
                                if err != 0:
                                    break
                                err = _tl_commit(&tl_time[i], &tl_delta[i],
                                                 &tl_n[i], &tl_cap[i],
                                                 tl_head[i], end, -dems[i])
                                if err != 0:
                                    break
                            if err != 0:
                                break
                            for i in range(k):
                                if not _tl_ok(tl_time[i], tl_delta[i],
                                              tl_head[i], tl_n[i], tl_base[i],
                                              capacities[i]):
                                    err = 1
                                    break
                            if err != 0:
                                break
                else:
                    ok = 1
                    for i in range(k):
                        if engaged[i] + dems[i] > capacities[i]:
                            ok = 0
                            break
                    if ok:
                        hold_any = 0
                        for i in range(k):
                            engaged[i] = engaged[i] + dems[i]
                            if engaged[i] > capacities[i]:
                                err = 1
                                break
                            if dems[i] != 0:
                                hold_any = 1
                        if err != 0:
                            break
                        if hold_any:
                            if nfree == 0:
                                slot_dem = <i64 *>realloc(
                                    slot_dem, 2 * slot_cap * k * sizeof(i64))
                                free_slots = <i64 *>realloc(
                                    free_slots, 2 * slot_cap * sizeof(i64))
                                if slot_dem == NULL or free_slots == NULL:
                                    err = 3
                                    break
                                for i in range(slot_cap):
                                    free_slots[i] = 2 * slot_cap - 1 - i
                                nfree = slot_cap
                                slot_cap = 2 * slot_cap
                            nfree -= 1
                            slot = free_slots[nfree]
                            for i in range(k):
                                slot_dem[slot * k + i] = dems[i]
                            err = _heap_push(&heap_t, &heap_s, &heap_n,
                                             &heap_cap, t + theta, slot)
                            if err != 0:
                                break

                if n >= warmup:
                    arrivals[l] += 1
                    if ok:
                        accepted[l] += 1
                    else:
                        blocked[l] += 1
                if rec != NULL:
                    rec[n] = 1 if ok else 0
                n += 1

    if err == 0:
        for l in range(m):
            arrivals_out[l] = arrivals[l]
            accepted_out[l] = accepted[l]
            blocked_out[l] = blocked[l]

    free(engaged)
    free(dems)
    free(arrivals)
    free(accepted)
    free(blocked)
    free(heap_t)
    free(heap_s)
    free(slot_dem)
    free(free_slots)
    if tl_time != NULL:
        for i in range(k):
            free(tl_time[i])
    if tl_delta != NULL:
        for i in range(k):
            free(tl_delta[i])
    free(tl_time)
    free(tl_delta)
    free(tl_n)
    free(tl_cap)
    free(tl_head)
    free(tl_base)
    return err
