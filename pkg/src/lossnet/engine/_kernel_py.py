"""Pure-Python simulation kernel, the fallback backend.

Same positional signature and bit-identical results as the compiled
kernel: both consume the same packed arrays, the same splitmix64 streams,
and evaluate the same float expressions in the same order.  This one
trades speed for readability and serves as the reference the compiled
backend is tested against.

Error codes: 0 ok, 1 capacity-safety violation, 2 event time decreased.
"""

from __future__ import annotations

from heapq import heappush, heappop
from math import log1p

from .admission import ReservationTimeline, admit_reserved

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_INV53 = 1.0 / 9007199254740992.0


def _mix(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _first_greater(arr, off, ln, u):
    # smallest idx with arr[off+idx] > u, clamped into the support
    lo = 0
    hi = ln
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[off + mid] > u:
            hi = mid
        else:
            lo = mid + 1
    return lo if lo < ln else ln - 1


def _sample(kind, p0, p1, u):
    if kind == 0:
        return -p0 * log1p(-u)
    if kind == 1:
        return p0
    return p0 + u * (p1 - p0)


def simulate(
    k,
    m,
    capacities,
    arr_kind,
    arr_p0,
    arr_p1,
    class_cum,
    hold_kind,
    hold_p0,
    hold_p1,
    delay_kind,
    delay_p0,
    delay_p1,
    dem_cum,
    dem_off,
    dem_len,
    warmup,
    measured,
    s_arr,
    s_lab,
    s_dem,
    s_hold,
    s_del,
    reserved,
    arrivals_out,
    accepted_out,
    blocked_out,
    record,
):
    caps = [int(c) for c in capacities]
    class_cum = [float(x) for x in class_cum]
    hold_kind = [int(x) for x in hold_kind]
    hold_p0 = [float(x) for x in hold_p0]
    hold_p1 = [float(x) for x in hold_p1]
    delay_kind = [int(x) for x in delay_kind]
    delay_p0 = [float(x) for x in delay_p0]
    delay_p1 = [float(x) for x in delay_p1]
    dem_cum = [float(x) for x in dem_cum]
    dem_off = [int(x) for x in dem_off]
    dem_len = [int(x) for x in dem_len]

    total = int(warmup) + int(measured)
    recording = len(record) >= total

    arrivals = [0] * m
    accepted = [0] * m
    blocked = [0] * m

    engaged = [0] * k
    heap = []
    seq = 0
    timeline = ReservationTimeline(k) if reserved else None

    t = 0.0
    for n in range(total):
        s_arr = (s_arr + _GAMMA) & _MASK
        u = (_mix(s_arr) >> 11) * _INV53
        dt = _sample(arr_kind, arr_p0, arr_p1, u)
        if dt < 0.0:
            return 2
        t += dt

        if reserved:
            timeline.fold_until(t)
        else:
            while heap and heap[0][0] <= t:
                _, _, dems = heappop(heap)
                for i in range(k):
                    engaged[i] -= dems[i]
                    if engaged[i] < 0:
                        return 1

        s_lab = (s_lab + _GAMMA) & _MASK
        u = (_mix(s_lab) >> 11) * _INV53
        label = _first_greater(class_cum, 0, m, u)

        dems = [0] * k
        base = label * k
        for i in range(k):
            s_dem = (s_dem + _GAMMA) & _MASK
            u = (_mix(s_dem) >> 11) * _INV53
            dems[i] = _first_greater(dem_cum, dem_off[base + i], dem_len[base + i], u)

        s_hold = (s_hold + _GAMMA) & _MASK
        u = (_mix(s_hold) >> 11) * _INV53
        theta = _sample(hold_kind[label], hold_p0[label], hold_p1[label], u)

        if reserved:
            s_del = (s_del + _GAMMA) & _MASK
            u = (_mix(s_del) >> 11) * _INV53
            delay = _sample(delay_kind[label], delay_p0[label], delay_p1[label], u)
            start = t + delay
            end = start + theta
            ok = admit_reserved(timeline, start, end, dems, caps)
            if ok and not timeline.levels_ok(caps):
                return 1
        else:
            ok = True
            for i in range(k):
                if engaged[i] + dems[i] > caps[i]:
                    ok = False
                    break
            if ok:
                hold_any = False
                for i in range(k):
                    engaged[i] += dems[i]
                    if engaged[i] > caps[i]:
                        return 1
                    if dems[i]:
                        hold_any = True
                if hold_any:
                    heappush(heap, (t + theta, seq, dems))
                    seq += 1

        if n >= warmup:
            arrivals[label] += 1
            if ok:
                accepted[label] += 1
            else:
                blocked[label] += 1
        if recording:
            record[n] = 1 if ok else 0

    for l in range(m):
        arrivals_out[l] = arrivals[l]
        accepted_out[l] = accepted[l]
        blocked_out[l] = blocked[l]
    return 0
