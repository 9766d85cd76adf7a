"""Admission rules: immediate occupancy and future-interval reservations.

A request is admitted all-or-nothing: it must fit on every resource or it
consumes nothing anywhere.  Occupancy intervals are half open, so a unit
released at time t is available to an arrival at the same t.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right


def admit_immediate(engaged, demands, capacities):
    """True iff engaged_i + b_i <= C_i on every resource (equality accepts)."""
    for e, b, c in zip(engaged, demands, capacities):
        if e + b > c:
            return False
    return True


class ReservationTimeline:
    """Committed future capacity per resource as an integer step function.

    Per resource: a base level (capacity committed from the fold horizon
    onward) plus sorted breakpoints carrying signed deltas.  Breakpoints
    whose time has passed are folded into the base, keeping the arrays
    short; queries and commits must never target times before the last
    fold.
    """

    __slots__ = ("num_resources", "base", "times", "deltas", "heads")

    def __init__(self, num_resources):
        self.num_resources = num_resources
        self.base = [0] * num_resources
        self.times = [[] for _ in range(num_resources)]
        self.deltas = [[] for _ in range(num_resources)]
        self.heads = [0] * num_resources

    def fold_until(self, t):
        """Absorb every breakpoint with time <= t into the base level."""
        for i in range(self.num_resources):
            ts = self.times[i]
            ds = self.deltas[i]
            h = self.heads[i]
            n = len(ts)
            while h < n and ts[h] <= t:
                self.base[i] += ds[h]
                h += 1
            if h > 64 and h * 2 > n:
                del ts[:h]
                del ds[:h]
                h = 0
            self.heads[i] = h

    def max_level(self, i, start, end):
        """Max committed level on resource i over the half-open [start, end)."""
        ts = self.times[i]
        ds = self.deltas[i]
        h = self.heads[i]
        j = bisect_right(ts, start, h)
        level = self.base[i]
        for idx in range(h, j):
            level += ds[idx]
        peak = level
        n = len(ts)
        while j < n and ts[j] < end:
            level += ds[j]
            if level > peak:
                peak = level
            j += 1
        return peak

    def commit(self, i, time, amount):
        ts = self.times[i]
        ds = self.deltas[i]
        j = bisect_left(ts, time, self.heads[i])
        if j < len(ts) and ts[j] == time:
            ds[j] += amount
        else:
            ts.insert(j, time)
            ds.insert(j, amount)

    def levels_ok(self, capacities):
        """Every prefix level within [0, C_i]; the continuous safety check."""
        for i in range(self.num_resources):
            level = self.base[i]
            c = capacities[i]
            if not 0 <= level <= c:
                return False
            for idx in range(self.heads[i], len(self.times[i])):
                level += self.deltas[i][idx]
                if not 0 <= level <= c:
                    return False
        return True


def admit_reserved(timeline, start, end, demands, capacities):
    """Admit iff capacity stays available on every resource over [start, end).

    Commits the occupancy on acceptance.  A zero-length interval occupies
    nothing and is accepted whenever the demand fits an empty system.
    """
    if start == end:
        return all(b <= c for b, c in zip(demands, capacities))
    for i in range(timeline.num_resources):
        b = demands[i]
        if b == 0:
            continue
        if timeline.max_level(i, start, end) + b > capacities[i]:
            return False
    for i in range(timeline.num_resources):
        b = demands[i]
        if b == 0:
            continue
        timeline.commit(i, start, b)
        timeline.commit(i, end, -b)
    return True
