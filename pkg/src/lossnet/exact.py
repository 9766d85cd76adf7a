"""Exact blocking probabilities for Poisson, fixed-demand loss systems.

Three independent routes to the same quantities, used to validate each
other and the simulator: the classic single-class recursion, full state
space enumeration of the product-form distribution, and the occupancy
recursion for single-resource multirate systems.  Enumeration cost grows
exponentially with capacity and class count, so it refuses past a state
budget instead of hanging.
"""

from __future__ import annotations

import math


class EnumerationLimitExceeded(Exception):
    """State space larger than the configured enumeration budget."""

    def __init__(self, limit):
        self.limit = limit
        super().__init__("state enumeration exceeded %d states" % limit)


def erlang_b(rho, capacity):
    """Blocking probability of a single-class system, one unit per request.

    Uses the numerically stable forward recursion, never the factorial
    ratio form.
    """
    if rho <= 0:
        raise ValueError("offered intensity must be positive")
    b = 1.0
    for c in range(1, int(capacity) + 1):
        b = rho * b / (c + rho * b)
    return b


class ErlangInstance:
    """Fixed-demand network: demand matrix A (resources x classes),
    capacity vector C, and per-class offered intensities rho."""

    __slots__ = ("demand_matrix", "capacities", "intensities")

    def __init__(self, demand_matrix, capacities, intensities):
        a = [[int(x) for x in row] for row in demand_matrix]
        caps = [int(c) for c in capacities]
        rhos = [float(r) for r in intensities]
        k = len(caps)
        m = len(rhos)
        if len(a) != k or any(len(row) != m for row in a):
            raise ValueError("demand matrix must be resources x classes")
        if any(x < 0 for row in a for x in row):
            raise ValueError("demands must be nonnegative integers")
        if any(c < 1 for c in caps):
            raise ValueError("capacities must be positive")
        if any(r <= 0 for r in rhos):
            raise ValueError("intensities must be positive")
        for l in range(m):
            if all(a[i][l] == 0 for i in range(k)):
                raise ValueError("class %d uses no resource" % l)
        self.demand_matrix = a
        self.capacities = caps
        self.intensities = rhos

    @property
    def num_resources(self):
        return len(self.capacities)

    @property
    def num_classes(self):
        return len(self.intensities)

    def column(self, l):
        return [row[l] for row in self.demand_matrix]


DEFAULT_STATE_LIMIT = 10**7


def normalization_constant(inst, capacities, limit=DEFAULT_STATE_LIMIT):
    """Sum of prod rho_l^n_l / n_l! over all occupancy vectors n with
    A n <= capacities, accumulated with compensated summation.

    Zero when any capacity coordinate is negative (the convention that
    makes the blocked-class formula come out as probability 1).
    """
    caps = [int(c) for c in capacities]
    if any(c < 0 for c in caps):
        return 0.0
    k = inst.num_resources
    m = inst.num_classes
    cols = [inst.column(l) for l in range(m)]
    rhos = inst.intensities

    total = 0.0
    comp = 0.0
    visited = 0
    remaining = list(caps)

    def descend(l, weight):
        nonlocal total, comp, visited
        if l == m:
            visited += 1
            if visited > limit:
                raise EnumerationLimitExceeded(limit)
            # Neumaier compensated add of weight
            t = total + weight
            if abs(total) >= abs(weight):
                comp += (total - t) + weight
            else:
                comp += (weight - t) + total
            total = t
            return
        col = cols[l]
        rho = rhos[l]
        n = 0
        w = weight
        while True:
            descend(l + 1, w)
            if any(remaining[i] < col[i] for i in range(k)):
                break
            for i in range(k):
                remaining[i] -= col[i]
            n += 1
            w = w * rho / n
        for i in range(k):
            remaining[i] += col[i] * n

    descend(0, 1.0)
    return total + comp


def per_class_blocking(inst, limit=DEFAULT_STATE_LIMIT):
    """1 - G(C - A e_l)/G(C) for every class l."""
    g_full = normalization_constant(inst, inst.capacities, limit)
    out = []
    for l in range(inst.num_classes):
        col = inst.column(l)
        shifted = [c - a for c, a in zip(inst.capacities, col)]
        g_l = normalization_constant(inst, shifted, limit)
        out.append(1.0 - g_l / g_full)
    return out


def kaufman_roberts(capacity, demands, intensities):
    """Per-class blocking for a single resource shared by multirate classes.

    Occupancy weights g(j) satisfy j g(j) = sum_l a_l rho_l g(j - a_l);
    class l blocks exactly when the occupancy exceeds C - a_l.  Weights are
    rescaled on the fly since only their ratios matter.
    """
    c = int(capacity)
    if c < 1:
        raise ValueError("capacity must be positive")
    a = [int(x) for x in demands]
    rhos = [float(r) for r in intensities]
    if len(a) != len(rhos):
        raise ValueError("demands and intensities must align")
    if any(x < 1 for x in a):
        raise ValueError("per-request demands must be positive here")
    if any(r <= 0 for r in rhos):
        raise ValueError("intensities must be positive")

    g = [0.0] * (c + 1)
    g[0] = 1.0
    for j in range(1, c + 1):
        acc = 0.0
        for al, rho in zip(a, rhos):
            if al <= j:
                acc += al * rho * g[j - al]
        g[j] = acc / j
        if g[j] > 1e280:
            scale = g[j]
            for i in range(j + 1):
                g[i] /= scale

    total = math.fsum(g)
    out = []
    for al in a:
        if al > c:
            out.append(1.0)
        else:
            out.append(math.fsum(g[c - al + 1 : c + 1]) / total)
    return out
