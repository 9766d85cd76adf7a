"""Flatten a validated NetworkModel into the arrays the kernels consume.

Both kernels read the same packed arrays, cumulative tables included, so a
demand draw resolves through bit-identical comparisons in either backend.
Distribution variants travel as (kind, p0, p1) triples using the encoding
of HoldingDistribution.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np

from ..distributions import HoldingDistribution

Packed = namedtuple(
    "Packed",
    [
        "k",
        "m",
        "capacities",
        "arr_kind",
        "arr_p0",
        "arr_p1",
        "class_cum",
        "hold_kind",
        "hold_p0",
        "hold_p1",
        "delay_kind",
        "delay_p0",
        "delay_p1",
        "dem_cum",
        "dem_off",
        "dem_len",
    ],
)


def pack(model):
    k = model.num_resources
    m = model.num_classes

    class_cum = np.empty(m)
    s = 0.0
    for l, rc in enumerate(model.classes):
        s += rc.probability
        class_cum[l] = s

    hold_kind = np.empty(m, dtype=np.int32)
    hold_p0 = np.empty(m)
    hold_p1 = np.empty(m)
    delay_kind = np.empty(m, dtype=np.int32)
    delay_p0 = np.empty(m)
    delay_p1 = np.empty(m)
    for l, rc in enumerate(model.classes):
        hold_kind[l] = rc.holding.kind
        hold_p0[l] = rc.holding.p0
        hold_p1[l] = rc.holding.p1
        d = rc.delay
        if d is None:
            d = HoldingDistribution.deterministic(0.0)
        delay_kind[l] = d.kind
        delay_p0[l] = d.p0
        delay_p1[l] = d.p1

    dem_off = np.empty(m * k, dtype=np.int64)
    dem_len = np.empty(m * k, dtype=np.int64)
    chunks = []
    off = 0
    for l, rc in enumerate(model.classes):
        for i in range(k):
            cum = rc.demands[i].cum
            dem_off[l * k + i] = off
            dem_len[l * k + i] = len(cum)
            chunks.append(cum)
            off += len(cum)
    dem_cum = np.concatenate(chunks)

    return Packed(
        k=k,
        m=m,
        capacities=np.asarray(model.capacities, dtype=np.int64),
        arr_kind=int(model.arrival.interarrival.kind),
        arr_p0=float(model.arrival.interarrival.p0),
        arr_p1=float(model.arrival.interarrival.p1),
        class_cum=class_cum,
        hold_kind=hold_kind,
        hold_p0=hold_p0,
        hold_p1=hold_p1,
        delay_kind=delay_kind,
        delay_p0=delay_p0,
        delay_p1=delay_p1,
        dem_cum=dem_cum,
        dem_off=dem_off,
        dem_len=dem_len,
    )
