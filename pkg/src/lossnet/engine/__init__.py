"""Discrete-event simulation of the loss network.

Two interchangeable kernels run the event loop: a compiled extension and a
pure-Python fallback with bit-identical output.  The compiled one is
picked automatically when its import succeeds; set LOSSNET_BACKEND=py or
LOSSNET_BACKEND=c to force a choice.

A replication processes warm-up arrivals followed by measured arrivals,
counting accept/block decisions only in the measured window.  Reservation
mode engages automatically when any request class declares a delay law.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .. import rng
from ..model import validate
from ._pack import pack

_forced = os.environ.get("LOSSNET_BACKEND", "").strip().lower()
if _forced in ("py", "python"):
    from . import _kernel_py as _default_kernel

    BACKEND = "python"
elif _forced in ("c", "compiled"):
    try:
        from . import _kernel_c as _default_kernel
    except ImportError as exc:
        raise ImportError(
            "LOSSNET_BACKEND=%s but the compiled kernel is unavailable "
            "(build the extension or unset the variable)" % _forced
        ) from exc
    BACKEND = "compiled"
elif _forced:
    raise ImportError("LOSSNET_BACKEND must be 'c' or 'py', got %r" % _forced)
else:
    try:
        from . import _kernel_c as _default_kernel

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _default_kernel

        BACKEND = "python"

_ERRORS = {
    1: "capacity-safety violation: committed capacity left [0, C]",
    2: "event time decreased; event queue corrupted",
    3: "kernel allocation failure",
}


def _resolve_kernel(backend):
    if backend is None:
        return _default_kernel
    if backend in ("py", "python"):
        from . import _kernel_py

        return _kernel_py
    if backend in ("c", "compiled"):
        from . import _kernel_c

        return _kernel_c
    raise ValueError("unknown backend %r" % (backend,))


class SimConfig:
    __slots__ = ("warmup_arrivals", "measured_arrivals", "seed", "replications")

    def __init__(self, warmup_arrivals, measured_arrivals, seed, replications=1):
        if warmup_arrivals < 0:
            raise ValueError("warmup_arrivals must be nonnegative")
        if measured_arrivals < 1:
            raise ValueError("measured_arrivals must be at least 1")
        if replications < 1:
            raise ValueError("replications must be at least 1")
        self.warmup_arrivals = int(warmup_arrivals)
        self.measured_arrivals = int(measured_arrivals)
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.replications = int(replications)

    def __repr__(self):
        return "SimConfig(warmup=%d, measured=%d, seed=%d, replications=%d)" % (
            self.warmup_arrivals,
            self.measured_arrivals,
            self.seed,
            self.replications,
        )


class Counters:
    """Per-class arrival/accept/block counts for one replication."""

    __slots__ = ("arrivals", "accepted", "blocked", "decisions")

    def __init__(self, arrivals, accepted, blocked, decisions=None):
        self.arrivals = arrivals
        self.accepted = accepted
        self.blocked = blocked
        self.decisions = decisions

    @property
    def arrivals_total(self):
        return int(self.arrivals.sum())

    @property
    def blocked_total(self):
        return int(self.blocked.sum())

    def __eq__(self, other):
        if not isinstance(other, Counters):
            return NotImplemented
        return (
            np.array_equal(self.arrivals, other.arrivals)
            and np.array_equal(self.accepted, other.accepted)
            and np.array_equal(self.blocked, other.blocked)
        )

    def __repr__(self):
        return "Counters(arrivals=%s, accepted=%s, blocked=%s)" % (
            self.arrivals.tolist(),
            self.accepted.tolist(),
            self.blocked.tolist(),
        )


class BlockingEstimate:
    __slots__ = ("p_hat", "p_hat_class", "std_err", "replication_count")

    def __init__(self, p_hat, p_hat_class, std_err, replication_count):
        self.p_hat = p_hat
        self.p_hat_class = p_hat_class
        self.std_err = std_err
        self.replication_count = replication_count

    def __repr__(self):
        return "BlockingEstimate(p_hat=%.6g, std_err=%.3g, replications=%d)" % (
            self.p_hat,
            self.std_err,
            self.replication_count,
        )


def _is_reserved(model):
    return any(rc.delay is not None for rc in model.classes)


def run_replication(model, cfg, replication_index, record_decisions=False, backend=None):
    """Simulate one replication; identical inputs give identical Counters.

    With record_decisions the returned Counters carries a uint8 array of
    one accept(1)/block(0) entry per arrival, warm-up included.
    """
    violations = validate(model)
    if violations:
        raise ValueError("invalid model: " + "; ".join(violations))
    kernel = _resolve_kernel(backend)
    p = pack(model)
    total = cfg.warmup_arrivals + cfg.measured_arrivals
    arrivals = np.zeros(p.m, dtype=np.int64)
    accepted = np.zeros(p.m, dtype=np.int64)
    blocked = np.zeros(p.m, dtype=np.int64)
    record = np.zeros(total if record_decisions else 0, dtype=np.uint8)
    states = [
        rng.substream_state(cfg.seed, replication_index, s) for s in range(5)
    ]
    err = kernel.simulate(
        p.k,
        p.m,
        p.capacities,
        p.arr_kind,
        p.arr_p0,
        p.arr_p1,
        p.class_cum,
        p.hold_kind,
        p.hold_p0,
        p.hold_p1,
        p.delay_kind,
        p.delay_p0,
        p.delay_p1,
        p.dem_cum,
        p.dem_off,
        p.dem_len,
        cfg.warmup_arrivals,
        cfg.measured_arrivals,
        states[rng.STREAM_ARRIVALS],
        states[rng.STREAM_LABELS],
        states[rng.STREAM_DEMANDS],
        states[rng.STREAM_HOLDINGS],
        states[rng.STREAM_DELAYS],
        1 if _is_reserved(model) else 0,
        arrivals,
        accepted,
        blocked,
        record,
    )
    if err != 0:
        raise RuntimeError(
            "simulation kernel failed: %s" % _ERRORS.get(err, "error %d" % err)
        )
    if not np.array_equal(arrivals, accepted + blocked):
        raise RuntimeError("counter conservation violated: arrivals != accepted + blocked")
    if arrivals.sum() != cfg.measured_arrivals:
        raise RuntimeError("counter conservation violated: measured-arrival total mismatch")
    return Counters(arrivals, accepted, blocked, record if record_decisions else None)


def estimate(model, cfg, backend=None):
    """Replicated blocking estimate with a standard error across replications."""
    fractions = []
    arr_sum = None
    blk_sum = None
    for r in range(cfg.replications):
        c = run_replication(model, cfg, r, backend=backend)
        fractions.append(c.blocked_total / cfg.measured_arrivals)
        if arr_sum is None:
            arr_sum = c.arrivals.copy()
            blk_sum = c.blocked.copy()
        else:
            arr_sum += c.arrivals
            blk_sum += c.blocked
    n = len(fractions)
    p_hat = math.fsum(fractions) / n
    if n > 1:
        var = math.fsum((f - p_hat) ** 2 for f in fractions) / (n - 1)
        std_err = math.sqrt(var / n)
    else:
        std_err = 0.0
    p_class = np.where(arr_sum > 0, blk_sum / np.maximum(arr_sum, 1), 0.0)
    return BlockingEstimate(p_hat, p_class, std_err, n)
