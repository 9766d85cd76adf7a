"""Compare the compiled and pure-Python simulation kernels.

Runs the same replication on both backends, checks the counters agree
exactly, and reports arrivals per second for each.

    python3 benchmarks/bench_kernel.py [--arrivals N]
"""

import argparse
import time

from lossnet.distributions import (
    HoldingDistribution,
    build_truncated_geometric,
    build_truncated_power_law,
)
from lossnet.engine import SimConfig, run_replication
from lossnet.model import ArrivalSpec, NetworkModel, RequestClass


def build_model(reserved):
    delay = HoldingDistribution.uniform(0.0, 5.0) if reserved else None
    classes = [
        RequestClass(
            0.6,
            [build_truncated_power_law(0.3, 1.5, 2000)],
            HoldingDistribution.exponential(1.0),
            delay,
        ),
        RequestClass(
            0.4,
            [build_truncated_geometric(0.6, 50)],
            HoldingDistribution.uniform(0.0, 2.0),
            delay,
        ),
    ]
    return NetworkModel(ArrivalSpec.poisson(1.0), classes, [800])


def time_backend(model, cfg, backend):
    start = time.perf_counter()
    counters = run_replication(model, cfg, 0, backend=backend)
    return counters, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--arrivals", type=int, default=2_000_000)
    parser.add_argument("--seed", type=int, default=20240517)
    args = parser.parse_args()

    for label, reserved in (("immediate admission", False), ("advance reservations", True)):
        model = build_model(reserved)
        n = args.arrivals if not reserved else max(args.arrivals // 10, 1)
        cfg = SimConfig(0, n, args.seed)
        c_res, c_time = time_backend(model, cfg, "compiled")
        p_res, p_time = time_backend(model, cfg, "python")
        if c_res != p_res:
            raise SystemExit("backend mismatch: %r vs %r" % (c_res, p_res))
        print(label)
        print("  arrivals: %d  (counters identical across backends)" % n)
        print("  compiled: %8.2fs  %12.0f arrivals/s" % (c_time, n / c_time))
        print("  python:   %8.2fs  %12.0f arrivals/s" % (p_time, n / p_time))
        print("  speedup:  %.1fx" % (p_time / c_time))


if __name__ == "__main__":
    main()
