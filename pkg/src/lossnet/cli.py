"""Config-driven command line runner.

Subcommands: simulate (blocking estimate for one model), asymptote (tail
classification and asymptotic blocking), exact (per-class blocking of a
fixed-demand instance), and sweep (capacity sweep writing CSV plus
plot-ready data files).

Configs are JSON; the schema is documented in the README.  Exit codes:
0 success, 1 usage or config error, 2 runtime fault.  The LOSSNET_SEED
environment variable overrides the config seed; the --seed flag overrides
both.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

import numpy as np

from . import asymptotics, engine, exact
from .distributions import (
    HoldingDistribution,
    build_atom_plus_stretched_exp,
    build_deterministic_demand,
    build_truncated_geometric,
    build_truncated_power_law,
)
from .model import ArrivalSpec, NetworkModel, RequestClass, offered_load, validate


class ConfigError(Exception):
    pass


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            "config %s is not valid JSON: line %d column %d: %s"
            % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc


def _need(node, key, path):
    if not isinstance(node, dict):
        raise ConfigError("%s: expected an object" % path)
    if key not in node:
        raise ConfigError("%s: missing key %r" % (path, key))
    return node[key]


def _parse_holding(node, path):
    kind = _need(node, "kind", path)
    try:
        if kind == "exponential":
            return HoldingDistribution.exponential(float(_need(node, "mean", path)))
        if kind == "deterministic":
            return HoldingDistribution.deterministic(float(_need(node, "value", path)))
        if kind == "uniform":
            return HoldingDistribution.uniform(
                float(_need(node, "lo", path)), float(_need(node, "hi", path))
            )
    except (TypeError, ValueError) as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    raise ConfigError("%s.kind: unknown holding kind %r" % (path, kind))


def _parse_demand(node, path):
    family = _need(node, "family", path)
    try:
        if family == "truncated_power_law":
            return build_truncated_power_law(
                float(_need(node, "coef", path)),
                float(_need(node, "exponent", path)),
                int(_need(node, "cutoff", path)),
            )
        if family == "atom_plus_stretched_exp":
            return build_atom_plus_stretched_exp(
                float(_need(node, "atom_mass", path)),
                int(_need(node, "atom_value", path)),
                float(_need(node, "coef", path)),
                int(_need(node, "cutoff", path)),
            )
        if family == "truncated_geometric":
            return build_truncated_geometric(
                float(_need(node, "ratio", path)), int(_need(node, "cutoff", path))
            )
        if family == "deterministic":
            return build_deterministic_demand(int(_need(node, "value", path)))
    except (TypeError, ValueError) as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    raise ConfigError("%s.family: unknown demand family %r" % (path, family))


def _parse_arrival(node, path):
    kind = _need(node, "kind", path)
    try:
        if kind == "poisson":
            return ArrivalSpec.poisson(float(_need(node, "rate", path)))
        if kind == "fixed_interval":
            return ArrivalSpec.fixed_interval(float(_need(node, "spacing", path)))
        if kind == "renewal":
            inter = _parse_holding(_need(node, "interarrival", path), path + ".interarrival")
            return ArrivalSpec.renewal(inter)
    except (TypeError, ValueError) as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    raise ConfigError("%s.kind: unknown arrival kind %r" % (path, kind))


def _parse_model(node, path="model"):
    arrival = _parse_arrival(_need(node, "arrival", path), path + ".arrival")
    class_nodes = _need(node, "classes", path)
    if not isinstance(class_nodes, list) or not class_nodes:
        raise ConfigError("%s.classes: expected a nonempty list" % path)
    classes = []
    for l, cn in enumerate(class_nodes):
        cpath = "%s.classes[%d]" % (path, l)
        demand_nodes = _need(cn, "demands", cpath)
        if not isinstance(demand_nodes, list) or not demand_nodes:
            raise ConfigError("%s.demands: expected a nonempty list" % cpath)
        demands = [
            _parse_demand(dn, "%s.demands[%d]" % (cpath, i))
            for i, dn in enumerate(demand_nodes)
        ]
        holding = _parse_holding(_need(cn, "holding", cpath), cpath + ".holding")
        delay = None
        if cn.get("delay") is not None:
            delay = _parse_holding(cn["delay"], cpath + ".delay")
        classes.append(
            RequestClass(float(_need(cn, "probability", cpath)), demands, holding, delay)
        )
    capacities = _need(node, "capacities", path)
    if not isinstance(capacities, list) or not capacities:
        raise ConfigError("%s.capacities: expected a nonempty list" % path)
    model = NetworkModel(arrival, classes, capacities)
    violations = validate(model)
    if violations:
        raise ConfigError("%s: %s" % (path, "; ".join(violations)))
    return model


def _resolve_seed(flag_seed, config_seed):
    if flag_seed is not None:
        return flag_seed
    env = os.environ.get("LOSSNET_SEED")
    if env is not None and env.strip() != "":
        try:
            return int(env.strip())
        except ValueError as exc:
            raise ConfigError("LOSSNET_SEED must be an integer, got %r" % env) from exc
    return config_seed


def _parse_sim(node, args, path="sim"):
    node = node or {}
    warmup = args.warmup if args.warmup is not None else node.get("warmup", 100000)
    measured = args.measure if args.measure is not None else node.get("measured", 10000000)
    reps = (
        args.replications
        if args.replications is not None
        else node.get("replications", 4)
    )
    seed = _resolve_seed(getattr(args, "seed", None), node.get("seed", 1))
    try:
        return engine.SimConfig(int(warmup), int(measured), int(seed), int(reps))
    except (TypeError, ValueError) as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc


class ExperimentConfig:
    """A parsed sweep experiment: model, capacity grid, run sizes, outputs."""

    __slots__ = ("model", "start", "step", "count", "sim", "csv_path", "plot_path")

    def __init__(self, model, start, step, count, sim, csv_path, plot_path):
        self.model = model
        self.start = start
        self.step = step
        self.count = count
        self.sim = sim
        self.csv_path = csv_path
        self.plot_path = plot_path


def _parse_experiment(doc, args):
    model = _parse_model(_need(doc, "model", "config"))
    sweep = _need(doc, "sweep", "config")
    step = int(_need(sweep, "capacity_step", "sweep"))
    count = int(_need(sweep, "capacity_count", "sweep"))
    if step < 1:
        raise ConfigError("sweep.capacity_step: must be a positive integer")
    if count < 1:
        raise ConfigError("sweep.capacity_count: must be at least 1")
    start = _need(sweep, "capacity_start", "sweep")
    if start == "auto":
        start = int(math.ceil(max(offered_load(model)))) + step
    else:
        start = int(start)
        if start < 1:
            raise ConfigError("sweep.capacity_start: must be positive or \"auto\"")
    sim = _parse_sim(doc.get("sim"), args)
    outputs = doc.get("outputs") or {}
    csv_path = args.out if args.out else outputs.get("csv_path")
    plot_path = outputs.get("plot_data_path")
    return ExperimentConfig(model, start, step, count, sim, csv_path, plot_path)


class SweepRow:
    __slots__ = ("capacity", "p_sim", "std_err", "p_asym", "p_exact", "log10_sim", "log10_asym")

    def __init__(self, capacity, p_sim, std_err, p_asym, p_exact):
        self.capacity = capacity
        self.p_sim = p_sim
        self.std_err = std_err
        self.p_asym = p_asym
        self.p_exact = p_exact
        self.log10_sim = math.log10(p_sim) if p_sim > 0 else None
        self.log10_asym = math.log10(p_asym) if p_asym > 0 else None


def _point_mass_value(dist):
    nz = np.nonzero(dist.pmf)[0]
    return int(nz[0]) if len(nz) == 1 else None


def _exact_from_model(model, capacities):
    """Per-class exact blocking when the model is Poisson with fixed demands."""
    if not model.arrival.is_poisson:
        return None
    values = []
    for rc in model.classes:
        row = []
        for d in rc.demands:
            v = _point_mass_value(d)
            if v is None:
                return None
            row.append(v)
        values.append(row)
    lam = model.arrival.rate
    cols = []
    rhos = []
    weights = []
    for l, rc in enumerate(model.classes):
        if all(v == 0 for v in values[l]) or rc.probability == 0:
            continue
        cols.append(values[l])
        rhos.append(lam * rc.probability * rc.holding.mean())
        weights.append(rc.probability)
    if not cols:
        return 0.0
    matrix = [[col[i] for col in cols] for i in range(model.num_resources)]
    inst = exact.ErlangInstance(matrix, capacities, rhos)
    try:
        blocking = exact.per_class_blocking(inst)
    except exact.EnumerationLimitExceeded:
        return None
    return math.fsum(w * b for w, b in zip(weights, blocking))


def run_sweep(cfg):
    """Simulate, classify, and (when possible) solve exactly at each capacity."""
    rows = []
    for j in range(cfg.count):
        c = cfg.start + j * cfg.step
        model_c = NetworkModel(
            cfg.model.arrival, cfg.model.classes, [c] * cfg.model.num_resources
        )
        est = engine.estimate(model_c, cfg.sim)
        classification = asymptotics.classify_tails(model_c)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            p_asym = asymptotics.network_asymptote(model_c, classification)
        p_exact = _exact_from_model(model_c, model_c.capacities)
        rows.append(SweepRow(c, est.p_hat, est.std_err, p_asym, p_exact))
    return rows


def _fmt(x):
    return "%.12g" % x


def _csv_text(rows):
    lines = ["capacity,p_sim,std_err,p_asym,p_exact,log10_sim,log10_asym"]
    for r in rows:
        lines.append(
            ",".join(
                [
                    "%d" % r.capacity,
                    _fmt(r.p_sim),
                    _fmt(r.std_err),
                    _fmt(r.p_asym),
                    _fmt(r.p_exact) if r.p_exact is not None else "",
                    _fmt(r.log10_sim) if r.log10_sim is not None else "",
                    _fmt(r.log10_asym) if r.log10_asym is not None else "",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _write_plot_files(rows, prefix):
    curves = [
        ("sim", lambda r: r.log10_sim),
        ("asym", lambda r: r.log10_asym),
        (
            "exact",
            lambda r: math.log10(r.p_exact)
            if r.p_exact is not None and r.p_exact > 0
            else None,
        ),
    ]
    written = []
    for name, get in curves:
        points = [(r.capacity, get(r)) for r in rows if get(r) is not None]
        if not points:
            continue
        path = "%s_%s.dat" % (prefix, name)
        with open(path, "w", encoding="utf-8") as fh:
            for c, v in points:
                fh.write("%d %s\n" % (c, _fmt(v)))
        written.append(path)
    return written


def _emit(text, out_path):
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_simulate(args):
    doc = _load_json(args.config)
    model = _parse_model(_need(doc, "model", "config"))
    sim = _parse_sim(doc.get("sim"), args)
    est = engine.estimate(model, sim)
    lines = [
        "backend: %s" % engine.BACKEND,
        "capacities: %s" % " ".join(str(c) for c in model.capacities),
        "replications: %d" % est.replication_count,
        "p_hat: %s" % _fmt(est.p_hat),
        "std_err: %s" % _fmt(est.std_err),
    ]
    for l, p in enumerate(est.p_hat_class):
        lines.append("p_class[%d]: %s" % (l, _fmt(p)))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_asymptote(args):
    doc = _load_json(args.config)
    model = _parse_model(_need(doc, "model", "config"))
    classification = asymptotics.classify_tails(model)
    lines = []
    for i in range(model.num_resources):
        heavy = sorted(classification.heavy_sets[i])
        light = sorted(classification.light_sets[i])
        ref = classification.reference_class[i]
        lines.append(
            "resource %d: heavy=%s light=%s reference=%s"
            % (i, heavy, light, "-" if ref is None else ref)
        )
        for l in heavy:
            lines.append(
                "  coefficient[class %d] = %s" % (l, _fmt(classification.coefficients[i][l]))
            )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        value = asymptotics.network_asymptote(model, classification)
    lines.append("capacities: %s" % " ".join(str(c) for c in model.capacities))
    lines.append("asymptote: %s" % _fmt(value))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_exact(args):
    doc = _load_json(args.config)
    limit = exact.DEFAULT_STATE_LIMIT
    if "erlang" in doc:
        node = doc["erlang"]
        matrix = _need(node, "demand_matrix", "erlang")
        caps = _need(node, "capacities", "erlang")
        rhos = _need(node, "intensities", "erlang")
        limit = int(node.get("state_limit", limit))
        try:
            inst = exact.ErlangInstance(matrix, caps, rhos)
        except (TypeError, ValueError) as exc:
            raise ConfigError("erlang: %s" % exc) from exc
    else:
        model = _parse_model(_need(doc, "model", "config"))
        if not model.arrival.is_poisson:
            raise ConfigError("exact needs Poisson arrivals (or an 'erlang' section)")
        matrix = []
        rhos = []
        lam = model.arrival.rate
        values = []
        for l, rc in enumerate(model.classes):
            row = []
            for i, d in enumerate(rc.demands):
                v = _point_mass_value(d)
                if v is None:
                    raise ConfigError(
                        "model.classes[%d].demands[%d]: exact needs fixed demands" % (l, i)
                    )
                row.append(v)
            values.append(row)
            rhos.append(lam * rc.probability * rc.holding.mean())
        matrix = [[values[l][i] for l in range(model.num_classes)] for i in range(model.num_resources)]
        try:
            inst = exact.ErlangInstance(matrix, model.capacities, rhos)
        except (TypeError, ValueError) as exc:
            raise ConfigError("model: %s" % exc) from exc
    blocking = exact.per_class_blocking(inst, limit)
    lines = ["capacities: %s" % " ".join(str(c) for c in inst.capacities)]
    for l, b in enumerate(blocking):
        lines.append("blocking[class %d] = %s" % (l, _fmt(b)))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sweep(args):
    doc = _load_json(args.config)
    cfg = _parse_experiment(doc, args)
    rows = run_sweep(cfg)
    text = _csv_text(rows)
    if cfg.csv_path:
        with open(cfg.csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    plot_files = []
    if cfg.plot_path:
        plot_files = _write_plot_files(rows, cfg.plot_path)
    header = "%10s %14s %12s %14s %14s" % ("capacity", "p_sim", "std_err", "p_asym", "p_exact")
    out = [header]
    for r in rows:
        out.append(
            "%10d %14.6g %12.3g %14.6g %14s"
            % (
                r.capacity,
                r.p_sim,
                r.std_err,
                r.p_asym,
                "%.6g" % r.p_exact if r.p_exact is not None else "-",
            )
        )
    if cfg.csv_path:
        out.append("csv: %s" % cfg.csv_path)
    for p in plot_files:
        out.append("plot data: %s" % p)
    sys.stdout.write("\n".join(out) + "\n")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _build_parser():
    parser = _Parser(prog="lossnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, overrides):
        p.add_argument("--config", required=True, help="path to the JSON config")
        p.add_argument("--out", help="also write the output to this file")
        if overrides:
            p.add_argument("--seed", type=int, help="override the run seed")
            p.add_argument("--warmup", type=int, help="override warm-up arrivals")
            p.add_argument("--measure", type=int, help="override measured arrivals")
            p.add_argument("--replications", type=int, help="override replication count")

    p = sub.add_parser("simulate", help="estimate blocking by simulation")
    common(p, True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("asymptote", help="tail classification and asymptote")
    common(p, False)
    p.set_defaults(func=_cmd_asymptote)

    p = sub.add_parser("exact", help="exact per-class blocking (fixed demands)")
    common(p, False)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("sweep", help="capacity sweep: simulate vs asymptote vs exact")
    common(p, True)
    p.set_defaults(func=_cmd_sweep)
    return parser


def entry(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except exact.EnumerationLimitExceeded as exc:
        sys.stderr.write("fault: %s\n" % exc)
        return 2
    except (RuntimeError, OSError, ValueError) as exc:
        sys.stderr.write("fault: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(entry())
