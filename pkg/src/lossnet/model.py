"""Loss-network instance description and validation.

A model is an arrival process, a list of request classes (each with a class
probability, one demand law per resource pool, a holding-time law, and an
optional reservation lead-time law), and a capacity vector.  Validation
returns violations as data so a config-driven caller can report all of them
at once instead of dying on the first.
"""

from __future__ import annotations

from .distributions import HoldingDistribution


class ArrivalSpec:
    """Renewal arrival process, stored as its interarrival law."""

    __slots__ = ("interarrival", "label")

    def __init__(self, interarrival, label):
        self.interarrival = interarrival
        self.label = label

    @classmethod
    def poisson(cls, rate):
        if rate <= 0:
            raise ValueError("arrival rate must be positive")
        return cls(HoldingDistribution.exponential(1.0 / rate), "poisson")

    @classmethod
    def fixed_interval(cls, spacing):
        if spacing <= 0:
            raise ValueError("arrival spacing must be positive")
        return cls(HoldingDistribution.deterministic(spacing), "fixed_interval")

    @classmethod
    def renewal(cls, interarrival):
        if interarrival.mean() <= 0:
            raise ValueError("interarrival mean must be positive")
        return cls(interarrival, "renewal")

    @property
    def rate(self):
        return 1.0 / self.interarrival.mean()

    @property
    def is_poisson(self):
        return self.label == "poisson"

    def __repr__(self):
        return "ArrivalSpec(%s, %r)" % (self.label, self.interarrival)


class RequestClass:
    __slots__ = ("probability", "demands", "holding", "delay")

    def __init__(self, probability, demands, holding, delay=None):
        self.probability = float(probability)
        self.demands = list(demands)
        self.holding = holding
        self.delay = delay


class NetworkModel:
    __slots__ = ("arrival", "classes", "capacities")

    def __init__(self, arrival, classes, capacities):
        self.arrival = arrival
        self.classes = list(classes)
        self.capacities = [int(c) for c in capacities]

    @property
    def num_resources(self):
        return len(self.capacities)

    @property
    def num_classes(self):
        return len(self.classes)

    def __repr__(self):
        return "NetworkModel(%d classes, capacities=%r)" % (
            self.num_classes,
            self.capacities,
        )


def validate(model):
    """Collect every invariant violation; an empty list means the model is ok."""
    violations = []
    k = model.num_resources
    if k < 1:
        violations.append("capacities: need at least one resource pool")
    for i, c in enumerate(model.capacities):
        if c < 1:
            violations.append("capacities[%d]: must be a positive integer, got %d" % (i, c))
    if model.num_classes < 1:
        violations.append("classes: need at least one request class")
    for l, rc in enumerate(model.classes):
        if not 0.0 <= rc.probability <= 1.0:
            violations.append(
                "classes[%d].probability: %g outside [0, 1]" % (l, rc.probability)
            )
        if len(rc.demands) != k:
            violations.append(
                "classes[%d].demands: length %d, expected one per resource (%d)"
                % (l, len(rc.demands), k)
            )
        if rc.holding.mean() < 0:
            violations.append("classes[%d].holding: negative mean" % l)
    total = sum(rc.probability for rc in model.classes)
    if abs(total - 1.0) > 1e-12:
        violations.append("class probabilities sum to %.12g, expected 1" % total)
    if model.arrival.interarrival.mean() <= 0:
        violations.append("arrival: interarrival mean must be positive")
    return violations


def offered_load(model):
    """Mean capacity demanded per unit time, one coordinate per resource."""
    rate = model.arrival.rate
    loads = []
    for i in range(model.num_resources):
        acc = 0.0
        for rc in model.classes:
            acc += rc.probability * rc.holding.mean() * rc.demands[i].mean()
        loads.append(rate * acc)
    return loads
