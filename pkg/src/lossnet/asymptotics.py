"""Asymptotic blocking formulas for heavy-tailed demands.

For a single pool the blocking probability is asymptotically the demand
tail beyond the capacity; reservations leave that value unchanged.  For a
network, each resource contributes through the classes whose demand tails
dominate on it, and the asymptote is the mixture-weighted sum of the
dominant reference tails at the per-resource capacities.

Dominance is decided purely from the declared tail-family metadata.  A
limit statement cannot be checked from finitely many tail evaluations, so
comparing numerical tails would be both wrong in principle and fragile in
practice; declarations make the classification exact and auditable.
"""

from __future__ import annotations

import warnings


class HeavyTieUnorderable(Exception):
    """Two candidate dominant families are neither ordered nor proportional.

    Unreachable with the built-in families, whose heaviness order is total;
    kept as a hard error so a future family cannot be silently misfiled.
    """


class TailClassification:
    """Per-resource partition of classes into dominant and dominated tails.

    heavy_sets[i] and light_sets[i] partition the classes with nonzero
    demand on resource i.  reference_class[i] is the member of heavy_sets[i]
    whose demand law serves as the reference tail (None when the set is
    empty), and coefficients[i] maps each dominant class to its tail ratio
    against that reference, 1 for the reference itself.
    """

    __slots__ = ("heavy_sets", "light_sets", "reference_class", "coefficients")

    def __init__(self, heavy_sets, light_sets, reference_class, coefficients):
        self.heavy_sets = heavy_sets
        self.light_sets = light_sets
        self.reference_class = reference_class
        self.coefficients = coefficients

    def __repr__(self):
        parts = []
        for i, (h, l) in enumerate(zip(self.heavy_sets, self.light_sets)):
            parts.append("resource %d: heavy=%s light=%s" % (i, sorted(h), sorted(l)))
        return "TailClassification(%s)" % "; ".join(parts)


def classify_tails(model):
    """Partition every resource's classes by declared tail dominance.

    The heaviest declared family among classes actually using the resource
    defines the reference tail; classes proportional to it (same family,
    same shape parameter) join the dominant set, everything else is
    dominated.  A light-tailed or bounded maximum leaves the dominant set
    empty.
    """
    heavy_sets = []
    light_sets = []
    reference_class = []
    coefficients = []
    for i in range(model.num_resources):
        users = [
            l for l, rc in enumerate(model.classes) if rc.demands[i].tail(0) > 0.0
        ]
        if not users:
            heavy_sets.append(set())
            light_sets.append(set())
            reference_class.append(None)
            coefficients.append({})
            continue
        fams = {l: model.classes[l].demands[i].tail_family for l in users}
        best = fams[users[0]]
        for l in users[1:]:
            if fams[l].heavier_than(best):
                best = fams[l]
        for l in users:
            f = fams[l]
            if not f.proportional_to(best) and not best.heavier_than(f):
                raise HeavyTieUnorderable(
                    "resource %d: %r and %r are not comparable" % (i, f, best)
                )
        if not best.subexponential:
            heavy_sets.append(set())
            light_sets.append(set(users))
            reference_class.append(None)
            coefficients.append({})
            continue
        heavy = {l for l in users if fams[l].proportional_to(best)}
        ref = min(heavy)
        coeff = {l: fams[l].coef / fams[ref].coef for l in heavy}
        heavy_sets.append(heavy)
        light_sets.append(set(users) - heavy)
        reference_class.append(ref)
        coefficients.append(coeff)
    return TailClassification(heavy_sets, light_sets, reference_class, coefficients)


def single_pool_asymptote(demand, capacity):
    """Asymptotic blocking of one pool: the demand tail beyond capacity."""
    if not demand.tail_family.subexponential:
        warnings.warn(
            "demand tail family %r is not subexponential; the asymptote "
            "is only guaranteed for heavy-tailed demands" % demand.tail_family.kind,
            RuntimeWarning,
            stacklevel=2,
        )
    return demand.tail(capacity)


def network_asymptote(model, classification):
    """Sum over resources of the dominant classes' weighted reference tails.

    Returns 0 with a warning when no resource has a dominant heavy class,
    since the formula's hypotheses then fail.
    """
    if all(not h for h in classification.heavy_sets):
        warnings.warn(
            "no resource has a subexponential dominant class; the network "
            "asymptote does not apply, returning 0",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    value = 0.0
    for i in range(model.num_resources):
        heavy = classification.heavy_sets[i]
        if not heavy:
            continue
        ref = classification.reference_class[i]
        ref_tail = model.classes[ref].demands[i].tail(model.capacities[i])
        for l in sorted(heavy):
            p = model.classes[l].probability
            value += p * classification.coefficients[i][l] * ref_tail
    return value
