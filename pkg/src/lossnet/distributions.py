"""Demand and holding-time distributions.

Demand sizes are finite discrete distributions on nonnegative integers,
stored as an explicit pmf plus a cumulative table.  Each demand law also
carries a declared tail family describing the untruncated parent it was
cut from (a truncated power law is still classified as regularly varying);
the asymptotic formulas order classes by this metadata, never by comparing
numerical tails.
"""

from __future__ import annotations

import math
from bisect import bisect_right

import numpy as np


class TailFamily:
    """Declared asymptotic family of a demand law's parent distribution.

    kind is one of the four module constants below.  shape is the index of
    a regularly varying tail or the stretching exponent beta, None for the
    parameterless kinds.  coef scales the parent tail within its family;
    only ratios of coefficients inside one family are ever consumed.
    """

    REGULARLY_VARYING = "regularly_varying"
    STRETCHED_EXPONENTIAL = "stretched_exponential"
    LIGHT_TAILED = "light_tailed"
    BOUNDED = "bounded"

    _RANK = {
        REGULARLY_VARYING: 3,
        STRETCHED_EXPONENTIAL: 2,
        LIGHT_TAILED: 1,
        BOUNDED: 0,
    }

    __slots__ = ("kind", "shape", "coef")

    def __init__(self, kind, shape=None, coef=None):
        if kind not in self._RANK:
            raise ValueError("unknown tail family kind: %r" % (kind,))
        if kind == self.REGULARLY_VARYING:
            if not (shape is not None and shape > 0):
                raise ValueError("regularly varying index must be > 0")
            if not (coef is not None and coef > 0):
                raise ValueError("tail coefficient must be > 0")
        elif kind == self.STRETCHED_EXPONENTIAL:
            if not (shape is not None and 0 < shape < 1):
                raise ValueError("stretching exponent must lie in (0, 1)")
            if not (coef is not None and coef > 0):
                raise ValueError("tail coefficient must be > 0")
        else:
            if shape is not None or coef is not None:
                raise ValueError("%s takes no parameters" % kind)
        self.kind = kind
        self.shape = shape
        self.coef = coef

    @classmethod
    def regularly_varying(cls, index, coef):
        return cls(cls.REGULARLY_VARYING, float(index), float(coef))

    @classmethod
    def stretched_exponential(cls, shape, coef):
        return cls(cls.STRETCHED_EXPONENTIAL, float(shape), float(coef))

    @classmethod
    def light_tailed(cls):
        return cls(cls.LIGHT_TAILED)

    @classmethod
    def bounded(cls):
        return cls(cls.BOUNDED)

    @property
    def subexponential(self):
        return self.kind in (self.REGULARLY_VARYING, self.STRETCHED_EXPONENTIAL)

    def heavier_than(self, other):
        """Strict dominance: self's tail decays strictly slower than other's.

        Across kinds the rank order decides.  Within regularly varying a
        smaller index is heavier; within stretched exponential a smaller
        stretching exponent is heavier.  Equal-parameter families are
        proportional, hence not strictly ordered.
        """
        a, b = self._RANK[self.kind], self._RANK[other.kind]
        if a != b:
            return a > b
        if self.shape is None:
            return False
        return self.shape < other.shape

    def proportional_to(self, other):
        """Same kind and same shape parameter; coefficients may differ."""
        return self.kind == other.kind and self.shape == other.shape

    def __repr__(self):
        if self.shape is None:
            return "TailFamily(%s)" % self.kind
        return "TailFamily(%s, shape=%g, coef=%g)" % (self.kind, self.shape, self.coef)


def _cumulative(pmf):
    # plain running sum: rounding is monotone, so the table is nondecreasing
    cum = np.empty(len(pmf))
    s = 0.0
    for i, p in enumerate(pmf):
        s += p
        cum[i] = s
    return cum


class DemandDistribution:
    """Finite discrete demand law with cumulative table and tail metadata."""

    __slots__ = ("support_max", "pmf", "cum", "tail_family", "_mean")

    def __init__(self, pmf, tail_family):
        pmf = np.asarray(pmf, dtype=float)
        if pmf.ndim != 1 or len(pmf) < 1:
            raise ValueError("pmf must be a nonempty vector")
        if np.any(pmf < 0):
            raise ValueError("pmf entries must be nonnegative")
        total = math.fsum(pmf.tolist())
        if abs(total - 1.0) > 1e-12:
            raise ValueError("pmf sums to %.17g, not 1" % total)
        self.support_max = len(pmf) - 1
        self.pmf = pmf
        self.cum = _cumulative(pmf.tolist())
        self.tail_family = tail_family
        self._mean = math.fsum(i * p for i, p in enumerate(pmf.tolist()))

    def tail(self, x):
        """P[B > x] from the cumulative table; 0 beyond the support."""
        if x >= self.support_max:
            return 0.0
        if x < 0:
            return 1.0
        return max(0.0, 1.0 - self.cum[x])

    def mean(self):
        return self._mean

    def sample(self, rng):
        """Inverse-CDF draw: smallest i with cum[i] > u."""
        u = rng.next_double()
        i = bisect_right(self.cum, u)
        return i if i <= self.support_max else self.support_max

    def __repr__(self):
        return "DemandDistribution(support_max=%d, %r)" % (
            self.support_max,
            self.tail_family,
        )


def build_truncated_power_law(coef, exponent, cutoff):
    """pmf[i] = coef/i^exponent for i < cutoff, remainder mass at cutoff.

    Classified regularly varying with survival index exponent - 1; the
    declared coefficient coef/(exponent - 1) matches the parent law's tail
    integral so that coefficient ratios inside one family are meaningful.
    """
    if coef <= 0:
        raise ValueError("coef must be positive")
    if exponent <= 1:
        raise ValueError("exponent must exceed 1")
    cutoff = int(cutoff)
    if cutoff < 1:
        raise ValueError("cutoff must be a positive integer")
    pmf = [0.0] * (cutoff + 1)
    for i in range(1, cutoff):
        pmf[i] = coef * i ** -exponent
    rest = 1.0 - math.fsum(pmf)
    if rest < 0:
        raise ValueError(
            "body mass %.6g exceeds 1; no room for the cutoff atom" % (1.0 - rest)
        )
    pmf[cutoff] = rest
    family = TailFamily.regularly_varying(exponent - 1.0, coef / (exponent - 1.0))
    return DemandDistribution(pmf, family)


def build_atom_plus_stretched_exp(atom_mass, atom_value, coef, cutoff):
    """Point mass at atom_value plus coef*exp(-sqrt(i)) body, atom at cutoff.

    With coef = 0 the law degenerates to a bounded point mass and is
    classified Bounded; otherwise stretched exponential with exponent 1/2.
    """
    if not 0 <= atom_mass <= 1:
        raise ValueError("atom_mass must be a probability")
    atom_value = int(atom_value)
    if atom_value < 1:
        raise ValueError("atom_value must be a positive integer")
    if coef < 0:
        raise ValueError("coef must be nonnegative")
    cutoff = int(cutoff)
    if cutoff <= atom_value:
        raise ValueError("cutoff must exceed atom_value")
    pmf = [0.0] * (cutoff + 1)
    pmf[atom_value] = atom_mass
    for i in range(2, cutoff):
        pmf[i] += coef * math.exp(-math.sqrt(i))
    rest = 1.0 - math.fsum(pmf)
    if rest < 0:
        raise ValueError("atom plus body mass exceeds 1")
    pmf[cutoff] += rest
    if coef > 0:
        family = TailFamily.stretched_exponential(0.5, coef)
    else:
        family = TailFamily.bounded()
    return DemandDistribution(pmf, family)


def build_truncated_geometric(ratio, cutoff):
    """pmf[i] = ratio^(i-1)(1-ratio) for i < cutoff, remainder at cutoff."""
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    cutoff = int(cutoff)
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    pmf = [0.0] * (cutoff + 1)
    for i in range(1, cutoff):
        pmf[i] = ratio ** (i - 1) * (1.0 - ratio)
    pmf[cutoff] = 1.0 - math.fsum(pmf)
    return DemandDistribution(pmf, TailFamily.light_tailed())


def build_deterministic_demand(value):
    """Point mass at value; value 0 means the class never uses the resource."""
    value = int(value)
    if value < 0:
        raise ValueError("demand value must be nonnegative")
    pmf = [0.0] * (value + 1)
    pmf[value] = 1.0
    return DemandDistribution(pmf, TailFamily.bounded())


class HoldingDistribution:
    """Nonnegative continuous law for holding times, delays, interarrivals.

    Three variants: exponential (parameterized by its mean), deterministic,
    and uniform on [lo, hi].  Sampling always consumes exactly one uniform
    from the stream, deterministic included, so switching a variant never
    shifts the draws seen by other streams of the same replication.
    """

    EXPONENTIAL = 0
    DETERMINISTIC = 1
    UNIFORM = 2

    __slots__ = ("kind", "p0", "p1")

    def __init__(self, kind, p0, p1=0.0):
        self.kind = kind
        self.p0 = float(p0)
        self.p1 = float(p1)

    @classmethod
    def exponential(cls, mean):
        if mean <= 0:
            raise ValueError("exponential mean must be positive")
        return cls(cls.EXPONENTIAL, mean)

    @classmethod
    def deterministic(cls, value):
        if value < 0:
            raise ValueError("deterministic value must be nonnegative")
        return cls(cls.DETERMINISTIC, value)

    @classmethod
    def uniform(cls, lo, hi):
        if lo < 0 or hi <= lo:
            raise ValueError("uniform bounds need 0 <= lo < hi")
        return cls(cls.UNIFORM, lo, hi)

    def mean(self):
        if self.kind == self.EXPONENTIAL or self.kind == self.DETERMINISTIC:
            return self.p0
        return 0.5 * (self.p0 + self.p1)

    def sample(self, rng):
        u = rng.next_double()
        if self.kind == self.EXPONENTIAL:
            return -self.p0 * math.log1p(-u)
        if self.kind == self.DETERMINISTIC:
            return self.p0
        return self.p0 + u * (self.p1 - self.p0)

    def __repr__(self):
        name = {0: "exponential", 1: "deterministic", 2: "uniform"}[self.kind]
        if self.kind == self.UNIFORM:
            return "HoldingDistribution.%s(%g, %g)" % (name, self.p0, self.p1)
        return "HoldingDistribution.%s(%g)" % (name, self.p0)
