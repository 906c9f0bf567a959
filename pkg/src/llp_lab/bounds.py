"""Sample-size formulas and the uniform-convergence audit.

Bound values are informational floats; the quantities they are compared
against (observed proportions and gaps) stay exact rationals.  Natural
logarithms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import FiniteDistribution, derive_seed
from .errors import InvalidParams, ZeroGap
from .hypotheses import ClassDescriptor, Hypothesis, enumerate_class, vc_dimension
from .sampling import draw_sample, empirical_proportion, true_proportion

__all__ = [
    "hoeffding_sample_size",
    "gap_sample_size",
    "uniform_convergence_bound",
    "uniform_convergence_sample_size",
    "BoundReport",
    "empirical_generalization_audit",
    "audit_satisfied_fraction",
]


def hoeffding_sample_size(epsilon: float, delta: float) -> int:
    """Smallest m with 2 exp(-2 m epsilon^2) <= delta: ceil(ln(2/delta) / (2 epsilon^2)).

    Enough draws for the revealed fraction to sit within epsilon of the true
    proportion with probability 1 - delta.
    """
    epsilon = float(epsilon)
    delta = float(delta)
    if not 0 < epsilon < 1 or not 0 < delta < 1:
        raise InvalidParams(f"need 0 < epsilon, delta < 1, got {epsilon}, {delta}")
    return math.ceil(math.log(2 / delta) / (2 * epsilon * epsilon))


def gap_sample_size(beta: float, delta: float) -> int:
    """Draws needed to land within beta/2 of the true proportion, w.p. 1 - delta.

    beta is the smallest distance between distinct achievable proportion
    values; within beta/2 the nearest achievable value is the right one.
    """
    if float(beta) == 0.0:
        raise ZeroGap("no separation between achievable proportions")
    return hoeffding_sample_size(float(beta) / 2, delta)


def uniform_convergence_bound(d: int, m: int, delta: float) -> float:
    """sqrt(8 d ln(e m / d) / m) + sqrt(2 ln(4/delta) / m), for m >= d >= 1."""
    delta = float(delta)
    if d < 1 or not 0 < delta < 1:
        raise InvalidParams(f"need d >= 1 and 0 < delta < 1, got d={d}, delta={delta}")
    if m < d:
        raise InvalidParams(f"need m >= d, got m={m}, d={d}")
    return math.sqrt(8 * d * math.log(math.e * m / d) / m) + math.sqrt(
        2 * math.log(4 / delta) / m
    )


def uniform_convergence_sample_size(
    d: int, epsilon: float, delta: float, erm_slack: float = 0.0
) -> int:
    """Smallest m >= 3d with uniform_convergence_bound(d, m, delta) <= epsilon - erm_slack.

    The bound is decreasing from 3d onward, so a doubling scan followed by
    binary search finds the exact threshold.
    """
    epsilon = float(epsilon)
    erm_slack = float(erm_slack)
    if not 0 <= erm_slack < epsilon:
        raise InvalidParams(f"need 0 <= erm_slack < epsilon, got {erm_slack}, {epsilon}")
    target = epsilon - erm_slack
    lo = 3 * d
    if uniform_convergence_bound(d, lo, delta) <= target:
        return lo
    hi = lo
    while uniform_convergence_bound(d, hi, delta) > target:
        hi *= 2
    # invariant: bound(lo) > target >= bound(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if uniform_convergence_bound(d, mid, delta) > target:
            lo = mid
        else:
            hi = mid
    return hi


@dataclass(frozen=True)
class BoundReport:
    """One audit trial: the bound parameters and the worst observed gap."""

    trial: int
    d: int
    m: int
    delta: float
    bound_value: float
    observed_gap: Fraction

    @property
    def satisfied(self) -> bool:
        return self.observed_gap <= self.bound_value


def empirical_generalization_audit(
    desc: ClassDescriptor,
    dist: FiniteDistribution,
    target: Hypothesis,
    m: int,
    delta: float,
    trials: int,
    seed: int,
) -> list[BoundReport]:
    """Measure, per trial, the worst |true deviation - empirical deviation|.

    For every hypothesis h in the class the deviation is taken between
    |p_h - p_c| on the distribution and |p-hat_h - p-hat_c| on a fresh
    m-point sample; the report compares the maximum over h against the
    uniform-convergence bound.  Proportions are exact; only the bound is a
    float.
    """
    d = vc_dimension(desc)
    if d == math.inf:
        raise InvalidParams("the audit needs a class of finite VC dimension")
    d = max(int(d), 1)  # degenerate classes still get a (loose) valid bound
    bound = uniform_convergence_bound(d, m, delta)
    hypotheses = list(enumerate_class(desc))
    p_c = true_proportion(target, dist)
    true_dev = [abs(true_proportion(h, dist) - p_c) for h in hypotheses]
    reports = []
    for trial in range(trials):
        sample = draw_sample(dist, m, derive_seed(seed, "audit", trial), target)
        worst = Fraction(0)
        for h, dev in zip(hypotheses, true_dev):
            emp_dev = abs(empirical_proportion(h, sample) - sample.p_hat)
            gap = abs(dev - emp_dev)
            if gap > worst:
                worst = gap
        reports.append(BoundReport(trial, int(d), m, float(delta), bound, worst))
    return reports


def audit_satisfied_fraction(reports: list[BoundReport]) -> Fraction:
    if not reports:
        raise InvalidParams("no reports to aggregate")
    return Fraction(sum(r.satisfied for r in reports), len(reports))
