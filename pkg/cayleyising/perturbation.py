# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Summability of the perturbation ε and the expansions of the perturbed
backward iteration around the extremal fixed points.

The perturbed model keeps its phase transition when
Σ_j (Σ_{i>=j} ε_i)² is finite.  For ε_n = n^(−γ) the inner tail behaves
like j^(1−γ), so the sum converges iff γ > 3/2.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import logsumexp
from trac.config import FloatOption, IntOption, ListOption
from trac.core import Component

from cayleyising.api import _, CriticalityError, DomainError, \
                            MonotonicityError
from cayleyising.model import CustomList, PowerLaw
from cayleyising.recursion import psi_prime, psi_second

__all__ = ['ConditionSumReport', 'ConditionVerdict', 'ConditionSweep',
           'DEFAULT_HORIZONS', 'condition_sum', 'condition_sweep',
           'classify_condition', 'analytic_condition',
           'strong_condition_sum', 'taylor_plus_prediction',
           'taylor_minus_prediction', 'ConditionClassifier']

DEFAULT_HORIZONS = tuple(500 * 2 ** i for i in range(8))
IDENTITY_TOLERANCE = 1e-10
CRITICAL_GAMMA = 1.5


def _epsilon_prefix(family, n):
    if not hasattr(family, 'prefix'):
        family = CustomList(tuple(family))
    eps = np.asarray(family.prefix(n), dtype=float)
    if np.any(eps < 0) or np.any(np.diff(eps) > 0):
        raise MonotonicityError(_("Epsilon prefix of length %(n)s is not "
                                  "non-negative and non-increasing", n=n))
    return eps


def _suffix_sums(eps):
    return np.cumsum(eps[::-1])[::-1]


@dataclass(frozen=True)
class ConditionSumReport(object):
    """S_n = Σ_{j<=n} (Σ_{i=j}^n ε_i)² with the sandwich bounds
    Σ(iε_i)² <= S_n <= Σ((n−i+1)ε_i)².
    """

    n: int
    S_n: float
    S_n_identity: float
    lower: float
    upper: float
    tail_sum: float
    tail_from: int = 1

    @property
    def identity_agrees(self):
        scale = max(abs(self.S_n), 1e-300)
        return abs(self.S_n - self.S_n_identity) <= IDENTITY_TOLERANCE * scale \
            or self.S_n == self.S_n_identity


def condition_sum(family, n, k=1):
    """S_n by suffix sums and again by the expansion
    Σ iε_i² + 2Σ_{i>=2} ε_i Σ_{j<i} jε_j.
    """
    if n < 1:
        raise DomainError(_("Horizon must be >= 1, got %(n)s", n=n))
    eps = _epsilon_prefix(family, n)
    index = np.arange(1, n + 1, dtype=float)
    tails = _suffix_sums(eps)
    s_n = float(np.sum(tails * tails))
    weighted = np.cumsum(index * eps)
    s_identity = float(np.sum(index * eps * eps) +
                       2 * np.sum(eps[1:] * weighted[:-1]))
    lower = float(np.sum((index * eps) ** 2))
    upper = float(np.sum(((n - index + 1) * eps) ** 2))
    tail = float(tails[k - 1]) if 1 <= k <= n else 0.0
    return ConditionSumReport(n, s_n, s_identity, lower, upper, tail, k)


class ConditionVerdict(Enum):
    CONVERGENT = 'convergent'
    DIVERGENT = 'divergent'
    UNDETERMINED = 'undetermined'


@dataclass(frozen=True)
class ConditionSweep(object):
    horizons: tuple
    sums: tuple
    ratios: tuple
    verdict: ConditionVerdict


def condition_sweep(family, horizons=DEFAULT_HORIZONS, shrink_ratio=0.9,
                    doublings=3, blowup_cap=1e6):
    """Finite-horizon test of the summability condition.

    Convergent when the increments of S_n over successive horizons shrink
    by a ratio below `shrink_ratio` for the last `doublings` steps, or
    when those ratios stay below 1 without rising: the increments are
    then bounded by a geometric series in the last ratio. Divergent when
    S_n passes `blowup_cap` or the increments stop shrinking.
    """
    horizons = tuple(int(h) for h in horizons)
    if not horizons or any(b <= a for a, b in zip(horizons, horizons[1:])):
        raise DomainError(_("Horizons must be a non-empty increasing "
                            "list"))
    sums = tuple(condition_sum(family, n).S_n for n in horizons)
    increments = np.diff(sums)
    ratios = tuple(float(b / a) for a, b in zip(increments, increments[1:])
                   if a > 0)
    recent = ratios[-doublings:]

    if sums[-1] > blowup_cap:
        verdict = ConditionVerdict.DIVERGENT
    elif len(increments) and increments[-1] <= 1e-14 * sums[-1]:
        verdict = ConditionVerdict.CONVERGENT
    elif len(ratios) < doublings:
        verdict = ConditionVerdict.UNDETERMINED
    elif all(r < shrink_ratio for r in recent):
        verdict = ConditionVerdict.CONVERGENT
    elif all(r < 1 for r in recent) and \
            all(b <= a for a, b in zip(recent, recent[1:])):
        verdict = ConditionVerdict.CONVERGENT
    elif all(r >= 1 for r in recent):
        verdict = ConditionVerdict.DIVERGENT
    else:
        verdict = ConditionVerdict.UNDETERMINED
    return ConditionSweep(horizons, sums, ratios, verdict)


def classify_condition(family, horizons=DEFAULT_HORIZONS, shrink_ratio=0.9,
                       doublings=3, blowup_cap=1e6):
    return condition_sweep(family, horizons, shrink_ratio, doublings,
                           blowup_cap).verdict


def analytic_condition(family):
    """Exact verdict where one is known: power laws converge iff
    γ > 3/2; geometric and finite lists always converge.
    """
    if family is None:
        return None
    if isinstance(family, PowerLaw):
        if family.gamma > CRITICAL_GAMMA:
            return ConditionVerdict.CONVERGENT
        return ConditionVerdict.DIVERGENT
    return ConditionVerdict.CONVERGENT


def strong_condition_sum(family, d, n):
    """log Σ_{k<=n} d^k ε_k, the older and stronger sufficient condition.

    Returned in log space; −inf when all ε vanish.
    """
    eps = _epsilon_prefix(family, n)
    positive = eps > 0
    if not np.any(positive):
        return -np.inf
    k = np.arange(1, n + 1, dtype=float)[positive]
    return float(logsumexp(k * np.log(d) + np.log(eps[positive])))


def _check_window(k, n):
    if k < 1 or k > n:
        raise DomainError(_("Need 1 <= k <= n, got k=%(k)s, n=%(n)s",
                            k=k, n=n))


def taylor_plus_prediction(k, n, family, b_plus, params):
    """b⁺ − Σ_{i=k}^n ε_i − ½|ψ″(b⁺)| Σ_{i=k+1}^n (Σ_{j=i}^n ε_j)²."""
    if not params.supercritical:
        raise CriticalityError(_("No saddle node for theta=%(theta)s <= "
                                 "1/d", theta=params.theta))
    _check_window(k, n)
    tails = _suffix_sums(_epsilon_prefix(family, n)[k - 1:])
    c = 0.5 * abs(psi_second(b_plus, params))
    return float(b_plus - tails[0] - c * np.sum(tails[1:] ** 2))


def taylor_minus_prediction(k, n, family, b_minus, params):
    """b⁻ − Σ_{i=k}^{n−1} ψ′(b⁻)^(i−k) ε_i, the first-order value of
    ψ̃_{k,n−1}(b⁻).
    """
    if not params.supercritical:
        raise CriticalityError(_("No saddle node for theta=%(theta)s <= "
                                 "1/d", theta=params.theta))
    _check_window(k, n)
    q = psi_prime(b_minus, params)
    if not q < 1:
        raise DomainError(_("b_minus=%(b)s is not attracting "
                            "(psi'=%(q)s)", b=b_minus, q=q))
    if n - 1 < k:
        return float(b_minus)
    eps = _epsilon_prefix(family, n - 1)[k - 1:]
    weights = q ** np.arange(eps.size, dtype=float)
    return float(b_minus - np.sum(weights * eps))


class ConditionClassifier(Component):
    """Runs the summability test with the configured horizons and
    thresholds.
    """

    horizons = ListOption('condition', 'horizons',
                          ','.join(str(h) for h in DEFAULT_HORIZONS),
        doc="""Increasing horizons n at which S_n is evaluated.""")

    shrink_ratio = FloatOption('condition', 'shrink_ratio', 0.9,
        """Increment ratio below which S_n is taken to converge.""")

    doublings = IntOption('condition', 'doublings', 3,
        """Number of trailing horizon steps the ratio test must hold
        for.""")

    blowup_cap = FloatOption('condition', 'blowup_cap', 1e6,
        """S_n beyond this value is taken as divergent.""")

    def report(self, family, n, k=1):
        report = condition_sum(family, n, k)
        if not report.identity_agrees:
            self.log.warning("Condition sum identity mismatch at n=%s: "
                             "%r vs %r", n, report.S_n, report.S_n_identity)
        return report

    def sweep(self, family, horizons=None):
        horizons = horizons or [int(h) for h in self.horizons]
        result = condition_sweep(family, horizons, self.shrink_ratio,
                                 self.doublings, self.blowup_cap)
        self.log.debug("Condition sums for %r: %r (ratios %r)", family,
                       result.sums, result.ratios)
        analytic = analytic_condition(family)
        if analytic is not None and result.verdict is not analytic:
            self.log.info("Numeric condition verdict %s differs from the "
                          "analytic %s for %r", result.verdict.value,
                          analytic.value, family)
        return result
