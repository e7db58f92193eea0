# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Phase transition or uniqueness for the field h_n = −h_c − ε_n.

The extremal boundary fields b̃⁺ and b̃⁻ are infinite-depth limits.  They
are approximated by running the perturbed recursion from finite depths n
seeded at the homogeneous extremal fixed points b⁺ and b⁻, and watching
the gap between the two runs at a few probe generations as n doubles.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from trac.config import FloatOption, IntOption, ListOption
from trac.core import Component

from cayleyising.api import _, DomainError
from cayleyising.criticality import extremal_pair, h_c, saddle_curvature
from cayleyising.model import FieldProfile, PowerLaw
from cayleyising.perturbation import ConditionVerdict, DEFAULT_HORIZONS, \
                                     analytic_condition, condition_sum, \
                                     condition_sweep
from cayleyising.recursion import iterate_backward, kernel_F
from cayleyising.util import ordered_map

__all__ = ['Verdict', 'Regime', 'Tolerances', 'DEFAULT_DEPTHS',
           'DEFAULT_PROBES', 'GapCell', 'ClassificationVerdict',
           'AuxiliaryFieldTrace', 'seed_pair', 'b_plus_tilde',
           'b_minus_tilde', 'auxiliary_trace', 'classify', 'sweep_gamma',
           'PhaseClassifier']

DEFAULT_DEPTHS = (250, 500, 1000, 2000, 4000)
DEFAULT_PROBES = (1, 5, 10)
ORDERING_TOLERANCE = 1e-10

# Window of gaps used to measure the per-generation contraction.
_CONTRACTION_WINDOW = (1e-12, 1e-2)


class Verdict(Enum):
    TRANSITION = 'transition'
    UNIQUENESS = 'uniqueness'
    INCONCLUSIVE = 'inconclusive'


class Regime(Enum):
    HOMOGENEOUS_TAIL = 'homogeneous-tail'
    INHOMOGENEOUS_WINDOW = 'inhomogeneous-window'
    COMPATIBLE_HEAD = 'compatible-head'


@dataclass(frozen=True)
class Tolerances(object):
    tau_gap: float = 1e-4
    tau_uniq: float = 1e-6

    def __post_init__(self):
        if not 0 < self.tau_uniq <= self.tau_gap:
            raise DomainError(_("Need 0 < tau_uniq <= tau_gap, got "
                                "%(uniq)s and %(gap)s", uniq=self.tau_uniq,
                                gap=self.tau_gap))


@dataclass(frozen=True)
class GapCell(object):
    probe: int
    depth: int
    b_plus: float
    b_minus: float

    @property
    def gap(self):
        return self.b_plus - self.b_minus


@dataclass(frozen=True, eq=False)
class ClassificationVerdict(object):
    verdict: Verdict
    reason: str
    gap_trace: tuple
    probe_verdicts: tuple
    condition: dict
    diagnostics: dict
    params: object
    profile: FieldProfile
    tolerances: Tolerances
    depths: tuple
    probes: tuple

    def final_gaps(self):
        """Gap at the deepest run, per probe generation."""
        if not self.gap_trace:
            return {}
        deepest = max(cell.depth for cell in self.gap_trace)
        return dict((cell.probe, cell.gap) for cell in self.gap_trace
                    if cell.depth == deepest)


@dataclass(frozen=True, eq=False)
class AuxiliaryFieldTrace(object):
    """Three-zone run seeded at +∞ at depth N: homogeneous map at −h_c
    down to n, perturbed map from n down to k and beyond.
    """

    k: int
    n: int
    N: int
    start: int
    values: np.ndarray
    regimes: tuple = field(default=())

    def value_at(self, m):
        if not self.start <= m <= self.N:
            raise IndexError("generation %d outside %d..%d"
                             % (m, self.start, self.N))
        return float(self.values[m - self.start])

    def regime_at(self, m):
        return self.regimes[m - self.start]


def seed_pair(params):
    """(b⁻, b⁺) of the homogeneous map at h = −h_c."""
    return extremal_pair(-h_c(params), params)


def b_plus_tilde(profile, params, probe, depth, seeds=None):
    """ψ̃_{k0,n}(b⁺), a lower bound for b̃⁺ at the probe generation."""
    b_minus, b_plus = seeds or seed_pair(params)
    _check_probe(probe, depth)
    return iterate_backward(profile, params, depth, probe,
                            b_plus).value_at(probe)


def b_minus_tilde(profile, params, probe, depth, seeds=None):
    """ψ̃_{k0,n}(b⁻), an upper bound for b̃⁻ at the probe generation."""
    b_minus, b_plus = seeds or seed_pair(params)
    _check_probe(probe, depth)
    return iterate_backward(profile, params, depth, probe,
                            b_minus).value_at(probe)


def _check_probe(probe, depth):
    if not 1 <= probe < depth:
        raise DomainError(_("Probe generation %(probe)s must lie in "
                            "[1, %(depth)s)", probe=probe, depth=depth))


def _regime(m, k, n):
    if m > n:
        return Regime.HOMOGENEOUS_TAIL
    if m > k:
        return Regime.INHOMOGENEOUS_WINDOW
    return Regime.COMPATIBLE_HEAD


def auxiliary_trace(profile, params, k, n, N, start=None):
    """b^{+,k,n,N}_m for m = start..N with b_N = +∞."""
    start = k if start is None else start
    if not 1 <= start <= k < n < N:
        raise DomainError(_("Auxiliary trace needs 1 <= start <= k < n < N, "
                            "got %(start)s, %(k)s, %(n)s, %(N)s",
                            start=start, k=k, n=n, N=N))
    hc = h_c(params)
    d, theta = params.d, params.theta
    values = np.empty(N - start + 1, dtype=float)
    values[-1] = np.inf
    for m in range(N - 1, n - 1, -1):
        values[m - start] = -hc + d * kernel_F(values[m - start + 1], theta)
    fields = profile.fields(params, start, n - 1)
    for m in range(n - 1, start - 1, -1):
        values[m - start] = fields[m - start] + \
            d * kernel_F(values[m - start + 1], theta)
    values.setflags(write=False)
    regimes = tuple(_regime(m, k, n) for m in range(start, N + 1))
    return AuxiliaryFieldTrace(k, n, N, start, values, regimes)


def _probe_verdict(gaps, tolerances):
    last = gaps[-1]
    if last > tolerances.tau_gap:
        return Verdict.TRANSITION
    tail = gaps[-3:]
    shrinking = all(b <= a for a, b in zip(tail, tail[1:]))
    if last < tolerances.tau_uniq and shrinking:
        return Verdict.UNIQUENESS
    return Verdict.INCONCLUSIVE


def _contraction_rate(plus, minus):
    """Per-generation gap contraction toward the root, fitted on gaps
    inside `_CONTRACTION_WINDOW`; None when too few points qualify.
    """
    gaps = np.asarray(plus.values) - np.asarray(minus.values)
    low, high = _CONTRACTION_WINDOW
    mask = (gaps > low) & (gaps < high)
    if np.count_nonzero(mask) < 3:
        return None
    m = np.arange(plus.end_depth, plus.start_depth + 2)[mask]
    slope = np.polyfit(m, np.log(gaps[mask]), 1)[0]
    return float(np.exp(-slope))


def _validate_schedule(probes, depths):
    probes = tuple(sorted(set(int(p) for p in probes)))
    depths = tuple(sorted(set(int(n) for n in depths)))
    if not probes or not depths:
        raise DomainError(_("Probe set and depth schedule must not be "
                            "empty"))
    if probes[0] < 1 or depths[0] <= probes[-1]:
        raise DomainError(_("Every depth must exceed every probe "
                            "generation (probes %(probes)s, depths "
                            "%(depths)s)", probes=probes, depths=depths))
    return probes, depths


def classify(profile, params, probes=DEFAULT_PROBES, depths=DEFAULT_DEPTHS,
             tolerances=None, horizons=DEFAULT_HORIZONS):
    """Gap test between the plus- and minus-seeded runs.

    Transition when the deepest gap exceeds τ_gap at every probe,
    uniqueness when it is below τ_uniq at every probe and did not grow
    over the last two doublings.  Mixed or undecided probes give
    Inconclusive, which a divergent summability condition turns into
    Uniqueness.
    """
    tolerances = tolerances or Tolerances()
    probes, depths = _validate_schedule(probes, depths)
    if not params.supercritical:
        return ClassificationVerdict(
            Verdict.UNIQUENESS, 'subcritical theta', (), (), None,
            {'h_c': None}, params, profile, tolerances, depths, probes)

    hc = h_c(params)
    b_minus, b_plus = seed_pair(params)
    cells = []
    plus = minus = None
    for n in depths:
        plus = iterate_backward(profile, params, n, probes[0], b_plus)
        minus = iterate_backward(profile, params, n, probes[0], b_minus)
        for k0 in probes:
            cells.append(GapCell(k0, n, plus.value_at(k0),
                                 minus.value_at(k0)))

    probe_verdicts = []
    for k0 in probes:
        gaps = [cell.gap for cell in cells if cell.probe == k0]
        probe_verdicts.append((k0, _probe_verdict(gaps, tolerances)))
    found = set(v for k0, v in probe_verdicts)
    gap_verdict = found.pop() if len(found) == 1 else Verdict.INCONCLUSIVE

    condition = None
    analytic = None
    if profile.perturbed:
        family = profile.family
        report = condition_sum(family, depths[-1])
        analytic = analytic_condition(family)
        condition = {
            'n': report.n,
            'S_n': report.S_n,
            'lower': report.lower,
            'upper': report.upper,
            'tail_sum': report.tail_sum,
            'numeric': condition_sweep(family, horizons).verdict.value,
            'analytic': analytic.value,
        }

    verdict, reason = gap_verdict, 'gap test'
    if gap_verdict is Verdict.INCONCLUSIVE and \
            analytic is ConditionVerdict.DIVERGENT:
        verdict, reason = Verdict.UNIQUENESS, 'divergent condition sum'

    agrees = None
    if analytic is not None and gap_verdict is not Verdict.INCONCLUSIVE:
        agrees = (analytic is ConditionVerdict.CONVERGENT) == \
            (gap_verdict is Verdict.TRANSITION)
    min_gap = min(cell.gap for cell in cells)
    diagnostics = {
        'h_c': hc,
        'b_plus': b_plus,
        'b_minus': b_minus,
        'saddle_curvature': saddle_curvature(params),
        'delta_prime': b_plus - plus.value_at(probes[-1]),
        'contraction_rate': _contraction_rate(plus, minus),
        'min_gap': min_gap,
        'ordering_ok': min_gap >= -ORDERING_TOLERANCE,
        'gap_verdict': gap_verdict.value,
        'condition_agrees': agrees,
    }
    return ClassificationVerdict(verdict, reason, tuple(cells),
                                 tuple(probe_verdicts), condition,
                                 diagnostics, params, profile, tolerances,
                                 depths, probes)


def _classify_gamma(task):
    params, gamma, amplitude, probes, depths, tolerances = task
    profile = FieldProfile.critical_minus(PowerLaw(gamma, amplitude))
    return classify(profile, params, probes, depths, tolerances)


def sweep_gamma(params, gammas, amplitude=1.0, probes=DEFAULT_PROBES,
                depths=DEFAULT_DEPTHS, tolerances=None, workers=1):
    """Classify PowerLaw(γ) for every γ; rows come back sorted by γ."""
    gammas = sorted(float(g) for g in gammas)
    if not gammas:
        raise DomainError(_("The gamma grid is empty"))
    tolerances = tolerances or Tolerances()
    tasks = [(params, g, amplitude, tuple(probes), tuple(depths),
              tolerances) for g in gammas]
    return list(zip(gammas, ordered_map(_classify_gamma, tasks, workers)))


class PhaseClassifier(Component):
    """Classification with the tolerances and schedule taken from the
    `[cayley]` section.
    """

    tau_gap = FloatOption('cayley', 'tau_gap', 1e-4,
        """Smallest final gap read as a phase transition.""")

    tau_uniq = FloatOption('cayley', 'tau_uniq', 1e-6,
        """Final gaps below this value (and not growing) are read as
        uniqueness.""")

    depths = ListOption('cayley', 'depths',
                        ','.join(str(n) for n in DEFAULT_DEPTHS),
        doc="""Depth schedule n of the backward runs.""")

    probes = ListOption('cayley', 'probes',
                        ','.join(str(k) for k in DEFAULT_PROBES),
        doc="""Probe generations k0 at which gaps are measured.""")

    workers = IntOption('cayley', 'workers', 1,
        """Worker processes used by gamma sweeps.""")

    def tolerances(self, tau_gap=None, tau_uniq=None):
        return Tolerances(self.tau_gap if tau_gap is None else tau_gap,
                          self.tau_uniq if tau_uniq is None else tau_uniq)

    def schedule(self, probes=None, depths=None):
        return (probes or [int(k) for k in self.probes],
                depths or [int(n) for n in self.depths])

    def classify(self, profile, params, probes=None, depths=None,
                 tolerances=None):
        probes, depths = self.schedule(probes, depths)
        result = classify(profile, params, probes, depths,
                          tolerances or self.tolerances())
        self.log.info("Classified %r at d=%s theta=%s: %s (%s)",
                      profile.describe(), params.d, params.theta,
                      result.verdict.value, result.reason)
        if result.diagnostics.get('ordering_ok') is False:
            self.log.error("Plus-seeded run fell below the minus-seeded run "
                           "(min gap %r)", result.diagnostics['min_gap'])
        if result.diagnostics.get('condition_agrees') is False:
            self.log.warning("Gap verdict %s disagrees with the summability "
                             "condition for %r", result.verdict.value,
                             profile.describe())
        return result

    def sweep(self, params, gammas, amplitude=1.0, probes=None, depths=None,
              tolerances=None, workers=None):
        probes, depths = self.schedule(probes, depths)
        workers = self.workers if workers is None else workers
        self.log.debug("Sweeping gamma over %r with %s worker(s)", gammas,
                       workers)
        rows = sweep_gamma(params, gammas, amplitude, probes, depths,
                           tolerances or self.tolerances(), workers)
        for gamma, result in rows:
            self.log.info("gamma=%s: %s", gamma, result.verdict.value)
        return rows
