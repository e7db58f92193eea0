# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Critical temperature, critical field and the fixed points of the
homogeneous map ψ(b) = h + d·F(b, θ).

For d·θ > 1 the map ψ(b) − b has two critical points ±x* where ψ′ = 1,
with tanh²x* = (dθ − 1)/(θ(d − θ)).  The critical field is the height of
the tangency, h_c = d·F(x*, θ) − x*; at h = −h_c the upper fixed point is
the double root +x*.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import bisect, brentq

from cayleyising.api import _, CaseError, CriticalityError, DomainError
from cayleyising.model import ModelParams
from cayleyising.recursion import kernel_F, psi, psi_prime, psi_second

__all__ = ['beta_c', 'saddle_point', 'h_c', 'h_c_numeric',
           'saddle_curvature', 'Stability', 'CaseLabel', 'FixedPoint',
           'FixedPointReport', 'fixed_points', 'extremal_pair',
           'expected_case']

GRID_CELLS = 4096
ROOT_XTOL = 1e-12
TANGENCY_BAND = 1e-9
SADDLE_BAND = 1e-6
STABILITY_MARGIN = 1e-9
_SUBCRITICAL_SLACK = 1e-14


def beta_c(d, J=1.0):
    """Inverse critical temperature, tanh(β_c J) = 1/d."""
    if int(d) != d or d < 2:
        raise DomainError(_("Tree order d must be an integer >= 2, got "
                            "%(d)s", d=d))
    if not J > 0:
        raise DomainError(_("Coupling J must be positive, got %(J)s", J=J))
    return float(np.arctanh(1.0 / d) / J)


def _tangency_t2(params):
    d, theta = params.d, params.theta
    return (d * theta - 1) / (theta * (d - theta))


def saddle_point(params):
    """x* = arctanh(t*), the positive point where ψ′ = 1."""
    if not params.supercritical:
        raise CriticalityError(_("No saddle node for theta=%(theta)s <= "
                                 "1/d (d=%(d)s)", theta=params.theta,
                                 d=params.d))
    return float(np.arctanh(np.sqrt(_tangency_t2(params))))


def h_c(params):
    """Critical field from the closed-form tangency; 0 at θ = 1/d."""
    excess = params.d * params.theta - 1
    if excess < -_SUBCRITICAL_SLACK:
        raise CriticalityError(_("Critical field undefined for "
                                 "theta=%(theta)s < 1/d (d=%(d)s)",
                                 theta=params.theta, d=params.d))
    if excess <= _SUBCRITICAL_SLACK:
        return 0.0
    x = saddle_point(params)
    return float(params.d * kernel_F(x, params.theta) - x)


def h_c_numeric(params):
    """Critical field from a numerical solve of ψ′(x) = 1 followed by
    h = d·F(x) − x.  Independent of the closed form.
    """
    if not params.supercritical:
        raise CriticalityError(_("Critical field undefined for "
                                 "theta=%(theta)s <= 1/d (d=%(d)s)",
                                 theta=params.theta, d=params.d))
    x = brentq(lambda x: psi_prime(x, params) - 1.0, 0.0, 50.0,
               xtol=1e-15, maxiter=500)
    return float(params.d * kernel_F(x, params.theta) - x)


def saddle_curvature(params):
    """c = ½|ψ″(b⁺)| at the saddle node."""
    return 0.5 * abs(psi_second(saddle_point(params), params))


class Stability(Enum):
    ATTRACTING = 'attracting'
    SADDLE_NODE = 'saddle-node'
    REPELLING = 'repelling'

    @classmethod
    def of(cls, slope):
        if abs(slope - 1) <= SADDLE_BAND:
            return cls.SADDLE_NODE
        if slope < 1 - STABILITY_MARGIN:
            return cls.ATTRACTING
        if slope > 1 + STABILITY_MARGIN:
            return cls.REPELLING
        return cls.SADDLE_NODE


class CaseLabel(Enum):
    ONE = 1
    TWO = 2
    THREE = 3


_ROLES = {1: ('unique',), 2: ('minus', 'plus'),
          3: ('minus', 'free', 'plus')}


@dataclass(frozen=True)
class FixedPoint(object):
    """One root of ψ(b) = b.  `residual` is |ψ(b) − b|; for the closed-form
    double root inside the tangency band it is ||h| − h_c|, up to
    `TANGENCY_BAND`.
    """

    value: float
    psi_prime: float
    stability: Stability
    role: str
    residual: float = 0.0


@dataclass(frozen=True)
class FixedPointReport(object):
    """Fixed points of ψ at field `h`, sorted ascending."""

    h: float
    params: ModelParams
    points: tuple
    case_label: CaseLabel
    analytic_case: CaseLabel

    @property
    def consistent(self):
        return self.case_label is self.analytic_case

    @property
    def b_minus(self):
        return self.points[0].value

    @property
    def b_plus(self):
        return self.points[-1].value

    @property
    def b_sharp(self):
        """Free-boundary fixed point; None unless there are three."""
        if len(self.points) == 3:
            return self.points[1].value
        return None

    @property
    def max_residual(self):
        return max(point.residual for point in self.points)

    def saddle(self):
        for point in self.points:
            if point.stability is Stability.SADDLE_NODE:
                return point
        return None


def _in_tangency_band(h, hc):
    return abs(abs(h) - hc) <= TANGENCY_BAND * max(1.0, hc)


def expected_case(h, params):
    """Number of fixed points the three-case analysis predicts."""
    if not params.supercritical:
        return CaseLabel.ONE
    hc = h_c(params)
    if _in_tangency_band(h, hc):
        return CaseLabel.TWO
    return CaseLabel.THREE if abs(h) < hc else CaseLabel.ONE


def fixed_points(h, params, cells=GRID_CELLS):
    """All solutions of ψ(b) = b.

    Sign changes of ψ(b) − b are bracketed on a uniform grid over
    [−R, R], R = |h| + d·arctanh θ + 1, with ±x* added as nodes so that
    every cell is monotone, then polished by bisection.  Inside the
    tangency band the double root is the closed-form ±x*; its residual
    is then ||h| − h_c| rather than the bisection tolerance.
    """
    h = float(h)
    bound = abs(h) + params.d * np.arctanh(params.theta) + 1.0

    def gap(b):
        return psi(b, h, params) - b

    analytic = expected_case(h, params)
    roots = []
    if analytic is CaseLabel.TWO:
        x = saddle_point(params)
        if h < 0:
            roots = [x, bisect(gap, -bound, -x, xtol=ROOT_XTOL)]
        else:
            roots = [-x, bisect(gap, x, bound, xtol=ROOT_XTOL)]
    else:
        nodes = np.linspace(-bound, bound, cells + 1)
        if params.supercritical:
            x = saddle_point(params)
            nodes = np.unique(np.concatenate([nodes, [-x, x]]))
        values = gap(nodes)
        roots.extend(nodes[values == 0].tolist())
        for i in np.nonzero(values[:-1] * values[1:] < 0)[0]:
            roots.append(bisect(gap, nodes[i], nodes[i + 1],
                                xtol=ROOT_XTOL))
    roots = sorted(float(r) for r in roots)
    roles = _ROLES.get(len(roots), ('root',) * len(roots))
    points = []
    for value, role in zip(roots, roles):
        slope = float(psi_prime(value, params))
        points.append(FixedPoint(value, slope, Stability.of(slope), role,
                                 abs(float(gap(value)))))
    return FixedPointReport(h, params, tuple(points),
                            CaseLabel(len(points)), analytic)


def extremal_pair(h, params):
    """(b⁻, b⁺), the outermost fixed points."""
    report = fixed_points(h, params)
    if len(report.points) < 2:
        raise CaseError(_("Only %(count)s fixed point at h=%(h)s; an "
                          "extremal pair needs two", count=len(report.points),
                          h=h))
    return report.b_minus, report.b_plus
