# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Single-edge kernel F(x, θ) = arctanh(θ tanh x), the generation map
ψ(x) = h + d·F(x, θ) and leaf-to-root iteration of the boundary-field
recursion b_{m-1} = h_{m-1} + d·F(b_m, θ).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from cayleyising.api import _, DomainError
from cayleyising.model import FieldProfile, ModelParams

__all__ = ['Extended', 'kernel_F', 'kernel_F_prime', 'kernel_F_second',
           'psi', 'psi_prime', 'psi_second', 'IterationTrace',
           'iterate_backward']

RESIDUAL_TOLERANCE = 1e-12


class Extended(Enum):
    """Boundary values ±∞; one kernel application maps them to the finite
    value ±arctanh(θ).
    """

    PLUS_INFINITY = 1
    MINUS_INFINITY = -1

    def __float__(self):
        return self.value * np.inf

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if value in ('inf', '+inf', 'plus-inf'):
            return cls.PLUS_INFINITY
        if value in ('-inf', 'minus-inf'):
            return cls.MINUS_INFINITY
        return float(value)


def _as_real(x):
    if isinstance(x, Extended):
        return float(x)
    return x


def _check_theta(theta):
    if not 0 < theta < 1:
        raise DomainError(_("theta must lie in (0, 1), got %(theta)s",
                            theta=theta))


def _scalar(result, x):
    return float(result) if np.ndim(x) == 0 else result


def kernel_F(x, theta):
    """F(x, θ) = arctanh(θ tanh x), evaluated as ½(log1p(u) − log1p(−u))
    with u = θ tanh x.  Accepts scalars, arrays and `Extended` values.
    """
    _check_theta(theta)
    x = _as_real(x)
    u = theta * np.tanh(x)
    assert np.all(np.abs(u) < 1), "kernel argument left (-1, 1)"
    return _scalar(0.5 * (np.log1p(u) - np.log1p(-u)), x)


def kernel_F_prime(x, theta):
    """F′ = θ(1 − t²)/(1 − θ²t²), t = tanh x."""
    _check_theta(theta)
    x = _as_real(x)
    t = np.tanh(x)
    return _scalar(theta * (1 - t * t) / (1 - theta * theta * t * t), x)


def kernel_F_second(x, theta):
    """F″ = −2θ(1 − θ²)·t(1 − t²)/(1 − θ²t²)², t = tanh x."""
    _check_theta(theta)
    x = _as_real(x)
    t = np.tanh(x)
    denom = 1 - theta * theta * t * t
    return _scalar(-2 * theta * (1 - theta * theta) * t * (1 - t * t) /
                   (denom * denom), x)


def psi(x, h, params):
    return h + params.d * kernel_F(x, params.theta)


def psi_prime(x, params):
    return params.d * kernel_F_prime(x, params.theta)


def psi_second(x, params):
    return params.d * kernel_F_second(x, params.theta)


@dataclass(frozen=True, eq=False)
class IterationTrace(object):
    """Boundary fields b_k..b_{n+1} of one backward run; b_{n+1} is the
    seed (stored as ±inf for `Extended` seeds).
    """

    start_depth: int
    end_depth: int
    seed: object
    values: np.ndarray
    params: ModelParams
    profile: FieldProfile

    def value_at(self, m):
        if not self.end_depth <= m <= self.start_depth + 1:
            raise IndexError("generation %d outside trace %d..%d"
                             % (m, self.end_depth, self.start_depth + 1))
        return float(self.values[m - self.end_depth])

    def max_residual(self):
        """Largest relative violation of b_{m-1} = h_{m-1} + d·F(b_m)."""
        fields = self.profile.fields(self.params, self.end_depth,
                                     self.start_depth)
        predicted = fields + self.params.d * \
            kernel_F(self.values[1:], self.params.theta)
        actual = self.values[:-1]
        scale = np.maximum(1.0, np.abs(actual))
        return float(np.max(np.abs(predicted - actual) / scale))


def iterate_backward(profile, params, from_depth, to_depth, seed):
    """Run b_{m-1} = ψ̃_{m-1}(b_m) from b_{n+1} = seed down to b_k."""
    n, k = from_depth, to_depth
    if k < 1 or k > n:
        raise DomainError(_("Backward iteration needs 1 <= k <= n, got "
                            "k=%(k)s, n=%(n)s", k=k, n=n))
    fields = profile.fields(params, k, n)
    values = np.empty(n - k + 2, dtype=float)
    values[-1] = _as_real(seed)
    d, theta = params.d, params.theta
    for i in range(n - k, -1, -1):
        values[i] = fields[i] + d * kernel_F(values[i + 1], theta)
    values.setflags(write=False)
    return IterationTrace(n, k, seed, values, params, profile)
