# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

# NOTE: generations are counted from the root.  The root is generation 0 and
# is part of every finite volume; it has d+1 children, every other vertex
# has d.  Fields h_n are defined for n >= 1 only; the root carries its own
# field, 0 unless the caller says otherwise.

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from cayleyising.api import _, DomainError, MonotonicityError

__all__ = ['ModelParams', 'make_params', 'params_from_theta',
           'PowerLaw', 'Geometric', 'CustomList', 'ProfileKind',
           'FieldProfile', 'field_at', 'field_prefix', 'TreeGeometry']


@dataclass(frozen=True)
class ModelParams(object):
    """Tree order `d`, coupling `J`, inverse temperature `beta` and the
    derived `theta = tanh(beta * J)`.
    """

    d: int
    J: float
    beta: float
    theta: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(_("Tree order d must be an integer >= 2, "
                                "got %(d)s", d=self.d))
        if not self.J > 0:
            raise DomainError(_("Coupling J must be positive, got %(J)s",
                                J=self.J))
        if not self.beta > 0:
            raise DomainError(_("Inverse temperature beta must be positive, "
                                "got %(beta)s", beta=self.beta))
        if not 0 < self.theta < 1:
            raise DomainError(_("theta = tanh(beta J) must lie in (0, 1), "
                                "got %(theta)s", theta=self.theta))
        if not np.isclose(np.tanh(self.beta * self.J), self.theta,
                          rtol=1e-12, atol=0):
            raise DomainError(_("theta %(theta)s is inconsistent with "
                                "beta=%(beta)s, J=%(J)s", theta=self.theta,
                                beta=self.beta, J=self.J))

    @property
    def supercritical(self):
        """True when d·θ > 1, i.e. below the critical temperature."""
        return self.d * self.theta > 1


def _tree_order(d):
    try:
        order = int(d)
    except (TypeError, ValueError, OverflowError):
        order = None
    if order is None or order != d or order < 2:
        raise DomainError(_("Tree order d must be an integer >= 2, "
                            "got %(d)s", d=d))
    return order


def make_params(d, J, beta):
    if not J > 0 or not beta > 0:
        raise DomainError(_("J and beta must be positive, got J=%(J)s, "
                            "beta=%(beta)s", J=J, beta=beta))
    return ModelParams(_tree_order(d), float(J), float(beta),
                       float(np.tanh(beta * J)))


def params_from_theta(d, J, theta):
    """Build parameters from θ directly; β is back-solved from J."""
    if not 0 < theta < 1:
        raise DomainError(_("theta must lie in (0, 1), got %(theta)s",
                            theta=theta))
    if not J > 0:
        raise DomainError(_("Coupling J must be positive, got %(J)s", J=J))
    return ModelParams(_tree_order(d), float(J),
                       float(np.arctanh(theta) / J),
                       float(theta))


# Perturbation families.  prefix(n) returns ε_1..ε_n as an array.

@dataclass(frozen=True)
class PowerLaw(object):
    """ε_n = amplitude · n^(−γ)."""

    gamma: float
    amplitude: float = 1.0

    name = 'power'

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError(_("PowerLaw needs gamma > 0, got %(gamma)s",
                                gamma=self.gamma))
        if not self.amplitude > 0:
            raise DomainError(_("PowerLaw needs a positive amplitude, got "
                                "%(a)s", a=self.amplitude))

    def prefix(self, n):
        return self.amplitude * \
            np.arange(1, n + 1, dtype=float) ** (-self.gamma)

    def value(self, n):
        return float(self.amplitude * float(n) ** (-self.gamma))

    def describe(self):
        return {'family': self.name, 'gamma': self.gamma,
                'amplitude': self.amplitude}


@dataclass(frozen=True)
class Geometric(object):
    """ε_n = amplitude · ratio^(n−1)."""

    ratio: float
    amplitude: float

    name = 'geometric'

    def __post_init__(self):
        if not 0 < self.ratio < 1:
            raise DomainError(_("Geometric needs 0 < r < 1, got %(r)s",
                                r=self.ratio))
        if not self.amplitude > 0:
            raise DomainError(_("Geometric needs a > 0, got %(a)s",
                                a=self.amplitude))

    def prefix(self, n):
        return self.amplitude * self.ratio ** np.arange(n, dtype=float)

    def value(self, n):
        return float(self.amplitude * self.ratio ** (n - 1))

    def describe(self):
        return {'family': self.name, 'ratio': self.ratio,
                'amplitude': self.amplitude}


@dataclass(frozen=True)
class CustomList(object):
    """Explicit ε values; ε_n = 0 past the end of the list.

    Zeros are allowed, so an all-zero list is the pure critical field.
    """

    values: tuple = ()

    name = 'custom'

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, 'values', values)
        arr = np.asarray(values, dtype=float)
        if arr.size and (np.any(arr < 0) or np.any(np.diff(arr) > 0)):
            raise MonotonicityError(_("Epsilon values must be non-negative "
                                      "and non-increasing"))

    def prefix(self, n):
        out = np.zeros(n, dtype=float)
        m = min(n, len(self.values))
        out[:m] = self.values[:m]
        return out

    def value(self, n):
        return self.values[n - 1] if n <= len(self.values) else 0.0

    def describe(self):
        return {'family': self.name, 'values': list(self.values)}


class ProfileKind(Enum):
    HOMOGENEOUS = 'homogeneous'
    CRITICAL_MINUS = 'critical-minus'
    EXPLICIT = 'explicit'


@dataclass(frozen=True)
class FieldProfile(object):
    """Generation-indexed external fields h_1, h_2, ...

    Use the `homogeneous`, `critical_minus` and `explicit` constructors.
    """

    kind: ProfileKind
    h: float = 0.0
    family: object = None
    values: tuple = field(default=())

    @classmethod
    def homogeneous(cls, h):
        return cls(ProfileKind.HOMOGENEOUS, h=float(h))

    @classmethod
    def critical_minus(cls, family):
        """h_n = −h_c − ε_n."""
        return cls(ProfileKind.CRITICAL_MINUS, family=family)

    @classmethod
    def explicit(cls, values):
        return cls(ProfileKind.EXPLICIT,
                   values=tuple(float(v) for v in values))

    @property
    def perturbed(self):
        return self.kind is ProfileKind.CRITICAL_MINUS

    def field_at(self, params, n):
        if n < 1:
            raise DomainError(_("Fields are defined for generations n >= 1, "
                                "got %(n)s", n=n))
        if self.kind is ProfileKind.HOMOGENEOUS:
            return self.h
        if self.kind is ProfileKind.EXPLICIT:
            if n > len(self.values):
                raise IndexError("generation %d beyond explicit field list "
                                 "of length %d" % (n, len(self.values)))
            return self.values[n - 1]
        from cayleyising.criticality import h_c
        return -h_c(params) - self.family.value(n)

    def fields(self, params, start, stop):
        """h_start..h_stop inclusive as an array."""
        if start < 1 or stop < start - 1:
            raise DomainError(_("Invalid generation range %(start)s.."
                                "%(stop)s", start=start, stop=stop))
        count = stop - start + 1
        if self.kind is ProfileKind.HOMOGENEOUS:
            return np.full(count, self.h, dtype=float)
        if self.kind is ProfileKind.EXPLICIT:
            if stop > len(self.values):
                raise IndexError("generation %d beyond explicit field list "
                                 "of length %d" % (stop, len(self.values)))
            return np.asarray(self.values[start - 1:stop], dtype=float)
        from cayleyising.criticality import h_c
        return -h_c(params) - self.family.prefix(stop)[start - 1:]

    def describe(self):
        info = {'kind': self.kind.value}
        if self.kind is ProfileKind.HOMOGENEOUS:
            info['h'] = self.h
        elif self.kind is ProfileKind.EXPLICIT:
            info['values'] = list(self.values)
        else:
            info.update(self.family.describe())
        return info


def field_at(profile, params, n):
    return profile.field_at(params, n)


def field_prefix(profile, params, start, stop):
    return profile.fields(params, start, stop)


@dataclass(frozen=True)
class TreeGeometry(object):
    """Finite Cayley tree of order `d` cut at generation `depth`.

    Vertices are numbered breadth first, root first; the children of a
    vertex are consecutive.
    """

    d: int
    depth: int
    root_included: bool = True

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(_("Tree order d must be an integer >= 2, "
                                "got %(d)s", d=self.d))
        if int(self.depth) != self.depth or self.depth < 1:
            raise DomainError(_("Depth must be an integer >= 1, got "
                                "%(depth)s", depth=self.depth))

    def generation_size(self, k):
        if k == 0:
            return 1
        return (self.d + 1) * self.d ** (k - 1)

    @property
    def generation_sizes(self):
        return tuple(self.generation_size(k)
                     for k in range(self.depth + 1))

    def total_vertices(self, depth=None):
        n = self.depth if depth is None else depth
        total = 1 + (self.d + 1) * (self.d ** n - 1) // (self.d - 1)
        return total if self.root_included else total - 1

    def generation_offset(self, k):
        """Index of the first vertex of generation k, root counted."""
        if k == 0:
            return 0
        return 1 + (self.d + 1) * (self.d ** (k - 1) - 1) // (self.d - 1)

    def generation_slice(self, k):
        start = self.generation_offset(k)
        return slice(start, start + self.generation_size(k))

    def parents(self):
        """Parent index per vertex (−1 for the root)."""
        if not self.root_included:
            raise DomainError(_("Adjacency is only defined for trees that "
                                "include the root"))
        parents = np.full(self.total_vertices(), -1, dtype=np.int64)
        parents[self.generation_slice(1)] = 0
        for k in range(2, self.depth + 1):
            local = np.arange(self.generation_size(k))
            parents[self.generation_slice(k)] = \
                self.generation_offset(k - 1) + local // self.d
        return parents
