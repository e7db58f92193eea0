# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Exact finite-volume Gibbs measures by exhaustive enumeration.

Configuration index i encodes the spin of vertex v (breadth-first order)
in bit v, spin = 2·bit − 1.  The last generation therefore occupies the
high-order bits, which makes summing it out a reshape.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp
from trac.config import IntOption
from trac.core import Component

from cayleyising.api import _, DomainError, SizeError
from cayleyising.criticality import h_c
from cayleyising.model import TreeGeometry, make_params
from cayleyising.recursion import kernel_F, psi
from cayleyising.util import ordered_map

__all__ = ['VERTEX_CAP', 'RESIDUAL_LIMIT', 'FiniteGibbsTable',
           'CompatibilityReport', 'enumerate_gibbs', 'verify_compatibility',
           'root_magnetization', 'extract_boundary_field',
           'verification_grid', 'ExactOracle']

VERTEX_CAP = 24
RESIDUAL_LIMIT = 1e-11
CHUNK_BITS = 16


def _vertex_fields(geometry, fields, boundary, root_field):
    values = np.empty(geometry.total_vertices(), dtype=float)
    values[0] = root_field
    for k in range(1, geometry.depth):
        values[geometry.generation_slice(k)] = fields[k - 1]
    values[geometry.generation_slice(geometry.depth)] = boundary
    return values


def _log_weight_chunk(task):
    parents, vertex_fields, coupling, start, stop = task
    size = parents.size
    index = np.arange(start, stop, dtype=np.int64)
    spins = 2.0 * ((index[:, None] >> np.arange(size, dtype=np.int64)) & 1) \
        - 1.0
    bonds = spins[:, 1:] * spins[:, parents[1:]]
    return coupling * bonds.sum(axis=1) + spins @ vertex_fields


@dataclass(frozen=True, eq=False)
class FiniteGibbsTable(object):
    """Log Boltzmann weights of every configuration on V_n, with the
    fields h_1..h_{n-1}, boundary field b_n on W_n and the root field.
    """

    geometry: TreeGeometry
    params: object
    fields: tuple
    boundary: float
    root_field: float
    log_weights: np.ndarray
    log_z: float

    @property
    def size(self):
        return self.geometry.total_vertices()

    def probabilities(self):
        return np.exp(self.log_weights - self.log_z)

    def _cube(self):
        return self.log_weights.reshape((2,) * self.size)

    def _axis(self, vertex):
        return self.size - 1 - vertex

    def site_log_marginal(self, vertex):
        """log P(σ_v = −1), log P(σ_v = +1)."""
        axis = self._axis(vertex)
        others = tuple(a for a in range(self.size) if a != axis)
        if not others:
            return self.log_weights - self.log_z
        return logsumexp(self._cube(), axis=others) - self.log_z

    def pair_log_marginal(self, u, v):
        """2x2 array of log P(σ_u, σ_v) indexed by the spin bits."""
        au, av = self._axis(u), self._axis(v)
        others = tuple(a for a in range(self.size) if a not in (au, av))
        joint = logsumexp(self._cube(), axis=others) if others \
            else self._cube()
        if au > av:
            joint = joint.T
        return joint - self.log_z

    def magnetization(self, vertex=0):
        minus, plus = np.exp(self.site_log_marginal(vertex))
        return float(plus - minus)

    def outer_log_marginal(self):
        """log μ_n summed over the last generation, indexed by the
        configuration of V_{n-1}.
        """
        leaves = self.geometry.generation_size(self.geometry.depth)
        inner = self.size - leaves
        grid = self.log_weights.reshape(2 ** leaves, 2 ** inner)
        return logsumexp(grid, axis=0) - self.log_z


def enumerate_gibbs(geometry, params, fields, boundary, root_field=0.0,
                    vertex_cap=VERTEX_CAP, workers=1):
    """Exact table by full enumeration, split into contiguous index
    chunks that can be farmed out to `workers` processes.
    """
    if vertex_cap > VERTEX_CAP:
        raise DomainError(_("The vertex cap can only be lowered below "
                            "%(cap)s", cap=VERTEX_CAP))
    size = geometry.total_vertices()
    if size > vertex_cap:
        raise SizeError(_("%(size)s vertices exceed the enumeration cap "
                          "of %(cap)s (d=%(d)s, depth=%(depth)s)", size=size,
                          cap=vertex_cap, d=geometry.d,
                          depth=geometry.depth))
    if geometry.d != params.d:
        raise DomainError(_("Geometry order %(g)s differs from model order "
                            "%(d)s", g=geometry.d, d=params.d))
    fields = tuple(float(h) for h in fields)
    if len(fields) != geometry.depth - 1:
        raise DomainError(_("Depth %(depth)s needs %(need)s generation "
                            "fields, got %(got)s", depth=geometry.depth,
                            need=geometry.depth - 1, got=len(fields)))
    parents = geometry.parents()
    vertex_fields = _vertex_fields(geometry, fields, boundary, root_field)
    coupling = params.beta * params.J
    total = 2 ** size
    step = 2 ** min(CHUNK_BITS, size)
    tasks = [(parents, vertex_fields, coupling, start, start + step)
             for start in range(0, total, step)]
    log_weights = np.concatenate(ordered_map(_log_weight_chunk, tasks,
                                             workers))
    log_weights.setflags(write=False)
    return FiniteGibbsTable(geometry, params, fields, float(boundary),
                            float(root_field), log_weights,
                            float(logsumexp(log_weights)))


@dataclass(frozen=True)
class CompatibilityReport(object):
    d: int
    depth: int
    beta: float
    boundary: float
    previous_boundary: float
    max_residual: float
    log_partition_ratio: float
    log_partition_ratio_closed: float
    label: str = ''

    @property
    def passed(self):
        return self.max_residual <= RESIDUAL_LIMIT


def _log_normaliser(params, boundary):
    """log a_n with (Σ_u e^{βJσu + b_n u})^d = a_n e^{σ d F(b_n)}."""
    K = params.beta * params.J
    return 0.5 * params.d * (np.logaddexp(boundary + K, -boundary - K) +
                             np.logaddexp(boundary - K, K - boundary))


def verify_compatibility(geometry, params, fields, boundary, root_field=0.0,
                         previous_boundary=None, vertex_cap=VERTEX_CAP,
                         workers=1, label=''):
    """Compare μ_n summed over W_n with μ_{n-1} built on
    b_{n-1} = h_{n-1} + d·F(b_n, θ).
    """
    n = geometry.depth
    if n < 2:
        raise DomainError(_("Compatibility needs depth >= 2, got %(n)s",
                            n=n))
    fields = tuple(float(h) for h in fields)
    if previous_boundary is None:
        previous_boundary = psi(boundary, fields[n - 2], params)
    outer = enumerate_gibbs(geometry, params, fields, boundary, root_field,
                            vertex_cap, workers)
    inner = enumerate_gibbs(TreeGeometry(geometry.d, n - 1), params,
                            fields[:n - 2], previous_boundary, root_field,
                            vertex_cap, workers)
    marginal = np.exp(outer.outer_log_marginal())
    reference = inner.probabilities()
    residual = float(np.max(np.abs(marginal - reference)))
    closed = geometry.generation_size(n - 1) * \
        _log_normaliser(params, boundary)
    return CompatibilityReport(params.d, n, params.beta, float(boundary),
                               float(previous_boundary), residual,
                               outer.log_z - inner.log_z, float(closed),
                               label)


def root_magnetization(geometry, params, fields, boundary, root_field=0.0,
                       method='recursion', vertex_cap=VERTEX_CAP):
    """⟨σ_root⟩ either from tanh(h_root + (d+1)·F(b_1, θ)) with b_1 from
    the recursion, or by enumeration.
    """
    fields = tuple(float(h) for h in fields)
    if method == 'enumeration':
        return enumerate_gibbs(geometry, params, fields, boundary,
                               root_field, vertex_cap).magnetization(0)
    if method != 'recursion':
        raise DomainError(_("Unknown method %(method)r", method=method))
    if len(fields) != geometry.depth - 1:
        raise DomainError(_("Depth %(depth)s needs %(need)s generation "
                            "fields", depth=geometry.depth,
                            need=geometry.depth - 1))
    b = float(boundary)
    for h in reversed(fields):
        b = psi(b, h, params)
    return float(np.tanh(root_field +
                         (params.d + 1) * kernel_F(b, params.theta)))


def extract_boundary_field(table, k):
    """b_k from the enumerated parent/child law: the conditional log odds
    ½log P(σ_y=+|σ_p=s)/P(σ_y=−|σ_p=s) equal βJs + b_k.
    """
    geometry = table.geometry
    if not 1 <= k <= geometry.depth:
        raise DomainError(_("Generation %(k)s outside 1..%(depth)s", k=k,
                            depth=geometry.depth))
    child = geometry.generation_offset(k)
    parent = int(geometry.parents()[child])
    joint = table.pair_log_marginal(parent, child)
    odds = 0.5 * (joint[:, 1] - joint[:, 0])
    return float(0.5 * (odds[0] + odds[1]))


GRID_D = (2, 3)
GRID_DEPTHS = (2, 3)
GRID_BETAS = (0.3, 0.6, 1.2)
GRID_BOUNDARIES = (-1.0, 0.0, 0.5, 2.0)
GRID_HOMOGENEOUS_FIELD = 0.25


def _grid_fields(params, depth, kind):
    if kind == 'homogeneous':
        return [GRID_HOMOGENEOUS_FIELD] * (depth - 1)
    hc = h_c(params) if params.supercritical else 0.0
    return [-hc - k ** -2.0 for k in range(1, depth)]


def verification_grid(vertex_cap=VERTEX_CAP, workers=1, d_values=GRID_D,
                      depths=GRID_DEPTHS, betas=GRID_BETAS,
                      boundaries=GRID_BOUNDARIES):
    """Compatibility reports over the acceptance grid; geometries above
    the vertex cap are skipped.
    """
    reports = []
    for d in d_values:
        for depth in depths:
            geometry = TreeGeometry(d, depth)
            if geometry.total_vertices() > vertex_cap:
                continue
            for beta in betas:
                params = make_params(d, 1.0, beta)
                for kind in ('homogeneous', 'gamma2'):
                    fields = _grid_fields(params, depth, kind)
                    for b in boundaries:
                        label = 'd=%d depth=%d beta=%g b=%g %s' % (
                            d, depth, beta, b, kind)
                        reports.append(verify_compatibility(
                            geometry, params, fields, b,
                            vertex_cap=vertex_cap, workers=workers,
                            label=label))
    return reports


class ExactOracle(Component):
    """Enumeration checks with the configured vertex cap and workers."""

    vertex_cap = IntOption('oracle', 'vertex_cap', VERTEX_CAP,
        """Largest tree enumerated exactly; may only be lowered.""")

    workers = IntOption('oracle', 'workers', 1,
        """Worker processes used for enumeration chunks.""")

    def verify(self, geometry, params, fields, boundary, root_field=0.0,
               previous_boundary=None):
        report = verify_compatibility(geometry, params, fields, boundary,
                                      root_field, previous_boundary,
                                      self.vertex_cap, self.workers)
        self._log_report(report)
        return report

    def verify_grid(self):
        reports = verification_grid(self.vertex_cap, self.workers)
        for report in reports:
            self._log_report(report)
        self.log.info("Verified %d compatibility cases, %d failed",
                      len(reports), len([r for r in reports
                                         if not r.passed]))
        return reports

    def magnetization(self, geometry, params, fields, boundary,
                      root_field=0.0):
        """Recursion value, cross-checked by enumeration within the cap."""
        value = root_magnetization(geometry, params, fields, boundary,
                                   root_field)
        if geometry.total_vertices() <= self.vertex_cap:
            exact = root_magnetization(geometry, params, fields, boundary,
                                       root_field, 'enumeration',
                                       self.vertex_cap)
            if abs(exact - value) > 1e-10:
                self.log.error("Root magnetization mismatch: recursion %r, "
                               "enumeration %r", value, exact)
        return value

    def _log_report(self, report):
        if report.passed:
            self.log.debug("Compatibility %s: residual %.3g",
                           report.label or report.depth,
                           report.max_residual)
        else:
            self.log.error("Compatibility %s failed: residual %.3g",
                           report.label or report.depth,
                           report.max_residual)
