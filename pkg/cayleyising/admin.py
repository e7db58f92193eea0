# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""`critical`, `classify`, `sweep-gamma`, `iterate`, `condition-sum` and
`verify` as admin commands.  They run under `trac-admin` when the plugin
is enabled and under the `cayley-ising` console script.

Every command returns its exit code: 0 on success, 1 when an exact
verification fails.  Usage and domain errors are raised and mapped to
exit code 2 by the caller.
"""

import argparse
import io

from trac.admin.api import AdminCommandError, IAdminCommandProvider
from trac.config import ChoiceOption
from trac.core import Component, implements
from trac.util.text import printout

from cayleyising.api import _, CriticalityError, SizeError
from cayleyising.classifier import PhaseClassifier, seed_pair
from cayleyising.criticality import beta_c, expected_case, fixed_points, \
                                    h_c, saddle_curvature
from cayleyising.formatters import Report, ReportWriter, RunConfig
from cayleyising.model import CustomList, FieldProfile, Geometric, \
                              PowerLaw, TreeGeometry, make_params, \
                              params_from_theta
from cayleyising.oracle import ExactOracle
from cayleyising.perturbation import ConditionClassifier, \
                                     analytic_condition, \
                                     strong_condition_sum
from cayleyising.recursion import Extended, iterate_backward
from cayleyising.util import parse_float_list, parse_int_list, \
                             read_epsilon_file

# Flags whose value may legitimately start with '-'.
_SIGNED_FLAGS = ('--h', '--seed-b', '--boundary', '--b2', '--root-field')


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise AdminCommandError(message, show_usage=True, cmd=self.prog)

    def exit(self, status=0, message=None):
        raise AdminCommandError(message or '', show_usage=True,
                                cmd=self.prog)


def join_signed_values(args):
    """Rewrite `--h -auto` as `--h=-auto` so argparse keeps the value."""
    args = list(args)
    out = []
    i = 0
    while i < len(args):
        arg = args[i]
        if arg in _SIGNED_FLAGS and i + 1 < len(args) and \
                args[i + 1].startswith('-') and \
                not args[i + 1].startswith('--'):
            out.append('%s=%s' % (arg, args[i + 1]))
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


class CayleyAdmin(Component):
    """Command line front end."""

    implements(IAdminCommandProvider)

    default_format = ChoiceOption('cayley', 'format', ['json', 'csv'],
        """Output format used when `--format` is not given.""")

    # IAdminCommandProvider methods

    def get_admin_commands(self):
        yield ('critical', '--d D (--beta B|--theta T) [--h H|auto|-auto]',
               """Critical temperature, critical field and fixed points""",
               None, self._do_critical)
        yield ('classify', '--d D (--beta B|--theta T) (--gamma G|'
               '--geom R A|--epsilon-file PATH) [options]',
               """Phase transition or uniqueness for h_n = -h_c - eps_n""",
               None, self._do_classify)
        yield ('sweep-gamma', '--d D (--beta B|--theta T) --gammas G1,G2,...',
               """Classify a grid of power-law decay exponents""",
               None, self._do_sweep_gamma)
        yield ('iterate', '--d D (--beta B|--theta T) --depth N '
               '[--to-depth K] [--seed-b plus|minus|inf|minus-inf|VALUE]',
               """Backward boundary-field iteration""",
               None, self._do_iterate)
        yield ('condition-sum', '(--gamma G|--geom R A|--epsilon-file PATH) '
               '[--horizon N]',
               """Summability condition for an epsilon sequence""",
               None, self._do_condition_sum)
        yield ('verify', '[--d D --depth N (--beta B|--theta T) '
               '[--b2 B]]',
               """Exact enumeration check of the compatibility recursion""",
               None, self._do_verify)

    def _do_critical(self, *args):
        return self.critical(self._parse('critical', args))

    def _do_classify(self, *args):
        return self.classify(self._parse('classify', args))

    def _do_sweep_gamma(self, *args):
        return self.sweep_gamma(self._parse('sweep-gamma', args))

    def _do_iterate(self, *args):
        return self.iterate(self._parse('iterate', args))

    def _do_condition_sum(self, *args):
        return self.condition_sum(self._parse('condition-sum', args))

    def _do_verify(self, *args):
        return self.verify(self._parse('verify', args))

    # Commands

    def critical(self, ns):
        params = self._params(ns)
        config = self._config('critical', ns, params)
        diagnostics = {'beta_c': beta_c(params.d, params.J),
                       'theta': params.theta,
                       'subcritical': not params.supercritical}
        if params.supercritical:
            diagnostics['h_c'] = h_c(params)
            diagnostics['saddle_curvature'] = saddle_curvature(params)
        else:
            diagnostics['h_c'] = None
            self.log.info("theta=%s <= 1/d: single fixed point for every h",
                          params.theta)
        h = self._field(ns.h, params)
        report = fixed_points(h, params)
        if not report.consistent:
            self.log.warning("Found %d fixed points at h=%r where %d were "
                             "expected", report.case_label.value, h,
                             report.analytic_case.value)
        diagnostics.update({'h': h, 'case': report.case_label.value,
                            'analytic_case': expected_case(h, params).value,
                            'b_sharp': report.b_sharp,
                            'max_residual': report.max_residual})
        results = [{'b': p.value, 'psi_prime': p.psi_prime,
                    'stability': p.stability, 'role': p.role,
                    'residual': p.residual}
                   for p in report.points]
        return self._emit(config, results, diagnostics)

    def classify(self, ns):
        params = self._params(ns)
        profile = FieldProfile.critical_minus(self._family(ns, True))
        classifier = PhaseClassifier(self.env)
        tolerances = classifier.tolerances(ns.tau_gap, ns.tau_uniq)
        probes, depths = classifier.schedule(ns.probes, ns.depths)
        config = self._config('classify', ns, params, probes=probes,
                              depths=depths, tolerances=tolerances)
        result = classifier.classify(profile, params, probes, depths,
                                     tolerances)
        results = [self._cell(cell) for cell in result.gap_trace]
        return self._emit(config, results, self._summary(result))

    def sweep_gamma(self, ns):
        params = self._params(ns)
        gammas = ns.gammas or []
        if not gammas:
            raise AdminCommandError(_("--gammas needs at least one value"),
                                    show_usage=True)
        classifier = PhaseClassifier(self.env)
        tolerances = classifier.tolerances(ns.tau_gap, ns.tau_uniq)
        probes, depths = classifier.schedule(ns.probes, ns.depths)
        workers = classifier.workers if ns.workers is None else ns.workers
        config = self._config('sweep-gamma', ns, params, probes=probes,
                              depths=depths, tolerances=tolerances,
                              workers=workers)
        rows = classifier.sweep(params, gammas, ns.amplitude, probes, depths,
                                tolerances, workers)
        results, summary = [], []
        for gamma, result in rows:
            for cell in result.gap_trace:
                row = {'gamma': gamma}
                row.update(self._cell(cell))
                row['verdict'] = result.verdict
                results.append(row)
            entry = {'gamma': gamma}
            entry.update(self._summary(result))
            summary.append(entry)
        return self._emit(config, results, {'summary': summary})

    def iterate(self, ns):
        params = self._params(ns)
        if ns.depth is None:
            raise AdminCommandError(_("--depth is required"),
                                    show_usage=True)
        family = self._family(ns, False)
        if family is not None:
            profile = FieldProfile.critical_minus(family)
        else:
            profile = FieldProfile.homogeneous(self._field(ns.h, params))
        to_depth = ns.to_depth or 1
        seed = self._seed(ns.seed_b, params)
        config = self._config('iterate', ns, params, to_depth=to_depth)
        trace = iterate_backward(profile, params, ns.depth, to_depth, seed)
        results = [{'m': m, 'b': trace.value_at(m)}
                   for m in range(to_depth, ns.depth + 2)]
        diagnostics = {'max_residual': trace.max_residual(),
                       'seed': ns.seed_b or 'plus'}
        return self._emit(config, results, diagnostics)

    def condition_sum(self, ns):
        family = self._family(ns, True)
        horizon = ns.horizon or 1000
        config = self._config('condition-sum', ns, None, horizon=horizon)
        checker = ConditionClassifier(self.env)
        report = checker.report(family, horizon)
        sweep = checker.sweep(family)
        results = [{'n': report.n, 'S_n': report.S_n,
                    'S_n_identity': report.S_n_identity,
                    'lower': report.lower, 'upper': report.upper,
                    'tail_sum': report.tail_sum}]
        analytic = analytic_condition(family)
        diagnostics = {'numeric': sweep.verdict,
                       'analytic': analytic,
                       'horizons': list(sweep.horizons),
                       'sums': list(sweep.sums),
                       'ratios': list(sweep.ratios),
                       'strong_log_sum': strong_condition_sum(family, ns.d,
                                                              horizon)}
        return self._emit(config, results, diagnostics)

    def verify(self, ns):
        oracle = ExactOracle(self.env)
        if ns.depth is None:
            config = self._config('verify', ns, None)
            reports = oracle.verify_grid()
        else:
            geometry = TreeGeometry(ns.d, ns.depth)
            if geometry.total_vertices() > oracle.vertex_cap:
                raise SizeError(_("%(size)s vertices exceed the enumeration "
                                  "cap of %(cap)s", cap=oracle.vertex_cap,
                                  size=geometry.total_vertices()))
            params = self._params(ns)
            boundary = 0.0 if ns.boundary is None else ns.boundary
            family = self._family(ns, False)
            if family is not None:
                hc = h_c(params) if params.supercritical else 0.0
                fields = [-hc - family.value(k) for k in range(1, ns.depth)]
            else:
                fields = [self._field(ns.h or '0', params)] * (ns.depth - 1)
            config = self._config('verify', ns, params, boundary=boundary)
            reports = [oracle.verify(geometry, params, fields, boundary,
                                     ns.root_field)]
        results = [{'label': r.label, 'd': r.d, 'depth': r.depth,
                    'beta': r.beta, 'boundary': r.boundary,
                    'previous_boundary': r.previous_boundary,
                    'max_residual': r.max_residual,
                    'log_partition_ratio': r.log_partition_ratio,
                    'log_partition_ratio_closed':
                        r.log_partition_ratio_closed,
                    'passed': r.passed} for r in reports]
        failed = len([r for r in reports if not r.passed])
        self._emit(config, results, {'cases': len(reports),
                                     'failed': failed})
        return 1 if failed else 0

    # Internal methods

    def _parser(self, command):
        parser = _ArgumentParser(prog=command, add_help=False)
        parser.add_argument('--d', type=int, default=2)
        parser.add_argument('--J', type=float, default=1.0)
        temperature = parser.add_mutually_exclusive_group()
        temperature.add_argument('--beta', type=float)
        temperature.add_argument('--theta', type=float)
        parser.add_argument('--format', choices=['json', 'csv'])
        parser.add_argument('--out')
        parser.add_argument('--workers', type=int)
        parser.add_argument('--h')
        parser.add_argument('--amplitude', type=float, default=1.0)
        family = parser.add_mutually_exclusive_group()
        family.add_argument('--gamma', type=float)
        family.add_argument('--geom', nargs=2, type=float,
                            metavar=('R', 'A'))
        family.add_argument('--epsilon-file', dest='epsilon_file')
        parser.add_argument('--gammas', type=lambda s:
                            parse_float_list(s, '--gammas'))
        parser.add_argument('--depths', type=lambda s:
                            parse_int_list(s, '--depths'))
        parser.add_argument('--probes', type=lambda s:
                            parse_int_list(s, '--probes'))
        parser.add_argument('--tau-gap', dest='tau_gap', type=float)
        parser.add_argument('--tau-uniq', dest='tau_uniq', type=float)
        parser.add_argument('--horizon', type=int)
        parser.add_argument('--depth', type=int)
        parser.add_argument('--to-depth', dest='to_depth', type=int)
        parser.add_argument('--seed-b', dest='seed_b')
        parser.add_argument('--boundary', '--b2', dest='boundary',
                            type=float)
        parser.add_argument('--root-field', dest='root_field', type=float,
                            default=0.0)
        return parser

    def _parse(self, command, args):
        ns = self._parser(command).parse_args(join_signed_values(args))
        self.log.debug("%s arguments: %r", command, ns)
        return ns

    def _params(self, ns):
        if ns.theta is not None:
            return params_from_theta(ns.d, ns.J, ns.theta)
        if ns.beta is not None:
            return make_params(ns.d, ns.J, ns.beta)
        raise AdminCommandError(_("Exactly one of --beta or --theta is "
                                  "required"), show_usage=True)

    def _family(self, ns, required):
        if ns.gamma is not None:
            return PowerLaw(ns.gamma, ns.amplitude)
        if ns.geom is not None:
            return Geometric(*ns.geom)
        if ns.epsilon_file is not None:
            return CustomList(tuple(read_epsilon_file(ns.epsilon_file)))
        if required:
            raise AdminCommandError(_("One of --gamma, --geom or "
                                      "--epsilon-file is required"),
                                    show_usage=True)
        return None

    def _field(self, value, params):
        """Homogeneous field: a number, `auto`/`-auto` for −h_c or
        `+auto` for +h_c.
        """
        if value is None:
            return 0.0
        if value in ('auto', '-auto', '+auto'):
            if not params.supercritical:
                raise CriticalityError(_("--h %(value)s needs theta > 1/d",
                                         value=value))
            sign = 1.0 if value == '+auto' else -1.0
            return sign * h_c(params)
        try:
            return float(value)
        except ValueError:
            raise AdminCommandError(_("Invalid field value %(value)r",
                                      value=value), show_usage=True)

    def _seed(self, value, params):
        if value in (None, 'plus', 'minus'):
            b_minus, b_plus = seed_pair(params)
            return b_minus if value == 'minus' else b_plus
        try:
            return Extended.parse(value)
        except ValueError:
            raise AdminCommandError(_("Invalid seed %(value)r", value=value),
                                    show_usage=True)

    def _config(self, command, ns, params, tolerances=None, **overrides):
        values = dict(
            command=command, d=ns.d, J=ns.J, beta=ns.beta, theta=ns.theta,
            h=ns.h, gamma=ns.gamma, amplitude=ns.amplitude,
            geom=tuple(ns.geom) if ns.geom else None,
            epsilon_file=ns.epsilon_file,
            gammas=tuple(ns.gammas or ()),
            depths=tuple(ns.depths or ()), probes=tuple(ns.probes or ()),
            tau_gap=ns.tau_gap, tau_uniq=ns.tau_uniq, horizon=ns.horizon,
            depth=ns.depth, to_depth=ns.to_depth, seed_b=ns.seed_b,
            boundary=ns.boundary, root_field=ns.root_field,
            format=ns.format or self.default_format, out=ns.out,
            workers=ns.workers or 1)
        if tolerances is not None:
            values['tau_gap'] = tolerances.tau_gap
            values['tau_uniq'] = tolerances.tau_uniq
        for key in ('probes', 'depths'):
            if key in overrides:
                overrides[key] = tuple(overrides[key])
        values.update(overrides)
        return RunConfig(**values)

    def _cell(self, cell):
        return {'probe': cell.probe, 'depth': cell.depth,
                'b_plus': cell.b_plus, 'b_minus': cell.b_minus,
                'gap': cell.gap}

    def _summary(self, result):
        return {'verdict': result.verdict, 'reason': result.reason,
                'probe_verdicts': dict((str(k0), v) for k0, v
                                       in result.probe_verdicts),
                'final_gaps': dict((str(k0), g) for k0, g
                                   in result.final_gaps().items()),
                'condition': result.condition,
                'diagnostics': result.diagnostics}

    def _emit(self, config, results, diagnostics):
        report = Report(config.command, config, results, diagnostics)
        writer = ReportWriter(self.env)
        if config.out:
            with io.open(config.out, 'w', newline='') as f:
                writer.write(config.format, report, f)
        else:
            buf = io.StringIO()
            writer.write(config.format, report, buf)
            printout(buf.getvalue(), newline=False)
        return 0
