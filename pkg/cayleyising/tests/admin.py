# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import io
import os
import shutil
import tempfile
import unittest
from unittest import mock

from cayleyising.admin import join_signed_values
from cayleyising.console import run
from cayleyising.formatters import parse_report


def execute(*args):
    """Run the console script, returning (exit code, stdout, stderr)."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with mock.patch('sys.stdout', stdout), mock.patch('sys.stderr', stderr):
        code = run(list(args))
    return code, stdout.getvalue(), stderr.getvalue()


class SignedValuesTestCase(unittest.TestCase):

    def test_join(self):
        self.assertEqual(join_signed_values(['--h', '-auto', '--d', '2']),
                         ['--h=-auto', '--d', '2'])
        self.assertEqual(join_signed_values(['--b2', '-1.5']),
                         ['--b2=-1.5'])
        self.assertEqual(join_signed_values(['--h', '--d']),
                         ['--h', '--d'])
        self.assertEqual(join_signed_values(['--gamma', '-1']),
                         ['--gamma', '-1'])


class CommandTestCase(unittest.TestCase):

    def setUp(self):
        self.path = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.path)

    def _config_file(self, text):
        filename = os.path.join(self.path, 'cayley.ini')
        with open(filename, 'w') as f:
            f.write(text)
        return filename

    def test_critical(self):
        code, out, err = execute('critical', '--d', '2', '--theta', '0.8')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual(config.command, 'critical')
        self.assertEqual(len(results), 3)
        self.assertAlmostEqual(float(diagnostics['h_c']), 0.418048004260,
                               places=11)
        self.assertEqual(diagnostics['case'], 3)
        self.assertLessEqual(float(diagnostics['max_residual']), 1e-10)
        self.assertEqual([r['role'] for r in results],
                         ['minus', 'free', 'plus'])

    def test_critical_negative_auto_field(self):
        code, out, err = execute('critical', '--d', '2', '--theta', '0.8',
                                 '--h', '-auto')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual(diagnostics['case'], 2)
        self.assertEqual(results[-1]['stability'], 'saddle-node')
        self.assertEqual(config.h, '-auto')

    def test_critical_subcritical(self):
        code, out, err = execute('critical', '--d', '2', '--theta', '0.4')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertIs(diagnostics['subcritical'], True)
        self.assertIsNone(diagnostics['h_c'])
        code, out, err = execute('critical', '--d', '2', '--theta', '0.4',
                                 '--h', 'auto')
        self.assertEqual(code, 2)
        self.assertIn('Error', err)

    def test_classify(self):
        code, out, err = execute('classify', '--d', '2', '--theta', '0.55',
                                 '--gamma', '2', '--depths', '100,200,400')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual(diagnostics['verdict'], 'transition')
        self.assertEqual(config.depths, (100, 200, 400))
        self.assertEqual(config.probes, (1, 5, 10))
        self.assertEqual(len(results), 9)

    def test_classify_logs_condition_disagreement(self):
        code, out, err = execute('classify', '--d', '2', '--theta', '0.8',
                                 '--gamma', '2')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual(diagnostics['verdict'], 'uniqueness')
        self.assertIn('CayleyIsing[classifier] WARNING: Gap verdict '
                      'uniqueness disagrees', err)

    def test_classify_csv(self):
        code, out, err = execute('classify', '--theta', '0.55', '--gamma',
                                 '2', '--depths', '100,200,400',
                                 '--format', 'csv')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0],
                         'probe,depth,b_plus,b_minus,gap')

    def test_classify_needs_family(self):
        code, out, err = execute('classify', '--theta', '0.55')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')

    def test_temperature_exclusive(self):
        code, out, err = execute('critical', '--beta', '1', '--theta',
                                 '0.8')
        self.assertEqual(code, 2)
        code, out, err = execute('critical', '--d', '2')
        self.assertEqual(code, 2)

    def test_sweep_output_independent_of_workers(self):
        args = ('sweep-gamma', '--theta', '0.55', '--gammas', '1,2',
                '--depths', '100,200,400')
        code, serial, err = execute(*args)
        self.assertEqual(code, 0)
        code, parallel, err = execute(*(args + ('--workers', '2')))
        self.assertEqual(code, 0)
        self.assertEqual(serial, parallel)
        config, results, diagnostics = parse_report(serial)
        self.assertEqual([s['verdict'] for s in diagnostics['summary']][1],
                         'transition')

    def test_sweep_needs_gammas(self):
        code, out, err = execute('sweep-gamma', '--theta', '0.55')
        self.assertEqual(code, 2)

    def test_iterate(self):
        code, out, err = execute('iterate', '--theta', '0.8', '--h',
                                 '-auto', '--depth', '10', '--seed-b', 'inf')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual([r['m'] for r in results], list(range(1, 12)))
        self.assertEqual(results[-1]['b'], 'inf')
        self.assertAlmostEqual(float(results[-2]['b']), 1.779176573076,
                               places=10)

    def test_iterate_minus_infinity_seed(self):
        code, out, err = execute('iterate', '--theta', '0.8', '--depth', '5',
                                 '--seed-b', '-inf')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual(results[-1]['b'], '-inf')
        self.assertLess(float(results[0]['b']), 0.0)

    def test_iterate_bad_seed(self):
        code, out, err = execute('iterate', '--theta', '0.8', '--depth', '5',
                                 '--seed-b', 'upwards')
        self.assertEqual(code, 2)
        self.assertIn("Invalid seed 'upwards'", err)

    def test_iterate_needs_depth(self):
        code, out, err = execute('iterate', '--theta', '0.8')
        self.assertEqual(code, 2)

    def test_condition_sum(self):
        code, out, err = execute('condition-sum', '--gamma', '2',
                                 '--horizon', '3')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertAlmostEqual(float(results[0]['S_n']), 1.995370370370,
                               places=11)
        self.assertEqual(diagnostics['analytic'], 'convergent')
        self.assertEqual(diagnostics['numeric'], 'convergent')

    def test_condition_sum_from_file(self):
        filename = os.path.join(self.path, 'eps.txt')
        with open(filename, 'w') as f:
            f.write('# decreasing\n0.5\n0.25\n\n0.125\n')
        code, out, err = execute('condition-sum', '--epsilon-file',
                                 filename, '--horizon', '2')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertAlmostEqual(float(results[0]['S_n']), 0.625, places=15)

    def test_condition_sum_rejects_increasing_file(self):
        filename = os.path.join(self.path, 'eps.txt')
        with open(filename, 'w') as f:
            f.write('0.1\n0.2\n')
        code, out, err = execute('condition-sum', '--epsilon-file',
                                 filename)
        self.assertEqual(code, 2)

    def test_verify_single(self):
        code, out, err = execute('verify', '--d', '2', '--depth', '2',
                                 '--beta', '0.6', '--b2', '-1.5')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertIs(results[0]['passed'], True)
        self.assertEqual(float(results[0]['boundary']), -1.5)

    def test_verify_over_cap(self):
        code, out, err = execute('verify', '--d', '2', '--depth', '4',
                                 '--beta', '0.6')
        self.assertEqual(code, 2)

    def test_verify_grid_with_lowered_cap(self):
        filename = self._config_file('[oracle]\nvertex_cap = 10\n')
        code, out, err = execute('--config', filename, 'verify')
        self.assertEqual(code, 0)
        config, results, diagnostics = parse_report(out)
        self.assertEqual(diagnostics['cases'], 24)
        self.assertEqual(diagnostics['failed'], 0)

    def test_out_file(self):
        filename = os.path.join(self.path, 'report.json')
        code, out, err = execute('critical', '--theta', '0.8', '--out',
                                 filename)
        self.assertEqual(code, 0)
        self.assertEqual(out, '')
        with open(filename) as f:
            config, results, diagnostics = parse_report(f.read())
        self.assertEqual(len(results), 3)

    def test_configured_format(self):
        filename = self._config_file('[cayley]\nformat = csv\n')
        code, out, err = execute('--config', filename, 'critical',
                                 '--theta', '0.8')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0],
                         'b,psi_prime,stability,role,residual')


class ConsoleTestCase(unittest.TestCase):

    def test_no_arguments(self):
        code, out, err = execute()
        self.assertEqual(code, 2)
        self.assertIn('sweep-gamma', out)

    def test_help(self):
        code, out, err = execute('help')
        self.assertEqual(code, 0)
        self.assertIn('condition-sum', out)

    def test_version(self):
        code, out, err = execute('--version')
        self.assertEqual(code, 0)
        self.assertTrue(out.strip())

    def test_unknown_command(self):
        code, out, err = execute('frobnicate')
        self.assertEqual(code, 2)
        self.assertIn('Error', err)


def test_suite():
    suite = unittest.TestSuite()
    loader = unittest.defaultTestLoader
    suite.addTest(loader.loadTestsFromTestCase(SignedValuesTestCase))
    suite.addTest(loader.loadTestsFromTestCase(CommandTestCase))
    suite.addTest(loader.loadTestsFromTestCase(ConsoleTestCase))
    return suite


if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
