# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import unittest

from cayleyising.tests import admin, api, classifier, criticality, \
                              formatters, model, oracle, perturbation, \
                              recursion


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(api.test_suite())
    suite.addTest(model.test_suite())
    suite.addTest(recursion.test_suite())
    suite.addTest(criticality.test_suite())
    suite.addTest(perturbation.test_suite())
    suite.addTest(classifier.test_suite())
    suite.addTest(oracle.test_suite())
    suite.addTest(formatters.test_suite())
    suite.addTest(admin.test_suite())
    return suite


# Start test suite directly from command line like so:
#   $> PYTHONPATH=$PWD python cayleyising/tests/__init__.py
if __name__ == '__main__':
    unittest.main(defaultTest="test_suite")
