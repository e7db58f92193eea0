# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import pkg_resources

try:
    __version__ = pkg_resources.get_distribution('CayleyIsing').version
except pkg_resources.DistributionNotFound:
    __version__ = 'dev'
