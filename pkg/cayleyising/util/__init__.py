# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

from multiprocessing import Pool

import numpy as np

from cayleyising.api import _, DomainError


def format_number(value):
    """Render a float with 17 significant digits so that reports are
    byte-stable across platforms.
    """
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return '%.17g' % float(value)


def parse_float_list(text, name='values'):
    """Parse a comma separated list of floats (`1,1.25,2`)."""
    if isinstance(text, (list, tuple)):
        items = text
    else:
        items = [t for t in (text or '').split(',')]
    values = []
    for item in items:
        item = str(item).strip()
        if not item:
            continue
        try:
            values.append(float(item))
        except ValueError:
            raise DomainError(_("Invalid number %(value)r in %(name)s",
                                value=item, name=name))
    return values


def parse_int_list(text, name='values'):
    values = []
    for value in parse_float_list(text, name):
        if value != int(value) or value < 1:
            raise DomainError(_("%(name)s must contain positive integers, "
                                "got %(value)s", name=name, value=value))
        values.append(int(value))
    return values


def read_epsilon_file(path):
    """Read one non-negative decimal per line; blank lines and `#`
    comments are skipped. Ordering is validated by the ε family itself.
    """
    values = []
    try:
        with open(path) as f:
            for lineno, line in enumerate(f, 1):
                line = line.split('#', 1)[0].strip()
                if not line:
                    continue
                try:
                    values.append(float(line))
                except ValueError:
                    raise DomainError(_("%(path)s:%(lineno)s: not a number: "
                                        "%(line)r", path=path,
                                        lineno=lineno, line=line))
    except IOError as e:
        raise DomainError(_("Cannot read epsilon file %(path)s: %(error)s",
                            path=path, error=e))
    return values


def ordered_map(func, items, workers=1):
    """Map `func` over `items`, in a process pool when `workers > 1`.

    Results always come back in input order.
    """
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with Pool(min(workers, len(items))) as pool:
        return pool.map(func, items)
