# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import csv
import json
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np
from trac.core import Component, ExtensionPoint, implements

from cayleyising.api import _, DomainError, IReportFormatter
from cayleyising.util import format_number

__all__ = ['SCHEMA_VERSION', 'RunConfig', 'Report', 'encode_value',
           'parse_report', 'JsonReportFormatter', 'CsvReportFormatter',
           'ReportWriter']

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig(object):
    """Effective settings of one command run, defaults included."""

    command: str
    d: int = 2
    J: float = 1.0
    beta: float = None
    theta: float = None
    h: str = None
    gamma: float = None
    amplitude: float = 1.0
    geom: tuple = None
    epsilon_file: str = None
    gammas: tuple = ()
    depths: tuple = ()
    probes: tuple = ()
    tau_gap: float = None
    tau_uniq: float = None
    horizon: int = None
    depth: int = None
    to_depth: int = None
    seed_b: str = None
    boundary: float = None
    root_field: float = 0.0
    format: str = 'json'
    out: str = None
    workers: int = 1

    _floats = ('J', 'beta', 'theta', 'gamma', 'amplitude', 'tau_gap',
               'tau_uniq', 'boundary', 'root_field')
    _ints = ('d', 'horizon', 'depth', 'to_depth', 'workers')
    _float_lists = ('geom', 'gammas')
    _int_lists = ('depths', 'probes')

    # Execution settings; they never change results and stay out of reports.
    _execution_only = ('out', 'workers')

    def to_dict(self):
        data = asdict(self)
        for key in self._execution_only:
            data.pop(key)
        return data

    @classmethod
    def from_dict(cls, data):
        values = {}
        for key, value in data.items():
            if value is None:
                values[key] = None
            elif key in cls._floats:
                values[key] = float(value)
            elif key in cls._ints:
                values[key] = int(value)
            elif key in cls._float_lists:
                values[key] = tuple(float(v) for v in value)
            elif key in cls._int_lists:
                values[key] = tuple(int(v) for v in value)
            else:
                values[key] = value
        return cls(**values)


@dataclass
class Report(object):
    command: str
    config: RunConfig
    results: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'schema': SCHEMA_VERSION,
            'command': self.command,
            'config': encode_value(self.config.to_dict()),
            'results': encode_value(self.results),
            'diagnostics': encode_value(self.diagnostics),
        }


def encode_value(value):
    """Floats become 17-digit strings; containers are walked."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return dict((str(k), encode_value(v)) for k, v in value.items())
    if isinstance(value, (list, tuple, np.ndarray)):
        return [encode_value(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    return value


def parse_report(text):
    """Inverse of the JSON encoding: (RunConfig, results, diagnostics)."""
    data = json.loads(text)
    if data.get('schema') != SCHEMA_VERSION:
        raise DomainError(_("Unsupported report schema %(schema)r",
                            schema=data.get('schema')))
    return (RunConfig.from_dict(data['config']), data['results'],
            data['diagnostics'])


class JsonReportFormatter(Component):

    implements(IReportFormatter)

    # IReportFormatter methods

    def formats(self):
        yield 'json'

    def format(self, fmt, report, stream):
        json.dump(report.to_dict(), stream, indent=2)
        stream.write('\n')


class CsvReportFormatter(Component):
    """One row per result; column order follows first appearance."""

    implements(IReportFormatter)

    # IReportFormatter methods

    def formats(self):
        yield 'csv'

    def format(self, fmt, report, stream):
        rows = [self._flatten(row) for row in report.results]
        columns = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
        writer = csv.DictWriter(stream, columns, lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)

    # Internal methods

    def _flatten(self, row, prefix=''):
        flat = {}
        for key, value in row.items():
            name = prefix + str(key)
            if isinstance(value, dict):
                flat.update(self._flatten(value, name + '.'))
                continue
            value = encode_value(value)
            if isinstance(value, list):
                value = ' '.join(str(v) for v in value)
            elif isinstance(value, bool):
                value = format_number(value)
            elif value is None:
                value = ''
            flat[name] = value
        return flat


class ReportWriter(Component):
    """Picks the formatter registered for a format name."""

    formatters = ExtensionPoint(IReportFormatter)

    def write(self, fmt, report, stream):
        for formatter in self.formatters:
            if fmt in formatter.formats():
                self.log.debug("Writing %s report with %s", fmt,
                               formatter.__class__.__name__)
                formatter.format(fmt, report, stream)
                return
        raise DomainError(_("No formatter for format %(fmt)r", fmt=fmt))
