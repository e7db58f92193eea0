# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import os

from trac.admin.api import AdminCommandManager
from trac.config import ChoiceOption, Configuration, Option
from trac.core import Component, ComponentManager, Interface, TracError
from trac.log import logger_handler_factory
from trac.util.translation import domain_functions


class IReportFormatter(Interface):
    """Serializes a finished run report into one of the output formats
    understood by the command line front end.
    """

    def formats():
        """Returns an iterable of the format names (`json`, `csv`, ...)
        this formatter can write.
        """

    def format(fmt, report, stream):
        """Writes `report` (a `cayleyising.formatters.Report`) in format
        `fmt` to the text `stream`.
        """


class CayleyError(TracError):
    """Base class for every error raised by the library."""

    title = 'Cayley Ising Error'


class DomainError(CayleyError):
    """Parameters outside their admissible range."""


class CriticalityError(CayleyError):
    """Raised when θ ≤ 1/d and a saddle node or a positive critical field
    is required.
    """


class CaseError(CayleyError):
    """The homogeneous map has fewer fixed points than the caller needs."""


class MonotonicityError(CayleyError):
    """An ε prefix is not non-negative and non-increasing."""


class SizeError(CayleyError):
    """An exact enumeration would exceed the vertex cap."""


_, = domain_functions('cayleyising', ('_',))


class IsingEnvironment(Component, ComponentManager):
    """Stand-alone component manager used by the `cayley-ising` console
    script.

    It plays the part a Trac environment plays for a plugin: one
    configuration, one logger, and every activated component gets `env`,
    `config` and `log` members. Only `cayleyising.*` components and the
    admin command dispatcher are enabled.

    Logging reads the `[cayley-logging]` section; Trac keeps `[logging]`.
    """

    log_type = ChoiceOption('cayley-logging', 'log_type',
                            ['stderr', 'file', 'none'],
        """Logging facility to use: `stderr`, `file` or `none`.""")

    log_level = ChoiceOption('cayley-logging', 'log_level',
                             ['WARNING', 'ERROR', 'INFO', 'DEBUG'],
        """Level of verbosity in log.""")

    log_file = Option('cayley-logging', 'log_file', 'cayleyising.log',
        """File the log is written to when `log_type` is `file`. Relative
        paths are resolved against the directory of the configuration
        file.""")

    log_format = Option('cayley-logging', 'log_format',
                        'CayleyIsing[%(module)s] %(levelname)s: %(message)s',
        """Format string of log records.""")

    def __init__(self, path=None):
        ComponentManager.__init__(self)
        self.path = path
        self.config = Configuration(path)
        self.log, self._log_handler = logger_handler_factory(
            self.log_type, self.log_file_path, self.log_level,
            'cayleyising', self.log_format)
        self.log.addHandler(self._log_handler)
        self.log.debug("Environment started from %s",
                       path or "built-in defaults")

    @property
    def log_file_path(self):
        if os.path.isabs(self.log_file) or not self.path:
            return self.log_file
        return os.path.join(os.path.dirname(os.path.abspath(self.path)),
                            self.log_file)

    def component_activated(self, component):
        component.env = self
        component.config = self.config
        component.log = self.log

    def is_component_enabled(self, cls):
        if cls is AdminCommandManager:
            return True
        return cls.__module__ == 'cayleyising' or \
            cls.__module__.startswith('cayleyising.')

    def shutdown(self):
        if self._log_handler is not None:
            self.log.removeHandler(self._log_handler)
            self._log_handler.flush()
            self._log_handler.close()
            self._log_handler = None
