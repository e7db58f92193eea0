# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import sys

from trac.admin.api import AdminCommandError, AdminCommandManager
from trac.core import TracError
from trac.util.text import exception_to_unicode, printerr, printout

from cayleyising import __version__
from cayleyising.admin import CayleyAdmin
from cayleyising.api import _, IsingEnvironment

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _usage(env, stream_printer, command=None):
    for cmd, args, doc, complete, execute in \
            CayleyAdmin(env).get_admin_commands():
        if command and cmd != command:
            continue
        stream_printer('  %s %s' % (cmd, args))
        stream_printer('      %s' % doc)


def _split_global(args):
    """Strip `--config PATH` (or `--config=PATH`) from the front."""
    config = None
    rest = []
    i = 0
    while i < len(args):
        arg = args[i]
        if not rest and arg == '--config' and i + 1 < len(args):
            config = args[i + 1]
            i += 2
            continue
        if not rest and arg.startswith('--config='):
            config = arg.split('=', 1)[1]
            i += 1
            continue
        rest.append(arg)
        i += 1
    return config, rest


def run(args=None):
    """Entry point of `cayley-ising`; returns the exit code."""
    if args is None:
        args = sys.argv[1:]
    config, args = _split_global(list(args))
    env = IsingEnvironment(config)
    try:
        if not args or args[0] in ('help', '-h', '--help'):
            printout(_("cayley-ising %(version)s", version=__version__))
            printout(_("Usage: cayley-ising [--config PATH] COMMAND "
                       "[OPTIONS]"))
            _usage(env, printout)
            return EXIT_OK if args else EXIT_USAGE
        if args[0] == '--version':
            printout(__version__)
            return EXIT_OK
        try:
            code = AdminCommandManager(env).execute_command(*args)
        except AdminCommandError as e:
            printerr(_("Error: %(msg)s", msg=exception_to_unicode(e)))
            if e.show_usage:
                _usage(env, printerr, e.cmd)
            return EXIT_USAGE
        except TracError as e:
            env.log.debug("Command %r failed", args, exc_info=True)
            printerr(_("Error: %(msg)s", msg=exception_to_unicode(e)))
            return EXIT_USAGE
        return code or EXIT_OK
    finally:
        env.shutdown()


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
