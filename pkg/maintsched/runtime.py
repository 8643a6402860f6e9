#!/usr/bin/env python3

"""Run loop, logging and settings for the command-line script.

:class:`Runner` wraps a command function the way a script entry point
needs it: it configures logging once, loads :class:`Settings`, calls the
function and turns exceptions into exit codes.

"""

import json
import logging
import logging.handlers
import os
import sys
import time

from .errors import InfeasibleJob, InfeasibleSchedule, SchedulingError
from .util import atomic_writer

#: Exit code for instances or schedules the machine cannot run.
EXIT_INFEASIBLE = 2

#: Exit code for every other failure.
EXIT_ERROR = 1

DEFAULT_SETTINGS = {
    "brute_force_limit": 10,
    "dp_limit": 24,
    "workers": 1,
    "ratio_places": 6,
    "debug": False,
    "logfile": None,
}


class Settings(dict):
    """Solver and report options backed by a JSON file.

    Values from the file at ``path`` override ``defaults``. A missing file
    is written out with the defaults; every later change rewrites it. With
    ``path=None`` nothing touches the disk.

    :param path: JSON file, or ``None`` for in-memory settings
    :type path: ``str``
    :param defaults: values used for keys the file does not set
    :type defaults: ``dict``

    """

    def __init__(self, path=None, defaults=None):
        super().__init__(defaults or {})
        self._path = path
        self._loading = True
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as f:
                stored = json.load(f)
            if not isinstance(stored, dict):
                raise ValueError(f"settings file {path} does not hold an object")
            super().update(stored)
            self._loading = False
        else:
            self._loading = False
            self.save()

    def save(self):
        """Rewrite the settings file; in-memory settings are left alone."""
        if self._loading or not self._path:
            return
        with atomic_writer(self._path, "w") as f:
            json.dump(dict(self), f, sort_keys=True, indent=2)

    def __setitem__(self, key, value):
        if key in self and self[key] == value:
            return
        super().__setitem__(key, value)
        self.save()

    def __delitem__(self, key):
        super().__delitem__(key)
        self.save()

    def update(self, *args, **kwargs):
        super().update(*args, **kwargs)
        self.save()

    def setdefault(self, key, value=None):
        found = super().setdefault(key, value)
        self.save()
        return found


class Runner:
    """Entry-point helper for the ``maintsched`` command.

    :param argv: command-line arguments, defaults to ``sys.argv[1:]``
    :param settings_path: JSON settings file, or ``None`` for defaults
    :param name: program name used in the log framing

    """

    def __init__(self, argv=None, settings_path=None, name="maintsched"):
        """Create new :class:`Runner` object."""
        self._argv = argv
        self._settings_path = settings_path
        self._settings = None
        self._logger = None
        self._debug = None
        self.name = name

    @property
    def args(self):
        """Command-line arguments."""
        return list(sys.argv[1:] if self._argv is None else self._argv)

    @property
    def version(self):
        from . import __version__

        return __version__

    @property
    def settings(self):
        """:class:`Settings` loaded from ``settings_path`` or the defaults."""
        if self._settings is None:
            self._settings = Settings(self._settings_path, DEFAULT_SETTINGS)
        return self._settings

    @property
    def debugging(self):
        """Whether ``--debug`` was given or the ``debug`` setting is on."""
        if self._debug is not None:
            return self._debug
        return bool(self.settings.get("debug"))

    @debugging.setter
    def debugging(self, value):
        self._debug = value
        if self._logger is not None:
            self._logger.setLevel(logging.DEBUG if value else logging.INFO)

    @property
    def logger(self):
        """Root logger writing to standard error and the optional log file.

        The console handler is only added when the root logger has none
        (pytest installs its own); the ``logfile`` handler is always
        attached, once per file. Level is ``DEBUG`` when
        :attr:`debugging`, else ``INFO``.

        """
        if self._logger:
            return self._logger

        logger = logging.getLogger("")
        fmt = logging.Formatter(
            "%(asctime)s %(filename)s:%(lineno)s %(levelname)-8s %(message)s",
            datefmt="%H:%M:%S",
        )

        if not logger.handlers:  # pragma: no cover
            console = logging.StreamHandler()
            console.setFormatter(fmt)
            logger.addHandler(console)

        logfile = self.settings.get("logfile")
        if logfile:
            path = os.path.abspath(logfile)
            attached = [h for h in logger.handlers if getattr(h, "baseFilename", None) == path]
            if not attached:
                handler = logging.handlers.RotatingFileHandler(
                    path, maxBytes=1024 * 1024, backupCount=1, encoding="utf-8"
                )
                handler.setFormatter(fmt)
                logger.addHandler(handler)

        logger.setLevel(logging.DEBUG if self.debugging else logging.INFO)
        self._logger = logger
        return self._logger

    def run(self, func):
        """Call ``func(self)`` and return the exit code.

        The command's own return value is the exit code on success.
        :class:`InfeasibleJob` and :class:`InfeasibleSchedule` map to
        :data:`EXIT_INFEASIBLE`, every other exception to
        :data:`EXIT_ERROR`.

        """
        start = time.time()
        logger = logging.getLogger("")
        try:
            logger = self.logger
            logger.debug("---------- %s (%s) ----------", self.name, self.version)
            return func(self) or 0
        except (InfeasibleJob, InfeasibleSchedule) as err:
            logger.error("%s", err)
            return EXIT_INFEASIBLE
        except (SchedulingError, OSError, ValueError) as err:
            logger.error("%s", err)
            return EXIT_ERROR
        except Exception as err:  # pylint: disable=broad-except
            logger.exception(err)
            return EXIT_ERROR
        finally:
            logger.debug("---------- finished in %0.3fs ----------", time.time() - start)
