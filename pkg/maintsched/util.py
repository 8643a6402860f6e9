#!/usr/bin/env python3

"""Small helpers shared by the library and the command-line script."""

import os
from contextlib import contextmanager

from .errors import ArithmeticOverflow

#: Largest value of the unsigned 64-bit range all quantities must fit in.
U64_MAX = 2**64 - 1


def checked(value, what="value"):
    """Return ``value`` if it fits the unsigned 64-bit range.

    :param value: integer to check
    :type value: ``int``
    :param what: name used in the error message
    :type what: ``str``
    :raises ArithmeticOverflow: if ``value`` is negative or above
        :data:`U64_MAX`

    """
    if value > U64_MAX or value < 0:
        raise ArithmeticOverflow(f"{what} {value} is outside the unsigned 64-bit range")
    return value


@contextmanager
def atomic_writer(fpath, mode):
    """Open ``fpath`` for writing through a temporary sibling file.

    The target is replaced only when the ``with`` block finishes without
    an exception, so readers never see a half-written report or settings
    file.

    :param fpath: destination path
    :type fpath: ``str`` or path-like
    :param mode: :func:`open` mode, ``"w"`` or ``"wb"``
    :type mode: ``str``

    """
    fpath = os.fspath(fpath)
    suffix = f".{os.getpid()}.tmp"
    temppath = fpath + suffix
    kwargs = {} if "b" in mode else {"encoding": "utf-8", "newline": ""}
    with open(temppath, mode, **kwargs) as f:  # pylint: disable=unspecified-encoding
        try:
            yield f
            f.flush()
            os.replace(temppath, fpath)
        finally:
            try:
                os.remove(temppath)
            except OSError:
                pass
