#!/usr/bin/env python3
# encoding: utf-8

import sys

from maintsched.codec import dumps, loads_instance, loads_partition, loads_schedule
from maintsched.util import atomic_writer


def read_text(path):
    """Read a UTF-8 text file, ``-`` for standard input"""
    if path == '-':
        return sys.stdin.read()
    with open(path, encoding='utf-8') as f:
        return f.read()


def load_instance(path):
    """Load Instance JSON from path"""
    return loads_instance(read_text(path))


def load_schedule(path):
    """Load Schedule JSON from path"""
    return loads_schedule(read_text(path))


def load_partition(path):
    """Load Partition JSON from path"""
    return loads_partition(read_text(path))


def save_text(path, text):
    """Write text atomically to path, or to standard output when path is None"""
    if path is None:
        sys.stdout.write(text)
        return
    with atomic_writer(path, 'w') as f:
        f.write(text)


def save_json(path, data):
    """Write a JSON-ready value to path (or standard output)"""
    save_text(path, dumps(data))
