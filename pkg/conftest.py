import os
import sys

# command.py and common.py are top-level scripts, not package modules
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
