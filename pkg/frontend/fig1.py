#!/usr/bin/env python3
"""Wrapper: render the fig1 analogue (see figplots.fig1)."""
import sys

from figplots.fig1 import main

if __name__ == "__main__":
    sys.exit(main())
