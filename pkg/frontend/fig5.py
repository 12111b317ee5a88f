#!/usr/bin/env python3
"""Wrapper: render the fig5 analogue (see figplots.fig5)."""
import sys

from figplots.fig5 import main

if __name__ == "__main__":
    sys.exit(main())
