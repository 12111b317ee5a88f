#!/usr/bin/env python3
"""Wrapper: render the fig2 analogue (see figplots.fig2)."""
import sys

from figplots.fig2 import main

if __name__ == "__main__":
    sys.exit(main())
