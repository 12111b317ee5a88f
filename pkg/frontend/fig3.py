#!/usr/bin/env python3
"""Wrapper: render the fig3 analogue (see figplots.fig3)."""
import sys

from figplots.fig3 import main

if __name__ == "__main__":
    sys.exit(main())
