#!/usr/bin/env python3
"""Wrapper: render the fig4 analogue (see figplots.fig4)."""
import sys

from figplots.fig4 import main

if __name__ == "__main__":
    sys.exit(main())
