#!/usr/bin/env python3
"""
Command-line script to run the quantization discrimination toolkit.
"""

import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
