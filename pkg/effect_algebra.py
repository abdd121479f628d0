#!/usr/bin/env python3
"""
Effect algebra toolkit launcher.

Usage:
    python3 effect_algebra.py <group> <action> [args...]
    python3 effect_algebra.py --help
"""

import sys
import os

# Add project root to path
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from cli.run import main

if __name__ == "__main__":
    sys.exit(main())
