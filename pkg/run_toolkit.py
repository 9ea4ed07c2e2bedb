#!/usr/bin/env python3
"""
Square-spectrum toolkit - Entry Point

Run with: python run_toolkit.py <command> [options]
"""
import os
import sys

# Add current directory to path for imports
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, current_dir)

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
