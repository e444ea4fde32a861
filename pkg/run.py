#!/usr/bin/env python3
"""
constamax launcher

`python3 run.py <subcommand> ...` from a checkout, no install step.
Exit codes are the ones main.App.main() returns.
"""

import sys
from pathlib import Path

# core, cli and utils are top-level packages next to this file
project_root = Path(__file__).resolve().parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

if __name__ == "__main__":
    from main import main
    main()
