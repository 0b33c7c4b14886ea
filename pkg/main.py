#!/usr/bin/env python3
"""
weylfree - Main CLI Interface
Exact checks for free-field realizations of negative-level affine Lie algebras
"""

import os
import sys
import logging

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Logs go to stderr so stdout stays machine-readable
logging.basicConfig(level=os.getenv('LOG_LEVEL', 'WARNING').upper(),
                    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                    stream=sys.stderr)

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
