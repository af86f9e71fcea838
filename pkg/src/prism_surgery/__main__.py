"""Entry point for ``python -m prism_surgery``."""

import sys

from .cli import main

sys.exit(main())
