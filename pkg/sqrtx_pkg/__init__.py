"""sqrtx_pkg package initialization.

Configures logging so that messages emitted by modules in the package reach the
console. Output goes to stderr because stdout carries matrices and JSON. The
configuration only applies if no other logging handlers have been set up.
"""

import logging
import os
import sys


if not logging.getLogger().handlers:
    logging.basicConfig(level=os.getenv("SQRTX_LOG_LEVEL", "INFO").upper(), stream=sys.stderr)
