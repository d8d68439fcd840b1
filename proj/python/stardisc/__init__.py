"""Exact and heuristic L-infinity star discrepancy computation."""

import os as _os

_share = _os.path.join(_os.path.dirname(__file__), "share", "joe_kuo_directions.txt")
if _os.path.exists(_share) and "STARDISC_SOBOL_FILE" not in _os.environ:
    _os.environ["STARDISC_SOBOL_FILE"] = _share

from ._stardisc import *  # noqa: F401,F403,E402
from ._stardisc import __doc__  # noqa: F401,E402
