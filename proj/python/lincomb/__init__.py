"""Python interface to the lincomb library.

The compiled extension ``_lincomb`` must be importable (it is placed next to
this package by the build, or anywhere on ``PYTHONPATH``).
"""

from _lincomb import *  # noqa: F401,F403
from _lincomb import __doc__  # noqa: F401
