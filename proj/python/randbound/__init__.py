"""Randomized operator-bound estimators on finite-dimensional sequence spaces.

Thin package wrapper around the compiled `_randbound` extension; everything
public lives there.
"""

from ._randbound import *  # noqa: F401,F403
from ._randbound import __doc__  # noqa: F401
