"""Exact eigenvalue proportions for subgroups of GL2(F_ell) and empirical
local torsion/isogeny densities for elliptic curves over Q."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
