"""Exact linear Lagrangian correspondences and the sequence category built on them."""

from ._lagcorr import *  # noqa: F401,F403
from ._lagcorr import LagcorrError, run_script  # noqa: F401
