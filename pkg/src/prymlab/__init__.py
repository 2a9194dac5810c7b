"""Finite models of Prym data for double covers with two branch points.

Subpackages cover F2 theta characteristics (:mod:`.char2`), the covering
maps on 2-torsion (:mod:`.covering`), numerical theta functions
(:mod:`.theta_num`), the genus one invariant ``k`` (:mod:`.genus1`),
hyperelliptic Jacobians over prime fields (:mod:`.hyperjac`) and the
branch-data reconstruction (:mod:`.prym_recon`).
"""
from ._kernels import BACKEND
from .char2 import Characteristic2, QuadraticFormF2, weyl_pairing
from .errors import PrymLabError

__version__ = "0.1.0"

__all__ = ["BACKEND", "Characteristic2", "PrymLabError", "QuadraticFormF2", "__version__",
           "weyl_pairing"]
