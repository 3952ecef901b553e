"""Reduced random walks in affine Weyl groups.

Modules: :mod:`roots` (Cartan data), :mod:`weyl` (finite Weyl groups),
:mod:`affine` (alcoves), :mod:`walker` (simulation and exact laws),
:mod:`wchain` (the chain on ``W``), :mod:`shi` (Shi regions) and
:mod:`ncore` (n-cores).
"""
from .affine import AffineElement, AffineRoot
from .errors import CoxwalkError
from .roots import RootSystem, build_root_system
from .weyl import WeylElement, weyl_group

__all__ = ["AffineElement", "AffineRoot", "CoxwalkError", "RootSystem",
           "WeylElement", "build_root_system", "weyl_group"]
__version__ = "0.1.0"
