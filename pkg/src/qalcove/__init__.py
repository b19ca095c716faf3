"""Quantum alcove model, interpolated QLS paths and the forgetful map between them."""

from .rootsys import (Coroot, Root, RootSystem, Weight, WeylElement, build_root_system,
                      pair)

__all__ = ["Coroot", "Root", "RootSystem", "Weight", "WeylElement", "build_root_system", "pair"]
__version__ = "0.1.0"
