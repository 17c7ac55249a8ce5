"""Generalized root systems of affine ADE type, their twist automorphism,
and Hurwitz-orbit counting of root-basis factorizations."""

from .grs import SystemDescriptor, build_system

__all__ = ["SystemDescriptor", "build_system"]
__version__ = "0.1.0"
