"""Taut foliations on branched surfaces built from positive braid knots."""

from .braid_core import BraidWord, LetterRef, parse_braid, format_braid, genus, standardize
from .surface_model import build_diagram

__all__ = ["BraidWord", "LetterRef", "parse_braid", "format_braid", "genus", "standardize", "build_diagram"]
__version__ = "0.1.0"
