"""Morphing planar triangulations with steps that move every vertex parallel to one line."""

from .morph import Morph, PseudoMorph, count_steps
from .pseudomorph import build_pseudo_morph
from .reinsert import convert
from .triangulation import Drawing, Triangulation
from .verify import verify_morph, verify_pseudo_morph, verify_step

__all__ = ["Drawing", "Morph", "PseudoMorph", "Triangulation", "build_pseudo_morph", "convert",
           "count_steps", "verify_morph", "verify_pseudo_morph", "verify_step"]
