"""Cayley representations of central Cayley graphs over small almost simple groups."""

from .atlas import IndexedGroup, aut_of, build_group
from .autgroup import AutResult, aut_group, classify_type, minimal_block
from .cayley import CayleyGraph, associated_representation, is_automorphism
from .gbase import GBase, RegSubgroup, are_conjugate_regular, g_base
from .perm import PermGroup

__all__ = [
    "AutResult", "CayleyGraph", "GBase", "IndexedGroup", "PermGroup", "RegSubgroup",
    "are_conjugate_regular", "associated_representation", "aut_group", "aut_of",
    "build_group", "classify_type", "g_base", "is_automorphism", "minimal_block",
]
