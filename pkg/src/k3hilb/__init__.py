"""Exact cup products in the integral cohomology of Hilbert schemes of points
on a projective K3 surface, with integer linear algebra for the resulting
multiplication maps (cokernels, torsion, lattice invariants).

Everything is computed in exact arithmetic: arbitrary-precision integers and
rationals, no floating point anywhere.
"""

import sys

# decimal-string serialization of arbitrary-precision values is part of the
# API contract; lift the interpreter's conversion guard accordingly
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 200_000))

from .hilb_basis import canonical_class, format_class, hilb_base, parse_class
from .qin_wang import cup_int, cup_int_list, cup_universal

__all__ = [
    "canonical_class",
    "format_class",
    "parse_class",
    "hilb_base",
    "cup_int",
    "cup_int_list",
    "cup_universal",
]

__version__ = "0.1.0"
