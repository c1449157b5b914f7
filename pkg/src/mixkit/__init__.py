"""Exact uniform-mixing toolkit for quantum walks on abelian Cayley graphs.

The package decides whether the continuous-time walk on a Cayley graph of a
finite abelian group becomes uniform at a given time, finds the rational
times at which that can happen, constructs mixing graphs from bent functions,
and classifies which groups admit integral mixing graphs at all.  Verdicts at
rational times are certified with exact cyclotomic arithmetic; floating-point
results are clearly labeled as non-certifying.
"""

from .cyclo import CycInt, RationalTime, root_power
from .groups import GroupSpec, Orbit, orbits_under_units, parse_group, sylow_decomposition

__all__ = [
    "CycInt",
    "RationalTime",
    "root_power",
    "GroupSpec",
    "Orbit",
    "orbits_under_units",
    "parse_group",
    "sylow_decomposition",
]

__version__ = "0.1.0"
