"""Exact decision toolkit for topological generation of simple classical
algebraic groups by tuples of prime-order-mod-center conjugacy classes.

Submodules:
  algebra_core -- group specs and symbolic class descriptors
  invariants   -- eigenspace profiles, class dimensions, induced actions
  closure      -- degeneration order on unipotent classes
  oracle       -- the emptiness decision engine
  stabilizers  -- generically-free thresholds, shape enumeration, c(G)
  maxclass     -- maximal prime-order classes and the (r, s) limit table
  finfield     -- brute-force finite-field verification layer
  cli          -- command-line front end
"""

from .algebra_core import (
    ClassDescriptor,
    EigenPattern,
    GroupSpec,
    UnipotentData,
    semisimple,
    unipotent,
    validate_class,
)
from .oracle import Verdict, decide, min_generators, scott_lower_bound

__version__ = "0.1.0"

__all__ = [
    "ClassDescriptor",
    "EigenPattern",
    "GroupSpec",
    "UnipotentData",
    "Verdict",
    "decide",
    "min_generators",
    "scott_lower_bound",
    "semisimple",
    "unipotent",
    "validate_class",
    "__version__",
]
