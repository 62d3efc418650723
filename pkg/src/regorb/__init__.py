"""Certified regular-orbit and base-size toolkit for linear groups acting on
defining-characteristic highest-weight modules.

Subpackages by role:

- ``rootsys``: type A root systems, Weyl orbits, dominance order
- ``charmod``: module characters and dimensions in characteristic p
- ``nets``: weight strings, Psi-nets, codimension lower bounds c(s), c(u)
- ``counts``: exact q-expression bounds for prime-order element counts
- ``verdict``: assembly and certified evaluation of regular-orbit inequalities
- ``oracle``: brute-force finite-module ground truth at desk scale
- ``cli``: command-line driver
"""

__version__ = "0.1.0"
