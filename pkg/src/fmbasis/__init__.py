"""Filtered multiplicative bases of restricted enveloping algebras.

Exact machinery for p-nilpotent restricted Lie algebras over F_p and
F_p(t): PBW normal forms in u(L), augmentation-ideal filtrations and
heights, abelian cyclic decompositions, obstruction certificates, and a
complete layered basis search at small dimensions.
"""

__version__ = "0.1.0"
