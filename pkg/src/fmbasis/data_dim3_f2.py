"""Canonical 3-dimensional p-nilpotent restricted Lie algebras over
F_2, one per isomorphism class.

Generated by scripts/enumerate_dim3_f2.py; do not edit by hand.
"""

ENTRIES = [
    ('abelian_1_1_1', [], []),
    ('abelian_2_1', [], [(2, (1, 0, 0))]),
    ('abelian_3', [], [(1, (1, 0, 0)), (2, (0, 1, 0))]),
    ('heisenberg_sqz2', [(1, 2, (1, 0, 0))], []),
    ('heisenberg_sqz0', [(1, 2, (1, 0, 0))], [(1, (1, 0, 0)), (2, (1, 0, 0))]),
]
