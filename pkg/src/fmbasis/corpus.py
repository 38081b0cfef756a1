"""Fixed corpus of restricted Lie algebras used by tests and scripts,
plus seeded random generation of valid p-nilpotent instances.

Random tables are strictly upper triangular with respect to the basis
flag, which forces nilpotency of every ad operator and termination of
every p-power chain; validation then rejects the samples that break the
Jacobi or restrictedness axioms.
"""

from __future__ import annotations

from .fields import GF, GFt
from .liealg import RestrictedLieAlgebra


def heisenberg(p: int) -> RestrictedLieAlgebra:
    """[a, b] = c, c central, zero p-map."""
    F = GF(p)
    return RestrictedLieAlgebra.from_tables(
        F, ("a", "b", "c"), brackets={(0, 1): (0, 0, 1)}, pmaps={}
    )


def heisenberg_squares(sq_a: int, sq_b: int) -> RestrictedLieAlgebra:
    """Characteristic-2 Heisenberg with a^[2] = sq_a c, b^[2] = sq_b c."""
    F = GF(2)
    pmaps = {}
    if sq_a:
        pmaps[0] = (0, 0, 1)
    if sq_b:
        pmaps[1] = (0, 0, 1)
    return RestrictedLieAlgebra.from_tables(
        F, ("a", "b", "c"), brackets={(0, 1): (0, 0, 1)}, pmaps=pmaps
    )


def powerful_p3() -> RestrictedLieAlgebra:
    """p = 3: [x, y] = z = x^[3], y and z with zero cubes; powerful."""
    F = GF(3)
    return RestrictedLieAlgebra.from_tables(
        F, ("x", "y", "z"), brackets={(0, 1): (0, 0, 1)}, pmaps={0: (0, 0, 1)}
    )


def powerful_p2() -> RestrictedLieAlgebra:
    """p = 2 powerful nonabelian: [x, y] = w with w = x^[2]^[2]."""
    F = GF(2)
    return RestrictedLieAlgebra.from_tables(
        F,
        ("x", "y", "v", "w"),
        brackets={(0, 1): (0, 0, 0, 1)},
        pmaps={0: (0, 0, 1, 0), 2: (0, 0, 0, 1)},
    )


def l_alpha_prime(p: int, alpha: int = 1) -> RestrictedLieAlgebra:
    """Abelian dim 3 over F_p: x^[p] = alpha z, y^[p] = z."""
    F = GF(p)
    return RestrictedLieAlgebra.from_tables(
        F,
        ("x", "y", "z"),
        brackets={},
        pmaps={0: (0, 0, alpha % p), 1: (0, 0, 1)},
    )


def l_alpha_ratfunc(p: int, alpha_text: str = "(t)") -> RestrictedLieAlgebra:
    """Abelian dim 3 over F_p(t): x^[p] = alpha z, y^[p] = z."""
    F = GFt(p)
    alpha = F.parse(alpha_text)
    return RestrictedLieAlgebra.from_tables(
        F,
        ("x", "y", "z"),
        brackets={},
        pmaps={0: (F.zero, F.zero, alpha), 1: (F.zero, F.zero, F.one)},
    )


def abelian_zero(p: int, n: int) -> RestrictedLieAlgebra:
    F = GF(p)
    names = tuple(f"x{i+1}" for i in range(n))
    return RestrictedLieAlgebra.from_tables(F, names, brackets={}, pmaps={})


def abelian_chain(p: int, length: int) -> RestrictedLieAlgebra:
    """One cyclic block: x1^[p] = x2, ..., x_{k-1}^[p] = x_k."""
    F = GF(p)
    names = tuple(f"x{i+1}" for i in range(length))
    pmaps = {}
    for i in range(length - 1):
        vec = [0] * length
        vec[i + 1] = 1
        pmaps[i] = tuple(vec)
    return RestrictedLieAlgebra.from_tables(F, names, brackets={}, pmaps=pmaps)


def corpus() -> dict:
    """The fixed corpus, in a stable order."""
    entries = {
        "heisenberg_p2": heisenberg(2),
        "heisenberg_p3": heisenberg(3),
        "heisenberg_p2_sq_a": heisenberg_squares(1, 0),
        "heisenberg_p2_sq_ab": heisenberg_squares(1, 1),
        "powerful_p3": powerful_p3(),
        "powerful_p2": powerful_p2(),
        "l_alpha_f2": l_alpha_prime(2, 1),
        "l_alpha_t": l_alpha_ratfunc(2, "(t)"),
        "l_alpha_t2": l_alpha_ratfunc(2, "(t^2)"),
        "abelian_zero_p2_n2": abelian_zero(2, 2),
        "abelian_chain_p2_e3": abelian_chain(2, 3),
        "abelian_chain_p3_e2": abelian_chain(3, 2),
        "abelian_zero_p5_n2": abelian_zero(5, 2),
        "abelian_chain_p7_e2": abelian_chain(7, 2),
    }
    return entries


def abelian_corpus_names():
    return [
        "l_alpha_f2",
        "l_alpha_t",
        "l_alpha_t2",
        "abelian_zero_p2_n2",
        "abelian_chain_p2_e3",
        "abelian_chain_p3_e2",
        "abelian_zero_p5_n2",
        "abelian_chain_p7_e2",
    ]


def random_valid_algebra(rng, p: int, n: int, abelian=False, max_tries=10_000):
    """Rejection-sample a valid p-nilpotent algebra on a strict flag."""
    F = GF(p)
    names = tuple(f"x{i+1}" for i in range(n))
    for _ in range(max_tries):
        brackets = {}
        if not abelian:
            for i in range(n):
                for j in range(i + 1, n):
                    vec = [0] * n
                    for k in range(j + 1, n):
                        vec[k] = rng.randrange(p)
                    if any(vec):
                        brackets[(i, j)] = tuple(vec)
        pmaps = {}
        for i in range(n):
            vec = [0] * n
            for k in range(i + 1, n):
                vec[k] = rng.randrange(p)
            if any(vec):
                pmaps[i] = tuple(vec)
        L = RestrictedLieAlgebra.from_tables(F, names, brackets, pmaps)
        if L.validate().ok:
            return L
    raise RuntimeError("random sampling failed to produce a valid algebra")


def dim3_f2_entries():
    """Canonical representatives of the bundled dimension-3 enumeration
    over F_2; regenerate with scripts/enumerate_dim3_f2.py."""
    from .data_dim3_f2 import ENTRIES

    out = {}
    F = GF(2)
    for name, brackets, pmaps in ENTRIES:
        bmap = {(i, j): tuple(vec) for i, j, vec in brackets}
        pmap = {i: tuple(vec) for i, vec in pmaps}
        out[name] = RestrictedLieAlgebra.from_tables(
            F, ("x1", "x2", "x3"), bmap, pmap
        )
    return out
