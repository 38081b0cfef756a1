"""Cyclic decompositions of abelian p-nilpotent restricted Lie algebras.

Over F_p the p-map of an abelian algebra is an honest linear nilpotent
operator (Frobenius fixes the prime field), so decomposing L into cyclic
restricted subalgebras is the block decomposition of that operator.  The
resulting truncated-polynomial monomial set is a filtered multiplicative
basis of u(L).

Over F_p(t) only one three-dimensional shape is decided: p-maps
x -> alpha z, y -> z, z -> 0.  There a decomposition exists exactly when
alpha has a p-th root; otherwise any element of exponent one lies in the
span of z and no cyclic complement can exist.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import filtration, linalg
from .errors import (
    InternalInconsistency,
    NotAbelian,
    NotPNilpotent,
    NotPrimeField,
    ShapeMismatch,
)


@dataclass(frozen=True)
class CyclicDecomposition:
    generators: tuple   # Lie elements, one per cyclic summand
    exponents: tuple    # nonincreasing positive ints, summing to dim L

    @property
    def block_count(self):
        return len(self.generators)


@dataclass(frozen=True)
class Decision:
    """Outcome of the non-perfect-field shape criterion."""

    decomposes: bool
    alpha: object
    root: object                      # p-th root of alpha when it exists
    decomposition: object             # CyclicDecomposition or None
    reason: str


def _pmap_matrix_columns(L):
    """Columns of the p-map as a linear operator; abelian + F_p only."""
    return [L.pmap_table[i] for i in range(L.n)]


def _apply_columns(F, cols, vec):
    n = len(vec)
    out = [F.zero] * n
    for c, col in zip(vec, cols):
        if c != F.zero:
            for k, x in enumerate(col):
                if x != F.zero:
                    out[k] = F.add(out[k], F.mul(c, x))
    return tuple(out)


def decompose(L) -> CyclicDecomposition:
    """Cyclic decomposition over F_p: the nilpotent-operator block form of
    the p-map, largest blocks first, lowest-index echelon completions."""
    if not L.field.is_prime_field:
        raise NotPrimeField("general cyclic decomposition is implemented over F_p only")
    if not filtration.is_abelian(L):
        raise NotAbelian("cyclic decomposition needs an abelian algebra")
    F = L.field
    n = L.n
    cols = _pmap_matrix_columns(L)

    # kernel chain of T^k; K[0] = 0, K[e] = L
    def power_apply(vec, k):
        for _ in range(k):
            vec = _apply_columns(F, cols, vec)
        return vec

    kernels = [linalg.zero_subspace(F, n)]
    k = 1
    while True:
        rows = [power_apply(linalg.unit_vector(F, n, i), k) for i in range(n)]
        ker = linalg.kernel(F, rows, n)
        kernels.append(ker)
        if ker.dim == n:
            break
        if k > n:
            raise NotPNilpotent("p-map is not nilpotent")
        k += 1
    e_max = len(kernels) - 1

    generators, exponents = [], []
    for k in range(e_max, 0, -1):
        K_k = kernels[k]
        K_prev = kernels[k - 1]
        K_next = kernels[k + 1] if k + 1 < len(kernels) else linalg.full_subspace(F, n)
        image_rows = [power_apply(row, 1) for row in K_next.rows]
        barrier = linalg.span(F, list(K_prev.rows) + image_rows, n)
        for v in linalg.complete_basis(barrier, K_k):
            generators.append(v)
            exponents.append(k)

    # direct-sum audit: all chain vectors together must be a basis of L
    chain_vectors = []
    for g, e in zip(generators, exponents):
        v = g
        for _ in range(e):
            chain_vectors.append(v)
            v = power_apply(v, 1)
        if any(c != F.zero for c in v):
            raise InternalInconsistency("cyclic generator exponent mismatch")
    total = linalg.span(F, chain_vectors, n) if chain_vectors else linalg.zero_subspace(F, n)
    if total.dim != n or len(chain_vectors) != n:
        raise InternalInconsistency("cyclic chains do not decompose the algebra")
    return CyclicDecomposition(tuple(generators), tuple(exponents))


def monomial_fmb(L, dec: CyclicDecomposition):
    """All products g_1^{a_1} ... g_k^{a_k} with 0 <= a_i < p^{e_i}, in
    u(L) normal form; the truncated-polynomial basis, of size p^dim L."""
    A = L.envelope
    out = [A.one()]
    for g, e in zip(dec.generators, dec.exponents):
        gen = A.embed(g)
        powers = [A.one()]
        for _ in range(L.p ** e - 1):
            powers.append(A.mul(powers[-1], gen))
        out = [A.mul(prev, pw) for prev in out for pw in powers]
    if len(out) != A.dim:
        raise InternalInconsistency("monomial basis has the wrong size")
    return out


_SHAPE_DOC = "expected an abelian dim-3 algebra with p-maps x -> alpha z, y -> z, z -> 0"


def match_example_shape(L):
    """Return alpha when the tables match the shape above (up to the fixed
    basis order); raise ShapeMismatch otherwise."""
    F = L.field
    if L.n != 3:
        raise ShapeMismatch(_SHAPE_DOC)
    if not filtration.is_abelian(L):
        raise ShapeMismatch(_SHAPE_DOC)
    px, py, pz = L.pmap_table
    if any(c != F.zero for c in (px[0], px[1], py[0], py[1])):
        raise ShapeMismatch(_SHAPE_DOC)
    if any(c != F.zero for c in pz):
        raise ShapeMismatch(_SHAPE_DOC)
    if py[2] != F.one:
        raise ShapeMismatch(_SHAPE_DOC)
    return px[2]


def example_shape_criterion(L) -> Decision:
    """Decide cyclic decomposability for the matched shape over any of the
    supported fields: decomposable iff alpha is a p-th power."""
    F = L.field
    alpha = match_example_shape(L)
    root = F.pth_root(alpha)
    if root is None:
        return Decision(
            decomposes=False,
            alpha=alpha,
            root=None,
            decomposition=None,
            reason=(
                "any b = k1 x + k2 y + k3 z with b^[p] = 0 satisfies "
                "(k1^p alpha + k2^p) = 0, which forces k1 = k2 = 0 since alpha "
                "has no p-th root; exponent-one elements all lie in span{z}, "
                "yet z also generates the p-power of any exponent-two summand"
            ),
        )
    if alpha == F.zero:
        gens = ((F.zero, F.one, F.zero), (F.one, F.zero, F.zero))
        exps = (2, 1)
    else:
        # (x - root*y)^[p] = (alpha - root^p) z = 0
        gens = (
            (F.one, F.zero, F.zero),
            (F.one, F.neg(root), F.zero),
        )
        exps = (2, 1)
    dec = CyclicDecomposition(gens, exps)
    _audit_shape_decomposition(L, dec)
    return Decision(
        decomposes=True,
        alpha=alpha,
        root=root,
        decomposition=dec,
        reason="alpha has a p-th root, so an exponent-one complement exists",
    )


def _audit_shape_decomposition(L, dec):
    F = L.field
    chain = []
    for g, e in zip(dec.generators, dec.exponents):
        v = g
        for _ in range(e):
            chain.append(v)
            v = L.pmap(v)
        if any(c != F.zero for c in v):
            raise InternalInconsistency("shape decomposition: exponent mismatch")
    if linalg.span(F, chain, L.n).dim != L.n:
        raise InternalInconsistency("shape decomposition: chains not direct")
