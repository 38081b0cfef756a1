"""Filtration structure of a p-nilpotent restricted Lie algebra: lower
central series, p-power subalgebras, restricted closures, dimension
subalgebras, heights, adapted bases, and structural predicates.

Power subalgebras need the span of p-th powers of *all* elements of a
subspace, and the p-map is only semilinear.  Two exact routes cover every
accepted case: when the nilpotency class is below p the p-map is additive
on L, so basis images span the image; otherwise, over a finite field, the
subspace is small enough to enumerate outright.  Nonabelian algebras of
class >= p over F_p(t) are rejected rather than approximated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import linalg
from .errors import ComputationLimit, NotPNilpotent, UnsupportedField
from .linalg import Subspace

_ENUMERATION_CAP = 100_000


@dataclass(frozen=True)
class FiltrationData:
    gammas: tuple            # lower central series, down to the first zero
    power_subalgebras: dict  # (i, j) -> restricted subalgebra of p^j powers of gamma_i
    dim_subalgebras: tuple   # D_1, D_2, ..., ending with the first zero
    heights: tuple           # height of each adapted basis vector
    adapted_basis: tuple     # vectors in input coordinates, heights nondecreasing
    p_nilpotent: bool

    def height_of(self, vec) -> int:
        """Largest m with vec inside D_m; 0 only for vectors outside L = D_1."""
        h = 0
        for m, D in enumerate(self.dim_subalgebras, start=1):
            if D.contains(vec):
                h = m
            else:
                break
        return h


@dataclass(frozen=True)
class StructReport:
    is_abelian: bool
    nilpotency_class: int
    is_p_nilpotent: bool
    is_powerful: object      # bool, or None when not computable over F_p(t)
    minimal_generators: tuple

    def to_dict(self, alg):
        return {
            "abelian": self.is_abelian,
            "nilpotency_class": self.nilpotency_class,
            "p_nilpotent": self.is_p_nilpotent,
            "powerful": self.is_powerful,
            "minimal_generators": [alg.render_element(g) for g in self.minimal_generators],
        }


def lower_central_series(L):
    """gamma_1 = L, gamma_{i+1} = span[gamma_i, L], down to the first
    repetition (which is zero exactly when L is nilpotent)."""
    F = L.field
    chain = [linalg.full_subspace(F, L.n)]
    while True:
        prev = chain[-1]
        brackets = []
        for row in prev.rows:
            for j in range(L.n):
                brackets.append(L.bracket(row, L.basis_vec(j)))
        nxt = linalg.span(F, brackets, L.n) if brackets else linalg.zero_subspace(F, L.n)
        chain.append(nxt)
        if nxt.dim == prev.dim or nxt.is_zero():
            return chain


def is_nilpotent(L) -> bool:
    return lower_central_series(L)[-1].is_zero()


def nilpotency_class(L) -> int:
    chain = lower_central_series(L)
    if not chain[-1].is_zero():
        raise NotPNilpotent("lower central series does not reach zero")
    return len(chain) - 1


def is_abelian(L) -> bool:
    F = L.field
    return all(
        all(c == F.zero for c in L.bracket_table[i][j])
        for i in range(L.n)
        for j in range(i + 1, L.n)
    )


def _class_or_inf(L):
    try:
        return nilpotency_class(L)
    except NotPNilpotent:
        return math.inf


def _iter_elements(F, rows):
    """All vectors of the row space; finite fields only."""
    dim = len(rows)
    total = F.p ** dim
    if total > _ENUMERATION_CAP:
        raise ComputationLimit(f"cannot enumerate {total} subspace elements")
    n = len(rows[0]) if rows else 0
    for coeffs in itertools.product(F.elements(), repeat=dim):
        v = [F.zero] * n
        for c, row in zip(coeffs, rows):
            if c != F.zero:
                for i, x in enumerate(row):
                    if x != F.zero:
                        v[i] = F.add(v[i], F.mul(c, x))
        yield tuple(v)


def power_image_span(L, U: Subspace, j: int, klass=None) -> Subspace:
    """span of { v^[p]^j : v in U }, exactly.

    Additive route when class(L) < p (every correction term of the p-map
    lands in gamma_p = 0, so basis images span); element enumeration
    otherwise."""
    F = L.field
    if j == 0 or U.is_zero():
        return U
    if klass is None:
        klass = _class_or_inf(L)
    if klass < L.p:
        images = [L.pmap_iterated(row, j) for row in U.rows]
        return linalg.span(F, images, L.n)
    if F.is_prime_field:
        images = [L.pmap_iterated(v, j) for v in _iter_elements(F, list(U.rows))]
        return linalg.span(F, images, L.n)
    raise UnsupportedField(
        "p-power subalgebras over F_p(t) require nilpotency class below p"
    )


def restricted_closure(L, vectors) -> Subspace:
    """Smallest subspace containing the vectors and closed under the
    bracket and the p-map."""
    F = L.field
    vectors = [tuple(v) for v in vectors]
    current = linalg.span(F, vectors, L.n) if vectors else linalg.zero_subspace(F, L.n)
    klass = None
    while True:
        if current.is_zero():
            return current
        new_rows = list(current.rows)
        for a in current.rows:
            for b in current.rows:
                new_rows.append(L.bracket(a, b))
        if klass is None:
            klass = _class_or_inf(L)
        new_rows.extend(power_image_span(L, current, 1, klass=klass).rows)
        nxt = linalg.span(F, new_rows, L.n)
        if nxt.dim == current.dim:
            return nxt
        current = nxt


def dimension_subalgebras(L) -> FiltrationData:
    """The chain D_m = sum over i p^j >= m of the restricted subalgebra
    generated by the p^j-th powers of gamma_i, with heights and a basis
    adapted to the chain.

    A power chain still alive after dim L iterations certifies an element
    of infinite exponent, hence a chain that never reaches zero; the data
    is then truncated and flagged."""
    F = L.field
    if not is_nilpotent(L):
        raise NotPNilpotent("algebra is not nilpotent, so no dimension chain reaches zero")
    klass = nilpotency_class(L)
    gammas = lower_central_series(L)
    nonzero_gammas = [g for g in gammas if not g.is_zero()]
    powers = {}
    max_ipj = 1
    p_nilpotent = True
    for i, gamma in enumerate(nonzero_gammas, start=1):
        for j in range(0, L.n + 1):
            img = power_image_span(L, gamma, j, klass=klass)
            sub = restricted_closure(L, img.rows) if img.rows else img
            powers[(i, j)] = sub
            if sub.is_zero():
                break
            max_ipj = max(max_ipj, i * L.p ** j)
        else:
            p_nilpotent = False

    def d_sub(m):
        rows = []
        for (i, j), sub in powers.items():
            if i * L.p ** j >= m:
                rows.extend(sub.rows)
        return linalg.span(F, rows, L.n) if rows else linalg.zero_subspace(F, L.n)

    chain = [linalg.full_subspace(F, L.n)]
    m = 2
    while not chain[-1].is_zero() and m <= max_ipj + 1:
        chain.append(d_sub(m))
        m += 1
    if not chain[-1].is_zero():
        p_nilpotent = False

    adapted, heights = _adapted_basis(F, L.n, chain)
    return FiltrationData(
        gammas=tuple(gammas),
        power_subalgebras=powers,
        dim_subalgebras=tuple(chain),
        heights=tuple(heights),
        adapted_basis=tuple(adapted),
        p_nilpotent=p_nilpotent,
    )


def _adapted_basis(F, n, chain):
    """Extend echelon bases from the deepest nonzero D_m upward, so every
    D_m is the span of the vectors of height >= m.  Output is ordered
    shallow-to-deep (generators first); within one height the echelon row
    order follows the input coordinate order."""
    stages = []
    current = linalg.zero_subspace(F, n)
    for m in range(len(chain), 0, -1):
        D = chain[m - 1]
        added = linalg.complete_basis(current, D)
        if added:
            stages.append((m, added))
            current = linalg.span(F, list(current.rows) + list(added), n)
    adapted, heights = [], []
    for m, vecs in sorted(stages, key=lambda s: s[0]):
        for v in vecs:
            adapted.append(v)
            heights.append(m)
    return adapted, heights


def input_basis_heights(L, data: FiltrationData):
    return tuple(data.height_of(L.basis_vec(i)) for i in range(L.n))


def is_p_nilpotent(L) -> bool:
    try:
        return dimension_subalgebras(L).p_nilpotent
    except NotPNilpotent:
        return False


def p_power_subalgebra(L, i: int) -> Subspace:
    """L^[p]^i: the restricted subalgebra generated by all p^i-th powers."""
    img = power_image_span(L, linalg.full_subspace(L.field, L.n), i)
    return restricted_closure(L, img.rows) if img.rows else img


def derived_subalgebra(L) -> Subspace:
    return lower_central_series(L)[1]


def is_powerful(L):
    """L' inside L^[p] for p > 2, inside L^[p]^2 for p = 2; None when the
    power subalgebra cannot be computed exactly over F_p(t)."""
    try:
        target = p_power_subalgebra(L, 2 if L.p == 2 else 1)
    except (UnsupportedField, ComputationLimit):
        return None
    return derived_subalgebra(L) <= target


def minimal_generators(L, data: FiltrationData | None = None):
    """Lifts of a basis of L/D_2, echelon-completed deterministically."""
    if data is None:
        data = dimension_subalgebras(L)
    F = L.field
    D2 = (
        data.dim_subalgebras[1]
        if len(data.dim_subalgebras) > 1
        else linalg.zero_subspace(F, L.n)
    )
    return tuple(linalg.complete_basis(D2, linalg.full_subspace(F, L.n)))


def predicates(L, data: FiltrationData | None = None) -> StructReport:
    if data is None:
        data = dimension_subalgebras(L)
    return StructReport(
        is_abelian=is_abelian(L),
        nilpotency_class=nilpotency_class(L),
        is_p_nilpotent=data.p_nilpotent,
        is_powerful=is_powerful(L),
        minimal_generators=minimal_generators(L, data),
    )


# ---------------------------------------------------------------- adapted u(L)

@dataclass
class AdaptedContext:
    """u(L) presented on a height-adapted basis, with transport of input
    coordinates into it.  The height route needs PBW monomials over a
    basis whose spans realize every D_m."""

    original: object
    algebra: object          # the adapted presentation
    env: object
    heights: tuple
    data: FiltrationData
    basis_rows: tuple        # adapted basis vectors in input coordinates
    to_adapted: object       # input coords -> adapted coords

    def embed_input(self, vec):
        return self.env.embed(self.to_adapted(vec))


def adapted_context(L, data: FiltrationData | None = None) -> AdaptedContext:
    if data is None:
        data = dimension_subalgebras(L)
    if not data.p_nilpotent:
        raise NotPNilpotent("filtration machinery needs a p-nilpotent algebra")
    rows = list(data.adapted_basis)
    if all(rows[i] == L.basis_vec(i) for i in range(L.n)):
        alg, to_new = L, tuple
    else:
        names, used = [], set()
        for i, row in enumerate(rows):
            support = [k for k, c in enumerate(row) if c != L.field.zero]
            if len(support) == 1 and row[support[0]] == L.field.one:
                candidate = L.names[support[0]]
            else:
                candidate = f"g{i + 1}"
            while candidate in used:
                candidate += "_"
            names.append(candidate)
            used.add(candidate)
        alg, _, to_new = L.change_basis(rows, names=names)
    return AdaptedContext(
        original=L,
        algebra=alg,
        env=alg.envelope,
        heights=data.heights,
        data=data,
        basis_rows=tuple(tuple(r) for r in rows),
        to_adapted=to_new,
    )


def omega_powers_fast(ctx: AdaptedContext):
    """omega^n as the span of PBW monomials of weight at least n, where a
    monomial's weight is its height-weighted degree sum."""
    A = ctx.env
    F = A.field
    weights = [sum(e * h for e, h in zip(mono, ctx.heights)) for mono in A.monomials]
    max_w = max(weights)
    chain = []
    for m in range(1, max_w + 2):
        rows = [linalg.unit_vector(F, A.dim, i) for i, w in enumerate(weights) if w >= m]
        chain.append(
            linalg.span(F, rows, A.dim) if rows else linalg.zero_subspace(F, A.dim)
        )
    return chain
