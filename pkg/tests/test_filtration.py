import random

import pytest

from fmbasis import corpus as corpus_mod, filtration, linalg
from fmbasis.fields import GF, GFt
from fmbasis.liealg import RestrictedLieAlgebra


def test_restricted_closure_examples(heis2):
    assert filtration.restricted_closure(heis2, [(1, 0, 0)]).rows == ((1, 0, 0),)
    assert filtration.restricted_closure(heis2, [(1, 0, 0), (0, 1, 0)]).dim == 3
    L = corpus_mod.l_alpha_ratfunc(2, "(t)")
    F = L.field
    sub = filtration.restricted_closure(L, [(F.one, F.zero, F.zero)])
    assert sub.dim == 2
    assert sub.contains((F.zero, F.zero, F.one))


def test_lower_central_series_examples(heis2):
    ab = corpus_mod.abelian_zero(3, 2)
    assert [g.dim for g in filtration.lower_central_series(ab)] == [2, 0]
    assert [g.dim for g in filtration.lower_central_series(heis2)] == [3, 1, 0]
    h3 = corpus_mod.heisenberg(3)
    assert [g.dim for g in filtration.lower_central_series(h3)] == [3, 1, 0]


def test_dimension_subalgebras_examples(heis2):
    data = filtration.dimension_subalgebras(heis2)
    assert [D.dim for D in data.dim_subalgebras] == [3, 1, 0]
    assert filtration.input_basis_heights(heis2, data) == (1, 1, 2)

    pw = corpus_mod.powerful_p3()
    data = filtration.dimension_subalgebras(pw)
    assert [D.dim for D in data.dim_subalgebras] == [3, 1, 1, 0]
    assert filtration.input_basis_heights(pw, data) == (1, 1, 3)

    ab = corpus_mod.abelian_zero(2, 3)
    data = filtration.dimension_subalgebras(ab)
    assert [D.dim for D in data.dim_subalgebras] == [3, 0]
    assert data.heights == (1, 1, 1)


def test_adapted_basis_realizes_chain(corpus):
    for name, L in corpus.items():
        data = filtration.dimension_subalgebras(L)
        if not data.p_nilpotent:
            continue
        F = L.field
        for m, D in enumerate(data.dim_subalgebras, start=1):
            rows = [
                v for v, h in zip(data.adapted_basis, data.heights) if h >= m
            ]
            sub = linalg.span(F, rows, L.n) if rows else linalg.zero_subspace(F, L.n)
            assert sub == D, (name, m)


def test_omega_fast_equals_oracle_on_corpus(corpus):
    for name, L in corpus.items():
        ctx = filtration.adapted_context(L)
        fast = filtration.omega_powers_fast(ctx)
        oracle = ctx.env.omega_powers_oracle()
        assert fast == oracle, name


def test_omega_fast_heisenberg_layers(heis2):
    ctx = filtration.adapted_context(heis2)
    chain = filtration.omega_powers_fast(ctx)
    assert [s.dim for s in chain] == [7, 5, 3, 1, 0]
    A = ctx.env
    weights = {
        A.render_monomial(m): sum(e * h for e, h in zip(m, ctx.heights))
        for m in A.monomials
    }
    assert weights["a"] == weights["b"] == 1
    assert weights["a*b"] == weights["c"] == 2
    assert weights["a*c"] == weights["b*c"] == 3
    assert weights["a*b*c"] == 4


def test_powerful_omega_dims():
    ctx = filtration.adapted_context(corpus_mod.powerful_p3())
    chain = filtration.omega_powers_fast(ctx)
    assert chain[0].dim == 26
    assert chain[1].dim == 24


def test_height_layer_monomials_independent(heis2):
    # monomials of weight exactly n descend to a basis of omega^n/omega^(n+1)
    ctx = filtration.adapted_context(heis2)
    chain = filtration.omega_powers_fast(ctx)
    A = ctx.env
    for n in range(1, len(chain)):
        layer = [
            m
            for m in A.monomials
            if sum(e * h for e, h in zip(m, ctx.heights)) == n
        ]
        assert len(layer) == chain[n - 1].dim - (chain[n].dim if n < len(chain) else 0)


def test_dim_subalgebras_equal_L_meet_omega(corpus):
    for name, L in corpus.items():
        data = filtration.dimension_subalgebras(L)
        ctx = filtration.adapted_context(L, data)
        oracle = ctx.env.omega_powers_oracle()
        _assert_dims_match_omega(L, data, ctx, oracle, name)


def _assert_dims_match_omega(L, data, ctx, oracle, name):
    F = L.field
    A = ctx.env
    emb = [A.to_tuple_vec(ctx.embed_input(L.basis_vec(i))) for i in range(L.n)]
    Lsub = linalg.span(F, emb, A.dim)
    for m, D in enumerate(data.dim_subalgebras, start=1):
        omega_m = (
            oracle[m - 1] if m - 1 < len(oracle) else linalg.zero_subspace(F, A.dim)
        )
        meet = linalg.intersect(Lsub, omega_m)
        D_rows = [A.to_tuple_vec(ctx.embed_input(r)) for r in D.rows]
        D_img = linalg.span(F, D_rows, A.dim) if D_rows else linalg.zero_subspace(F, A.dim)
        assert meet == D_img, (name, m)


def test_predicates_examples(heis2, corpus):
    rep = filtration.predicates(heis2)
    assert (rep.is_abelian, rep.nilpotency_class, rep.is_p_nilpotent, rep.is_powerful) == (
        False,
        2,
        True,
        False,
    )
    assert len(rep.minimal_generators) == 2

    rep = filtration.predicates(corpus["powerful_p3"])
    assert rep.is_powerful and not rep.is_abelian and rep.nilpotency_class == 2

    rep = filtration.predicates(corpus["l_alpha_t"])
    assert rep.is_abelian and rep.nilpotency_class == 1

    rep = filtration.predicates(corpus["powerful_p2"])
    assert rep.is_powerful is True


def test_minimal_generators_generate(corpus):
    for name, L in corpus.items():
        data = filtration.dimension_subalgebras(L)
        gens = filtration.minimal_generators(L, data)
        D2_dim = data.dim_subalgebras[1].dim if len(data.dim_subalgebras) > 1 else 0
        assert len(gens) == L.n - D2_dim, name
        assert filtration.restricted_closure(L, gens).dim == L.n, name


def test_is_p_nilpotent_matches_oracle_termination(corpus):
    from fmbasis.errors import NotNilpotent

    for name, L in corpus.items():
        assert filtration.is_p_nilpotent(L), name
    bad = RestrictedLieAlgebra.from_tables(GF(2), ("x",), brackets={}, pmaps={0: (1,)})
    assert not filtration.is_p_nilpotent(bad)
    with pytest.raises(NotNilpotent):
        bad.envelope.omega_powers_oracle()


def test_random_algebras_fast_equals_oracle():
    rng = random.Random(2024)
    combos = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)]
    for p, n in combos:
        for _ in range(2):
            L = corpus_mod.random_valid_algebra(rng, p, n)
            data = filtration.dimension_subalgebras(L)
            assert data.p_nilpotent
            ctx = filtration.adapted_context(L, data)
            assert filtration.omega_powers_fast(ctx) == ctx.env.omega_powers_oracle()
