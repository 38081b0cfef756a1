import random

import pytest

from fmbasis import abelian, corpus as corpus_mod, filtration, fmb, linalg
from fmbasis.errors import NotAbelian, NotPrimeField, ShapeMismatch
from fmbasis.fields import GF, GFt
from fmbasis.liealg import RestrictedLieAlgebra


def test_decompose_examples():
    La = corpus_mod.l_alpha_prime(2, 1)
    dec = abelian.decompose(La)
    assert dec.exponents == (2, 1)
    chain = []
    for g, e in zip(dec.generators, dec.exponents):
        v = g
        for _ in range(e):
            chain.append(v)
            v = La.pmap(v)
        assert La.is_zero_vec(v)
    assert linalg.span(La.field, chain, 3).dim == 3

    zero = corpus_mod.abelian_zero(3, 4)
    assert abelian.decompose(zero).exponents == (1, 1, 1, 1)

    xz = RestrictedLieAlgebra.from_tables(
        GF(3), ("x", "y", "z"), brackets={}, pmaps={0: (0, 0, 1)}
    )
    dec = abelian.decompose(xz)
    assert dec.exponents == (2, 1)
    assert dec.generators == ((1, 0, 0), (0, 1, 0))


def test_decompose_errors(heis2):
    with pytest.raises(NotAbelian):
        abelian.decompose(heis2)
    with pytest.raises(NotPrimeField):
        abelian.decompose(corpus_mod.l_alpha_ratfunc(2, "(t)"))


def test_exponent_multiset_is_basis_invariant():
    rng = random.Random(31)
    L = RestrictedLieAlgebra.from_tables(
        GF(2), ("w", "x", "y", "z"), brackets={}, pmaps={0: (0, 0, 1, 0), 2: (0, 0, 0, 1)}
    )
    base = tuple(sorted(abelian.decompose(L).exponents))
    for _ in range(8):
        while True:
            rows = [tuple(rng.randrange(2) for _ in range(4)) for _ in range(4)]
            if linalg.rref(GF(2), rows, 4)[1] == 4:
                break
        L2, _, _ = L.change_basis(rows)
        assert tuple(sorted(abelian.decompose(L2).exponents)) == base


def test_monomial_fmb_small_cases():
    one_block = corpus_mod.abelian_zero(2, 1)
    A = one_block.envelope
    basis = abelian.monomial_fmb(one_block, abelian.decompose(one_block))
    assert sorted(A.render_element(b) for b in basis) == ["1", "x1"]

    chain2 = corpus_mod.abelian_chain(2, 2)
    A = chain2.envelope
    basis = abelian.monomial_fmb(chain2, abelian.decompose(chain2))
    assert len(basis) == 4
    rendered = {A.render_element(b) for b in basis}
    assert rendered == {"1", "x1", "x2", "x1*x2"}

    flat = corpus_mod.abelian_zero(2, 2)
    A = flat.envelope
    basis = abelian.monomial_fmb(flat, abelian.decompose(flat))
    assert {A.render_element(b) for b in basis} == {"1", "x1", "x2", "x1*x2"}


def test_monomial_fmb_passes_verifier(corpus):
    for name in ("l_alpha_f2", "abelian_chain_p2_e3", "abelian_chain_p3_e2", "abelian_zero_p5_n2"):
        L = corpus[name]
        basis = abelian.monomial_fmb(L, abelian.decompose(L))
        assert fmb.is_fm_basis(L.envelope, basis).ok, name


def test_decompose_regenerates_algebra(corpus):
    for name in ("l_alpha_f2", "abelian_chain_p3_e2", "abelian_zero_p2_n2"):
        L = corpus[name]
        dec = abelian.decompose(L)
        assert filtration.restricted_closure(L, dec.generators).dim == L.n
        assert sum(dec.exponents) == L.n
        assert list(dec.exponents) == sorted(dec.exponents, reverse=True)


def test_example_shape_criterion():
    F = GFt(2)
    no = abelian.example_shape_criterion(corpus_mod.l_alpha_ratfunc(2, "(t)"))
    assert not no.decomposes and no.root is None

    yes = abelian.example_shape_criterion(corpus_mod.l_alpha_ratfunc(2, "(t^2)"))
    assert yes.decomposes and yes.root == F.t
    assert yes.decomposition.exponents == (2, 1)

    one = abelian.example_shape_criterion(corpus_mod.l_alpha_ratfunc(2, "1"))
    assert one.decomposes


@pytest.mark.parametrize(
    "alpha,expected",
    [
        ("(t)", False),
        ("(t^2)", True),
        ("(t^3)", False),
        ("(t^4)", True),
        ("(t^2+1)", True),       # (t+1)^2
        ("(t^2+t)", False),
        ("(1)/(t^2)", True),
        ("(1)/(t)", False),
        ("(t^2)/(t^2+1)", True),
    ],
)
def test_shape_criterion_iff_pth_root(alpha, expected):
    F = GFt(2)
    L = corpus_mod.l_alpha_ratfunc(2, alpha)
    decision = abelian.example_shape_criterion(L)
    assert decision.decomposes == expected
    assert decision.decomposes == (F.pth_root(F.parse(alpha)) is not None)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        abelian.example_shape_criterion(corpus_mod.abelian_zero(2, 3).change_basis(
            [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        )[0])
    F = GFt(2)
    wrong = RestrictedLieAlgebra.from_tables(
        F, ("x", "y", "z"), brackets={}, pmaps={0: (F.zero, F.zero, F.t)}
    )
    with pytest.raises(ShapeMismatch):
        abelian.example_shape_criterion(wrong)
