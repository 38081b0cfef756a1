import pytest

from fmbasis import corpus as corpus_mod, filtration, fmb, search


def test_search_heisenberg_finds_verified_basis(heis2):
    cert = fmb.search_fmb(heis2)
    assert cert.kind == fmb.FOUND_BASIS
    A = heis2.envelope
    elements = [A.parse_element(s) for s in cert.evidence["elements"]]
    assert fmb.is_fm_basis(A, elements).ok
    assert cert.evidence["layer_dims"] == [2, 2, 2, 1]


def test_search_small_abelian():
    flat = corpus_mod.abelian_zero(2, 2)
    cert = fmb.search_fmb(flat)
    assert cert.kind == fmb.FOUND_BASIS
    assert sorted(cert.evidence["elements"], key=len) == ["1", "x1", "x2", "x1*x2"]

    single = corpus_mod.abelian_zero(2, 1)
    cert = fmb.search_fmb(single)
    assert cert.kind == fmb.FOUND_BASIS
    assert sorted(cert.evidence["elements"]) == ["1", "x1"]


def test_search_exhausts_all_squares_heisenberg():
    L = corpus_mod.heisenberg_squares(1, 1)
    cert = fmb.search_fmb(L)
    assert cert.kind == fmb.NO_BASIS_EXHAUSTED
    assert cert.evidence["nodes"] > 0


def test_search_single_square_heisenberg_finds_basis():
    # isomorphic to the zero-square Heisenberg, so a basis must exist
    L = corpus_mod.heisenberg_squares(1, 0)
    cert = fmb.search_fmb(L)
    assert cert.kind == fmb.FOUND_BASIS


def test_budget_interrupts():
    h3 = corpus_mod.heisenberg(3)
    cert = fmb.search_fmb(h3, search.SearchBudget(max_nodes=50))
    assert cert.kind == fmb.INCONCLUSIVE
    assert cert.evidence["nodes"] == 51


def test_search_deterministic_node_counts(heis2):
    a = fmb.search_fmb(heis2)
    b = fmb.search_fmb(heis2)
    assert a.evidence["nodes"] == b.evidence["nodes"]
    assert a.evidence["elements"] == b.evidence["elements"]
    L = corpus_mod.heisenberg_squares(1, 1)
    x = fmb.search_fmb(L)
    y = fmb.search_fmb(L)
    assert x.evidence["nodes"] == y.evidence["nodes"]


def test_search_on_adapted_presentation():
    # input basis not height-adapted: z sits first, generators later
    from fmbasis.fields import GF
    from fmbasis.liealg import RestrictedLieAlgebra

    L = RestrictedLieAlgebra.from_tables(
        GF(2), ("c", "a", "b"), brackets={(1, 2): (1, 0, 0)}, pmaps={}
    )
    data = filtration.dimension_subalgebras(L)
    assert filtration.input_basis_heights(L, data) == (2, 1, 1)
    cert = fmb.search_fmb(L)
    assert cert.kind == fmb.FOUND_BASIS
    A = L.envelope
    elements = [A.parse_element(s) for s in cert.evidence["elements"]]
    assert fmb.is_fm_basis(A, elements).ok


def test_search_odd_characteristic_generic_space():
    # dim u = 9 over F_3: the generic space must also complete quickly
    chain = corpus_mod.abelian_chain(3, 2)
    cert = fmb.search_fmb(chain)
    assert cert.kind == fmb.FOUND_BASIS

    flat = corpus_mod.abelian_zero(3, 2)
    cert = fmb.search_fmb(flat)
    assert cert.kind == fmb.FOUND_BASIS


def test_dim3_catalogue_entries_load_and_validate():
    entries = corpus_mod.dim3_f2_entries()
    assert len(entries) == 5
    for name, L in entries.items():
        assert L.validate().ok, name
        assert filtration.is_p_nilpotent(L), name
    kinds = {name: fmb.search_fmb(L).kind for name, L in entries.items()}
    assert kinds["heisenberg_sqz2"] == fmb.FOUND_BASIS
    assert kinds["heisenberg_sqz0"] == fmb.NO_BASIS_EXHAUSTED
    for name in ("abelian_1_1_1", "abelian_2_1", "abelian_3"):
        assert kinds[name] == fmb.FOUND_BASIS
