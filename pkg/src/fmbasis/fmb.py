"""Filtered multiplicative bases: verification, obstruction certificates,
and the decision pipeline.

A basis B of u(L) is filtered multiplicative when products of members are
zero or members again and B meets the radical in a basis of the radical.
For p-nilpotent L the radical is the augmentation ideal, so everything
reduces to exact linear algebra against the omega-power chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import abelian as abelian_mod
from . import filtration, linalg, search
from .errors import (
    InternalInconsistency,
    NotMinimalGenerating,
    NotPNilpotent,
    ShapeMismatch,
    SizeMismatch,
)

FOUND_BASIS = "FoundBasis"
NO_BASIS_THEOREM1 = "NoBasis_Theorem1"
NO_BASIS_LEMMA2 = "NoBasis_Lemma2"
NO_BASIS_THEOREM3 = "NoBasis_Theorem3"
NO_BASIS_EXHAUSTED = "NoBasis_Exhausted"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    kind: str
    evidence: dict

    def to_dict(self):
        return {"kind": self.kind, "evidence": self.evidence}

    @property
    def definite(self) -> bool:
        return self.kind != INCONCLUSIVE


@dataclass
class VerifyReport:
    ok: bool
    size_ok: bool
    independent: bool
    radical_count_ok: bool
    closure_violations: list        # (i, j, rendered product)
    f1_audit: list                  # (level, members inside, dim omega^level)
    f2_collisions: list             # (i, j, common height)

    def summary(self) -> str:
        if self.ok:
            return "filtered multiplicative basis"
        bits = []
        if not self.size_ok:
            bits.append("wrong size")
        if not self.independent:
            bits.append("linearly dependent")
        if not self.radical_count_ok:
            bits.append("does not meet the radical in a basis")
        if self.closure_violations:
            i, j, prod = self.closure_violations[0]
            bits.append(
                f"{len(self.closure_violations)} product violations, "
                f"first at pair ({i}, {j}) -> {prod}"
            )
        return "; ".join(bits) if bits else "rejected"


def _chain_members_np(p, candidates, chain):
    """Membership masks of candidate rows in each chain subspace; RREF
    structure makes one matmul per level suffice."""
    masks = []
    C = np.asarray(candidates, dtype=np.int64) % p
    for sub in chain:
        if sub.dim == 0:
            masks.append(np.all(C % p == 0, axis=1))
            continue
        R = np.asarray(sub.rows, dtype=np.int64)
        pivots = [next(i for i, c in enumerate(row) if c) for row in sub.rows]
        residual = (C - C[:, pivots] @ R) % p
        masks.append(np.all(residual == 0, axis=1))
    return masks


def _element_height_generic(chain, vec):
    h = 0
    for m, sub in enumerate(chain, start=1):
        if sub.contains(vec):
            h = m
        else:
            break
    return h


def is_fm_basis(A, elements, chain=None) -> VerifyReport:
    """Check the defining conditions exactly: full independent size,
    products landing in the set or at zero (every violating ordered pair
    is listed), and the radical trace being a radical basis.  The chain
    audits of layer counts and of distinctness modulo each power are
    reported as diagnostics."""
    F = A.field
    if len(elements) != A.dim:
        raise SizeMismatch(f"candidate has {len(elements)} elements, u(L) has dimension {A.dim}")
    if chain is None:
        chain = A.omega_powers_oracle()

    vecs = [A.to_tuple_vec(e) for e in elements]
    sub, rank = linalg.rref(F, vecs, A.dim)
    independent = rank == A.dim

    in_omega = [A.unit_mono not in e for e in elements]
    radical_count_ok = sum(in_omega) == A.dim - 1

    closure_violations = []
    if F.is_prime_field:
        dense = A.dense
        B = np.array(vecs, dtype=np.int64)
        products = dense.mul_rows(B, B)
        member_index = {}
        for idx, v in enumerate(vecs):
            member_index.setdefault(v, idx)
        for i in range(len(elements)):
            for j in range(len(elements)):
                prod = tuple(int(x) for x in products[i, j])
                if any(prod) and prod not in member_index:
                    closure_violations.append(
                        (i, j, A.render_element(A.from_tuple_vec(prod)))
                    )
    else:
        member_keys = {A.canonical_key(e) for e in elements}
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                prod = A.mul(a, b)
                if prod and A.canonical_key(prod) not in member_keys:
                    closure_violations.append((i, j, A.render_element(prod)))

    # diagnostics: layer counts (F-I) and congruence collisions (F-II)
    f1_audit = []
    f2_collisions = []
    if F.is_prime_field:
        masks = _chain_members_np(F.p, vecs, chain)
        heights = [0] * len(elements)
        for m, mask in enumerate(masks, start=1):
            inside = int(mask.sum())
            f1_audit.append((m, inside, chain[m - 1].dim))
            for idx in range(len(elements)):
                if mask[idx]:
                    heights[idx] = max(heights[idx], m)
        by_height = {}
        for idx, h in enumerate(heights):
            by_height.setdefault(h, []).append(idx)
        for h, group in sorted(by_height.items()):
            if h >= len(chain):
                continue
            for a_pos in range(len(group)):
                for b_pos in range(a_pos + 1, len(group)):
                    i, j = group[a_pos], group[b_pos]
                    diff = tuple(
                        F.sub(x, y) for x, y in zip(vecs[i], vecs[j])
                    )
                    if any(c != F.zero for c in diff) and chain[h].contains(diff):
                        f2_collisions.append((i, j, h))
    else:
        heights = [_element_height_generic(chain, v) for v in vecs]
        for m, sub_m in enumerate(chain, start=1):
            inside = sum(1 for h in heights if h >= m)
            f1_audit.append((m, inside, sub_m.dim))
        for i in range(len(elements)):
            for j in range(i + 1, len(elements)):
                h = min(heights[i], heights[j])
                if h >= len(chain):
                    continue
                diff = tuple(F.sub(x, y) for x, y in zip(vecs[i], vecs[j]))
                if any(c != F.zero for c in diff) and chain[h].contains(diff):
                    f2_collisions.append((i, j, h))

    ok = independent and radical_count_ok and not closure_violations
    return VerifyReport(
        ok=ok,
        size_ok=True,
        independent=independent,
        radical_count_ok=radical_count_ok,
        closure_violations=closure_violations,
        f1_audit=f1_audit,
        f2_collisions=f2_collisions,
    )


# ------------------------------------------------------------------ lemma 2

@dataclass(frozen=True)
class Lemma2Outcome:
    certificate: object      # Certificate or None
    conditions: dict         # condition name -> bool
    details: dict


def lemma2_check(L, ctx=None, generators=None) -> Lemma2Outcome:
    """Evaluate the three generator conditions in omega/omega^3: brackets
    deep, pairwise products shallow, and mixed-product spans meeting
    square spans only deep.  All three together certify that no filtered
    multiplicative basis exists; any failure certifies nothing."""
    if ctx is None:
        ctx = filtration.adapted_context(L)
    A = ctx.env
    F = A.field
    chain = filtration.omega_powers_fast(ctx)
    omega3 = chain[2] if len(chain) > 2 else linalg.zero_subspace(F, A.dim)

    if generators is None:
        generators = filtration.minimal_generators(L, ctx.data)
    gens = [ctx.embed_input(g) for g in generators]
    n_expected = (
        L.n - ctx.data.dim_subalgebras[1].dim
        if len(ctx.data.dim_subalgebras) > 1
        else L.n
    )
    omega2 = chain[1] if len(chain) > 1 else linalg.zero_subspace(F, A.dim)
    gen_vecs = [A.to_tuple_vec(g) for g in gens]
    mod2_rows = list(omega2.rows) + gen_vecs
    if (
        len(gens) != n_expected
        or linalg.rref(F, mod2_rows, A.dim)[1] != omega2.dim + len(gens)
    ):
        raise NotMinimalGenerating(
            "generators are not a minimal generating set of the augmentation ideal"
        )

    n = len(gens)
    conditions = {"brackets_deep": True, "products_shallow": True, "span_intersection_deep": True}
    details = {"generators": [L.render_element(g) for g in generators]}
    fail_notes = []

    for i in range(n):
        for j in range(i + 1, n):
            comm = A.sub(A.mul(gens[i], gens[j]), A.mul(gens[j], gens[i]))
            if comm and not omega3.contains(A.to_tuple_vec(comm)):
                conditions["brackets_deep"] = False
                fail_notes.append(f"[u_{i+1}, u_{j+1}] lies outside omega^3")
    for i in range(n):
        for j in range(n):
            prod = A.mul(gens[i], gens[j])
            if not prod or omega3.contains(A.to_tuple_vec(prod)):
                conditions["products_shallow"] = False
                fail_notes.append(f"u_{i+1} u_{j+1} already lies in omega^3")
    mixed = [
        A.to_tuple_vec(A.mul(gens[i], gens[j]))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    squares = [A.to_tuple_vec(A.mul(gens[i], gens[i])) for i in range(n)]
    mixed_span = linalg.span(F, mixed, A.dim) if mixed else linalg.zero_subspace(F, A.dim)
    square_span = linalg.span(F, squares, A.dim) if squares else linalg.zero_subspace(F, A.dim)
    meet = linalg.intersect(mixed_span, square_span)
    if not all(omega3.contains(row) for row in meet.rows):
        conditions["span_intersection_deep"] = False
        fail_notes.append("mixed products meet squares outside omega^3")

    details["failed"] = fail_notes
    if all(conditions.values()):
        cert = Certificate(
            NO_BASIS_LEMMA2,
            {
                "route": "powerful_generator_obstruction",
                "generators": details["generators"],
                "conditions": dict(conditions),
            },
        )
        return Lemma2Outcome(cert, conditions, details)
    return Lemma2Outcome(None, conditions, details)


# ----------------------------------------------------------------- theorem 3

def class2_identity_residual(A, ur, us):
    """u_r u_s^2 - 2 u_s u_r u_s + u_s^2 u_r for embedded Lie elements;
    exactly zero whenever the underlying algebra has class at most two."""
    F = A.field
    us2 = A.mul(us, us)
    v1 = A.mul(ur, us2)
    v2 = A.mul(us2, ur)
    v3 = A.mul(A.mul(us, ur), us)
    two = F.add(F.one, F.one)
    return A.sub(A.add(v1, v2), A.scale(two, v3))


def theorem3_check(L, data=None):
    """Certificate for odd characteristic, nilpotency class exactly two.

    When the derived subalgebra escapes the p-power subalgebra a witness
    generator pair is recorded; a powerful algebra of class two instead
    falls under the generator obstruction, which the certificate notes."""
    if L.p <= 2:
        return None
    if data is None:
        data = filtration.dimension_subalgebras(L)
    if not data.p_nilpotent:
        raise NotPNilpotent("certificate routes need a p-nilpotent algebra")
    if filtration.nilpotency_class(L) != 2:
        return None
    gens = filtration.minimal_generators(L, data)
    lp = filtration.p_power_subalgebra(L, 1)
    witness = None
    for r in range(len(gens)):
        for s in range(r + 1, len(gens)):
            c = L.bracket(gens[r], gens[s])
            if not lp.contains(c):
                witness = (r, s, c)
                break
        if witness:
            break
    evidence = {
        "route": "class_two_odd_characteristic",
        "p": L.p,
        "nilpotency_class": 2,
        "powerful": witness is None,
    }
    A = L.envelope
    if witness is not None:
        r, s, c = witness
        ur, us = A.embed(gens[r]), A.embed(gens[s])
        residual = class2_identity_residual(A, ur, us)
        if residual:
            raise InternalInconsistency("class-2 product identity failed on the witness pair")
        evidence.update(
            {
                "witness_pair": [L.render_element(gens[r]), L.render_element(gens[s])],
                "witness_bracket": L.render_element(c),
                "bracket_outside_p_powers": True,
                "identity_residual_zero": True,
            }
        )
    else:
        evidence["note"] = (
            "derived subalgebra lies inside the p-power subalgebra; the powerful "
            "generator obstruction applies instead of a witness pair"
        )
    return Certificate(NO_BASIS_THEOREM3, evidence)


# -------------------------------------------------------------------- search

def search_fmb(L, budget=None, data=None) -> Certificate:
    """Layered exhaustive search for a filtered multiplicative basis.

    Complete (FoundBasis or NoBasis_Exhausted) whenever the enumeration
    finishes inside the node budget; a spent budget yields Inconclusive.
    Every found basis is re-verified in the input presentation before the
    certificate is emitted."""
    if budget is None:
        budget = search.SearchBudget()
    if data is None:
        data = filtration.dimension_subalgebras(L)
    ctx = filtration.adapted_context(L, data)
    chain = filtration.omega_powers_fast(ctx)
    if ctx.env.dim <= 64:
        oracle = ctx.env.omega_powers_oracle()
        if oracle != chain:
            raise InternalInconsistency("height route disagrees with the product oracle")
    outcome = search.run_search(ctx, chain, budget)
    layer_dims = [chain[i].dim - chain[i + 1].dim for i in range(len(chain) - 1)]
    if outcome.kind == "found":
        elements = [L.envelope.one()] + _transport_basis(L, ctx, outcome.basis)
        report = is_fm_basis(L.envelope, elements)
        if not report.ok:
            raise InternalInconsistency("search returned a candidate that fails verification")
        rendered = sorted(
            (L.envelope.render_element(e) for e in elements),
            key=_render_sort_key,
        )
        return Certificate(
            FOUND_BASIS,
            {
                "route": "layered_search",
                "elements": rendered,
                "nodes": outcome.nodes,
                "layer_dims": layer_dims,
            },
        )
    if outcome.kind == "exhausted":
        return Certificate(
            NO_BASIS_EXHAUSTED,
            {
                "route": "layered_search",
                "nodes": outcome.nodes,
                "layer_dims": layer_dims,
                "max_nodes": budget.max_nodes,
            },
        )
    return Certificate(
        INCONCLUSIVE,
        {
            "reason": "search node budget exhausted",
            "nodes": outcome.nodes,
            "max_nodes": budget.max_nodes,
            "layer_dims": layer_dims,
        },
    )


def _render_sort_key(text):
    return (len(text), text)


def _transport_basis(L, ctx, adapted_vectors):
    """Carry basis vectors of u(adapted) back into u(L) by evaluating each
    adapted PBW monomial as a product of embedded input-coordinate
    vectors."""
    A_in = L.envelope
    A_ad = ctx.env
    F = L.field
    mono_values = {A_ad.unit_mono: A_in.one()}
    embedded_rows = [A_in.embed(row) for row in ctx.basis_rows]
    for mono in A_ad.monomials:
        if mono == A_ad.unit_mono:
            continue
        g = max(i for i, e in enumerate(mono) if e)
        prev = mono[:g] + (mono[g] - 1,) + mono[g + 1:]
        mono_values[mono] = A_in.mul(mono_values[prev], embedded_rows[g])
    out = []
    for vec in adapted_vectors:
        elem = A_ad.from_tuple_vec(vec) if isinstance(vec, tuple) else vec
        acc = A_in.zero()
        for mono, c in elem.items():
            acc = A_in.add(acc, A_in.scale(c, mono_values[mono]))
        out.append(acc)
    return out


# -------------------------------------------------------------------- decide

def decide(L, budget=None) -> Certificate:
    """Decision pipeline: abelian decomposition, the non-perfect-field
    shape criterion, the class-2 odd-p certificate, the powerful generator
    obstruction, then exhaustive search; Inconclusive only when every
    route abstains."""
    data = filtration.dimension_subalgebras(L)
    if not data.p_nilpotent:
        raise NotPNilpotent("decide requires a p-nilpotent algebra")
    notes = []

    if filtration.is_abelian(L):
        if L.field.is_prime_field:
            dec = abelian_mod.decompose(L)
            basis = abelian_mod.monomial_fmb(L, dec)
            report = is_fm_basis(L.envelope, basis)
            if not report.ok:
                raise InternalInconsistency("decomposition basis failed verification")
            return Certificate(
                FOUND_BASIS,
                {
                    "route": "abelian_decomposition",
                    "exponents": list(dec.exponents),
                    "generators": [L.render_element(g) for g in dec.generators],
                    "elements": sorted(
                        (L.envelope.render_element(e) for e in basis),
                        key=_render_sort_key,
                    ),
                },
            )
        try:
            decision = abelian_mod.example_shape_criterion(L)
        except ShapeMismatch:
            decision = None
            notes.append("abelian over F_p(t) outside the decided shape")
        if decision is not None:
            F = L.field
            if decision.decomposes:
                basis = abelian_mod.monomial_fmb(L, decision.decomposition)
                report = is_fm_basis(L.envelope, basis)
                if not report.ok:
                    raise InternalInconsistency("shape decomposition basis failed verification")
                return Certificate(
                    FOUND_BASIS,
                    {
                        "route": "example_shape",
                        "alpha": F.render(decision.alpha),
                        "pth_root": F.render(decision.root),
                        "exponents": list(decision.decomposition.exponents),
                        "elements": sorted(
                            (L.envelope.render_element(e) for e in basis),
                            key=_render_sort_key,
                        ),
                    },
                )
            return Certificate(
                NO_BASIS_THEOREM1,
                {
                    "route": "example_shape",
                    "alpha": F.render(decision.alpha),
                    "pth_root_exists": False,
                    "argument": decision.reason,
                },
            )

    cert = theorem3_check(L, data)
    if cert is not None:
        return cert

    if not filtration.is_abelian(L) and filtration.is_powerful(L):
        outcome = lemma2_check(L)
        if outcome.certificate is not None:
            return outcome.certificate
        notes.append(
            "powerful, but the generator conditions fail: " + "; ".join(outcome.details["failed"])
        )

    if L.field.is_prime_field:
        if budget is None:
            budget = (
                search.SearchBudget()
                if L.envelope.dim <= 8
                else search.SearchBudget(max_nodes=20_000)
            )
        cert = search_fmb(L, budget, data)
        if notes and cert.kind in (NO_BASIS_EXHAUSTED, INCONCLUSIVE, FOUND_BASIS):
            cert.evidence.setdefault("notes", []).extend(notes)
        return cert

    notes.append("exhaustive search is restricted to prime coefficient fields")
    return Certificate(INCONCLUSIVE, {"reason": "; ".join(notes)})


# ---------------------------------------------------------------- re-checking

def verify_certificate(L, cert: Certificate) -> bool:
    """Independently re-check a certificate: found bases re-verify, the
    obstruction routes replay their cited conditions, and exhaustion
    replays the search with the same budget."""
    kind = cert.kind
    ev = cert.evidence
    if kind == FOUND_BASIS:
        A = L.envelope
        elements = [A.parse_element(text) for text in ev["elements"]]
        return is_fm_basis(A, elements).ok
    if kind == NO_BASIS_THEOREM1:
        decision = abelian_mod.example_shape_criterion(L)
        return (not decision.decomposes) and L.field.render(decision.alpha) == ev["alpha"]
    if kind == NO_BASIS_LEMMA2:
        gens = [_parse_lie_element(L, text) for text in ev["generators"]]
        outcome = lemma2_check(L, generators=gens)
        return outcome.certificate is not None
    if kind == NO_BASIS_THEOREM3:
        fresh = theorem3_check(L)
        return fresh is not None and fresh.evidence["powerful"] == ev["powerful"]
    if kind == NO_BASIS_EXHAUSTED:
        budget = search.SearchBudget(max_nodes=ev.get("max_nodes"))
        replay = search_fmb(L, budget)
        return replay.kind == NO_BASIS_EXHAUSTED and replay.evidence["nodes"] == ev["nodes"]
    if kind == INCONCLUSIVE:
        return True
    return False


def _parse_lie_element(L, text):
    elem = L.envelope.parse_element(text)
    vec = L.envelope.project_to_L(elem)
    if vec is None:
        raise InternalInconsistency(f"{text!r} is not a Lie element")
    return vec
