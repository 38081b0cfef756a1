#!/usr/bin/env python3
"""Enumerate every 3-dimensional p-nilpotent restricted Lie algebra over
F_2 and reduce the list to canonical representatives under basis change.

Structure tables are encoded as six 3-bit masks: the brackets [x1,x2],
[x1,x3], [x2,x3] and the squares of x1, x2, x3.  All 2^18 tables are
screened for the Jacobi and restrictedness axioms with bit arithmetic;
survivors are reduced modulo GL(3, F_2) by orbit marking (a filtered
multiplicative basis survives any change of basis, so one representative
per isomorphism class suffices).  The representatives are verified with
the package machinery and written to src/fmbasis/data_dim3_f2.py.

Run from the repository root:  python3 scripts/enumerate_dim3_f2.py
"""

import itertools
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from fmbasis import abelian, filtration  # noqa: E402
from fmbasis.fields import GF  # noqa: E402
from fmbasis.liealg import RestrictedLieAlgebra  # noqa: E402


def bits(v):
    out = []
    while v:
        out.append((v & -v).bit_length() - 1)
        v &= v - 1
    return out


def encode(c12, c13, c23, p1, p2, p3):
    return (c12, c13, c23, p1, p2, p3)


def bracket_table(code):
    c12, c13, c23 = code[0], code[1], code[2]
    B = [[0] * 3 for _ in range(3)]
    B[0][1] = B[1][0] = c12          # char 2: antisymmetric = symmetric
    B[0][2] = B[2][0] = c13
    B[1][2] = B[2][1] = c23
    return B


def br_vec(B, v, k):
    out = 0
    for l in bits(v):
        out ^= B[l][k]
    return out


def is_valid(code):
    B = bracket_table(code)
    pm = code[3:]
    # Jacobi on the only triple
    jac = br_vec(B, B[0][1], 2) ^ br_vec(B, B[1][2], 0) ^ br_vec(B, B[0][2], 1)
    if jac:
        return False
    # ad(x_i)^2 = ad(x_i^[2])
    for i in range(3):
        for j in range(3):
            lhs = 0
            for l in bits(B[i][j]):
                lhs ^= B[i][l]
            rhs = br_vec(B, pm[i], j)
            if lhs != rhs:
                return False
    return True


def gl3_f2():
    mats = []
    for rows in itertools.product(range(1, 8), repeat=3):
        # invertible iff rows are independent: XOR combinations all nonzero
        r1, r2, r3 = rows
        if r1 ^ r2 and r1 ^ r3 and r2 ^ r3 and r1 ^ r2 ^ r3:
            mats.append(rows)
    assert len(mats) == 168
    return mats


def invert(M, group_lookup):
    for candidate in group_lookup:
        # compose: rows of candidate expressed through M
        ok = True
        for i in range(3):
            acc = 0
            for k in bits(candidate[i]):
                acc ^= M[k]
            if acc != 1 << i:
                ok = False
                break
        if ok:
            return candidate
    raise AssertionError("matrix not invertible")


def to_coords(v, Minv):
    out = 0
    for i in bits(v):
        out ^= Minv[i]
    return out


def transform(code, M, Minv):
    B = bracket_table(code)
    pm = code[3:]
    new_brackets = []
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        w = 0
        for k in bits(M[i]):
            for l in bits(M[j]):
                w ^= B[k][l]
        new_brackets.append(to_coords(w, Minv))
    new_pm = []
    for i in range(3):
        w = 0
        row = bits(M[i])
        for k in row:
            w ^= pm[k]
        for a in range(len(row)):
            for b in range(a + 1, len(row)):
                w ^= B[row[a]][row[b]]
        new_pm.append(to_coords(w, Minv))
    return tuple(new_brackets + new_pm)


def build_algebra(code):
    F = GF(2)
    vec = lambda m: tuple((m >> k) & 1 for k in range(3))
    brackets = {}
    for (i, j), m in zip(((0, 1), (0, 2), (1, 2)), code[:3]):
        if m:
            brackets[(i, j)] = vec(m)
    pmaps = {i: vec(m) for i, m in enumerate(code[3:]) if m}
    return RestrictedLieAlgebra.from_tables(F, ("x1", "x2", "x3"), brackets, pmaps)


def describe(L):
    if filtration.is_abelian(L):
        exps = abelian.decompose(L).exponents
        return "abelian_" + "_".join(map(str, exps))
    # Heisenberg type: classify by the number of noncentral square-zero
    # cosets modulo the center, an isomorphism invariant
    from fmbasis import linalg

    F = L.field
    center_rows = linalg.kernel(
        F, [tuple(c for col in L.ad_columns(L.basis_vec(i)) for c in col) for i in range(3)], 9
    ).rows
    center = linalg.span(F, center_rows, 3) if center_rows else linalg.zero_subspace(F, 3)
    reps = linalg.complete_basis(center, linalg.full_subspace(F, 3))
    sq_zero = 0
    for coeffs in itertools.product(range(2), repeat=len(reps)):
        if not any(coeffs):
            continue
        v = tuple(
            sum(c * r[k] for c, r in zip(coeffs, reps)) % 2 for k in range(3)
        )
        if L.is_zero_vec(L.pmap(v)):
            sq_zero += 1
    return f"heisenberg_sqz{sq_zero}"


def main():
    group = gl3_f2()
    inverses = {M: invert(M, group) for M in group}

    valid = []
    for code in itertools.product(range(8), repeat=6):
        if is_valid(code):
            valid.append(code)
    print(f"{len(valid)} tables satisfy the axioms")

    seen = set()
    reps = []
    for code in sorted(valid):
        if code in seen:
            continue
        orbit = {transform(code, M, inverses[M]) for M in group}
        seen |= orbit
        reps.append(min(orbit))
    print(f"{len(reps)} isomorphism classes")

    entries = []
    for code in sorted(reps):
        L = build_algebra(code)
        report = L.validate()
        assert report.ok, (code, report)
        if not filtration.is_p_nilpotent(L):
            continue
        name = describe(L)
        entries.append((name, code))
    # disambiguate repeated names deterministically
    counts = {}
    final = []
    for name, code in entries:
        counts[name] = counts.get(name, 0) + 1
        if sum(1 for n, _ in entries if n == name) > 1:
            name = f"{name}_{counts[name]}"
        final.append((name, code))
    print(f"{len(final)} p-nilpotent classes:")
    for name, code in final:
        print("   ", name, code)

    vec = lambda m: tuple((m >> k) & 1 for k in range(3))
    lines = [
        '"""Canonical 3-dimensional p-nilpotent restricted Lie algebras over',
        "F_2, one per isomorphism class.",
        "",
        "Generated by scripts/enumerate_dim3_f2.py; do not edit by hand.",
        '"""',
        "",
        "ENTRIES = [",
    ]
    for name, code in final:
        brackets = [
            (i, j, vec(m))
            for (i, j), m in zip(((0, 1), (0, 2), (1, 2)), code[:3])
            if m
        ]
        pmaps = [(i, vec(m)) for i, m in enumerate(code[3:]) if m]
        lines.append(f"    ({name!r}, {brackets!r}, {pmaps!r}),")
    lines.append("]")
    out = ROOT / "src" / "fmbasis" / "data_dim3_f2.py"
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
