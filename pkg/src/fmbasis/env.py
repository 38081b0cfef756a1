"""The restricted enveloping algebra u(L).

Elements are dicts mapping PBW exponent tuples (each entry below p) to
nonzero scalars.  Multiplication straightens products one generator at a
time: pushing x_g into a normal monomial swaps it past higher generators,
emitting a bracket term for every swap, and an exponent that reaches p
collapses to the basis p-power image.  Each rewrite lowers the pair
(total degree, number of slots above g), so the recursion terminates for
any input tables.

For prime coefficient fields a dense integer product tensor is built on
demand; numpy matmuls on it stay far below 2^53 so float arithmetic is
exact.  The dict route works over every field and doubles as the
reference implementation in tests.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .errors import MixedAlgebras, NotNilpotent, ParseError
from . import linalg


def _accumulate(F, dst, src, scalar):
    for mono, c in src.items():
        v = F.mul(scalar, c)
        if v == F.zero:
            continue
        cur = dst.get(mono)
        if cur is None:
            dst[mono] = v
        else:
            s = F.add(cur, v)
            if s == F.zero:
                del dst[mono]
            else:
                dst[mono] = s


def display_key(mono):
    """Graded order with earlier generators first inside a degree."""
    return (sum(mono), tuple(-e for e in mono))


def _term_order(mono):
    # element rendering: highest degree first, earlier generators first
    return (-sum(mono), tuple(-e for e in mono))


class EnvAlgebra:
    """PBW model of u(L) over the basis order of the underlying algebra."""

    def __init__(self, base):
        self.base = base
        self.field = base.field
        self.p = base.p
        self.n = base.n
        self.dim = self.p ** self.n
        self.monomials = tuple(sorted(itertools.product(range(self.p), repeat=self.n)))
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.unit_mono = (0,) * self.n
        self._gen_cache = {}
        self._mono_cache = {}
        self._dense = None

    # ------------------------------------------------------------ elements

    def zero(self):
        return {}

    def one(self):
        return {self.unit_mono: self.field.one}

    def scalar(self, c):
        return {} if c == self.field.zero else {self.unit_mono: c}

    def embed(self, vec):
        """Degree-one element of u(L) for a Lie element."""
        F = self.field
        out = {}
        for i, c in enumerate(vec):
            if c != F.zero:
                mono = tuple(1 if j == i else 0 for j in range(self.n))
                out[mono] = c
        return out

    def project_to_L(self, elem):
        """Coordinates in L when every term has degree one, else None."""
        F = self.field
        vec = [F.zero] * self.n
        for mono, c in elem.items():
            if sum(mono) != 1:
                return None
            vec[mono.index(1)] = c
        return tuple(vec)

    def check_element(self, elem):
        for mono in elem:
            if len(mono) != self.n or any(not 0 <= e < self.p for e in mono):
                raise MixedAlgebras(f"monomial {mono} does not belong to this algebra")
        return elem

    def equal(self, a, b):
        return a == b

    def add(self, a, b):
        F = self.field
        out = dict(a)
        _accumulate(F, out, b, F.one)
        return out

    def sub(self, a, b):
        F = self.field
        out = dict(a)
        _accumulate(F, out, b, F.neg(F.one))
        return out

    def scale(self, c, a):
        F = self.field
        out = {}
        _accumulate(F, out, a, c)
        return out

    def canonical_key(self, elem):
        """Hashable canonical form, usable for memo keys and set members."""
        F = self.field
        return tuple(sorted((m, F.sort_key(c)) for m, c in elem.items()))

    # ------------------------------------------------------- straightening

    def _rmul_gen(self, mono, g):
        """Normal form of mono * x_g."""
        cached = self._gen_cache.get((mono, g))
        if cached is not None:
            return cached
        F = self.field
        k = -1
        for idx in range(self.n - 1, g, -1):
            if mono[idx]:
                k = idx
                break
        out = {}
        if k < 0:
            if mono[g] + 1 < self.p:
                bumped = mono[:g] + (mono[g] + 1,) + mono[g + 1:]
                out[bumped] = F.one
            else:
                # x_g^p collapses to the p-power image of x_g
                prefix = mono[:g] + (0,) + mono[g + 1:]
                for l, c in enumerate(self.base.pmap_table[g]):
                    if c != F.zero:
                        _accumulate(F, out, self._rmul_gen(prefix, l), c)
        else:
            shorter = mono[:k] + (mono[k] - 1,) + mono[k + 1:]
            # mono*x_g = (shorter*x_g)*x_k + shorter*[x_k, x_g]
            for m2, c in self._rmul_gen(shorter, g).items():
                _accumulate(F, out, self._rmul_gen(m2, k), c)
            for l, c in enumerate(self.base.bracket_table[k][g]):
                if c != F.zero:
                    _accumulate(F, out, self._rmul_gen(shorter, l), c)
        self._gen_cache[(mono, g)] = out
        return out

    def mul_mono(self, ma, mb):
        """Normal form of the product of two PBW monomials."""
        cached = self._mono_cache.get((ma, mb))
        if cached is not None:
            return cached
        F = self.field
        elem = {ma: F.one}
        for g in range(self.n):
            for _ in range(mb[g]):
                nxt = {}
                for mono, c in elem.items():
                    _accumulate(F, nxt, self._rmul_gen(mono, g), c)
                elem = nxt
        self._mono_cache[(ma, mb)] = elem
        return elem

    def mul(self, a, b):
        F = self.field
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                _accumulate(F, out, self.mul_mono(ma, mb), F.mul(ca, cb))
        return out

    def power(self, a, k: int):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # ---------------------------------------------------------- vectors

    def to_vec(self, elem):
        v = np.zeros(self.dim, dtype=np.int64)
        for mono, c in elem.items():
            v[self.index[mono]] = c
        return v

    def from_vec(self, vec):
        out = {}
        for i, c in enumerate(vec):
            c = int(c) % self.p
            if c:
                out[self.monomials[i]] = c
        return out

    def to_tuple_vec(self, elem):
        F = self.field
        v = [F.zero] * self.dim
        for mono, c in elem.items():
            v[self.index[mono]] = c
        return tuple(v)

    def from_tuple_vec(self, vec):
        F = self.field
        return {self.monomials[i]: c for i, c in enumerate(vec) if c != F.zero}

    @property
    def dense(self):
        """Product tensor P with P[i, j, :] = mono_i * mono_j (prime fields)."""
        if self._dense is None:
            if not self.field.is_prime_field:
                raise MixedAlgebras("dense engine requires a prime coefficient field")
            self._dense = _DenseOps(self)
        return self._dense

    # ------------------------------------------------------ radical powers

    def omega_powers_oracle(self, engine="auto"):
        """The chain omega^1, omega^2, ... down to zero, from the raw
        definition: omega is spanned by the nonunit monomials, and each
        next power is spanned by nonunit-monomial times current-basis
        products.  Serves as the independent cross-check for the height
        route."""
        F = self.field
        use_dense = engine == "dense" or (engine == "auto" and self.field.is_prime_field)
        nonunit = [m for m in self.monomials if m != self.unit_mono]
        rows = [linalg.unit_vector(F, self.dim, self.index[m]) for m in nonunit]
        current = linalg.span(F, rows, self.dim)
        chain = [current]
        for _ in range(self.dim + 1):
            if current.is_zero():
                return chain
            if use_dense:
                nxt = self._omega_step_dense(current)
            else:
                nxt = self._omega_step_generic(current, nonunit)
            if nxt.dim >= current.dim:
                raise NotNilpotent(
                    "augmentation ideal powers stopped shrinking before reaching zero"
                )
            chain.append(nxt)
            current = nxt
        raise NotNilpotent("augmentation ideal chain exceeded the dimension bound")

    def _omega_step_generic(self, current, nonunit):
        F = self.field
        products = []
        for mono in nonunit:
            gelem = {mono: F.one}
            for row in current.rows:
                w = self.from_tuple_vec(row)
                products.append(self.to_tuple_vec(self.mul(gelem, w)))
        return linalg.span(F, products, self.dim)

    def _omega_step_dense(self, current):
        P = self.dense.tensor
        W = np.array([[int(c) for c in row] for row in current.rows], dtype=np.float64)
        blocks = []
        for ig in range(1, self.dim):
            blocks.append(np.mod(W @ P[ig], self.p))
        stacked = np.vstack(blocks).astype(np.int64)
        reduced = linalg._rref_prime_np(self.p, stacked)
        rows = tuple(tuple(int(x) for x in r) for r in reduced)
        return linalg.Subspace(self.field, self.dim, rows)

    # ------------------------------------------------------------- display

    def render_monomial(self, mono) -> str:
        if mono == self.unit_mono:
            return "1"
        parts = []
        for name, e in zip(self.base.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def render_element(self, elem) -> str:
        if not elem:
            return "0"
        F = self.field
        terms = sorted(elem.items(), key=lambda kv: _term_order(kv[0]))
        parts = []
        for mono, c in terms:
            mtxt = self.render_monomial(mono)
            if c == F.one:
                parts.append(mtxt)
            elif mono == self.unit_mono:
                parts.append(F.render_coeff(c))
            else:
                parts.append(f"{F.render_coeff(c)}*{mtxt}")
        return " + ".join(parts)

    def parse_element(self, text: str):
        """Parse the rendered syntax back; factors are evaluated as
        products in u(L), so inputs need not be in normal form."""
        F = self.field
        name_to_idx = {name: i for i, name in enumerate(self.base.names)}
        text = text.strip()
        if text == "0":
            return {}
        out = {}
        for piece in _split_terms(text):
            sign, body = piece
            coeff = F.one
            elem = self.one()
            for factor in _split_factors(body):
                m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
                if m and m.group(1) in name_to_idx:
                    idx = name_to_idx[m.group(1)]
                    e = int(m.group(2)) if m.group(2) else 1
                    gen = self.embed(self.base.basis_vec(idx))
                    for _ in range(e):
                        elem = self.mul(elem, gen)
                else:
                    coeff = F.mul(coeff, F.parse(factor))
            if sign == "-":
                coeff = F.neg(coeff)
            _accumulate(F, out, elem, coeff)
        return out


def _split_terms(text):
    """Split on top-level + and -, keeping signs; parentheses protected."""
    terms = []
    depth = 0
    sign = "+"
    buf = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            if "".join(buf).strip():
                terms.append((sign, "".join(buf).strip()))
            elif terms or sign != "+":
                raise ParseError(f"dangling sign in element {text!r}")
            sign = ch
            buf = []
        else:
            buf.append(ch)
    if not "".join(buf).strip():
        raise ParseError(f"empty term in element {text!r}")
    terms.append((sign, "".join(buf).strip()))
    return terms


def _split_factors(body):
    factors = []
    depth = 0
    buf = []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
    factors.append("".join(buf).strip())
    if any(not f for f in factors):
        raise ParseError(f"empty factor in term {body!r}")
    return factors


class _DenseOps:
    """Integer product tensor for u(L) over a prime field."""

    def __init__(self, alg: EnvAlgebra):
        self.alg = alg
        self.p = alg.p
        N = alg.dim
        n = alg.n
        # right-multiplication matrices R_g: column m holds mono_m * x_g
        R = [np.zeros((N, N), dtype=np.float64) for _ in range(n)]
        for g in range(n):
            for m_idx, mono in enumerate(alg.monomials):
                for out_mono, c in alg._rmul_gen(mono, g).items():
                    R[g][alg.index[out_mono], m_idx] = c
        # M_j = right multiplication by mono_j, built along the lex order
        M = [None] * N
        M[0] = np.eye(N, dtype=np.float64)
        for j, mono in enumerate(alg.monomials):
            if j == 0:
                continue
            g = max(i for i, e in enumerate(mono) if e)
            prev = alg.index[mono[:g] + (mono[g] - 1,) + mono[g + 1:]]
            M[j] = np.mod(R[g] @ M[prev], self.p)
        P = np.empty((N, N, N), dtype=np.float64)
        for j in range(N):
            P[:, j, :] = M[j].T
        self.tensor = P

    def mul_vec(self, a, b):
        out = np.einsum("i,ijk,j->k", a.astype(np.float64), self.tensor, b.astype(np.float64))
        return np.mod(out, self.p).astype(np.int64)

    def mul_rows(self, A, B):
        """Pairwise products: out[r, s, :] = A[r] * B[s]."""
        out = np.einsum(
            "ri,ijk,sj->rsk",
            A.astype(np.float64),
            self.tensor,
            B.astype(np.float64),
            optimize=True,
        )
        return np.mod(out, self.p).astype(np.int64)

    def mul_rowwise(self, A, B):
        """Row-by-row products: out[r, :] = A[r] * B[r]."""
        out = np.einsum(
            "ri,ijk,rj->rk",
            A.astype(np.float64),
            self.tensor,
            B.astype(np.float64),
            optimize=True,
        )
        return np.mod(out, self.p).astype(np.int64)
