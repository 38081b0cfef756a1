"""Restricted Lie algebras given by structure constants and a basis p-map.

Elements are coordinate tuples over the coefficient field.  The bracket
is the bilinear extension of the basis table; p-th power maps of general
elements are evaluated as associative p-th powers inside the enveloping
algebra, which is exact and avoids any expansion formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NotPNilpotent,
    ValidationError,
)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple  # (axiom, witness, detail) triples

    def first(self):
        return self.failures[0] if self.failures else None


class RestrictedLieAlgebra:
    """Structure-constant presentation of a restricted Lie algebra.

    `bracket_table[i][j]` holds the coordinates of [x_i, x_j] for all i, j
    (antisymmetry is built in when constructing from an upper triangle),
    `pmap_table[i]` the coordinates of x_i^[p].
    """

    def __init__(self, field, names, bracket_table, pmap_table):
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        self.p = field.p
        self.bracket_table = tuple(tuple(tuple(v) for v in row) for row in bracket_table)
        self.pmap_table = tuple(tuple(v) for v in pmap_table)
        self._envelope = None
        if len(self.bracket_table) != self.n or len(self.pmap_table) != self.n:
            raise DimensionMismatch("structure tables do not match the dimension")

    @classmethod
    def from_tables(cls, field, names, brackets=None, pmaps=None):
        """Build from sparse tables: brackets maps (i, j) with i < j to a
        coordinate tuple, pmaps maps i to a coordinate tuple; omitted
        entries are zero."""
        n = len(names)
        zero = tuple(field.zero for _ in range(n))
        table = [[zero] * n for _ in range(n)]
        for (i, j), vec in (brackets or {}).items():
            if not 0 <= i < j < n:
                raise DimensionMismatch(f"bad bracket index pair {(i, j)}")
            vec = tuple(vec)
            table[i][j] = vec
            table[j][i] = tuple(field.neg(c) for c in vec)
        pm = [zero] * n
        for i, vec in (pmaps or {}).items():
            pm[i] = tuple(vec)
        return cls(field, names, table, pm)

    # -------------------------------------------------------------- basics

    def zero_vec(self):
        return tuple(self.field.zero for _ in range(self.n))

    def basis_vec(self, i):
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.n))

    def is_zero_vec(self, v):
        return all(c == self.field.zero for c in v)

    def add_vec(self, u, v):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(u, v))

    def sub_vec(self, u, v):
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(u, v))

    def scale_vec(self, c, v):
        F = self.field
        return tuple(F.mul(c, a) for a in v)

    def bracket(self, u, v):
        """[u, v] by bilinear extension of the table."""
        if len(u) != self.n or len(v) != self.n:
            raise DimensionMismatch("element length does not match the algebra")
        F = self.field
        out = [F.zero] * self.n
        for i, a in enumerate(u):
            if a == F.zero:
                continue
            for j, b in enumerate(v):
                if b == F.zero or i == j:
                    continue
                c = F.mul(a, b)
                row = self.bracket_table[i][j]
                for k, s in enumerate(row):
                    if s != F.zero:
                        out[k] = F.add(out[k], F.mul(c, s))
        return tuple(out)

    def ad_columns(self, v):
        """Columns of ad(v): column j is [v, x_j]."""
        return [self.bracket(v, self.basis_vec(j)) for j in range(self.n)]

    # ---------------------------------------------------------- p-map side

    @property
    def envelope(self):
        if self._envelope is None:
            from .env import EnvAlgebra

            self._envelope = EnvAlgebra(self)
        return self._envelope

    def pmap(self, u):
        """u^[p] for an arbitrary element, via the associative p-th power."""
        A = self.envelope
        w = A.power(A.embed(u), self.p)
        out = A.project_to_L(w)
        if out is None:
            raise InternalInconsistency(
                "associative p-th power left the degree-one part; the input tables "
                "do not define a restricted Lie algebra"
            )
        return out

    def pmap_iterated(self, u, times):
        for _ in range(times):
            u = self.pmap(u)
        return u

    def exponent(self, u) -> int:
        """Minimal k with u^[p]^k = 0; 0 for the zero element."""
        if self.is_zero_vec(u):
            return 0
        v = u
        for k in range(1, self.n + 1):
            v = self.pmap(v)
            if self.is_zero_vec(v):
                return k
        raise NotPNilpotent(
            f"element has no vanishing p-power iterate within {self.n} steps"
        )

    # ------------------------------------------------------------ validate

    def validate(self) -> ValidationReport:
        F = self.field
        failures = []
        for i in range(self.n):
            if any(c != F.zero for c in self.bracket_table[i][i]):
                failures.append(("alternating", (i, i), "nonzero self bracket"))
            for j in range(i + 1, self.n):
                neg = tuple(F.neg(c) for c in self.bracket_table[i][j])
                if self.bracket_table[j][i] != neg:
                    failures.append(("antisymmetry", (i, j), "table not antisymmetric"))
        for i in range(self.n):
            for j in range(i + 1, self.n):
                for k in range(j + 1, self.n):
                    xi, xj, xk = map(self.basis_vec, (i, j, k))
                    s = self.add_vec(
                        self.add_vec(
                            self.bracket(self.bracket(xi, xj), xk),
                            self.bracket(self.bracket(xj, xk), xi),
                        ),
                        self.bracket(self.bracket(xk, xi), xj),
                    )
                    if not self.is_zero_vec(s):
                        failures.append(("jacobi", (i, j, k), f"residual {s}"))
        # ad(x_i^[p]) must equal ad(x_i)^p as operators
        for i in range(self.n):
            lhs = self.ad_columns(self.pmap_table[i])
            cols = [self.basis_vec(j) for j in range(self.n)]
            for _ in range(self.p):
                cols = [self.bracket(self.basis_vec(i), c) for c in cols]
            if lhs != cols:
                failures.append(
                    ("restrictedness", (i,), "ad(x_i)^p differs from ad(x_i^[p])")
                )
        return ValidationReport(ok=not failures, failures=tuple(failures))

    def validate_or_raise(self):
        report = self.validate()
        if not report.ok:
            axiom, witness, detail = report.first()
            raise ValidationError(axiom, witness, f"{axiom} fails at {witness}: {detail}")
        return report

    # ------------------------------------------------------- change of basis

    def change_basis(self, new_basis_rows, names=None):
        """Present the same algebra on the given basis.

        `new_basis_rows[i]` holds the coordinates of the new basis vector
        y_i in the current basis.  Returns the new algebra; convert
        old coordinates to new ones with `to_new` and back with `to_old`.
        """
        from . import linalg

        F = self.field
        rows = [tuple(r) for r in new_basis_rows]
        if len(rows) != self.n:
            raise DimensionMismatch("change of basis needs exactly dim L vectors")
        sub, rank = linalg.rref(F, rows, self.n)
        if rank != self.n:
            raise DimensionMismatch("new basis vectors are linearly dependent")

        def to_new(vec):
            coeffs = linalg.solve(F, rows, tuple(vec))
            if coeffs is None:
                raise InternalInconsistency("change of basis failed to invert")
            return coeffs

        brackets = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                w = self.bracket(rows[i], rows[j])
                brackets[(i, j)] = to_new(w)
        pmaps = {}
        for i in range(self.n):
            pmaps[i] = to_new(self.pmap(rows[i]))
        new_names = tuple(names) if names is not None else tuple(f"g{i+1}" for i in range(self.n))
        alg = RestrictedLieAlgebra.from_tables(F, new_names, brackets, pmaps)
        return alg, rows, to_new

    # -------------------------------------------------------------- display

    def render_element(self, vec) -> str:
        F = self.field
        parts = []
        for c, name in zip(vec, self.names):
            if c == F.zero:
                continue
            if c == F.one:
                parts.append(name)
            else:
                parts.append(f"{F.render_coeff(c)}*{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return (
            f"RestrictedLieAlgebra(dim={self.n}, field={self.field.name}, "
            f"names={list(self.names)})"
        )
