"""Exact coefficient arithmetic: the prime fields F_p and the rational
function fields F_p(t).

Scalars are plain values: int residues in [0, p) for F_p, and `RatFunc`
pairs of dense polynomial tuples for F_p(t).  A field object supplies the
operations.  Canonical forms are unique, so `==` on values decides field
equality and values hash cheaply.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import MixedFields, ParseError, UnsupportedField

SUPPORTED_PRIMES = (2, 3, 5, 7)


class PrimeField:
    """Arithmetic in F_p on int residues in [0, p)."""

    is_prime_field = True
    is_rational_function_field = False

    def __init__(self, p: int):
        if p not in SUPPORTED_PRIMES:
            raise UnsupportedField(
                f"characteristic {p} not supported; expected one of {SUPPORTED_PRIMES}"
            )
        self.p = p
        self.zero = 0
        self.one = 1
        self._inv = (0,) + tuple(pow(a, p - 2, p) for a in range(1, p))

    @property
    def name(self) -> str:
        return f"F{self.p}"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def check(self, a):
        if not isinstance(a, int) or not 0 <= a < self.p:
            raise MixedFields(f"{a!r} is not a canonical {self.name} scalar")
        return a

    def from_int(self, k: int) -> int:
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return self._inv[a % self.p]

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def frobenius(self, a):
        # a^p = a on the prime field
        return a % self.p

    def pth_root(self, a):
        return a % self.p

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def sort_key(self, a):
        return (a,)

    def parse(self, text: str):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+", text):
            raise ParseError(f"bad {self.name} scalar {text!r}")
        return int(text) % self.p

    def render(self, a) -> str:
        return str(a)

    def render_coeff(self, a) -> str:
        return str(a)


# ----------------------------------------------------------------------
# Dense polynomials over F_p: tuples of int coefficients, index = degree,
# no trailing zeros, () is the zero polynomial.
# ----------------------------------------------------------------------

def _ptrim(c):
    i = len(c)
    while i and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def padd(p, a, b):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pneg(p, a):
    return tuple((-x) % p for x in a)


def psub(p, a, b):
    return padd(p, a, pneg(p, b))


def pmul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def pscale(p, a, s):
    return _ptrim([(x * s) % p for x in a])


def pdivmod(p, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    rem = list(a)
    deg_b = len(b) - 1
    quo = [0] * max(0, len(a) - deg_b)
    while len(rem) - 1 >= deg_b and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < deg_b:
            break
        shift = len(rem) - 1 - deg_b
        coeff = (rem[-1] * inv_lead) % p
        quo[shift] = coeff
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coeff * y) % p
    return _ptrim(quo), _ptrim(rem)


def pmonic(p, a):
    if not a:
        return a
    return pscale(p, a, pow(a[-1], p - 2, p))


def pgcd(p, a, b):
    while b:
        a, b = b, pdivmod(p, a, b)[1]
    return pmonic(p, a)


_TERM_RE = re.compile(r"^(\d+)?(?:(\*)?t(?:\^(\d+))?)?$")


def pparse(p, text: str):
    """Parse "2t^3+t+1" style polynomials (a bare "0" gives zero)."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ParseError("empty polynomial")
    if text[0] not in "+-":
        text = "+" + text
    coeffs = {}
    for sign, term in re.findall(r"([+-])([^+-]+)", text):
        m = _TERM_RE.match(term)
        if not m or (m.group(1) is None and "t" not in term):
            raise ParseError(f"bad polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if "t" in term:
            e = int(m.group(3)) if m.group(3) is not None else 1
        else:
            e = 0
        if sign == "-":
            c = -c
        coeffs[e] = (coeffs.get(e, 0) + c) % p
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return _ptrim(out)


def prender(a) -> str:
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            var = "t" if e == 1 else f"t^{e}"
            parts.append(var if c == 1 else f"{c}{var}")
    return "+".join(parts)


@dataclass(frozen=True)
class RatFunc:
    """Reduced fraction of F_p[t] polynomials with a monic denominator."""

    num: tuple
    den: tuple


class RationalFunctionField:
    """Arithmetic in F_p(t) on canonical `RatFunc` values."""

    is_prime_field = False
    is_rational_function_field = True

    def __init__(self, p: int):
        if p not in SUPPORTED_PRIMES:
            raise UnsupportedField(
                f"characteristic {p} not supported; expected one of {SUPPORTED_PRIMES}"
            )
        self.p = p
        self.zero = RatFunc((), (1,))
        self.one = RatFunc((1,), (1,))
        self.t = RatFunc((0, 1), (1,))

    @property
    def name(self) -> str:
        return f"F{self.p}(t)"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.p == self.p

    def __hash__(self):
        return hash(("RationalFunctionField", self.p))

    def check(self, a):
        if not isinstance(a, RatFunc):
            raise MixedFields(f"{a!r} is not a {self.name} scalar")
        return a

    def make(self, num, den=(1,)) -> RatFunc:
        p = self.p
        num, den = _ptrim(num), _ptrim(den)
        if not den:
            raise ZeroDivisionError(f"zero denominator in {self.name}")
        if not num:
            return self.zero
        g = pgcd(p, num, den)
        if len(g) > 1:
            num = pdivmod(p, num, g)[0]
            den = pdivmod(p, den, g)[0]
        s = pow(den[-1], p - 2, p)
        return RatFunc(pscale(p, num, s), pscale(p, den, s))

    def from_int(self, k: int) -> RatFunc:
        k %= self.p
        return RatFunc((k,), (1,)) if k else self.zero

    def add(self, a, b):
        p = self.p
        return self.make(
            padd(p, pmul(p, a.num, b.den), pmul(p, b.num, a.den)),
            pmul(p, a.den, b.den),
        )

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return RatFunc(pneg(self.p, a.num), a.den)

    def mul(self, a, b):
        p = self.p
        return self.make(pmul(p, a.num, b.num), pmul(p, a.den, b.den))

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return self.make(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def _pw(self, poly):
        # (sum a_i t^i)^p = sum a_i t^(i p) since a_i^p = a_i on F_p
        if not poly:
            return ()
        out = [0] * ((len(poly) - 1) * self.p + 1)
        for i, c in enumerate(poly):
            out[i * self.p] = c
        return _ptrim(out)

    def frobenius(self, a):
        return RatFunc(self._pw(a.num), self._pw(a.den))

    def _proot(self, poly):
        # reduced fractions: a p-th power iff all exponents divide by p
        if not poly:
            return ()
        if any(c and i % self.p for i, c in enumerate(poly)):
            return None
        return _ptrim([poly[i * self.p] for i in range((len(poly) - 1) // self.p + 1)])

    def pth_root(self, a):
        num = self._proot(a.num)
        if num is None:
            return None
        den = self._proot(a.den)
        if den is None:
            return None
        return RatFunc(num, den)

    def random(self, rng, max_degree=1):
        num = tuple(rng.randrange(self.p) for _ in range(max_degree + 1))
        den = tuple(rng.randrange(self.p) for _ in range(max_degree)) + (1,)
        return self.make(num, den)

    def sort_key(self, a):
        return (len(a.num), a.num, len(a.den), a.den)

    def parse(self, text: str) -> RatFunc:
        text = text.strip().replace(" ", "")
        if not text:
            raise ParseError(f"empty {self.name} scalar")
        m = re.fullmatch(r"\((?P<n>[^()]*)\)(?:/\((?P<d>[^()]*)\))?", text)
        if m:
            num = pparse(self.p, m.group("n"))
            den = pparse(self.p, m.group("d")) if m.group("d") is not None else (1,)
            return self.make(num, den)
        return self.make(pparse(self.p, text))

    def render(self, a) -> str:
        if a.den == (1,):
            return prender(a.num)
        return f"({prender(a.num)})/({prender(a.den)})"

    def render_coeff(self, a) -> str:
        if a.den == (1,):
            return f"({prender(a.num)})"
        return f"({prender(a.num)})/({prender(a.den)})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def GFt(p: int) -> RationalFunctionField:
    return RationalFunctionField(p)


_FIELD_NAME_RE = re.compile(r"^F(\d+)(\(t\))?$")


def field_from_name(name: str):
    """Resolve "F2", "F3(t)", ... to a field object."""
    m = _FIELD_NAME_RE.match(name.strip())
    if not m:
        raise ParseError(f"bad field name {name!r}")
    p = int(m.group(1))
    return GFt(p) if m.group(2) else GF(p)
