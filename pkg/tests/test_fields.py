import pytest
from hypothesis import given, settings, strategies as st

from fmbasis.errors import ParseError, UnsupportedField
from fmbasis.fields import GF, GFt, RatFunc, field_from_name, pgcd, pmul

FIELDS = [GF(2), GF(3), GF(5), GF(7), GFt(2), GFt(3)]


def elements_of(F, rng_draw):
    if F.is_prime_field:
        return rng_draw(st.integers(min_value=0, max_value=F.p - 1))
    num = rng_draw(st.lists(st.integers(0, F.p - 1), min_size=0, max_size=3))
    den = rng_draw(st.lists(st.integers(0, F.p - 1), min_size=0, max_size=2))
    return F.make(tuple(num), tuple(den) + (1,))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms_on_random_triples(F, data):
    a = elements_of(F, data.draw)
    b = elements_of(F, data.draw)
    c = elements_of(F, data.draw)
    assert F.add(a, b) == F.add(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if b != F.zero:
        assert F.mul(F.inv(b), b) == F.one
        assert F.mul(F.div(a, b), b) == a


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_frobenius_additive_and_root_roundtrip(F, data):
    a = elements_of(F, data.draw)
    b = elements_of(F, data.draw)
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.pth_root(F.frobenius(a)) == a


def test_prime_field_examples():
    F3, F5 = GF(3), GF(5)
    assert F3.mul(2, 2) == 1
    assert F5.inv(3) == 2
    assert F3.frobenius(2) == 2
    assert F3.pth_root(2) == 2
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


def test_ratfunc_examples():
    F = GFt(2)
    t = F.t
    t_over = F.div(t, F.add(t, F.one))            # t/(t+1)
    one_over = F.div(F.one, F.add(t, F.one))      # 1/(t+1)
    assert F.add(t_over, one_over) == F.one
    assert F.frobenius(F.add(t, F.one)) == F.parse("t^2+1")
    assert F.frobenius(F.div(F.one, t)) == F.parse("(1)/(t^2)")
    assert F.pth_root(F.mul(t, t)) == t
    assert F.pth_root(t) is None


def test_ratfunc_canonical_forms():
    F = GFt(3)
    a = F.make((0, 0, 1), (0, 1))     # t^2 / t reduces to t
    assert a == F.t
    b = F.make((2, 2), (2,))          # (2t+2)/2 with monic denominator
    assert b == F.parse("t+1")
    assert F.zero == F.make((), (1, 2))


def test_poly_gcd_monic():
    p = 2
    a = pmul(p, (1, 1), (1, 0, 1))
    b = pmul(p, (1, 1), (0, 1))
    assert pgcd(p, a, b) == (1, 1)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_parse_render_roundtrip(F, data):
    a = elements_of(F, data.draw)
    assert F.parse(F.render(a)) == a
    assert F.parse(F.render_coeff(a)) == a


def test_field_names():
    assert field_from_name("F2") is GF(2)
    assert field_from_name("F3(t)") is GFt(3)
    with pytest.raises(ParseError):
        field_from_name("Q")
    with pytest.raises(UnsupportedField):
        field_from_name("F4")


def test_ratfunc_parse_forms():
    F = GFt(2)
    assert F.parse("(t^2+t+1)/(t+1)") == F.div(F.parse("t^2+t+1"), F.parse("t+1"))
    assert F.parse("(t)") == F.t
    assert F.parse("1") == F.one
    assert F.parse("0") == F.zero
