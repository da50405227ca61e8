import random
from fractions import Fraction

import pytest

from qaffine.kashiwara import KElement, wpsi, xm
from qaffine.nqminus import Element, normal_form, random_element, x
from qaffine.parse import DomainError, ParseError, parse_element, parse_int_list, parse_window, parse_word
from qaffine.scalar import ONE, Scalar, gampow, qpow


def test_scalars():
    assert parse_element("3/4") == Element.unit(Scalar.const(Fraction(3, 4)))
    assert parse_element("q^2 - q^(-2)") == Element.unit(qpow(2) - qpow(-2))
    assert parse_element("q^(3/2)") == Element.unit(Scalar.monomial(1, 3, 0))
    assert parse_element("gam(1/2)*gam(1/2)") == Element.unit(gampow(1))
    assert parse_element("q") == Element.unit(qpow(1))
    assert parse_element("-(1 + q)") == Element.unit(-(ONE + qpow(1)))


def test_words_are_normalized():
    assert parse_element("xm(1)*xm(0)") == normal_form([1, 0])
    assert parse_element("xm(-2) * (xm(0) + q*xm(1))") == normal_form([-2, 0]) + normal_form([-2, 1]).scale(qpow(1))


def test_parse_word_keeps_operators():
    assert parse_word("Wpsi(-3)*xm(3)") == KElement.word(wpsi(-3), xm(3))


def test_render_round_trip():
    rng = random.Random(11)
    for _ in range(50):
        e = random_element(rng, 3, (-3, 3))
        assert parse_element(e.render()) == e
    assert parse_element(x(0).render()) == x(0)


@pytest.mark.parametrize(
    "text,pos",
    [("xm(1", 4), ("xm 1)", 3), ("q^(1/3)", 5), ("1/0", 2), ("2 $ 3", 2), ("xm(1) xm(2)", 6), ("", 0)],
)
def test_syntax_errors_have_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_element(text)
    assert exc.value.pos == pos and exc.value.exit_code == 1
    assert str(exc.value).splitlines()[-1].index("^") == pos + 2


def test_domain_errors():
    with pytest.raises(DomainError) as exc:
        parse_element("Wpsi(0)*xm(1)")
    assert exc.value.exit_code == 2
    with pytest.raises(DomainError):
        parse_window("3..1")
    with pytest.raises(DomainError):
        parse_window("1,2")
    with pytest.raises(DomainError):
        parse_int_list("1,a")


def test_lists_and_windows():
    assert parse_window(" -2 .. 2 ") == (-2, 2)
    assert parse_int_list("1, -1, 1/2") == [1, -1, Fraction(1, 2)]
