"""Family and frame parsing."""

from fractions import Fraction

import pytest

from rescaling import (ApproxComplex, GaussianRational, ParseError,
                       parse_family, parse_frame)
from .support import CUBIC, LATTES, MCMULLEN, QUAD0


def test_family_degrees():
    assert parse_family(MCMULLEN).degree == 5
    assert parse_family(QUAD0).degree == 2
    assert parse_family(CUBIC).degree == 3
    assert parse_family(LATTES).degree == 4


def test_shared_z_factor_is_stripped():
    # z^2 * (z + t) / z^2 is the affine map z + t, not a degree-3 family
    fam = parse_family("(z^3 + t*z^2)/z^2")
    assert fam.degree == 1


def test_substitution_keeps_degree():
    assert parse_family(CUBIC, subst="-1+t").degree == 3
    assert parse_family(CUBIC, subst="1/t").degree == 3


def test_substitution_changes_coefficients():
    plain = parse_family(QUAD0)
    shifted = parse_family(QUAD0, subst="-1+t")
    assert plain.num[0].terms != shifted.num[0].terms


def test_fractional_exponent_on_t():
    fam = parse_family("z^2 + t^(1/2)")
    assert fam.num[0].valuation() == Fraction(1, 2)


def test_fractional_exponent_on_z_rejected():
    with pytest.raises(ParseError, match="allowed on t alone"):
        parse_family("z^(1/2)")


def test_fractional_exponent_after_substitution_rejected():
    with pytest.raises(ParseError, match="cannot follow a substitution"):
        parse_family("z^2 + t^(1/2)", subst="-1+t")


def test_float_literals_give_approximate_coefficients():
    fam = parse_family("0.5*z^2 + 1")
    assert fam.ftype is ApproxComplex
    assert fam.degree == 2


def test_imaginary_unit_stays_exact():
    fam = parse_family("z^2 + i")
    assert fam.ftype is GaussianRational
    assert fam.num[0].coefficient(0) == GaussianRational(0, 1)


def test_floats_demote_the_whole_family():
    assert parse_family("0.5*z^2 + i").ftype is ApproxComplex


@pytest.mark.parametrize("text,msg", [
    ("z^2 + $", "unexpected character"),
    ("z^2 )", "trailing input"),
    ("z^2 +", "unexpected end"),
    ("1/(t-t)", "identically zero"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_family(text)


def test_substitution_must_be_in_t():
    with pytest.raises(ParseError, match="only involve t"):
        parse_family(QUAD0, subst="z")


def test_parse_frame_forms():
    fr = parse_frame("2/5")
    assert fr.h == Fraction(2, 5) and fr.c.is_zero
    fr = parse_frame("1/2, t")
    assert fr.h == Fraction(1, 2) and str(fr.c) == "t"
    fr = parse_frame("-3, 1 + t^2")
    assert fr.h == -3 and str(fr.c) == "1 + t^2"


def test_parse_frame_errors():
    with pytest.raises(ParseError, match="bad zoom exponent"):
        parse_frame("abc")
    with pytest.raises(ParseError, match="only involve t"):
        parse_frame("1, z")
