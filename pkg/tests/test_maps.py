"""Family normalization, reduction, composition, and the resultant budget."""

from fractions import Fraction
from math import inf

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rescaling import (AffineFrame, DegenerateFamily, GaussianRational, MapL,
                       PuiseuxSeries, compose_families, compose_reduced,
                       conjugate, gauss_normalize, iterate_family, parse_family,
                       precompose_affine, reduce_family, resultant_series,
                       resultant_valuation)
from .support import reduced

t_pow = PuiseuxSeries.t_power
one = PuiseuxSeries.one
zero = PuiseuxSeries.zero


def test_family_degree_and_padding():
    fam = MapL([t_pow(1)], [one(), zero(), one()])
    assert fam.degree == 2
    assert len(fam.num) == len(fam.den) == 3


def test_gauss_normalize_shifts_min_valuation_to_zero():
    fam = MapL([t_pow(2), t_pow(3)], [t_pow(2, 4)])
    out = gauss_normalize(fam)
    assert min(c.valuation() for c in out.coeffs() if c.terms) == 0


def test_gauss_normalize_degenerate():
    with pytest.raises(DegenerateFamily):
        gauss_normalize(MapL([zero()], [one()]))


def test_reduce_plain_polynomial():
    g = reduce_family(parse_family("z^2 + 1"))
    assert str(g) == "z^2 + 1"
    assert g.degree == 2
    assert g.holes == () and g.inf_mult == 0


def test_reduce_with_holes():
    # z^3 + t/z^2 collapses to z^3 at t = 0; two zeros of the denominator
    # cancel into the hole divisor
    g = reduce_family(parse_family("z^3 + t/z^2"))
    assert str(g) == "z^3"
    assert g.source_degree == 5
    assert g.degree + g.holes_degree == 5
    assert g.inf_mult == 0


def test_reduce_drop_at_infinity():
    # t*z^2 + z loses its top coefficient at t = 0
    g = reduce_family(parse_family("t*z^2 + z"))
    assert str(g) == "z"
    assert g.inf_mult == 1
    assert g.degree + g.holes_degree == 2


def test_reduced_canonical_scaling():
    a = reduce_family(parse_family("(2*z^2+2)/(2*z-2)"))
    b = reduce_family(parse_family("(z^2+1)/(z-1)"))
    assert a == b
    assert a.den[-1].is_one


def test_constant_infinity_map():
    g = reduce_family(parse_family("z^2/t"))
    # after normalization the denominator residue vanishes identically
    assert str(g) == "inf"
    assert g.constant_value() == "inf"


def test_compose_reduced():
    sq = reduced("z^2")
    cube_inv = reduced("1/z^3")
    assert compose_reduced(sq, sq) == reduced("z^4")
    assert compose_reduced(cube_inv, sq) == reduced("1/z^6")
    assert compose_reduced(sq, cube_inv) == reduced("1/z^6")
    # cancellation on composition: (z^2/(z-1)) after z -> z+1 style moves
    moeb = reduced("1/z")
    assert compose_reduced(moeb, moeb) == reduced("z")


def test_conjugate_by_identity():
    fam = parse_family("z^2 + t")
    out = conjugate(fam, AffineFrame.identity())
    assert reduce_family(out) == reduce_family(fam)


def test_precompose_affine_shifts_center():
    fam = parse_family("z^2")
    fr = AffineFrame(Fraction(0), PuiseuxSeries.constant(1))
    out = precompose_affine(fam, fr)  # z -> (1 + w)^2
    assert reduce_family(out) == reduced("(z+1)^2")


def test_iterate_family():
    fam = parse_family("z^2")
    assert reduce_family(iterate_family(fam, 3)) == reduced("z^8")
    with pytest.raises(ValueError):
        iterate_family(fam, 0)


def test_compose_families_exact_stays_exact():
    fam = parse_family("z^2 + t")
    out = compose_families(fam, fam)
    assert all(c.is_exact for c in out.coeffs())


def test_resultant_fixed_values():
    # res_z(z^2 + t, z + 1) = 1 + t
    fam = parse_family("(z^2+t)/(z+1)")
    assert resultant_series(fam) == PuiseuxSeries.build([(0, 1), (1, 1)], inf)
    assert resultant_valuation(fam) == 0
    # res_z(z^2 - t, z) = -t picks up the collision at z = 0
    fam2 = parse_family("(z^2-t)/z")
    assert resultant_valuation(fam2) == 1


def test_resultant_degenerate():
    with pytest.raises(DegenerateFamily):
        resultant_valuation(parse_family("(z+1)/(z+1)"))


def test_resultant_matches_residue_resultant_for_constant_families():
    from rescaling import cpoly
    fam = parse_family("(z^2+3*z+1)/(z-2)")
    series = resultant_series(fam)
    direct = cpoly.presultant([c.residue() for c in fam.num],
                              [c.residue() for c in fam.den])
    assert series == PuiseuxSeries.constant(direct)


exps = st.integers(min_value=0, max_value=3)
coeff_ints = st.integers(min_value=-3, max_value=3)
term = st.tuples(exps, coeff_ints)
coeff_series = st.lists(term, max_size=2).map(
    lambda ts: PuiseuxSeries.build(ts, inf))


@given(st.lists(coeff_series, min_size=1, max_size=4),
       st.lists(coeff_series, min_size=1, max_size=4))
def test_reduce_degree_accounting(num, den):
    assume(any(not c.is_zero for c in num))
    assume(any(not c.is_zero for c in den))
    fam = MapL(num, den)
    out = reduce_family(fam)
    assert out.degree + out.holes_degree == fam.degree
    assert out.source_degree == fam.degree


@given(st.lists(coeff_series, min_size=1, max_size=4),
       st.lists(coeff_series, min_size=1, max_size=4))
def test_gauss_normalize_is_projective(num, den):
    assume(any(not c.is_zero for c in num))
    assume(any(not c.is_zero for c in den))
    fam = MapL(num, den)
    shifted = MapL([c.shift(2) for c in fam.num],
                   [c.shift(2) for c in fam.den])
    a, b = gauss_normalize(fam), gauss_normalize(shifted)
    assert [list(c.terms) for c in a.coeffs()] \
        == [list(c.terms) for c in b.coeffs()]
