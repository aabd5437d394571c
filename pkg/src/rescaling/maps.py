"""Families of rational maps with Puiseux-series coefficients.

A family is a pair of polynomials in z whose coefficients are truncated
series in t.  Everything here treats the family formally: normalization of
the joint valuation, passage to the residue map at t = 0, affine changes of
variable with series entries, iteration, and the valuation of the resultant
(the budget that bounds how far a family can be recentered before it
degenerates).
"""

from __future__ import annotations

from fractions import Fraction
from math import inf
from typing import List, Sequence, Tuple

from . import cpoly
from .config import ITERATE_DEGREE_CAP, default_truncation
from .errors import (AssertionFailed, DegenerateFamily, DegreeCapExceeded,
                     MixedCoefficients, PrecisionExhausted,
                     ToleranceAmbiguous)
from .coefficients import ApproxComplex, Coefficient, GaussianRational
from .puiseux import PuiseuxSeries

# -- polynomials in z with series coefficients (ascending, fixed length) ----


def _strim(p: List[PuiseuxSeries]) -> List[PuiseuxSeries]:
    out = list(p)
    while out and out[-1].is_zero:
        out.pop()
    return out


def _sadd(p: Sequence[PuiseuxSeries],
          q: Sequence[PuiseuxSeries]) -> List[PuiseuxSeries]:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] + q[i])
        else:
            out.append(p[i] if i < len(p) else q[i])
    return out


def _sscale(p: Sequence[PuiseuxSeries], s: PuiseuxSeries) -> List[PuiseuxSeries]:
    return [c * s for c in p]


def _smul(p: Sequence[PuiseuxSeries],
          q: Sequence[PuiseuxSeries]) -> List[PuiseuxSeries]:
    if not p or not q:
        return []
    out: List[PuiseuxSeries] = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            prod = a * b
            out[i + j] = prod if out[i + j] is None else out[i + j] + prod
    return out


class AffineFrame:
    """The affine change of variable z = c(t) + t^h w.

    ``h`` is the zoom exponent and ``c`` the center, a Puiseux polynomial.
    ``h`` may be any rational; h = 0 with c = 0 is the identity frame.
    """

    __slots__ = ("h", "c")

    def __init__(self, h, c: PuiseuxSeries):
        self.h = Fraction(h)
        self.c = c

    @classmethod
    def identity(cls, ftype: type = GaussianRational) -> AffineFrame:
        return cls(0, PuiseuxSeries.zero(inf, ftype))

    @property
    def is_identity(self) -> bool:
        return self.h == 0 and self.c.is_zero

    def __repr__(self):
        return f"AffineFrame(h={self.h}, c={self.c})"


class MapL:
    """A family P_t(z) / Q_t(z) of formal degree d = len - 1.

    Both coefficient vectors are stored at the same length; positions where
    both numerator and denominator are identically zero are trimmed from the
    top, so the formal degree is honest.
    """

    __slots__ = ("num", "den", "ftype")

    def __init__(self, num: Sequence[PuiseuxSeries],
                 den: Sequence[PuiseuxSeries]):
        num, den = list(num), list(den)
        ftypes = {c.ftype for c in num + den}
        if len(ftypes) > 1:
            raise MixedCoefficients("family mixes coefficient types")
        if not ftypes:
            raise DegenerateFamily("empty family")
        self.ftype = ftypes.pop()
        # a coefficient that is zero only as far as known is kept: the formal
        # degree must not silently drop below an undecided top term
        d = max(len(_strim(num)) - 1, len(_strim(den)) - 1, 0)
        zero = PuiseuxSeries.zero(inf, self.ftype)
        self.num = tuple((num + [zero] * (d + 1))[:d + 1])
        self.den = tuple((den + [zero] * (d + 1))[:d + 1])

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def coeffs(self) -> Tuple[PuiseuxSeries, ...]:
        return self.num + self.den

    def cap_all(self, trunc) -> MapL:
        return MapL([c.cap(trunc) for c in self.num],
                    [c.cap(trunc) for c in self.den])

    def scaled_function(self, a) -> MapL:
        """The family t^a * (P/Q)."""
        return MapL([c.shift(a) for c in self.num], self.den)

    def evaluate_coeffs(self, tval: complex) -> Tuple[List[complex], List[complex]]:
        return ([c.evaluate(tval) for c in self.num],
                [c.evaluate(tval) for c in self.den])

    def __repr__(self):
        n = " + ".join(f"({c})z^{i}" for i, c in enumerate(self.num)
                       if c.terms or not c.is_zero)
        d = " + ".join(f"({c})z^{i}" for i, c in enumerate(self.den)
                       if c.terms or not c.is_zero)
        return f"<MapL deg {self.degree}: [{n}] / [{d}]>"


def _block_min_val(coeffs: Sequence[PuiseuxSeries]):
    """Least valuation over a coefficient block, or inf for an exact-zero block.

    Undecidable when some coefficient is zero as far as known but truncated
    before every known valuation.
    """
    known = [c.valuation() for c in coeffs if c.terms]
    unknown = [c.trunc for c in coeffs if not c.terms and not c.is_zero]
    if known and (not unknown or min(known) <= min(unknown)):
        return min(known)
    if not known and not unknown:
        return inf
    raise PrecisionExhausted(
        "least coefficient valuation hidden below the truncation")


def gauss_normalize(fam: MapL) -> MapL:
    """Rescale by a power of t so the least coefficient valuation is 0.

    >>> t = PuiseuxSeries.t_power
    >>> f = MapL([t(2), t(3)], [t(2, 4)])
    >>> [str(c) for c in gauss_normalize(f).num]
    ['1', 't']
    """
    if all(c.is_zero for c in fam.num) or all(c.is_zero for c in fam.den):
        raise DegenerateFamily("numerator or denominator identically zero")
    mu = _block_min_val(fam.coeffs())
    if mu == 0:
        return fam
    return MapL([c.shift(-mu) for c in fam.num],
                [c.shift(-mu) for c in fam.den])


def residues(fam: MapL) -> Tuple[cpoly.Poly, cpoly.Poly]:
    """Residue numerator and denominator of a Gauss-normalized family."""
    return ([c.residue() for c in fam.num], [c.residue() for c in fam.den])


class ReducedMap:
    """A rational map over the residue field, in lowest terms.

    Produced by :func:`reduce_family`, where it also carries the hole divisor
    (common zeros cancelled from the residue pair, plus the multiplicity lost
    at infinity) and the formal degree it came from.  Composition results
    carry an empty hole record.

    Scaling is canonical: the denominator is monic, or the numerator is when
    the denominator vanishes identically (the constant-infinity map).
    """

    __slots__ = ("num", "den", "holes", "inf_mult", "source_degree")

    def __init__(self, num: Sequence[Coefficient], den: Sequence[Coefficient],
                 holes: Sequence[Coefficient] = (), inf_mult: int = 0,
                 source_degree: int = None):
        num, den = cpoly.trim(num), cpoly.trim(den)
        if den:
            lc = den[-1].inverse()
            num, den = cpoly.pscale(num, lc), cpoly.pscale(den, lc)
        elif num:
            num = cpoly.monic(num)
        else:
            raise DegenerateFamily("reduced map 0/0")
        self.num = tuple(num)
        self.den = tuple(den)
        self.holes = tuple(holes)
        self.inf_mult = int(inf_mult)
        self.source_degree = self.degree if source_degree is None \
            else int(source_degree)

    @property
    def degree(self) -> int:
        return max(cpoly.degree(self.num), cpoly.degree(self.den), 0)

    @property
    def holes_degree(self) -> int:
        return max(cpoly.degree(self.holes), 0) + self.inf_mult

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def constant_value(self):
        """The constant this map equals, with None for a non-constant map."""
        if not self.is_constant:
            return None
        if not self.den:
            return "inf"
        return self.num[0] / self.den[0] if self.num else \
            type(self.den[0]).zero()

    def __eq__(self, other):
        if not isinstance(other, ReducedMap):
            return NotImplemented
        return (len(self.num) == len(other.num)
                and len(self.den) == len(other.den)
                and all(a == b for a, b in zip(self.num, other.num))
                and all(a == b for a, b in zip(self.den, other.den)))

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        num = cpoly.poly_str(self.num)
        if not self.den:
            return "inf"
        if cpoly.degree(self.den) == 0 and self.den[0].is_one:
            return num
        den = cpoly.poly_str(self.den)
        np = f"({num})" if " " in num else num
        dp = f"({den})" if " " in den else den
        return f"{np}/{dp}"

    def __repr__(self):
        return f"<ReducedMap {self}>"


def reduce_family(fam: MapL) -> ReducedMap:
    """Residue map of a family, in lowest terms, with its hole divisor.

    The degree accounting deg(reduced) + deg(holes) = formal degree is
    checked and raised as :class:`AssertionFailed` when violated.
    """
    d = fam.degree
    fn = gauss_normalize(fam)
    p_res, q_res = residues(fn)
    p_res, q_res = cpoly.trim(p_res), cpoly.trim(q_res)
    if not q_res:
        holes = cpoly.monic(p_res)
        out = ReducedMap([type(p_res[0]).one()], [], holes,
                         d - cpoly.degree(p_res), d)
    else:
        h = cpoly.pgcd(p_res, q_res)
        rnum = _divide_out(p_res, h)
        rden = _divide_out(q_res, h)
        inf_mult = d - max(cpoly.degree(p_res), cpoly.degree(q_res))
        out = ReducedMap(rnum, rden, h if cpoly.degree(h) > 0 else (),
                         inf_mult, d)
    if out.degree + out.holes_degree != d:
        raise AssertionFailed(
            "degree accounting violated in reduction",
            details={"reduced_degree": out.degree,
                     "holes_degree": out.holes_degree,
                     "formal_degree": d})
    return out


def _divide_out(p: cpoly.Poly, h: cpoly.Poly) -> cpoly.Poly:
    if cpoly.degree(h) <= 0:
        return p
    if not p:
        return []
    if isinstance(p[0], ApproxComplex):
        quot, rem = cpoly.pdivmod(p, h)
        scale = max(abs(c.to_complex()) for c in p)
        if rem and max(abs(c.to_complex()) for c in rem) > 1e-4 * scale:
            raise ToleranceAmbiguous(
                "numeric gcd does not divide the residue cleanly")
        return quot
    return cpoly.pdiv_exact(p, h)


# -- affine changes of variable ---------------------------------------------


def precompose_affine(fam: MapL, frame: AffineFrame) -> MapL:
    """The family f(c(t) + t^h w), as a family in w."""
    ftype = fam.ftype
    slope = PuiseuxSeries.t_power(frame.h, 1, inf, ftype)
    lin = [frame.c, slope]  # c + t^h w
    powers: List[List[PuiseuxSeries]] = [[PuiseuxSeries.one(inf, ftype)]]
    for _ in range(fam.degree):
        powers.append(_smul(powers[-1], lin))
    num: List[PuiseuxSeries] = []
    den: List[PuiseuxSeries] = []
    for i in range(fam.degree + 1):
        num = _sadd(num, _sscale(powers[i], fam.num[i]))
        den = _sadd(den, _sscale(powers[i], fam.den[i]))
    return MapL(num, den)


def postcompose_affine(slope: PuiseuxSeries, intercept: PuiseuxSeries,
                       fam: MapL) -> MapL:
    """The family slope * f + intercept."""
    num = _sadd(_sscale(fam.num, slope), _sscale(fam.den, intercept))
    return MapL(num, fam.den)


def conjugate(fam: MapL, frame: AffineFrame) -> MapL:
    """M^-1 o f o M for the affine frame M."""
    inner = precompose_affine(fam, frame)
    ftype = fam.ftype
    s = PuiseuxSeries.t_power(-frame.h, 1, inf, ftype)
    b = -frame.c * s
    return postcompose_affine(s, b, inner)


def compose_families(outer: MapL, inner: MapL, window=None) -> MapL:
    """outer(inner(z)), truncated to a window above the least valuation.

    ``window`` forces the relative truncation width.  Without it, exact
    inputs compose exactly and inexact ones keep the default window.
    """
    d = outer.degree * inner.degree
    if d > ITERATE_DEGREE_CAP:
        raise DegreeCapExceeded(
            f"composition degree {d} exceeds cap {ITERATE_DEGREE_CAP}")
    p_pow: List[List[PuiseuxSeries]] = [[PuiseuxSeries.one(inf, outer.ftype)]]
    q_pow: List[List[PuiseuxSeries]] = [[PuiseuxSeries.one(inf, outer.ftype)]]
    for _ in range(outer.degree):
        p_pow.append(_smul(p_pow[-1], list(inner.num)))
        q_pow.append(_smul(q_pow[-1], list(inner.den)))
    m = outer.degree
    num: List[PuiseuxSeries] = []
    den: List[PuiseuxSeries] = []
    for i in range(m + 1):
        basis = _smul(p_pow[i], q_pow[m - i])
        num = _sadd(num, _sscale(basis, outer.num[i]))
        den = _sadd(den, _sscale(basis, outer.den[i]))
    out = MapL(num, den)
    if window is None:
        if all(c.is_exact for c in out.coeffs()):
            # exact inputs compose exactly; capping would destroy tails
            return out
        window = default_truncation()
    mu = min(c.val_lower() for c in out.coeffs())
    return out.cap_all(mu + window)


def iterate_family(fam: MapL, n: int, window=None) -> MapL:
    """The n-th iterate f^n, n >= 1."""
    if n < 1:
        raise ValueError("iterate count must be >= 1")
    out = fam
    for _ in range(n - 1):
        out = compose_families(fam, out, window)
    return out


def compose_reduced(outer: ReducedMap, inner: ReducedMap) -> ReducedMap:
    """Composition of reduced maps, cancelled back to lowest terms."""
    p, q = list(inner.num), list(inner.den)
    ftype = type((p + q)[0])
    m = max(cpoly.degree(outer.num), cpoly.degree(outer.den), 0)
    p_pow, q_pow = [[ftype.one()]], [[ftype.one()]]
    for _ in range(m):
        p_pow.append(cpoly.pmul(p_pow[-1], p))
        q_pow.append(cpoly.pmul(q_pow[-1], q))
    num: cpoly.Poly = []
    den: cpoly.Poly = []
    for i, c in enumerate(outer.num):
        if i <= m:
            num = cpoly.padd(num, cpoly.pscale(
                cpoly.pmul(p_pow[i], q_pow[m - i]), c))
    for i, c in enumerate(outer.den):
        if i <= m:
            den = cpoly.padd(den, cpoly.pscale(
                cpoly.pmul(p_pow[i], q_pow[m - i]), c))
    g = cpoly.pgcd(num, den) if num and den else []
    if cpoly.degree(g) > 0:
        num, den = _divide_out(num, g), _divide_out(den, g)
    return ReducedMap(num, den)


# -- resultant --------------------------------------------------------------


def resultant_series(fam: MapL) -> PuiseuxSeries:
    """Res_z(P, Q) as a series, by a division-free determinant."""
    p = _strim(list(fam.num))
    q = _strim(list(fam.den))
    ftype = fam.ftype
    if not p or not q:
        return PuiseuxSeries.zero(inf, ftype)
    m, n = len(p) - 1, len(q) - 1
    if m == 0 and n == 0:
        return PuiseuxSeries.one(inf, ftype)
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    zero = PuiseuxSeries.zero(inf, ftype)
    pd, qd = list(reversed(p)), list(reversed(q))
    rows = [[zero] * i + pd + [zero] * (n - 1 - i) for i in range(n)] \
        + [[zero] * i + qd + [zero] * (m - 1 - i) for i in range(m)]
    return _series_det(rows)


def _series_det(rows: List[List[PuiseuxSeries]]) -> PuiseuxSeries:
    # Laplace expansion by columns, memoized on the set of used rows; no
    # divisions, so no truncation is lost to series inversion.
    n = len(rows)
    ftype = rows[0][0].ftype
    dp = {0: PuiseuxSeries.one(inf, ftype)}
    for col in range(n):
        nxt = {}
        for mask, minor in dp.items():
            for r in range(n):
                bit = 1 << r
                if mask & bit:
                    continue
                entry = rows[r][col]
                if entry.is_zero:
                    continue
                below = (mask & (bit - 1)).bit_count()
                term = minor * entry
                if (col + below) % 2:
                    term = -term
                key = mask | bit
                nxt[key] = term if key not in nxt else nxt[key] + term
        dp = nxt
        if not dp:
            return PuiseuxSeries.zero(inf, ftype)
    return dp[(1 << n) - 1]


def resultant_valuation(fam: MapL) -> Fraction:
    """Valuation of the resultant; the recentering budget of the family."""
    res = resultant_series(fam)
    if res.is_zero:
        raise DegenerateFamily("resultant vanishes identically")
    return res.valuation()
