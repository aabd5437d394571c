"""Classification of limit maps.

Three predicates drive the reports: whether a map has a multiple fixed
point, whether it is conjugate to a polynomial (some point is totally
invariant), and whether it is postcritically finite.  Exact maps get
certified answers where the arithmetic allows; everything numeric is labeled
as such in the status.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import cpoly
from .config import PCF_CLUSTER_TOL, PCF_HEIGHT_BITS, PCF_MAX_ITER
from .errors import AssertionFailed
from .coefficients import ApproxComplex, Coefficient, GaussianRational
from .maps import ReducedMap

PCF_CERTIFIED = "PCF_Certified"
PCF_NUMERIC = "PCF_Numeric"
NOT_PCF_ESCAPE = "NotPCF_CertifiedEscape"
NOT_PCF_WITHIN = "NotPCF_WithinBound"
PCF_UNKNOWN = "Unknown"

INFINITY = "inf"

_DIVERGE_MAG = 1e9

Point = Union[GaussianRational, str]


def multiple_fixed_point(g: ReducedMap) -> bool:
    """True when some fixed point of g has multiplicity at least 2.

    The d+1 fixed points of a degree-d map are the roots of R(z) - z*S(z)
    plus infinity with multiplicity d+1 minus that degree; an affine multiple
    root is a vanishing discriminant.
    """
    d = g.degree
    fixed = cpoly.psub(list(g.num), [_zero(g)] + list(g.den))
    fixed = cpoly.trim(fixed)
    if not fixed:
        return True  # the identity: every fixed point degenerate
    if cpoly.degree(fixed) <= d - 1:
        return True
    return cpoly.presultant(fixed, cpoly.pderiv(fixed)).is_zero


def polynomial_like(g: ReducedMap) -> Tuple[bool, Optional[Point]]:
    """Whether g is affinely conjugate to a polynomial, with the witness.

    A witness is a totally invariant point: infinity when the denominator is
    constant, else a fixed point z0 with R - z0*S = lc*(z - z0)^d.  For exact
    maps the candidate search over Gaussian rational fixed points is
    complete, because a totally ramified point of such a map satisfies a
    linear relation over the coefficient field.
    """
    d = g.degree
    if d < 1:
        return False, None
    if cpoly.degree(g.den) <= 0:
        return True, INFINITY
    fixed = cpoly.trim(cpoly.psub(list(g.num), [_zero(g)] + list(g.den)))
    if isinstance(_one(g), ApproxComplex):
        candidates = [ApproxComplex(r.real, r.imag)
                      for r in cpoly.roots_numeric(fixed)]
    else:
        candidates = [r for r, _ in cpoly.roots_exact(fixed)[0]]
    for z0 in candidates:
        shifted = cpoly.trim(cpoly.psub(list(g.num),
                                        cpoly.pscale(list(g.den), z0)))
        if cpoly.degree(shifted) != d:
            continue
        target = cpoly.pscale(_linear_power(z0, d), shifted[-1])
        if cpoly.is_zero_poly(cpoly.psub(shifted, target)):
            return True, z0
    return False, None


def _linear_power(z0: Coefficient, d: int) -> cpoly.Poly:
    out = [type(z0).one()]
    for _ in range(d):
        out = cpoly.pmul(out, [-z0, type(z0).one()])
    return out


def _zero(g: ReducedMap) -> Coefficient:
    return type((g.num or g.den)[0]).zero()


def _one(g: ReducedMap) -> Coefficient:
    return type((g.num or g.den)[0]).one()


@dataclass(frozen=True)
class PcfReport:
    """Outcome of the postcritical finiteness test."""

    status: str
    is_monomial: bool
    orbits: Dict[str, str]
    postcritical: Optional[Tuple[str, ...]] = None


def pcf_check(g: ReducedMap, max_iter: int = PCF_MAX_ITER) -> PcfReport:
    """Postcritical finiteness of a reduced map.

    Monomials short-circuit: their critical orbits live in {0, infinity}.
    Exact critical points get exact orbits with repeat detection, a height
    cap, and (for polynomials) a certified escape radius; critical points
    outside the coefficient field, and all approximate maps, fall back to
    numeric orbits whose verdicts are never labeled certified.
    """
    d = g.degree
    if _is_monomial(g):
        return PcfReport(PCF_CERTIFIED, True, {"0": "finite", "inf": "finite"},
                         ("0", "inf"))
    if d <= 1:
        return PcfReport(PCF_CERTIFIED, False, {}, ())
    wron = cpoly.trim(cpoly.psub(
        cpoly.pmul(cpoly.pderiv(list(g.num)), list(g.den)),
        cpoly.pmul(list(g.num), cpoly.pderiv(list(g.den)))))
    inf_mult = (2 * d - 2) - max(cpoly.degree(wron), 0)
    if isinstance(_one(g), ApproxComplex):
        crits: List[object] = list(cpoly.roots_numeric(wron))
        if inf_mult > 0:
            crits.append(INFINITY)
        return _pcf_numeric(g, crits, certified_empty=False,
                            max_iter=max_iter)
    gauss_crits, rest = cpoly.roots_exact(wron)
    crits = [r for r, _ in gauss_crits]
    if inf_mult > 0:
        crits.append(INFINITY)
    orbits: Dict[str, str] = {}
    postcritical: set = set()
    escape = False
    capped = False
    bound = _escape_bound(g)
    for z0 in crits:
        verdict, tail = _exact_orbit(g, z0, bound, max_iter)
        orbits[_pt_str(z0)] = verdict
        postcritical.update(tail)
        if verdict == "escape":
            escape = True
        elif verdict in ("height-cap", "iteration-cap"):
            capped = True
    if escape:
        return PcfReport(NOT_PCF_ESCAPE, False, orbits)
    if capped:
        return PcfReport(NOT_PCF_WITHIN, False, orbits)
    if rest:
        # critical points outside Q(i): only numeric verdicts remain
        num_crits: List[object] = []
        for fac, _ in rest:
            num_crits.extend(cpoly.roots_numeric(fac))
        sub = _pcf_numeric(g, num_crits, certified_empty=True,
                           max_iter=max_iter)
        merged = dict(orbits)
        merged.update(sub.orbits)
        # certification is lost once any orbit is tracked numerically
        return PcfReport(sub.status, False, merged)
    return PcfReport(PCF_CERTIFIED, False, orbits,
                     tuple(sorted(_pt_str(p) for p in postcritical)))


def _is_monomial(g: ReducedMap) -> bool:
    nz_num = [i for i, c in enumerate(g.num) if not c.is_zero]
    nz_den = [i for i, c in enumerate(g.den) if not c.is_zero]
    return len(nz_num) <= 1 and len(nz_den) <= 1 and g.degree >= 1


def _escape_bound(g: ReducedMap) -> Optional[Fraction]:
    """Certified escape radius for an exact polynomial map, else None.

    Rational bounds sandwich the absolute values: |a| <= |re| + |im| from
    above and |a| >= max(|re|, |im|) from below.  Beyond the radius,
    |g(z)| >= 2|z|, so one orbit point outside it certifies escape.
    """
    if cpoly.degree(g.den) > 0 or g.degree < 2:
        return None
    num = cpoly.trim(cpoly.pscale(list(g.num), g.den[0].inverse()))
    upper = sum((abs(c.re) + abs(c.im) for c in num[:-1]), Fraction(0))
    lead = num[-1]
    lower = max(abs(lead.re), abs(lead.im))
    return max(Fraction(2), 2 * upper / lower, Fraction(4) / lower)


def _exact_orbit(g: ReducedMap, z0: Point, bound: Optional[Fraction],
                 max_iter: int) -> Tuple[str, List[Point]]:
    seen = set()
    z = z0
    tail: List[Point] = []
    for _ in range(max_iter):
        if z in seen:
            return f"finite({len(seen)})", tail
        seen.add(z)
        if bound is not None and isinstance(z, GaussianRational):
            if max(abs(z.re), abs(z.im)) > bound:
                return "escape", tail
        if isinstance(z, GaussianRational) and _height_bits(z) > PCF_HEIGHT_BITS:
            return "height-cap", tail
        z = _apply_exact(g, z)
        tail.append(z)
    return "iteration-cap", tail


def _height_bits(z: GaussianRational) -> int:
    return max(z.re.numerator.bit_length(), z.re.denominator.bit_length(),
               z.im.numerator.bit_length(), z.im.denominator.bit_length())


def _apply_exact(g: ReducedMap, z: Point) -> Point:
    num, den = list(g.num), list(g.den)
    if z == INFINITY:
        dn, dd = cpoly.degree(num), cpoly.degree(den)
        if dn > dd:
            return INFINITY
        if dn < dd:
            return GaussianRational.zero()
        return num[-1] / den[-1]
    sz = cpoly.peval(den, z)
    if sz.is_zero:
        return INFINITY
    return cpoly.peval(num, z) / sz


def _pcf_numeric(g: ReducedMap, crits: Sequence[object],
                 certified_empty: bool, max_iter: int) -> PcfReport:
    orbits: Dict[str, str] = {}
    all_periodic = True
    diverged = False
    for z0 in crits:
        verdict = _numeric_orbit(g, z0, max_iter)
        key = _pt_str(z0)
        orbits[key] = verdict
        if verdict == "numeric-diverged":
            diverged = True
            all_periodic = False
        elif verdict != "numeric-periodic":
            all_periodic = False
    if all_periodic and (crits or certified_empty):
        return PcfReport(PCF_NUMERIC, False, orbits)
    if diverged:
        return PcfReport(NOT_PCF_WITHIN, False, orbits)
    return PcfReport(PCF_UNKNOWN, False, orbits)


def _numeric_orbit(g: ReducedMap, z0: object, max_iter: int) -> str:
    num = [c.to_complex() for c in g.num]
    den = [c.to_complex() for c in g.den]
    z = z0 if z0 == INFINITY else complex(z0)
    visited: List[object] = []
    for _ in range(max_iter):
        for w in visited:
            if z == INFINITY or w == INFINITY:
                if z == w:
                    return "numeric-periodic"
            elif abs(z - w) < PCF_CLUSTER_TOL:
                return "numeric-periodic"
        visited.append(z)
        z = _apply_numeric(num, den, z)
        if z != INFINITY and abs(z) > _DIVERGE_MAG:
            return "numeric-diverged"
    return "numeric-capped"


def _apply_numeric(num: List[complex], den: List[complex],
                   z: object) -> object:
    if z == INFINITY:
        dn, dd = len(num) - 1, len(den) - 1
        if dn > dd:
            return INFINITY
        if dn < dd:
            return 0j
        return num[-1] / den[-1]
    sz = _horner(den, z)
    scale = sum(abs(c) * max(1.0, abs(z)) ** i for i, c in enumerate(den))
    if abs(sz) <= 1e-12 * max(scale, 1e-300):
        return INFINITY
    return _horner(num, z) / sz


def _horner(p: List[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(p):
        acc = acc * z + c
    return acc


def _pt_str(z: object) -> str:
    return z if isinstance(z, str) else str(z)


@dataclass(frozen=True)
class LimitClassification:
    """The three predicates evaluated on one limit map."""

    map_str: str
    degree: int
    multiple_fixed_point: bool
    polynomial_like: bool
    polynomial_witness: Optional[str]
    pcf: PcfReport

    @property
    def pcf_status(self) -> str:
        return self.pcf.status


def classify_limit(g: ReducedMap) -> LimitClassification:
    poly, witness = polynomial_like(g)
    return LimitClassification(
        map_str=str(g),
        degree=g.degree,
        multiple_fixed_point=multiple_fixed_point(g),
        polynomial_like=poly,
        polynomial_witness=None if witness is None else _pt_str(witness),
        pcf=pcf_check(g),
    )


@dataclass(frozen=True)
class DichotomyReport:
    """How a family's rescaling cycles split.

    ``case`` is "i" or "ii" for quadratic families with a cycle of period
    at least 2, and None when only the count bound applies.
    """

    case: Optional[str]
    periods: Tuple[int, ...]
    classifications: Tuple[LimitClassification, ...]
    non_pcf_count: int


def quadratic_dichotomy_report(cycles: Sequence, d: int) -> DichotomyReport:
    """Check the structure of the degree >= 2 cycles of a degree-d family.

    For any d: at most 2d - 2 of the limits may fail postcritical
    finiteness.  For d = 2, additionally at most two independent cycles,
    and when one of period >= 2 exists, exactly one shape: (i) two cycles
    of periods q' > q > 1, the short limit with a multiple fixed point and
    the long one polynomial-like, or (ii) a single cycle class whose limit
    has a multiple fixed point.  Violations raise :class:`AssertionFailed`.
    """
    heavy = sorted((c for c in cycles if c.degree >= 2),
                   key=lambda c: c.period)
    for c in heavy:
        src = c.steps[0].limit.source_degree
        if src != d:
            raise ValueError(
                f"cycle computed from a degree-{src} family, not {d}")
    cls = tuple(classify_limit(c.limit) for c in heavy)
    non_pcf = sum(1 for c in cls
                  if c.pcf.status in (NOT_PCF_ESCAPE, NOT_PCF_WITHIN))
    periods = tuple(c.period for c in heavy)
    if non_pcf > 2 * d - 2:
        raise AssertionFailed(
            "more than 2d - 2 limits fail postcritical finiteness",
            details={"non_pcf": non_pcf, "bound": 2 * d - 2})
    if d != 2:
        return DichotomyReport(None, periods, cls, non_pcf)
    if len(heavy) > 2:
        raise AssertionFailed(
            "more than two independent non-trivial cycles",
            details={"periods": list(periods)})
    if not any(p >= 2 for p in periods):
        return DichotomyReport(None, periods, cls, non_pcf)
    if len(heavy) == 1:
        if not cls[0].multiple_fixed_point:
            raise AssertionFailed(
                "single cycle class must carry a multiple fixed point",
                details={"limit": cls[0].map_str})
        return DichotomyReport("ii", periods, cls, non_pcf)
    q, qp = periods
    if not (1 < q < qp):
        raise AssertionFailed(
            "two cycles must have distinct periods q' > q > 1",
            details={"periods": list(periods)})
    if not cls[0].multiple_fixed_point:
        raise AssertionFailed(
            "shorter cycle's limit lacks a multiple fixed point",
            details={"limit": cls[0].map_str})
    if not cls[1].polynomial_like:
        raise AssertionFailed(
            "longer cycle's limit is not polynomial-like",
            details={"limit": cls[1].map_str})
    return DichotomyReport("i", periods, cls, non_pcf)
