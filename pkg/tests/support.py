"""Shared fixture families and memoized cycle lookups.

Parsing and cycle-finding are deterministic, so results are cached per
process; each test still exercises the real pipeline, just once per input.
"""

from functools import lru_cache

from rescaling import (find_cycle, monomial_seed_scan, parse_family,
                       parse_frame, reduce_family)

QUAD0 = "t - (1+t^2)/z + t/z^2"
QUAD1 = "t - (1+t^2)/z + t/z^2 - t^5"
LATTES = "(z^2-t)^2/(4*z*(z-1)*(z-t))"
MCMULLEN = "z^3 + t/z^2"
CUBIC = ("-(t^3+2*t^2+t+1)/(t*(t+1)^2)*z^3"
         " + (t + (t^3+2*t^2+t+1)/(t*(t+1)^2))*z^2 + 1")

FAMILIES = {
    "quad0": (QUAD0, None),
    "quad1": (QUAD1, None),
    "lattes": (LATTES, None),
    "mcm": (MCMULLEN, None),
    "cubic": (CUBIC, None),
    "cubic_shift": (CUBIC, "-1+t"),
    "cubic_inv": (CUBIC, "1/t"),
}


@lru_cache(maxsize=None)
def family(key):
    text, subst = FAMILIES[key]
    return parse_family(text, subst)


@lru_cache(maxsize=None)
def cycle(key, seed):
    return find_cycle(family(key), parse_frame(seed))


@lru_cache(maxsize=None)
def reduced(text):
    """The reduced map of a t-free expression, for expected-value literals."""
    return reduce_family(parse_family(text))


@lru_cache(maxsize=None)
def scan(key, max_denominator):
    return monomial_seed_scan(family(key), max_denominator)
