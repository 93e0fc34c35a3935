"""Bridges between exact rationals and mpmath's outward-rounded intervals.

Only logarithm-flavored quantities go through floating point in this
package, and they always travel as mpmath ``iv`` intervals built here with
directed rounding, so every comparison made on them is rigorous.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, libmp, make_mpf

from .errors import Undecidable
from .intervals import Interval

LOG_PREC_START = 64
LOG_PREC_CEILING = 1 << 14


@contextmanager
def iv_prec(prec: int):
    """Temporarily set the interval context precision (iv has no workprec)."""
    old = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = old


def iv_int(n: int):
    """Exact enclosure of an arbitrary-size integer at the current iv precision."""
    prec = iv.prec
    lo = make_mpf(libmp.from_int(n, prec, "f"))
    hi = make_mpf(libmp.from_int(n, prec, "c"))
    return iv.mpf([lo, hi])


def iv_fraction(fr) -> "iv.mpf":
    fr = Fraction(fr)
    return iv_int(fr.numerator) / iv_int(fr.denominator)


def iv_hull(lo, hi):
    a = iv_fraction(lo)
    b = iv_fraction(hi)
    return iv.mpf([make_mpf(a._mpi_[0]), make_mpf(b._mpi_[1])])


def iv_log_abs_int(n: int):
    if n == 0:
        raise ValueError("log of zero")
    return iv.log(iv_int(abs(n)))


def iv_log_interval(interval: Interval):
    """Enclosure of log over a positive rational interval."""
    if interval.lo <= 0:
        raise ValueError("interval must be positive for log")
    return iv.log(iv_hull(interval.lo, interval.hi))


def decide_sign(builder, what: str = "sign") -> int:
    """Certified sign (+1/-1) of a quantity built at escalating iv precision.

    `builder()` must reconstruct the quantity from exact data at the current
    precision.  Exact zeros cannot be certified here; the caller aborts.
    """
    prec = LOG_PREC_START
    while True:
        with iv_prec(prec):
            val = builder()
            if val.a > 0:
                return 1
            if val.b < 0:
                return -1
        if prec >= LOG_PREC_CEILING:
            raise Undecidable(f"{what} still ambiguous at {prec} bits")
        prec *= 2


def mid_str(x, digits: int = 15) -> str:
    """Deterministic decimal rendering of an iv midpoint."""
    from mpmath import mp, nstr

    mid = x.mid
    if hasattr(mid, "_mpi_"):  # .mid of an ivmpf is a degenerate interval
        mid = make_mpf(mid._mpi_[0])
    with mp.workdps(digits + 5):
        return nstr(mid, digits)


def fraction_from_raw(raw) -> Fraction:
    """Exact rational value of a raw libmp float (dyadic by construction)."""
    sign, man, exp, _bc = raw
    man = int(man)
    if man == 0:
        return Fraction(0)
    val = Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    return -val if sign else val


def interval_from_iv(x) -> Interval:
    a, b = x._mpi_
    return Interval(fraction_from_raw(a), fraction_from_raw(b))
