"""Exact rational arithmetic helpers.

All probabilistic computations in this package are exact.  gmpy2's mpq is
used as the rational type (it is much faster than fractions.Fraction for
the elimination-heavy solvers); Fraction is a drop-in fallback.
"""
from __future__ import annotations

try:
    from gmpy2 import mpq as R
except ImportError:  # pragma: no cover
    from fractions import Fraction as R

ZERO = R(0)
ONE = R(1)


def ratio(num, den=1):
    """Exact rational num/den."""
    return R(num, den)


def parse_ratio(text: str):
    """Parse 'p/q' or a bare integer into an exact rational."""
    s = text.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return R(int(p), int(q))
    return R(int(s))


def fmt_ratio(x) -> str:
    """Render a rational as 'p/q' in lowest terms, or a bare integer."""
    x = R(x)
    num, den = x.numerator, x.denominator
    return str(num) if den == 1 else f"{num}/{den}"
