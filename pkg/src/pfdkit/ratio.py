"""Exact rational scalars.

Every coefficient in this package is an arbitrary-precision rational in
lowest terms with positive denominator.  gmpy2's mpq provides that contract
with C-speed arithmetic; stdlib fractions.Fraction provides the identical
contract as a fallback.  Set PFDKIT_RATIONAL=fractions to force the pure
Python backend (used by the benchmark harness for backend comparison).
"""

import os

_forced = os.environ.get("PFDKIT_RATIONAL", "").strip().lower()

if _forced in ("fractions", "python"):
    from fractions import Fraction as QQ

    BACKEND = "fractions"
elif _forced in ("", "gmpy2", "gmp"):
    try:
        from gmpy2 import mpq as QQ

        BACKEND = "gmpy2"
    except ImportError:
        from fractions import Fraction as QQ

        BACKEND = "fractions"
else:
    raise RuntimeError(f"unknown PFDKIT_RATIONAL backend {_forced!r}")

ZERO = QQ(0)
ONE = QQ(1)


def qq(num, den=None):
    """Coerce ints, strings like '13' / '-13/4', or rationals to QQ."""
    if den is not None:
        return QQ(num, den)
    if isinstance(num, str):
        return QQ(num.strip())
    return QQ(num)


def qq_str(x) -> str:
    """Render as 'p' or 'p/q' (both backends already do this)."""
    return str(x)
