"""Exact rational scalars and their canonical text form.

All arithmetic uses fractions.Fraction. The interchange rendering is
"p/q" with q > 0 and gcd(p, q) = 1, the minus sign on the numerator;
integers render as "p/1". Parsing also accepts a bare integer string.
"""

from fractions import Fraction

from .errors import BadRational


def format_rational(x):
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_rational(text):
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        # float input only appears in float scalar mode; go through the
        # decimal rendering so 0.1 means the literal decimal
        return Fraction(repr(text))
    s = str(text).strip()
    if not s:
        raise BadRational("empty rational")
    num, _, den = s.partition("/")
    try:
        p = int(num)
    except ValueError:
        raise BadRational("bad numerator in %r" % s) from None
    if not _:
        return Fraction(p)
    try:
        q = int(den)
    except ValueError:
        raise BadRational("bad denominator in %r" % s) from None
    if q == 0:
        raise BadRational("zero denominator in %r" % s)
    return Fraction(p, q)
