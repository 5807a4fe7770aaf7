"""Coefficient domains and generic small-matrix helpers.

Every algebraic structure in this package is generic over a commutative
"scalar": exact complex rationals (:class:`QQc`), exact rational multiples
of integer powers of pi (:class:`PiRational`), python complex floats, or
the nilpotent even-form scalars of :mod:`gradedheat.forms`.  The neutral
elements are the plain ints 0 and 1, which every domain here accepts in
mixed arithmetic, so identity matrices and zero tests need no type
dispatch.

Matrices are immutable tuples of row tuples.  They are tiny (twist sizes
N <= 16 in practice), so no numpy here; the numeric fast paths that want
numpy convert at the boundary.
"""

from __future__ import annotations

from fractions import Fraction

FLOAT_FMT = "%.17g"


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


class QQc:
    """Exact complex rational: re + im*i with Fraction parts.

    Arithmetic mixes freely with int and Fraction.  Mixing with floats is
    deliberately a TypeError; conversions to the inexact world go through
    :meth:`to_complex` only.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("QQc is immutable")

    @staticmethod
    def coerce(x):
        if isinstance(x, QQc):
            return x
        return QQc(_as_fraction(x))

    def __add__(self, other):
        o = QQc.coerce(other)
        return QQc(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQc.coerce(other)
        return QQc(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QQc.coerce(other) - self

    def __neg__(self):
        return QQc(-self.re, -self.im)

    def __mul__(self, other):
        o = QQc.coerce(other)
        return QQc(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQc.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero QQc")
        return QQc((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return QQc.coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("QQc powers must be integers")
        if k < 0:
            return 1 / (self ** (-k))
        out = QQc(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = QQc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return QQc(self.re, -self.im)

    def to_complex(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"QQc({self.re}, {self.im})"


QQC_ZERO = QQc(0)
QQC_ONE = QQc(1)
QQC_I = QQc(0, 1)


class PiRational:
    """Monomial q * pi**k with q an exact complex rational.

    Just enough exact arithmetic to state index densities (which carry
    (4*pi)**(-n/2) factors) without floating point.  Sums of different pi
    powers never arise in those formulas, so addition requires matching
    exponents.
    """

    __slots__ = ("coeff", "pi_power")

    def __init__(self, coeff, pi_power=0):
        object.__setattr__(self, "coeff", QQc.coerce(coeff))
        object.__setattr__(self, "pi_power", int(pi_power))

    def __setattr__(self, *a):
        raise AttributeError("PiRational is immutable")

    @staticmethod
    def coerce(x):
        if isinstance(x, PiRational):
            return x
        return PiRational(QQc.coerce(x))

    def __mul__(self, other):
        o = PiRational.coerce(other)
        return PiRational(self.coeff * o.coeff, self.pi_power + o.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = PiRational.coerce(other)
        return PiRational(self.coeff / o.coeff, self.pi_power - o.pi_power)

    def __add__(self, other):
        o = PiRational.coerce(other)
        if not o.coeff:
            return self
        if not self.coeff:
            return o
        if self.pi_power != o.pi_power:
            raise ValueError("cannot add PiRational values with different pi powers")
        return PiRational(self.coeff + o.coeff, self.pi_power)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-PiRational.coerce(other))

    def __rsub__(self, other):
        return PiRational.coerce(other) + (-self)

    def __neg__(self):
        return PiRational(-self.coeff, self.pi_power)

    def __eq__(self, other):
        try:
            o = PiRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.coeff and not o.coeff:
            return True
        return self.coeff == o.coeff and self.pi_power == o.pi_power

    def __hash__(self):
        if not self.coeff:
            return hash(QQC_ZERO)
        return hash((self.coeff, self.pi_power))

    def __bool__(self):
        return bool(self.coeff)

    def to_complex(self):
        import math
        return self.coeff.to_complex() * math.pi ** self.pi_power

    def __repr__(self):
        if self.pi_power == 0:
            return f"PiRational({self.coeff!r})"
        return f"PiRational({self.coeff!r}, pi_power={self.pi_power})"


def is_exact_scalar(x):
    return isinstance(x, (int, Fraction, QQc, PiRational))


def scalar_is_zero(x):
    return not x


def scalar_to_complex(x):
    if isinstance(x, (QQc, PiRational)):
        return x.to_complex()
    if isinstance(x, Fraction):
        return complex(x)
    return complex(x)


# -- matrices: tuples of row tuples over any of the scalar domains --------

def mat(rows):
    return tuple(tuple(r) for r in rows)


def mat_eye(n, one=1, zero=0):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_zero(n, m=None):
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def mat_shape(a):
    return len(a), len(a[0]) if a else 0


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in r) for r in a)


def mat_scale(s, a):
    return tuple(tuple(s * x for x in r) for r in a)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(ra, cb)) for cb in bt) for ra in a)


def mat_trace(a):
    t = a[0][0]
    for i in range(1, len(a)):
        t = t + a[i][i]
    return t


def mat_transpose(a):
    return tuple(zip(*a))


def mat_is_zero(a):
    return all(not x for r in a for x in r)


def mat_eq(a, b):
    return mat_shape(a) == mat_shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_map(f, a):
    return tuple(tuple(f(x) for x in r) for r in a)


def mat_kron(a, b):
    nb = len(b)
    return tuple(
        tuple(a[i // nb][j // nb] * b[i % nb][j % nb] for j in range(len(a[0]) * len(b[0])))
        for i in range(len(a) * nb))


def mat_pow(a, k):
    n = len(a)
    out = mat_eye(n)
    base = a
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_to_complex(a):
    return mat_map(scalar_to_complex, a)
