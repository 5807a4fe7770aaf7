"""Even exterior-form scalars: the commutative nilpotent coefficient ring.

A FormScalar is an element of the even part of the exterior algebra on n
one-form symbols e^1..e^n, stored as word -> coefficient.  Even words
commute under the wedge product and any product involving more than n/2
two-form generators dies, which is exactly the "coefficients in a
commutative algebra" regime that Mehler's formula and the index density
need.  Plain numbers (int, Fraction, QQc, PiRational, float, complex) mix
in as multiples of the empty word.
"""

from __future__ import annotations

from .algebra import mul_wedge_words


def _is_plain(x):
    from fractions import Fraction
    from .scalars import PiRational, QQc
    return isinstance(x, (int, float, complex, Fraction, QQc, PiRational))


class FormScalar:
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        object.__setattr__(self, "n", int(n))
        clean = {}
        if terms:
            for word, c in terms.items():
                word = tuple(word)
                if len(word) % 2:
                    raise ValueError("FormScalar words must have even degree")
                if any(not (1 <= i <= n) for i in word) or list(word) != sorted(set(word)):
                    raise ValueError(f"bad form word {word} for n={n}")
                if c:
                    clean[word] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("FormScalar is immutable")

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(): c})

    @classmethod
    def generator(cls, n, i, j, coeff=1):
        """coeff * e^i ^ e^j (i != j), the 2-form basis symbols."""
        if i == j:
            raise ValueError("degenerate 2-form generator")
        sign, word = mul_wedge_words((i,), (j,))
        return cls(n, {word: sign * coeff if sign == -1 else coeff})

    def _coerce(self, other):
        if isinstance(other, FormScalar):
            if other.n != self.n:
                raise ValueError("FormScalar dimension mismatch")
            return other
        if _is_plain(other):
            return FormScalar.constant(self.n, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in o.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return FormScalar(self.n, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FormScalar(self.n, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = {}
        for wa, ca in self.terms.items():
            for wb, cb in o.terms.items():
                sign, word = mul_wedge_words(wa, wb)
                if sign == 0:
                    continue
                c = ca * cb
                if sign == -1:
                    c = -c
                acc[word] = acc[word] + c if word in acc else c
        return FormScalar(self.n, acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        keys = set(self.terms) | set(o.terms)
        zero_like = 0
        return all(self.terms.get(k, zero_like) == o.terms.get(k, zero_like) for k in keys)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def constant_part(self):
        return self.terms.get((), 0)

    def is_nilpotent(self):
        return () not in self.terms

    def degree_part(self, k):
        return FormScalar(self.n, {w: c for w, c in self.terms.items() if len(w) == k})

    def top_part(self):
        return self.degree_part(self.n)

    def coefficient(self, word):
        return self.terms.get(tuple(word), 0)

    def top_coefficient(self):
        return self.terms.get(tuple(range(1, self.n + 1)), 0)

    def map_coeffs(self, f):
        return FormScalar(self.n, {w: f(c) for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return f"FormScalar.zero({self.n})"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            label = "1" if not w else "^".join(f"e{i}" for i in w)
            bits.append(f"({self.terms[w]})*{label}")
        return "FormScalar[" + " + ".join(bits) + "]"
