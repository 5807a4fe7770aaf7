"""Polynomial jets around the base point.

A JetSection is a polynomial in x_1..x_n (keyed by multi-index) with
Clifford/exterior-element coefficients, optionally carrying powers of the
formal parameter.  `bound` is the validity degree: coefficients of total
degree <= bound are exact, higher ones are unknown and get dropped (with
the drop recorded in `truncated`).  bound=None marks an exact polynomial.

ScalarJet is the scalar specialization used for geometry data such as
|g|^(1/4); it supports the exact power-series reciprocal that the heat
coefficient Theta_0 needs.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import CliffordElement
from .graded_ops import midx, midx_add, midx_degree


class TruncationOverflow(RuntimeError):
    """A jet operation lost content that the requested output depends on."""


def _min_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class ScalarJet:
    __slots__ = ("n", "bound", "terms", "truncated")

    def __init__(self, n, terms=None, bound=None, truncated=False):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "bound", bound)
        clean = {}
        dropped = False
        if terms:
            for I, c in terms.items():
                I = midx(I)
                if not c:
                    continue
                if bound is not None and midx_degree(I) > bound:
                    dropped = True
                    continue
                clean[I] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "truncated", bool(truncated or dropped))

    def __setattr__(self, *a):
        raise AttributeError("ScalarJet is immutable")

    @classmethod
    def constant(cls, n, c, bound=None):
        return cls(n, {(): c}, bound=bound)

    @classmethod
    def linear(cls, n, coeffs, bound=None):
        """Jet sum_i coeffs[i] * x_(i+1) from a length-n sequence."""
        return cls(n, {midx({i + 1: 1}): c for i, c in enumerate(coeffs)},
                   bound=bound)

    def _low(self):
        return min((midx_degree(I) for I in self.terms), default=None)

    def __add__(self, other):
        if not isinstance(other, ScalarJet):
            return NotImplemented
        terms = dict(self.terms)
        for I, c in other.terms.items():
            terms[I] = terms[I] + c if I in terms else c
        return ScalarJet(self.n, terms, _min_bound(self.bound, other.bound),
                         self.truncated or other.truncated)

    def __neg__(self):
        return ScalarJet(self.n, {I: -c for I, c in self.terms.items()},
                         self.bound, self.truncated)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return ScalarJet(self.n, {I: s * c for I, c in self.terms.items()},
                         self.bound, self.truncated)

    def __mul__(self, other):
        if not isinstance(other, ScalarJet):
            return NotImplemented
        la, lb = self._low(), other._low()
        bound = None
        if self.bound is not None:
            bound = None if lb is None else self.bound + lb
        if other.bound is not None:
            b2 = None if la is None else other.bound + la
            bound = _min_bound(bound, b2)
        acc = {}
        for I, a in self.terms.items():
            for J, b in other.terms.items():
                K = midx_add(I, J)
                c = a * b
                acc[K] = acc[K] + c if K in acc else c
        return ScalarJet(self.n, acc, bound, self.truncated or other.truncated)

    def value0(self):
        return self.terms.get((), 0)

    def reciprocal(self, degree):
        """1/self as a jet to the given degree; constant term must be 1."""
        if self.value0() != 1:
            raise ValueError("reciprocal implemented for jets with constant term 1")
        u = ScalarJet(self.n, {I: c for I, c in self.terms.items() if I},
                      bound=_min_bound(self.bound, degree), truncated=self.truncated)
        one = ScalarJet.constant(self.n, 1, bound=_min_bound(self.bound, degree))
        out = one
        # Newton-free fixed point: r <- 1 - u*r stabilizes after `degree` steps
        for _ in range(degree):
            out = one - u * out
        return out

    def __eq__(self, other):
        if not isinstance(other, ScalarJet):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"ScalarJet(n={self.n}, bound={self.bound}, terms={self.terms})"


class JetSection:
    """Polynomial section; terms maps (xexp, param_exp) -> element."""

    __slots__ = ("n", "N", "bound", "terms", "truncated")

    def __init__(self, n, N, terms=None, bound=None, truncated=False):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "bound", bound)
        clean = {}
        dropped = False
        if terms:
            for key, elem in terms.items():
                I, p = key
                I = midx(I)
                if elem.is_zero():
                    continue
                if bound is not None and midx_degree(I) > bound:
                    dropped = True
                    continue
                clean[(I, int(p))] = elem
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "truncated", bool(truncated or dropped))

    def __setattr__(self, *a):
        raise AttributeError("JetSection is immutable")

    @classmethod
    def identity(cls, n, N=1, bound=None):
        return cls(n, N, {((), 0): CliffordElement.unit(n, N)}, bound=bound)

    @classmethod
    def from_element(cls, n, N, elem, xexp=(), pexp=0, bound=None):
        return cls(n, N, {(midx(xexp), pexp): elem}, bound=bound)

    @classmethod
    def from_scalar_jet(cls, jet, N=1, element_cls=CliffordElement):
        return cls(jet.n, N,
                   {(I, 0): element_cls.scalar(jet.n, c, N)
                    for I, c in jet.terms.items()},
                   bound=jet.bound, truncated=jet.truncated)

    def __add__(self, other):
        if not isinstance(other, JetSection):
            return NotImplemented
        terms = dict(self.terms)
        for k, e in other.terms.items():
            terms[k] = terms[k] + e if k in terms else e
        return JetSection(self.n, self.N, terms,
                          _min_bound(self.bound, other.bound),
                          self.truncated or other.truncated)

    def __neg__(self):
        return JetSection(self.n, self.N, {k: -e for k, e in self.terms.items()},
                          self.bound, self.truncated)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return JetSection(self.n, self.N,
                          {k: e.scale(s) for k, e in self.terms.items()},
                          self.bound, self.truncated)

    def left_mul_element(self, elem):
        return JetSection(self.n, self.N,
                          {k: elem * e for k, e in self.terms.items()},
                          self.bound, self.truncated)

    def _low(self):
        return min((midx_degree(I) for I, _ in self.terms), default=None)

    def mul_scalar_jet(self, jet):
        """Pointwise product with a scalar jet (used for |g|^(1/4) factors)."""
        la = self._low()
        lb = min((midx_degree(I) for I in jet.terms), default=None)
        bound = None
        if self.bound is not None:
            bound = None if lb is None else self.bound + lb
        if jet.bound is not None:
            b2 = None if la is None else jet.bound + la
            bound = _min_bound(bound, b2)
        acc = {}
        for (I, p), e in self.terms.items():
            for J, c in jet.terms.items():
                key = (midx_add(I, J), p)
                val = e.scale(c)
                acc[key] = acc[key] + val if key in acc else val
        return JetSection(self.n, self.N, acc, bound,
                          self.truncated or jet.truncated)

    def ray_integral(self, j):
        """Exact radial transport integral: x^I picks up 1/(j + |I|).

        Implements  int_0^1 s^(j-1) f(s x) ds  for polynomial f, monomial
        by monomial; exact rational factors, no quadrature.
        """
        if j < 1:
            raise ValueError("ray integral needs j >= 1")
        return JetSection(
            self.n, self.N,
            {(I, p): e.scale(Fraction(1, j + midx_degree(I)))
             for (I, p), e in self.terms.items()},
            self.bound, self.truncated)

    def substitute_param(self, value):
        acc = {}
        for (I, p), e in self.terms.items():
            key = (I, 0)
            val = e if p == 0 else e.scale(value ** p)
            acc[key] = acc[key] + val if key in acc else val
        return JetSection(self.n, self.N, acc, self.bound, self.truncated)

    def value0(self):
        """Constant-monomial element (the jet evaluated at the base point).

        Requires the parameter to be substituted away first.
        """
        elem = None
        for (I, p), e in self.terms.items():
            if I == ():
                if p:
                    raise ValueError("value0 on a jet with live parameter powers")
                elem = e if elem is None else elem + e
        if elem is None:
            from .algebra import CliffordElement as _C
            elem = _C.zero(self.n, self.N)
        return elem

    def grading_order(self, w):
        """Grading order of the jet viewed as a multiplication operator."""
        best = None
        for (I, p), e in self.terms.items():
            base = w.x * midx_degree(I) + w.param * p
            for word in e.terms:
                o = base + w.c * len(word)
                best = o if best is None else max(best, o)
        return best

    def __eq__(self, other):
        if not isinstance(other, JetSection):
            return NotImplemented
        if (self.n, self.N) != (other.n, other.N):
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return (f"JetSection(n={self.n}, N={self.N}, bound={self.bound}, "
                f"terms={len(self.terms)}, truncated={self.truncated})")
