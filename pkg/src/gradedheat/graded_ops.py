"""Filtered differential-operator calculus with normal ordering.

Operators are finite sums of monomials

    coeff (x) x^I c^J d^K param^a

with coeff an N x N twist matrix that is constant in x and in the formal
parameter, I and K multi-indices, and J a reduced basis word of the
Clifford (or exterior) algebra.  Composition normal-orders exactly via the
Leibniz rule; the three grading presets assign weights to coordinates,
derivatives, Clifford factors and the parameter, and the filtration
inequality ord(A o B) <= ord(A) + ord(B) is what all leading-order
arguments in this package lean on.

Multi-indices are canonical tuples of (axis, multiplicity) pairs with
axes strictly increasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import (CliffordElement, DimensionMismatch, ExteriorElement,
                      mul_clifford_words, mul_wedge_words)
from .scalars import (mat, mat_add, mat_eq, mat_eye, mat_is_zero, mat_mul,
                      mat_neg, mat_scale)

# -- multi-indices ---------------------------------------------------------


def midx(data=()):
    """Canonical multi-index from (axis, mult) pairs, a dict, or axis list."""
    if isinstance(data, dict):
        items = data.items()
    else:
        data = tuple(data)
        if data and isinstance(data[0], int):
            items = ((a, data.count(a)) for a in sorted(set(data)))
        else:
            items = data
    out = []
    for axis, mult in sorted(items):
        if mult < 0:
            raise ValueError("negative multiplicity")
        if mult:
            if out and out[-1][0] == axis:
                raise ValueError("duplicate axis in multi-index")
            out.append((int(axis), int(mult)))
    return tuple(out)


def midx_degree(I):
    return sum(m for _, m in I)


def midx_get(I, axis):
    for a, m in I:
        if a == axis:
            return m
    return 0


def midx_add(I, J):
    d = dict(I)
    for a, m in J:
        d[a] = d.get(a, 0) + m
    return midx(d)


def midx_sub(I, J):
    d = dict(I)
    for a, m in J:
        d[a] = d.get(a, 0) - m
        if d[a] < 0:
            raise ValueError("multi-index subtraction went negative")
    return midx(d)


def midx_axes(I):
    return tuple(a for a, _ in I)


def falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def deriv_monomial_factor(K, S):
    """Integer factor f with d^K x^S = f * x^(S-K), or 0 if K exceeds S."""
    f = 1
    for axis, k in K:
        s = midx_get(S, axis)
        if k > s:
            return 0
        f *= falling(s, k)
    return f


def _leibniz_splits(K, S):
    """All (L, coeff) with L <= min(K, S) componentwise and
    coeff = prod binom(K_i, L_i) * falling(S_i, L_i)."""
    axes = [(a, k, midx_get(S, a)) for a, k in K]
    splits = [((), 1)]
    for axis, k, s in axes:
        top = min(k, s)
        splits = [
            (L + ((axis, l),) if l else L,
             c * math.comb(k, l) * falling(s, l))
            for L, c in splits
            for l in range(top + 1)
        ]
    return [(midx(dict(L)), c) for L, c in splits]


# -- grading weights -------------------------------------------------------


@dataclass(frozen=True)
class GradingWeights:
    x: int
    d: int
    c: int
    param: int

    def monomial_order(self, xexp, word, dexp, pexp):
        return (self.x * midx_degree(xexp) + self.c * len(word)
                + self.d * midx_degree(dexp) + self.param * pexp)


CG = GradingWeights(x=-1, d=1, c=1, param=0)
PG = GradingWeights(x=-1, d=1, c=0, param=2)
RG = GradingWeights(x=-1, d=1, c=0, param=1)

PRESETS = {"cG": CG, "pG": PG, "rG": RG}


# -- operators -------------------------------------------------------------

_WORD_MUL = {"clifford": mul_clifford_words, "exterior": mul_wedge_words}
_ELEMENT = {"clifford": CliffordElement, "exterior": ExteriorElement}


class GradedOperator:
    """Normal-ordered operator; terms maps (xexp, word, dexp, pexp) -> matrix."""

    __slots__ = ("n", "N", "algebra", "terms")

    def __init__(self, n, N, terms=None, algebra="clifford"):
        if algebra not in _WORD_MUL:
            raise ValueError(f"unknown algebra {algebra!r}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "algebra", algebra)
        clean = {}
        if terms:
            for key, m in terms.items():
                xexp, word, dexp, pexp = key
                key = (midx(xexp), tuple(word), midx(dexp), int(pexp))
                if pexp < 0:
                    raise ValueError("negative parameter power")
                m = mat(m)
                if len(m) != N or any(len(r) != N for r in m):
                    raise ValueError("coefficient matrix is not N x N")
                if not mat_is_zero(m):
                    clean[key] = m
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("GradedOperator is immutable")

    @classmethod
    def zero(cls, n, N=1, algebra="clifford"):
        return cls(n, N, algebra=algebra)

    @property
    def element_cls(self):
        return _ELEMENT[self.algebra]

    def _check(self, other):
        if (self.n, self.N, self.algebra) != (other.n, other.N, other.algebra):
            raise DimensionMismatch(
                f"(n={self.n}, N={self.N}, {self.algebra}) vs "
                f"(n={other.n}, N={other.N}, {other.algebra})")

    def __add__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, m in other.terms.items():
            terms[k] = mat_add(terms[k], m) if k in terms else m
        return GradedOperator(self.n, self.N, terms, self.algebra)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GradedOperator(self.n, self.N,
                              {k: mat_neg(m) for k, m in self.terms.items()},
                              self.algebra)

    def scale(self, s):
        return GradedOperator(self.n, self.N,
                              {k: mat_scale(s, m) for k, m in self.terms.items()},
                              self.algebra)

    def __mul__(self, other):
        if isinstance(other, GradedOperator):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, s):
        return self.scale(s)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise TypeError("operator powers must be non-negative integers")
        out = GradedOperator(self.n, self.N,
                             {((), (), (), 0): mat_eye(self.N)}, self.algebra)
        for _ in range(k):
            out = out.compose(self)
        return out

    def compose(self, other):
        """Exact normal-ordered composition self o other."""
        self._check(other)
        word_mul = _WORD_MUL[self.algebra]
        acc = {}
        for (xa, wa, da, pa), ma in self.terms.items():
            for (xb, wb, db, pb), mb in other.terms.items():
                sign, word = word_mul(wa, wb)
                if sign == 0:
                    continue
                m0 = mat_mul(ma, mb)
                if sign == -1:
                    m0 = mat_neg(m0)
                pexp = pa + pb
                for L, cf in _leibniz_splits(da, xb):
                    if cf == 0:
                        continue
                    key = (midx_add(xa, midx_sub(xb, L)), word,
                           midx_add(midx_sub(da, L), db), pexp)
                    m = m0 if cf == 1 else mat_scale(cf, m0)
                    acc[key] = mat_add(acc[key], m) if key in acc else m
        return GradedOperator(self.n, self.N, acc, self.algebra)

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if (self.n, self.N, self.algebra) != (other.n, other.N, other.algebra):
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(mat_eq(self.terms[k], other.terms[k]) for k in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- gradings ----------------------------------------------------------

    def grading_order(self, w):
        """Max monomial order under the weights, or None for the zero operator."""
        if not self.terms:
            return None
        return max(w.monomial_order(x, word, d, p)
                   for (x, word, d, p) in self.terms)

    def top_part(self, w):
        return self.graded_part(w, self.grading_order(w)) if self.terms else self

    def graded_part(self, w, k):
        return GradedOperator(
            self.n, self.N,
            {key: m for key, m in self.terms.items()
             if w.monomial_order(*key) == k},
            self.algebra)

    def threshold_part(self, w, kmin):
        """Sub-sum of monomials with grading order >= kmin."""
        return GradedOperator(
            self.n, self.N,
            {key: m for key, m in self.terms.items()
             if w.monomial_order(*key) >= kmin},
            self.algebra)

    def model_operator(self, w=CG):
        """Top part with every Clifford coefficient pushed to the exterior
        algebra.  Only meaningful for the cG preset, where commutators of
        two-words drop grading and the quadratic relation never reaches the
        top order."""
        if self.algebra != "clifford":
            return self.top_part(w)
        top = self.top_part(w)
        return GradedOperator(self.n, self.N, top.terms, "exterior")

    def substitute_param(self, value):
        """Fold param^a into the coefficients at a concrete value."""
        acc = {}
        for (x, word, d, p), m in self.terms.items():
            key = (x, word, d, 0)
            mm = m if p == 0 else mat_scale(value ** p, m)
            acc[key] = mat_add(acc[key], mm) if key in acc else mm
        return GradedOperator(self.n, self.N, acc, self.algebra)

    # -- action on jets ------------------------------------------------------

    def apply(self, section, param_value=None):
        """Act on a JetSection; substitutes the parameter when given.

        Validity-degree bookkeeping: a monomial x^I d^K maps a jet exact to
        degree b to one exact to degree b - |K| + |I|; the result carries
        the minimum over monomials (capped at b), and the section
        constructor records any dropped beyond-bound content.
        """
        if param_value is not None:
            return self.substitute_param(param_value).apply(
                section.substitute_param(param_value))
        if self.n != section.n or self.N != section.N:
            raise DimensionMismatch("operator/section dimension mismatch")
        elem_cls = self.element_cls
        acc = {}
        bound = section.bound
        if bound is not None:
            for (I, word, K, a) in self.terms:
                reach = section.bound - midx_degree(K) + midx_degree(I)
                bound = min(bound, reach)
        for (I, word, K, a), m in self.terms.items():
            left = elem_cls(self.n, self.N, {word: m})
            for (S, b), elem in section.terms.items():
                f = deriv_monomial_factor(K, S)
                if f == 0:
                    continue
                val = left * (elem if f == 1 else elem.scale(f))
                if val.is_zero():
                    continue
                key = (midx_add(I, midx_sub(S, K)), b + a)
                acc[key] = acc[key] + val if key in acc else val
        return type(section)(section.n, section.N, acc, bound=bound,
                             truncated=section.truncated)

    # -- misc ----------------------------------------------------------------

    def monomial_count(self):
        return len(self.terms)

    def map_coeffs(self, f):
        return GradedOperator(self.n, self.N,
                              {k: f(m) for k, m in self.terms.items()},
                              self.algebra)

    def __repr__(self):
        def fmt(key):
            x, word, d, p = key
            bits = []
            bits += [f"x{a}^{m}" if m > 1 else f"x{a}" for a, m in x]
            sym = "c" if self.algebra == "clifford" else "e"
            bits += [f"{sym}{i}" for i in word]
            bits += [f"D{a}^{m}" if m > 1 else f"D{a}" for a, m in d]
            if p:
                bits.append(f"param^{p}" if p > 1 else "param")
            return "*".join(bits) if bits else "1"

        inner = " + ".join(f"[{self.terms[k]}]{fmt(k)}"
                           for k in sorted(self.terms))
        return f"<GradedOperator n={self.n} N={self.N} {self.algebra}: {inner or '0'}>"


# -- convenience builders --------------------------------------------------


def const_op(n, N, coeff):
    """Constant coefficient operator; coeff is a scalar or an N x N matrix."""
    if isinstance(coeff, (tuple, list)):
        m = mat(coeff)
    else:
        m = mat_scale(coeff, mat_eye(N))
    return GradedOperator(n, N, {((), (), (), 0): m})


def x_op(n, N, axis, coeff=1):
    m = mat_scale(coeff, mat_eye(N))
    return GradedOperator(n, N, {(midx({axis: 1}), (), (), 0): m})


def d_op(n, N, axis, coeff=1):
    m = mat_scale(coeff, mat_eye(N))
    return GradedOperator(n, N, {((), (), midx({axis: 1}), 0): m})


def word_op(n, N, word, coeff=1):
    if isinstance(coeff, (tuple, list)):
        m = mat(coeff)
    else:
        m = mat_scale(coeff, mat_eye(N))
    return GradedOperator(n, N, {((), tuple(word), (), 0): m})


def param_op(n, N, power=1, coeff=1):
    if isinstance(coeff, (tuple, list)):
        m = mat(coeff)
    else:
        m = mat_scale(coeff, mat_eye(N))
    return GradedOperator(n, N, {((), (), (), power): m})


def from_element(n, N, element, xexp=(), dexp=(), pexp=0):
    """Multiplication operator built from a Clifford/exterior element."""
    algebra = "clifford" if isinstance(element, CliffordElement) else "exterior"
    return GradedOperator(
        n, N,
        {(midx(xexp), w, midx(dexp), pexp): m for w, m in element.terms.items()},
        algebra)


def laplacian(n, N):
    out = GradedOperator.zero(n, N)
    for i in range(1, n + 1):
        out = out + GradedOperator(n, N, {((), (), midx({i: 2}), 0): mat_eye(N)})
    return out


def grading_order(A, w):
    return A.grading_order(w)


def top_part(A, w):
    return A.top_part(w)


def model_operator(A, w=CG):
    return A.model_operator(w)


def compose(A, B):
    return A.compose(B)
