"""Complexified Clifford and exterior algebras with matrix twist factors.

Elements are finite sums  sum_I  c^I (x) a_I  with c^I a strictly increasing
basis word over {1..n} and a_I an N x N matrix over any commutative scalar
domain.  The quadratic relation is fixed once and for all as

    c^i c^j + c^j c^i = -2 delta_ij,

so c^i c^i = -1, and the supertrace normalization anchor is
str(c^1 ... c^n) = (-2i)^(n/2) for even n.  An explicit irreducible matrix
representation built from Pauli tensor products reproduces that anchor and
serves as the brute-force cross-check.

All values are immutable after construction; every operation returns a new
element, so concurrent use needs no locking.
"""

from __future__ import annotations

from .scalars import (QQc, QQC_I, mat, mat_add, mat_eq, mat_eye, mat_is_zero,
                      mat_kron, mat_mul, mat_neg, mat_scale, mat_trace)


class DimensionMismatch(ValueError):
    pass


def mul_clifford_words(a, b):
    """(sign, word) with c^a c^b = sign * c^word, words strictly increasing."""
    out = list(a)
    sign = 1
    for j in b:
        pos = len(out)
        while pos > 0 and out[pos - 1] > j:
            pos -= 1
            sign = -sign
        if pos > 0 and out[pos - 1] == j:
            # c^j c^j = -1 after the transpositions brought them adjacent
            out.pop(pos - 1)
            sign = -sign
        else:
            out.insert(pos, j)
    return sign, tuple(out)


def mul_wedge_words(a, b):
    """(sign, word) with e^a ^ e^b = sign * e^word, or (0, ()) if they meet."""
    if set(a) & set(b):
        return 0, ()
    inv = sum(1 for x in a for y in b if x > y)
    word = tuple(sorted(a + b))
    return (-1) ** inv, word


class _Element:
    """Shared storage/linear structure for Clifford and exterior elements."""

    __slots__ = ("n", "N", "terms")
    _word_mul = None  # set by subclasses

    def __init__(self, n, N, terms=None):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "N", int(N))
        clean = {}
        if terms:
            for word, m in terms.items():
                word = tuple(word)
                if any(not (1 <= i <= n) for i in word) or list(word) != sorted(set(word)):
                    raise ValueError(f"bad basis word {word} for n={n}")
                m = mat(m)
                if len(m) != N or any(len(r) != N for r in m):
                    raise ValueError("coefficient matrix is not N x N")
                if not mat_is_zero(m):
                    clean[word] = m
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n, N=1):
        return cls(n, N)

    @classmethod
    def unit(cls, n, N=1):
        return cls(n, N, {(): mat_eye(N)})

    @classmethod
    def scalar(cls, n, s, N=1):
        return cls(n, N, {(): mat_scale(s, mat_eye(N))})

    @classmethod
    def word(cls, n, word, coeff=1, N=1):
        """coeff * c^word, coeff a scalar or an N x N matrix."""
        if isinstance(coeff, (tuple, list)):
            m = mat(coeff)
            N = len(m)
        else:
            m = mat_scale(coeff, mat_eye(N))
        return cls(n, N, {tuple(word): m})

    # -- linear structure --------------------------------------------------

    def _check(self, other):
        if self.n != other.n or self.N != other.N:
            raise DimensionMismatch(
                f"(n={self.n}, N={self.N}) vs (n={other.n}, N={other.N})")

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for w, m in other.terms.items():
            terms[w] = mat_add(terms[w], m) if w in terms else m
        return type(self)(self.n, self.N, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.n, self.N,
                          {w: mat_neg(m) for w, m in self.terms.items()})

    def scale(self, s):
        return type(self)(self.n, self.N,
                          {w: mat_scale(s, m) for w, m in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        self._check(other)
        wm = type(self)._word_mul
        acc = {}
        for wa, ma in self.terms.items():
            for wb, mb in other.terms.items():
                sign, word = wm(wa, wb)
                if sign == 0:
                    continue
                m = mat_mul(ma, mb)
                if sign == -1:
                    m = mat_neg(m)
                acc[word] = mat_add(acc[word], m) if word in acc else m
        return type(self)(self.n, self.N, acc)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        if (self.n, self.N) != (other.n, other.N):
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(mat_eq(self.terms[w], other.terms[w]) for w in self.terms)

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.N,
                     frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coeff(self, word):
        return self.terms.get(tuple(word), mat_scale(0, mat_eye(self.N)))

    def words(self):
        return sorted(self.terms, key=lambda w: (len(w), w))

    def max_word_length(self):
        """Top word length; None for the zero element."""
        return max((len(w) for w in self.terms), default=None)

    def degree_part(self, k):
        return type(self)(self.n, self.N,
                          {w: m for w, m in self.terms.items() if len(w) == k})

    def map_coeffs(self, f):
        return type(self)(self.n, self.N, {w: f(m) for w, m in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}.zero({self.n}, {self.N})"
        bits = []
        for w in self.words():
            label = "1" if not w else "".join(f"{type(self)._symbol}{i}" for i in w)
            bits.append(f"{label}:{self.terms[w]}")
        return f"<{type(self).__name__} n={self.n} N={self.N} " + " + ".join(bits) + ">"


class CliffordElement(_Element):
    _word_mul = staticmethod(mul_clifford_words)
    _symbol = "c"

    def supertrace(self):
        """(-2i)^(n/2) * tr(twist coefficient of the volume word c^1..c^n).

        Defined for even n only; the twist trace and the Clifford factor
        multiply.  Exactness is preserved when the coefficients are exact.
        """
        if self.n % 2:
            raise ValueError("supertrace undefined for odd n (no Z2 grading)")
        top = self.terms.get(tuple(range(1, self.n + 1)))
        if top is None:
            return QQc(0)
        return (QQC_I * (-2)) ** (self.n // 2) * mat_trace(top)

    def exterior_symbol(self):
        """Word-for-word transfer to the exterior algebra (after reduction)."""
        return ExteriorElement(self.n, self.N, self.terms)


class ExteriorElement(_Element):
    _word_mul = staticmethod(mul_wedge_words)
    _symbol = "e"


def clifford_mul(a, b):
    """Module-level spelling of the Clifford product."""
    if not isinstance(a, CliffordElement) or not isinstance(b, CliffordElement):
        raise TypeError("clifford_mul expects CliffordElement operands")
    return a * b


def supertrace(a):
    return a.supertrace()


def exterior_symbol(a):
    return a.exterior_symbol()


# -- explicit spin representation (the brute-force side of the algebra) ----

_SIGMA1 = mat([[QQc(0), QQc(1)], [QQc(1), QQc(0)]])
_SIGMA2 = mat([[QQc(0), QQc(0, -1)], [QQc(0, 1), QQc(0)]])
_SIGMA3 = mat([[QQc(1), QQc(0)], [QQc(0), QQc(-1)]])
_ID2 = mat_eye(2, QQc(1), QQc(0))


def _pauli_chain(slot, op, m):
    out = mat([[QQc(1)]])
    for k in range(m):
        out = mat_kron(out, op if k == slot else (_SIGMA3 if k < slot else _ID2))
    return out


def spin_representation(n):
    """Exact gamma matrices g_1..g_n with g_i g_j + g_j g_i = -2 delta_ij.

    Dimension 2^(n/2) for even n and 2^((n-1)/2) for odd n.  Entries are
    QQc, so all representation checks can run in exact arithmetic.
    """
    m = n // 2
    gammas = []
    for k in range(m):
        gammas.append(mat_scale(QQC_I, _pauli_chain(k, _SIGMA1, m)))
        gammas.append(mat_scale(QQC_I, _pauli_chain(k, _SIGMA2, m)))
    if n % 2:
        chain = mat([[QQc(1)]])
        for _ in range(m):
            chain = mat_kron(chain, _SIGMA3)
        gammas.append(mat_scale(QQC_I, chain))
    return gammas


def grading_matrix(n):
    """Chirality operator i^(n/2) g_1...g_n; squares to the identity."""
    if n % 2:
        raise ValueError("grading operator needs even n")
    gammas = spin_representation(n)
    out = mat_eye(len(gammas[0]), QQc(1), QQc(0))
    for g in gammas:
        out = mat_mul(out, g)
    return mat_scale(QQC_I ** (n // 2), out)


def represent(element, gammas=None):
    """Matrix of a CliffordElement in the spin representation (x) twist."""
    if gammas is None:
        gammas = spin_representation(element.n)
    dim = len(gammas[0]) if gammas else 1
    zero = mat_scale(QQc(0), mat_eye(dim * element.N))
    out = zero
    for word, twist in element.terms.items():
        wmat = mat_eye(dim, QQc(1), QQc(0))
        for i in word:
            wmat = mat_mul(wmat, gammas[i - 1])
        out = mat_add(out, mat_kron(wmat, twist))
    return out


def matrix_supertrace(tmat, n, N=1):
    """Brute-force supertrace tr((Gamma (x) 1) T) in the spin representation."""
    g = mat_kron(grading_matrix(n), mat_eye(N, QQc(1), QQc(0)))
    return mat_trace(mat_mul(g, tmat))
