"""Laurent polynomials over F_p in d variables, with the palindrome subring.

A polynomial is stored sparsely as a map from exponent vectors (tuples of
ints, negative exponents welcome) to nonzero coefficients in [0, p).  The
representation is canonical: no zero coefficients are ever stored, so two
equal polynomials always compare equal structurally.

The reflection involution sends u_i -> u_i^{-1} (exponent negation).  Its
fixed points are the palindromes; they form the subring in which the
symplectic normal form of a cellular automaton lives.  Division with
remainder inside that subring works against the symmetric basis
b_0 = 1, b_n = u^n + u^-n and is the engine of the Euclidean factorization.

Products dispatch between a sparse dict walk and a dense coefficient-window
convolution (see kernels.py); both give identical canonical results, the
dense path is just faster for the contiguous supports that dominate here.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .ffield import Fp, check_prime, inv_mod

__all__ = [
    "LaurentPoly",
    "NEG_INF",
    "palindromize",
    "basis_element",
    "palindrome_coeffs",
    "palindrome_divmod",
]

# Degree of the zero polynomial: a real minus infinity, ordered below every int.
NEG_INF = float("-inf")

# Dense-path guards.  A dense product costs len(a)*len(b) int64 multiply-adds;
# beyond the budget (or for very hollow supports) the sparse walk wins.  The
# modulus cap keeps int64 accumulation exact: window * (p-1)^2 < 2^63.
_DENSE_BUDGET = 1 << 22
_DENSE_MAX_P = 1 << 20


def _as_exponent(x, d):
    if isinstance(x, int) and not isinstance(x, bool):
        if d == 1:
            return (x,)
        raise ValueError(f"exponent {x!r} needs {d} components")
    t = tuple(x)
    if len(t) != d:
        raise ValueError(f"exponent {x!r} needs {d} components")
    for v in t:
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"exponent components must be ints, got {v!r}")
    return t


class LaurentPoly:
    """Sparse Laurent polynomial over F_p in d variables."""

    __slots__ = ("p", "d", "terms", "_hash")

    def __init__(self, p, d, terms=None):
        check_prime(p)
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"number of variables must be a positive int, got {d!r}")
        acc = {}
        if terms:
            for e, c in terms.items():
                e = _as_exponent(e, d)
                if isinstance(c, Fp):
                    if c.p != p:
                        raise ValueError(f"modulus mismatch: {c.p} vs {p}")
                    c = c.value
                acc[e] = (acc.get(e, 0) + c) % p
        self.p = p
        self.d = d
        self.terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, p, d, terms):
        """Trusted constructor: terms must already be canonical."""
        self = object.__new__(cls)
        self.p = p
        self.d = d
        self.terms = terms
        self._hash = None
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, d=1):
        check_prime(p)
        return cls._raw(p, d, {})

    @classmethod
    def one(cls, p, d=1):
        return cls.constant(p, d, 1)

    @classmethod
    def constant(cls, p, d, c):
        check_prime(p)
        c = int(c) % p
        return cls._raw(p, d, {(0,) * d: c} if c else {})

    @classmethod
    def monomial(cls, p, d, exponent, c=1):
        check_prime(p)
        e = _as_exponent(exponent, d)
        c = int(c) % p
        return cls._raw(p, d, {e: c} if c else {})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.d in self.terms)

    def is_unit(self) -> bool:
        """Unit of the full Laurent ring: a single monomial with nonzero coefficient."""
        return len(self.terms) == 1

    def coeff(self, exponent) -> int:
        return self.terms.get(_as_exponent(exponent, self.d), 0)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.d, 0)

    def support(self):
        """Sorted exponents carrying nonzero coefficients (ints when d == 1)."""
        if self.d == 1:
            return sorted(e for (e,) in self.terms)
        return sorted(self.terms)

    def degree(self):
        """Max absolute exponent (d == 1 only); NEG_INF for the zero polynomial."""
        if self.d != 1:
            raise ValueError("degree is defined for one-variable polynomials")
        if not self.terms:
            return NEG_INF
        return max(abs(e) for (e,) in self.terms)

    # -- ring operations ----------------------------------------------------

    def _require_same_ring(self, other):
        if self.p != other.p or self.d != other.d:
            raise ValueError(
                f"ring mismatch: F_{self.p} in {self.d} vars"
                f" vs F_{other.p} in {other.d} vars"
            )

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._require_same_ring(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        p = self.p
        for e, c in b.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(p, self.d, out)

    def __neg__(self):
        p = self.p
        return LaurentPoly._raw(p, self.d, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def _scaled(self, k: int):
        k %= self.p
        if k == 0:
            return LaurentPoly._raw(self.p, self.d, {})
        if k == 1:
            return self
        p = self.p
        return LaurentPoly._raw(p, self.d, {e: (c * k) % p for e, c in self.terms.items()})

    def _mul_monomial(self, exponent, coefficient):
        p = self.p
        if coefficient == 0:
            return LaurentPoly._raw(p, self.d, {})
        out = {}
        for e, c in self.terms.items():
            out[tuple(x + y for x, y in zip(e, exponent))] = (c * coefficient) % p
        return LaurentPoly._raw(p, self.d, out)

    def shifted(self, x):
        """Multiply by the monomial u^x (translation of the support)."""
        return self._mul_monomial(_as_exponent(x, self.d), 1)

    def _bounds(self):
        lo = [min(e[i] for e in self.terms) for i in range(self.d)]
        hi = [max(e[i] for e in self.terms) for i in range(self.d)]
        return lo, hi

    def _mul_sparse(self, other):
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = tuple(x + y for x, y in zip(e1, e2))
                acc[k] = acc.get(k, 0) + c1 * c2
        p = self.p
        out = {}
        for e, c in acc.items():
            c %= p
            if c:
                out[e] = c
        return LaurentPoly._raw(p, self.d, out)

    def _mul_dense(self, other, lo_a, hi_a, lo_b, hi_b):
        p = self.p
        if self.d == 1:
            arr_a = np.zeros(hi_a[0] - lo_a[0] + 1, dtype=np.int64)
            for (e,), c in self.terms.items():
                arr_a[e - lo_a[0]] = c
            arr_b = np.zeros(hi_b[0] - lo_b[0] + 1, dtype=np.int64)
            for (e,), c in other.terms.items():
                arr_b[e - lo_b[0]] = c
            conv = kernels.convolve_mod(arr_a, arr_b, p)
            base = lo_a[0] + lo_b[0]
            nz = np.nonzero(conv)[0]
            out = {(base + int(i),): int(conv[i]) for i in nz}
            return LaurentPoly._raw(p, 1, out)
        arr_a = np.zeros(
            (hi_a[0] - lo_a[0] + 1, hi_a[1] - lo_a[1] + 1), dtype=np.int64
        )
        for e, c in self.terms.items():
            arr_a[e[0] - lo_a[0], e[1] - lo_a[1]] = c
        arr_b = np.zeros(
            (hi_b[0] - lo_b[0] + 1, hi_b[1] - lo_b[1] + 1), dtype=np.int64
        )
        for e, c in other.terms.items():
            arr_b[e[0] - lo_b[0], e[1] - lo_b[1]] = c
        conv = kernels.convolve2d_mod(arr_a, arr_b, p)
        base0 = lo_a[0] + lo_b[0]
        base1 = lo_a[1] + lo_b[1]
        rows, cols = np.nonzero(conv)
        out = {
            (base0 + int(i), base1 + int(j)): int(conv[i, j])
            for i, j in zip(rows, cols)
        }
        return LaurentPoly._raw(p, 2, out)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._scaled(other)
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {other.p} vs {self.p}")
            return self._scaled(other.value)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._require_same_ring(other)
        if not self.terms or not other.terms:
            return LaurentPoly._raw(self.p, self.d, {})
        if len(other.terms) == 1:
            ((e, c),) = other.terms.items()
            return self._mul_monomial(e, c)
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            return other._mul_monomial(e, c)
        if self.d <= 2 and self.p <= _DENSE_MAX_P:
            lo_a, hi_a = self._bounds()
            lo_b, hi_b = other._bounds()
            cells_a = 1
            cells_b = 1
            for i in range(self.d):
                cells_a *= hi_a[i] - lo_a[i] + 1
                cells_b *= hi_b[i] - lo_b[i] + 1
            hollow_a = cells_a > 16 * len(self.terms) + 64
            hollow_b = cells_b > 16 * len(other.terms) + 64
            if cells_a * cells_b <= _DENSE_BUDGET and not (hollow_a or hollow_b):
                return self._mul_dense(other, lo_a, hi_a, lo_b, hi_b)
        return self._mul_sparse(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fp)) and not isinstance(other, bool):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = LaurentPoly.one(self.p, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- reflection and palindromes -----------------------------------------

    def reflect(self):
        """The involution u -> u^{-1}: negate every exponent."""
        return LaurentPoly._raw(
            self.p, self.d, {tuple(-v for v in e): c for e, c in self.terms.items()}
        )

    def is_palindrome(self) -> bool:
        terms = self.terms
        for e, c in terms.items():
            if terms.get(tuple(-v for v in e)) != c:
                return False
        return True

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        if self.d == 1:
            for (e,), c in sorted(self.terms.items()):
                if e == 0:
                    parts.append(str(c))
                else:
                    var = "u" if e == 1 else f"u^{e}"
                    parts.append(var if c == 1 else f"{c}{var}")
        else:
            for e, c in sorted(self.terms.items()):
                var = "".join(
                    f"u{i + 1}" + ("" if v == 1 else f"^{v}")
                    for i, v in enumerate(e)
                    if v != 0
                )
                if not var:
                    parts.append(str(c))
                else:
                    parts.append(var if c == 1 else f"{c}{var}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly(p={self.p}, d={self.d}, {self})"

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.p == other.p and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.d, frozenset(self.terms.items())))
        return self._hash


def palindromize(g: LaurentPoly) -> LaurentPoly:
    """g + reflect(g): always a palindrome (and how palindromes are sampled)."""
    return g + g.reflect()


def basis_element(p: int, n: int, d: int = 1) -> LaurentPoly:
    """Symmetric basis polynomial b_n = u^n + u^-n, with b_0 = 1 (d == 1)."""
    if d != 1:
        raise ValueError("the symmetric basis is one-dimensional")
    if n < 0:
        raise ValueError("basis index must be non-negative")
    if n == 0:
        return LaurentPoly.one(p, 1)
    return LaurentPoly._raw(p, 1, {(n,): 1, (-n,): 1})


def palindrome_coeffs(f: LaurentPoly) -> dict:
    """Coefficients of a palindrome in the symmetric basis: {n: c_n}, n >= 0."""
    if f.d != 1:
        raise ValueError("the symmetric basis is one-dimensional")
    if not f.is_palindrome():
        raise ValueError(f"not a palindrome: {f}")
    return {e: c for (e,), c in f.terms.items() if e >= 0}


def palindrome_divmod(f: LaurentPoly, h: LaurentPoly):
    """Divide palindrome f by palindrome h: f = q*h + r with degree(r) < degree(h).

    Works in the symmetric basis: each round subtracts
    (lead(f)/lead(h)) * b_{deg f - deg h} * h, which kills the top (and, by
    symmetry, the bottom) coefficient, so the degree strictly decreases.
    Quotient and remainder are palindromes again.
    """
    f._require_same_ring(h)
    if f.d != 1:
        raise ValueError("palindrome division is one-dimensional")
    if h.is_zero():
        raise ZeroDivisionError("palindrome division by zero")
    if not f.is_palindrome():
        raise ValueError(f"dividend is not a palindrome: {f}")
    if not h.is_palindrome():
        raise ValueError(f"divisor is not a palindrome: {h}")
    p = f.p
    dh = h.degree()
    lead_inv = inv_mod(h.coeff(dh), p)
    q = LaurentPoly.zero(p, 1)
    r = f
    while not r.is_zero() and r.degree() >= dh:
        dr = r.degree()
        c = (r.coeff(dr) * lead_inv) % p
        k = dr - dh
        t = basis_element(p, k) * c
        q = q + t
        r = r - t * h
    return q, r
