"""Phase-space vectors and the bilinear forms that define the symplectic structure.

A phase-space vector is a pair of Laurent polynomials (plus, minus): the
plus part records the diagonal (Z-type) content per cell, the minus part the
shift (X-type) content.  Three forms live here:

  beta(xi, eta)       scalar sum of xi_plus(x) * eta_minus(x) over all cells
  sigma(xi, eta)      beta(xi, eta) - beta(eta, xi), the commutation form
  form_sigma_poly     reflect(xi_plus)*eta_minus - reflect(xi_minus)*eta_plus,
                      a polynomial whose coefficient at x is sigma against the
                      translate of eta by -x (the reflection in the first slot
                      reverses the offset sign)

Cellular automata preserve sigma translation-covariantly iff they preserve
form_sigma_poly, which is why symplecticity checks reduce to three
polynomial identities on the matrix columns.
"""

from __future__ import annotations

from .ffield import Fp
from .laurent import LaurentPoly

__all__ = ["PhaseVector", "beta", "sigma", "form_sigma_poly"]


class PhaseVector:
    """Pair (plus, minus) of Laurent polynomials over the same ring."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus: LaurentPoly, minus: LaurentPoly):
        if not isinstance(plus, LaurentPoly) or not isinstance(minus, LaurentPoly):
            raise TypeError("phase vector components must be Laurent polynomials")
        plus._require_same_ring(minus)
        self.plus = plus
        self.minus = minus

    @property
    def p(self):
        return self.plus.p

    @property
    def d(self):
        return self.plus.d

    @classmethod
    def zero(cls, p, d=1):
        z = LaurentPoly.zero(p, d)
        return cls(z, z)

    @classmethod
    def e_plus(cls, p, d=1, x=0):
        """Unit vector with a single plus (Z-type) excitation at cell x."""
        return cls(LaurentPoly.monomial(p, d, x), LaurentPoly.zero(p, d))

    @classmethod
    def e_minus(cls, p, d=1, x=0):
        """Unit vector with a single minus (X-type) excitation at cell x."""
        return cls(LaurentPoly.zero(p, d), LaurentPoly.monomial(p, d, x))

    def is_zero(self) -> bool:
        return self.plus.is_zero() and self.minus.is_zero()

    def support(self):
        """Sorted union of the component supports."""
        cells = set(self.plus.terms) | set(self.minus.terms)
        if self.d == 1:
            return sorted(e for (e,) in cells)
        return sorted(cells)

    def translate(self, x) -> "PhaseVector":
        """Shift the whole vector by the lattice vector x (multiply by u^x)."""
        return PhaseVector(self.plus.shifted(x), self.minus.shifted(x))

    def __add__(self, other):
        if not isinstance(other, PhaseVector):
            return NotImplemented
        return PhaseVector(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other):
        if not isinstance(other, PhaseVector):
            return NotImplemented
        return PhaseVector(self.plus - other.plus, self.minus - other.minus)

    def __neg__(self):
        return PhaseVector(-self.plus, -self.minus)

    def __rmul__(self, f):
        """Module action: a Laurent polynomial (or scalar) acts on both components."""
        if isinstance(f, (LaurentPoly, int, Fp)) and not isinstance(f, bool):
            return PhaseVector(f * self.plus, f * self.minus)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, PhaseVector):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        return hash((self.plus, self.minus))

    def __repr__(self):
        return f"PhaseVector({self.plus}, {self.minus})"


def _require_compatible(xi: PhaseVector, eta: PhaseVector):
    xi.plus._require_same_ring(eta.plus)


def beta(xi: PhaseVector, eta: PhaseVector) -> Fp:
    """Sum over cells of xi_plus(x) * eta_minus(x), as a field element.

    Only the support intersection is walked; nothing is densified.
    """
    _require_compatible(xi, eta)
    a = xi.plus.terms
    b = eta.minus.terms
    if len(b) < len(a):
        total = sum(c * a[e] for e, c in b.items() if e in a)
    else:
        total = sum(c * b[e] for e, c in a.items() if e in b)
    return Fp(total, xi.p)


def sigma(xi: PhaseVector, eta: PhaseVector) -> Fp:
    """The commutation form beta(xi, eta) - beta(eta, xi)."""
    return beta(xi, eta) - beta(eta, xi)


def form_sigma_poly(xi: PhaseVector, eta: PhaseVector) -> LaurentPoly:
    """Polynomial-valued sesquilinear form.

    Its coefficient at x equals sigma(xi, translate(eta, -x)); it vanishes
    identically iff xi commutes with every translate of eta.
    """
    _require_compatible(xi, eta)
    return xi.plus.reflect() * eta.minus - xi.minus.reflect() * eta.plus
