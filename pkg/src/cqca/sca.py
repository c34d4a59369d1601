"""Symplectic cellular automata as 2x2 Laurent-polynomial matrices.

A reversible Clifford automaton acts on phase-space vectors by an invertible
2x2 matrix s over the Laurent ring that preserves the commutation form.  Up
to an overall lattice shift u^a, such a matrix has palindrome entries and
determinant 1; classify() recovers exactly that certificate (shift vector
plus palindrome core), and is_symplectic() independently tests the three
form identities on the matrix columns.  The two routes are kept separate on
purpose so the test suite can cross-check them against each other.

Named constructors cover the generating zoo: lattice shifts, the local
cell transformations f_c, and the shear automata g_n that propagate
plus-excitations to cells -n and n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ffield import Fp, check_prime, inv_mod
from .laurent import LaurentPoly
from .phasespace import PhaseVector, form_sigma_poly

__all__ = [
    "NotSymplectic",
    "FactorizationMismatch",
    "ScaMatrix",
    "SymplecticCertificate",
    "identity",
    "shift",
    "shear_g",
    "upper_shear_g",
    "local_f",
    "from_recipe",
    "classify",
]


class NotSymplectic(ValueError):
    """Raised when a matrix fails symplectic classification."""


class FactorizationMismatch(ValueError):
    """Raised when recipe inputs do not satisfy f2 * h2 = 1 - f * h."""


class ScaMatrix:
    """2x2 matrix ((pp, pm), (mp, mm)) of Laurent polynomials over one ring."""

    __slots__ = ("pp", "pm", "mp", "mm")

    def __init__(self, pp, pm, mp, mm):
        for entry in (pp, pm, mp, mm):
            if not isinstance(entry, LaurentPoly):
                raise TypeError("matrix entries must be Laurent polynomials")
        pp._require_same_ring(pm)
        pp._require_same_ring(mp)
        pp._require_same_ring(mm)
        self.pp = pp
        self.pm = pm
        self.mp = mp
        self.mm = mm

    @property
    def p(self):
        return self.pp.p

    @property
    def d(self):
        return self.pp.d

    def entries(self):
        return ((self.pp, self.pm), (self.mp, self.mm))

    def column_plus(self) -> PhaseVector:
        """Image of e_plus(0): the first matrix column."""
        return PhaseVector(self.pp, self.mp)

    def column_minus(self) -> PhaseVector:
        """Image of e_minus(0): the second matrix column."""
        return PhaseVector(self.pm, self.mm)

    # -- group operations ----------------------------------------------------

    def apply(self, xi: PhaseVector) -> PhaseVector:
        if not isinstance(xi, PhaseVector):
            raise TypeError("apply expects a phase vector")
        self.pp._require_same_ring(xi.plus)
        return PhaseVector(
            self.pp * xi.plus + self.pm * xi.minus,
            self.mp * xi.plus + self.mm * xi.minus,
        )

    def compose(self, other: "ScaMatrix") -> "ScaMatrix":
        """Matrix product self @ other: apply other first, then self."""
        if not isinstance(other, ScaMatrix):
            raise TypeError("compose expects another matrix")
        self.pp._require_same_ring(other.pp)
        return ScaMatrix(
            self.pp * other.pp + self.pm * other.mp,
            self.pp * other.pm + self.pm * other.mm,
            self.mp * other.pp + self.mm * other.mp,
            self.mp * other.pm + self.mm * other.mm,
        )

    __matmul__ = compose

    def det(self) -> LaurentPoly:
        return self.pp * self.mm - self.pm * self.mp

    def scaled(self, f) -> "ScaMatrix":
        return ScaMatrix(f * self.pp, f * self.pm, f * self.mp, f * self.mm)

    def shifted(self, x) -> "ScaMatrix":
        """Multiply every entry by the monomial u^x."""
        return ScaMatrix(
            self.pp.shifted(x), self.pm.shifted(x), self.mp.shifted(x), self.mm.shifted(x)
        )

    # -- symplecticity -------------------------------------------------------

    def is_symplectic(self) -> bool:
        """Test the three form identities on the columns.

        This is deliberately independent of classify(): no determinant, no
        palindrome inspection, only the sesquilinear form.
        """
        c1 = self.column_plus()
        c2 = self.column_minus()
        if not form_sigma_poly(c1, c1).is_zero():
            return False
        if not form_sigma_poly(c2, c2).is_zero():
            return False
        return form_sigma_poly(c1, c2) == LaurentPoly.one(self.p, self.d)

    def classify(self) -> "SymplecticCertificate":
        return classify(self)

    def inverse(self) -> "ScaMatrix":
        """Group inverse via the certificate: u^-a times the adjugate of the core."""
        cert = classify(self)
        m = cert.core
        adj = ScaMatrix(m.mm, -m.pm, -m.mp, m.pp)
        return adj.shifted(tuple(-v for v in cert.shift))

    def neighborhood(self):
        """Sorted union of the entry supports (ints when d == 1)."""
        cells = set()
        for entry in (self.pp, self.pm, self.mp, self.mm):
            cells |= set(entry.terms)
        if self.d == 1:
            return sorted(e for (e,) in cells)
        return sorted(cells)

    def radius(self) -> int:
        """Maximum absolute neighborhood coordinate (sup norm)."""
        cells = self.neighborhood()
        if not cells:
            return 0
        if self.d == 1:
            return max(abs(x) for x in cells)
        return max(max(abs(v) for v in x) for x in cells)

    def __eq__(self, other):
        if not isinstance(other, ScaMatrix):
            return NotImplemented
        return (
            self.pp == other.pp
            and self.pm == other.pm
            and self.mp == other.mp
            and self.mm == other.mm
        )

    def __hash__(self):
        return hash((self.pp, self.pm, self.mp, self.mm))

    def __repr__(self):
        return f"ScaMatrix(({self.pp}, {self.pm}), ({self.mp}, {self.mm}))"

    # -- wire format -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "entries": [
                [str(self.pp), str(self.pm)],
                [str(self.mp), str(self.mm)],
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class SymplecticCertificate:
    """Witness of symplecticity: s = u^shift * core, core in SL(2, palindromes)."""

    shift: tuple
    core: ScaMatrix


def classify(s: ScaMatrix) -> SymplecticCertificate:
    """Recover the shift-plus-palindrome-core normal form, or raise NotSymplectic.

    The route is independent of is_symplectic(): the determinant must be a
    coefficient-1 monomial with all exponents even, and after removing the
    shift all four entries must be palindromes with determinant one.
    """
    dt = s.det()
    if len(dt.terms) != 1:
        raise NotSymplectic(f"determinant {dt} is not a monomial")
    ((exps, coeff),) = dt.terms.items()
    if coeff != 1:
        raise NotSymplectic(f"determinant {dt} has coefficient {coeff}, not 1")
    if any(e % 2 for e in exps):
        raise NotSymplectic(f"determinant {dt} is not an even monomial u^2a")
    a = tuple(e // 2 for e in exps)
    core = s.shifted(tuple(-v for v in a))
    for name, entry in zip(("pp", "pm", "mp", "mm"), (core.pp, core.pm, core.mp, core.mm)):
        if not entry.is_palindrome():
            raise NotSymplectic(f"core entry {name} = {entry} is not a palindrome")
    if core.det() != LaurentPoly.one(s.p, s.d):
        raise NotSymplectic("core determinant is not 1")
    return SymplecticCertificate(shift=a, core=core)


def classify_or_none(s: ScaMatrix):
    try:
        return classify(s)
    except NotSymplectic:
        return None


# -- named constructors ---------------------------------------------------------


def identity(p, d=1) -> ScaMatrix:
    one = LaurentPoly.one(p, d)
    zero = LaurentPoly.zero(p, d)
    return ScaMatrix(one, zero, zero, one)


def shift(p, d, a) -> ScaMatrix:
    """The lattice shift automaton: u^a times the identity."""
    return identity(p, d).shifted(a)


def shear_g(p, n, c=1) -> ScaMatrix:
    """Shear automaton ((1, 0), (c*(u^n + u^-n), 1)); n = 0 gives ((1,0),(c,1)).

    The n = 0 case is the constant shear completing the generator family:
    without it the Euclidean factorization could not express constant
    quotients.
    """
    if n < 0:
        raise ValueError("shear index must be non-negative")
    check_prime(p)
    c = int(c) % p
    one = LaurentPoly.one(p, 1)
    zero = LaurentPoly.zero(p, 1)
    if n == 0:
        lower = LaurentPoly.constant(p, 1, c)
    else:
        lower = LaurentPoly(p, 1, {n: c, -n: c})
    return ScaMatrix(one, zero, lower, one)


def upper_shear_g(p, n, c=1) -> ScaMatrix:
    """Transposed shear ((1, c*(u^n + u^-n)), (0, 1)); n = 0 gives ((1,c),(0,1))."""
    g = shear_g(p, n, c)
    return ScaMatrix(g.pp, g.mp, g.pm, g.mm)


def local_f(p, c) -> ScaMatrix:
    """Single-cell automaton ((0, c), (-c^-1, 0)); requires c != 0."""
    check_prime(p)
    if isinstance(c, Fp):
        if c.p != p:
            raise ValueError(f"modulus mismatch: {c.p} vs {p}")
        c = c.value
    c = int(c) % p
    if c == 0:
        raise ValueError("local automaton needs an invertible coefficient")
    zero = LaurentPoly.zero(p, 1)
    return ScaMatrix(
        zero,
        LaurentPoly.constant(p, 1, c),
        LaurentPoly.constant(p, 1, -inv_mod(c, p)),
        zero,
    )


def from_recipe(f: LaurentPoly, h: LaurentPoly, f2=None, h2=None) -> ScaMatrix:
    """Build a symplectic matrix from palindromes f, h and a factorization of 1 - f*h.

    The defaults take the trivial factorization h2 = 1, f2 = 1 - f*h.  The
    result is ((f, f2), (-h2, h)), whose determinant f*h + f2*h2 equals 1
    exactly when f2 * h2 = 1 - f*h; FactorizationMismatch otherwise.
    """
    f._require_same_ring(h)
    p, d = f.p, f.d
    one = LaurentPoly.one(p, d)
    if h2 is None:
        h2 = one
    if f2 is None:
        f2 = one - f * h
    for name, poly in (("f", f), ("h", h), ("f2", f2), ("h2", h2)):
        if not poly.is_palindrome():
            raise ValueError(f"recipe input {name} = {poly} is not a palindrome")
    if f2 * h2 != one - f * h:
        raise FactorizationMismatch(
            f"f2*h2 = {f2 * h2} differs from 1 - f*h = {one - f * h}"
        )
    return ScaMatrix(f, f2, -h2, h)
