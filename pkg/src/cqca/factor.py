"""Factorization of one-dimensional automata into generator words.

Every symplectic matrix over the one-variable ring is a product of a lattice
shift, shears g_n, transposed shears, and local transformations f_c.  The
algorithm is Euclidean: after splitting off the shift, left-multiply by
generator inverses to shrink the lower-left entry with palindrome division,
swapping rows through a Local letter whenever the division would stall.
Each division strictly decreases the degree sum of the first column, which
bounds the iteration count by 2 * (max entry degree) + 2.  The residual
triangular matrix ((c, b), (0, c^-1)) is finished as Local(c) * Local(-1)
followed by the symmetric-basis expansion of b/c in upper-shear letters.

Words multiply back exactly: multiply_word(factorize(s)) == s.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import sca
from .ffield import check_prime, inv_mod
from .laurent import LaurentPoly, palindrome_coeffs, palindrome_divmod

__all__ = [
    "NotOneDimensional",
    "Shift",
    "Shear",
    "UpperShear",
    "Local",
    "GeneratorWord",
    "letter_matrix",
    "multiply_word",
    "factorize",
    "random_word",
    "word_to_json_list",
    "word_from_json_list",
]


class NotOneDimensional(ValueError):
    """Raised when a d > 1 automaton reaches the one-dimensional factorizer."""


@dataclass(frozen=True)
class Shift:
    a: int


@dataclass(frozen=True)
class Shear:
    n: int
    c: int


@dataclass(frozen=True)
class UpperShear:
    n: int
    c: int


@dataclass(frozen=True)
class Local:
    c: int


@dataclass(frozen=True)
class GeneratorWord:
    """Ordered product of generator letters over F_p (leftmost letter first)."""

    p: int
    letters: tuple

    def __post_init__(self):
        check_prime(self.p)
        shifts = [i for i, let in enumerate(self.letters) if isinstance(let, Shift)]
        if shifts and (len(shifts) > 1 or shifts[0] != 0):
            raise ValueError("at most one shift letter is allowed, and it comes first")
        if shifts and self.letters[0].a == 0 and len(self.letters) > 1:
            raise ValueError("a zero shift may only spell the identity word")
        for let in self.letters:
            if isinstance(let, (Shear, UpperShear)):
                if let.n < 0:
                    raise ValueError(f"negative shear index in {let}")
                if let.c % self.p == 0:
                    raise ValueError(f"zero-coefficient shear letter {let}")
            elif isinstance(let, Local):
                if let.c % self.p == 0:
                    raise ValueError(f"non-invertible local letter {let}")
            elif not isinstance(let, Shift):
                raise TypeError(f"unknown letter {let!r}")

    def __len__(self):
        return len(self.letters)


def letter_matrix(letter, p) -> sca.ScaMatrix:
    if isinstance(letter, Shift):
        return sca.shift(p, 1, letter.a)
    if isinstance(letter, Shear):
        return sca.shear_g(p, letter.n, letter.c)
    if isinstance(letter, UpperShear):
        return sca.upper_shear_g(p, letter.n, letter.c)
    if isinstance(letter, Local):
        return sca.local_f(p, letter.c)
    raise TypeError(f"unknown letter {letter!r}")


def multiply_word(word: GeneratorWord) -> sca.ScaMatrix:
    """Product of the letter matrices, leftmost first; empty word gives identity."""
    out = sca.identity(word.p, 1)
    for letter in word.letters:
        out = out @ letter_matrix(letter, word.p)
    return out


def _emit_shears(q: LaurentPoly, letters: list, cls) -> None:
    """Append one letter per symmetric-basis term of q, largest n first."""
    for n, c in sorted(palindrome_coeffs(q).items(), reverse=True):
        letters.append(cls(n=n, c=c))


def factorize(s: sca.ScaMatrix, step_hook=None) -> GeneratorWord:
    """Factor a symplectic matrix into a generator word (d == 1 only).

    step_hook, if given, is called once per Euclidean division with the
    degrees (deg upper-left, deg lower-left) right before the division; the
    degree sum strictly decreases between calls.
    """
    if s.d != 1:
        raise NotOneDimensional(f"factorization handles d = 1, got d = {s.d}")
    cert = sca.classify(s)
    p = s.p
    letters: list = []
    a = cert.shift[0]
    if a:
        letters.append(Shift(a))
    upper_l, upper_r = cert.core.pp, cert.core.pm
    lower_l, lower_r = cert.core.mp, cert.core.mm
    while not lower_l.is_zero():
        if upper_l.is_zero() or lower_l.degree() < upper_l.degree():
            # Row swap through a Local letter: f_1^-1 * rows = ((-C, -D), (A, B)).
            letters.append(Local(1))
            upper_l, upper_r, lower_l, lower_r = -lower_l, -lower_r, upper_l, upper_r
            if lower_l.is_zero():
                break
        if step_hook is not None:
            step_hook(upper_l.degree(), lower_l.degree())
        q, r = palindrome_divmod(lower_l, upper_l)
        _emit_shears(q, letters, Shear)
        lower_l = r
        lower_r = lower_r - q * upper_r
    # Triangular tail ((c, b), (0, c^-1)); the unit c must be a constant.
    assert upper_l.is_constant() and not upper_l.is_zero(), (
        f"Euclidean tail left a non-constant unit {upper_l}"
    )
    c = upper_l.constant_coeff()
    if c != 1:
        letters.append(Local(c))
        letters.append(Local(p - 1))
    b_over_c = upper_r * inv_mod(c, p)
    _emit_shears(b_over_c, letters, UpperShear)
    return GeneratorWord(p, tuple(letters))


def random_word(p, length, max_n, seed) -> GeneratorWord:
    """Deterministic pseudo-random word: optional shift, then mixed letters."""
    check_prime(p)
    if length == 0:
        return GeneratorWord(p, ())
    rng = random.Random(seed)
    letters = []
    a = rng.randint(-2, 2)
    if a:
        letters.append(Shift(a))
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            letters.append(Shear(rng.randint(0, max_n), rng.randint(1, p - 1)))
        elif kind == 1:
            letters.append(UpperShear(rng.randint(0, max_n), rng.randint(1, p - 1)))
        else:
            letters.append(Local(rng.randint(1, p - 1)))
    return GeneratorWord(p, tuple(letters))


def word_to_json_list(word: GeneratorWord) -> list:
    out = []
    for let in word.letters:
        if isinstance(let, Shift):
            out.append({"shift": let.a})
        elif isinstance(let, Shear):
            out.append({"g": {"n": let.n, "c": let.c}})
        elif isinstance(let, UpperShear):
            out.append({"ug": {"n": let.n, "c": let.c}})
        else:
            out.append({"f": {"c": let.c}})
    return out


def word_from_json_list(p, data) -> GeneratorWord:
    letters = []
    for i, obj in enumerate(data):
        if not isinstance(obj, dict) or len(obj) != 1:
            raise ValueError(f"letter {i}: expected a single-key object, got {obj!r}")
        ((key, val),) = obj.items()
        if key == "shift":
            letters.append(Shift(int(val)))
        elif key == "g":
            letters.append(Shear(int(val["n"]), int(val["c"])))
        elif key == "ug":
            letters.append(UpperShear(int(val["n"]), int(val["c"])))
        elif key == "f":
            letters.append(Local(int(val["c"])))
        else:
            raise ValueError(f"letter {i}: unknown kind {key!r}")
    return GeneratorWord(p, tuple(letters))
