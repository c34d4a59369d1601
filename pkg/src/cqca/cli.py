"""Command-line interface for the automaton toolkit.

Verbs: verify, classify, compose, invert, factor, recipe, evolve, phase,
selftest.  Matrices travel as JSON objects {"p", "d", "entries"} whose
entries are polynomial strings in the grammar

    expr  := term (('+' | '-') term)*
    term  := coeff? (var ('^' int)?)*
    var   := 'u'            (one variable)
           | 'u1' .. 'ud'   (d > 1)

Whitespace is insignificant, coefficients are unsigned ints (a leading
term sign is accepted and reduced mod p), exponents beyond +-2^31 are
rejected.  Rendering is deterministic: terms in ascending exponent order,
coefficients reduced to [0, p).

Exit codes: 0 success, 1 domain rejection (non-symplectic input, failed
validation), 2 malformed input (syntax errors, bad JSON, flag/JSON
disagreement).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import factor as factor_mod
from . import sca
from .cocycle import NoValidPhase, default_phase, validate_cocycle
from .laurent import LaurentPoly
from .phasespace import PhaseVector

__all__ = ["PolyParseError", "parse_poly", "render_poly", "main"]

_EXP_LIMIT = 2**31


class PolyParseError(ValueError):
    """Syntax error in a polynomial string, with the byte offset attached."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def read_digits(self) -> str:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        return self.text[start : self.pos]

    def read_int(self, what: str) -> int:
        start = self.pos
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take() == "-" else 1
        digits = self.read_digits()
        if not digits:
            raise PolyParseError(f"expected {what}", self.pos)
        value = sign * int(digits)
        if not -_EXP_LIMIT <= value <= _EXP_LIMIT:
            raise PolyParseError(f"exponent {value} is beyond +-2^31", start)
        return value


def parse_poly(text: str, p: int, d: int = 1) -> LaurentPoly:
    """Parse a polynomial string; raises PolyParseError with a byte offset."""
    sc = _Scanner(text)
    terms = {}
    sign = 1
    sc.skip_ws()
    if sc.pos == len(text):
        raise PolyParseError("empty polynomial", sc.pos)
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    while True:
        coeff, exponent = _parse_term(sc, d)
        terms[exponent] = terms.get(exponent, 0) + sign * coeff
        sc.skip_ws()
        if sc.pos == len(text):
            break
        ch = sc.take()
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            raise PolyParseError(f"expected '+' or '-', found {ch!r}", sc.pos - 1)
        sc.skip_ws()
    return LaurentPoly(p, d, terms)


def _parse_term(sc: _Scanner, d: int):
    sc.skip_ws()
    coeff = None
    if sc.peek().isdigit():
        coeff = int(sc.read_digits())
    exponents = [0] * d
    saw_var = False
    while True:
        sc.skip_ws()
        if sc.peek() != "u":
            break
        sc.take()
        if d == 1:
            index = 0
            if sc.peek().isdigit():
                raise PolyParseError(
                    "one-variable polynomials use plain 'u' (no index)", sc.pos
                )
        else:
            digits = sc.read_digits()
            if not digits:
                raise PolyParseError(f"expected a variable index 1..{d}", sc.pos)
            index = int(digits) - 1
            if not 0 <= index < d:
                raise PolyParseError(
                    f"variable index {digits} out of range 1..{d}", sc.pos - len(digits)
                )
        sc.skip_ws()
        e = 1
        if sc.peek() == "^":
            sc.take()
            sc.skip_ws()
            e = sc.read_int("an exponent")
        exponents[index] += e
        if not -_EXP_LIMIT <= exponents[index] <= _EXP_LIMIT:
            raise PolyParseError("accumulated exponent is beyond +-2^31", sc.pos)
        saw_var = True
    if coeff is None and not saw_var:
        raise PolyParseError("expected a term", sc.pos)
    if coeff is None:
        coeff = 1
    return coeff, tuple(exponents)


def render_poly(poly: LaurentPoly) -> str:
    """Deterministic rendering; inverse of parse_poly on canonical forms."""
    return str(poly)


# -- matrix I/O -----------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_matrix(path: str, p_flag=None, d_flag=None) -> sca.ScaMatrix:
    obj = json.loads(_read_text(path))
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    try:
        p = int(obj["p"])
        d = int(obj["d"])
        entries = obj["entries"]
    except KeyError as exc:
        raise ValueError(f"matrix JSON is missing key {exc}") from None
    if p_flag is not None and p_flag != p:
        raise ValueError(f"--p {p_flag} disagrees with matrix JSON p = {p}")
    if d_flag is not None and d_flag != d:
        raise ValueError(f"--d {d_flag} disagrees with matrix JSON d = {d}")
    if (
        not isinstance(entries, list)
        or len(entries) != 2
        or any(not isinstance(row, list) or len(row) != 2 for row in entries)
    ):
        raise ValueError("matrix JSON entries must be a 2x2 array of strings")
    polys = [parse_poly(str(entries[i][j]), p, d) for i in (0, 1) for j in (0, 1)]
    return sca.ScaMatrix(*polys)


def _print_json(obj) -> None:
    print(json.dumps(obj))


# -- verbs -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    s = load_matrix(args.matrix, args.p, args.d)
    if s.is_symplectic():
        _print_json({"symplectic": True})
        return 0
    _print_json({"symplectic": False, "reason": "the commutation form is not preserved"})
    return 1


def cmd_classify(args) -> int:
    s = load_matrix(args.matrix, args.p, args.d)
    try:
        cert = sca.classify(s)
    except sca.NotSymplectic as exc:
        _print_json({"symplectic": False, "reason": str(exc)})
        return 1
    _print_json(
        {
            "symplectic": True,
            "shift": list(cert.shift),
            "core": cert.core.to_json_dict(),
        }
    )
    return 0


def cmd_compose(args) -> int:
    left = load_matrix(args.left, args.p, args.d)
    right = load_matrix(args.right, args.p, args.d)
    if left.p != right.p or left.d != right.d:
        raise ValueError(
            f"operand rings disagree: F_{left.p}, d={left.d} vs F_{right.p}, d={right.d}"
        )
    _print_json((left @ right).to_json_dict())
    return 0


def cmd_invert(args) -> int:
    s = load_matrix(args.matrix, args.p, args.d)
    _print_json(s.inverse().to_json_dict())
    return 0


def cmd_factor(args) -> int:
    s = load_matrix(args.matrix, args.p, args.d)
    word = factor_mod.factorize(s)
    remultiplied = factor_mod.multiply_word(word)
    _print_json(
        {
            "word": factor_mod.word_to_json_list(word),
            "matrix": remultiplied.to_json_dict(),
        }
    )
    return 0


def cmd_recipe(args) -> int:
    p, d = args.p, args.d
    if p is None:
        raise ValueError("recipe needs --p")
    f = parse_poly(args.f, p, d)
    h = parse_poly(args.h, p, d)
    f2 = parse_poly(args.fp, p, d) if args.fp is not None else None
    h2 = parse_poly(args.hp, p, d) if args.hp is not None else None
    for name, poly in (("f", f), ("h", h), ("f'", f2), ("h'", h2)):
        if poly is not None and not poly.is_palindrome():
            print(f"error: recipe input {name} = {poly} is not a palindrome", file=sys.stderr)
            return 1
    s = sca.from_recipe(f, h, f2, h2)
    _print_json(s.to_json_dict())
    return 0


def cmd_phase(args) -> int:
    s = load_matrix(args.matrix, args.p, args.d)
    phi = default_phase(s)
    radius = s.radius() + 1
    if not validate_cocycle(phi, radius, seed=args.seed):
        print("error: constructed phase failed cocycle validation", file=sys.stderr)
        return 1
    _print_json(phi.to_json_dict())
    return 0


def cmd_selftest(args) -> int:
    from . import oracle

    p = args.p if args.p is not None else 2
    sites = args.sites if args.sites is not None else (4 if p == 2 else 3)
    reports = oracle.run_selftest(p, sites, seed=args.seed)
    for report in reports:
        _print_json(report)
    return 0 if all(r["pass"] for r in reports) else 1


# -- evolve ----------------------------------------------------------------------


def _trace_rows(s: sca.ScaMatrix, xi0: PhaseVector, steps: int):
    """Rows (t, x, plus, minus) over the orbit; x is an int for d == 1."""
    rows = []
    radius = s.radius()
    sup0 = xi0.support()
    xi = xi0
    for t in range(steps + 1):
        for x in xi.support():
            rows.append((t, x, xi.plus.coeff(x), xi.minus.coeff(x)))
            if sup0 and s.d == 1:
                # Light cone: nothing may leak past the initial support by more
                # than t * radius cells.
                assert sup0[0] - t * radius <= x <= sup0[-1] + t * radius
        if t < steps:
            xi = s.apply(xi)
    return rows


def _format_site(x, d: int) -> str:
    if d == 1:
        return str(x)
    return ":".join(str(v) for v in x)


def _emit_csv(rows, d: int, out) -> None:
    out.write("t,x,plus,minus\n")
    for t, x, a, b in rows:
        out.write(f"{t},{_format_site(x, d)},{a},{b}\n")


_ASCII_GLYPHS = {(False, False): " ", (True, False): "+", (False, True): "-", (True, True): "*"}


def _ascii_window(s, xi0, steps):
    radius = s.radius()
    sup0 = xi0.support()
    lo0, hi0 = (sup0[0], sup0[-1]) if sup0 else (0, 0)
    return lo0 - radius * steps, hi0 + radius * steps


def _emit_ascii(rows, lo: int, hi: int, steps: int, out) -> None:
    grid = {}
    for t, x, a, b in rows:
        grid[(t, x)] = (a != 0, b != 0)
    for t in range(steps + 1):
        line = "".join(
            _ASCII_GLYPHS[grid.get((t, x), (False, False))] for x in range(lo, hi + 1)
        )
        out.write(line + "\n")


_PGM_LEVELS = {(False, False): 0, (True, False): 96, (False, True): 160, (True, True): 255}


def _emit_pgm(rows, lo: int, hi: int, steps: int, out) -> None:
    width = hi - lo + 1
    height = steps + 1
    grid = {}
    for t, x, a, b in rows:
        grid[(t, x)] = (a != 0, b != 0)
    out.write(f"P5 {width} {height} 255\n".encode("ascii"))
    data = bytearray()
    for t in range(height):
        for x in range(lo, hi + 1):
            data.append(_PGM_LEVELS[grid.get((t, x), (False, False))])
    out.write(bytes(data))


def cmd_evolve(args) -> int:
    s = load_matrix(args.matrix, args.p, args.d)
    sca.classify(s)  # raises NotSymplectic for non-automata
    p, d = s.p, s.d
    xi0 = PhaseVector(parse_poly(args.plus, p, d), parse_poly(args.minus, p, d))
    steps = args.steps
    if steps < 0:
        raise ValueError("--steps must be non-negative")
    fmt = args.format
    if fmt in ("ascii", "pgm") and d != 1:
        raise ValueError(f"format {fmt!r} is one-dimensional; use csv for d = {d}")
    rows = _trace_rows(s, xi0, steps)

    if fmt == "ascii":
        lo, hi = _ascii_window(s, xi0, steps)
        if hi - lo + 1 > 201:
            print(
                f"warning: ascii window of {hi - lo + 1} columns exceeds 201;"
                " falling back to csv",
                file=sys.stderr,
            )
            fmt = "csv"

    if fmt == "pgm":
        lo, hi = _ascii_window(s, xi0, steps)
        if args.out:
            with open(args.out, "wb") as fh:
                _emit_pgm(rows, lo, hi, steps, fh)
        else:
            _emit_pgm(rows, lo, hi, steps, sys.stdout.buffer)
            sys.stdout.buffer.flush()
        return 0

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            if fmt == "csv":
                _emit_csv(rows, d, fh)
            else:
                _emit_ascii(rows, lo, hi, steps, fh)
    else:
        if fmt == "csv":
            _emit_csv(rows, d, sys.stdout)
        else:
            _emit_ascii(rows, lo, hi, steps, sys.stdout)
    return 0


# -- argument plumbing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqca",
        description="Exact toolkit for Clifford cellular automata over prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, matrix=True):
        cmd = sub.add_parser(name, help=help_text)
        cmd.set_defaults(func=func)
        cmd.add_argument("--p", type=int, default=None, help="expected modulus (cross-checked)")
        cmd.add_argument("--d", type=int, default=None, help="expected variable count")
        if matrix:
            cmd.add_argument("matrix", help="matrix JSON file, or - for stdin")
        return cmd

    add("verify", cmd_verify, "test whether a matrix preserves the commutation form")
    add("classify", cmd_classify, "recover the shift + palindrome-core certificate")

    compose = sub.add_parser("compose", help="multiply two matrices (left @ right)")
    compose.set_defaults(func=cmd_compose)
    compose.add_argument("--p", type=int, default=None)
    compose.add_argument("--d", type=int, default=None)
    compose.add_argument("left")
    compose.add_argument("right")

    add("invert", cmd_invert, "invert a symplectic matrix")
    add("factor", cmd_factor, "factor into shift/shear/local generator letters")

    recipe = sub.add_parser("recipe", help="build a matrix from palindromes f, h")
    recipe.set_defaults(func=cmd_recipe)
    recipe.add_argument("--p", type=int, required=True, help="prime modulus")
    recipe.add_argument("--d", type=int, default=1)
    recipe.add_argument("--f", required=True, help="palindrome f")
    recipe.add_argument("--h", required=True, help="palindrome h")
    recipe.add_argument("--fp", default=None, help="f' (default: 1 - f*h)")
    recipe.add_argument("--hp", default=None, help="h' (default: 1)")

    evolve = add("evolve", cmd_evolve, "trace an initial vector through repeated steps")
    evolve.add_argument("--plus", default="0", help="initial plus component")
    evolve.add_argument("--minus", default="0", help="initial minus component")
    evolve.add_argument("--steps", type=int, default=10)
    evolve.add_argument("--format", choices=("csv", "ascii", "pgm"), default="csv")
    evolve.add_argument("--out", default=None, help="output file (default: stdout)")

    phase = add("phase", cmd_phase, "construct and validate a default phase function")
    phase.add_argument("--seed", type=int, default=11)

    selftest = sub.add_parser("selftest", help="run the dense-oracle suite")
    selftest.set_defaults(func=cmd_selftest)
    selftest.add_argument("--p", type=int, default=None)
    selftest.add_argument("--sites", type=int, default=None, help="window size in cells")
    selftest.add_argument("--seed", type=int, default=7)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (sca.NotSymplectic, sca.FactorizationMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (factor_mod.NotOneDimensional, NoValidPhase) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PolyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
