"""Text syntax for canonical Gauss maps.

Grammar (whitespace between tokens is ignored)::

    expr        := "q^" int [ "*" "exp(" poly ")" ] | "exp(" poly ")"
    poly        := [sign] term ( ("+" | "-") term )*
    term        := coefficient [ "*" monomial | "/q" [ "^" int ] ] | monomial
    monomial    := "q" [ "^" int ]
    coefficient := real | "(" [sign] real ("+" | "-") real "i" ")"
    int         := [sign] digits

``a/q^k`` stands for ``a*q^-k``; repeated indices are summed.  The unicode
minus sign is accepted wherever "-" is.

Examples::

    q^1
    q^2 * exp((0.3+0.1i)*q + 1.2 - 0.05/q)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .complex_core import GaussMap
from .errors import GaussMapSyntaxError, IndexOverflow, WindingZero

MAX_INDEX = 64
_MINUS = "-−"
_SIGNS = "+" + _MINUS


@dataclass(frozen=True)
class GaussMapSource:
    text: str
    circumference: float


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- low level -------------------------------------------------------
    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, message, cls=GaussMapSyntaxError, column=None):
        if column is None:
            column = self.pos + 1
        found = self.peek()
        if cls is GaussMapSyntaxError:
            message += f", found {found!r}" if found else ", found end of input"
        raise cls(message, column, self.text)

    def literal(self, word: str):
        self.skip_ws()
        for ch in word:
            if self.peek() != ch:
                self.fail(f"expected {word!r}")
            self.pos += 1

    def digits(self) -> str:
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        return self.text[start:self.pos]

    def sign(self) -> int:
        self.skip_ws()
        ch = self.peek()
        if ch and ch in _SIGNS:
            self.pos += 1
            return -1 if ch in _MINUS else 1
        return 1

    def integer(self) -> tuple:
        s = self.sign()
        self.skip_ws()
        column = self.pos + 1
        d = self.digits()
        if not d:
            self.fail("expected an integer")
        return s * int(d), column

    def real(self) -> float:
        self.skip_ws()
        start = self.pos
        if self.peek().isdigit():
            self.digits()
            if self.peek() == ".":
                self.pos += 1
                self.digits()
        elif self.peek() == ".":
            self.pos += 1
            if not self.digits():
                self.fail("expected a digit")
        else:
            self.fail("expected a number")
        if self.peek() in ("e", "E"):
            self.pos += 1
            if self.peek() in ("+", "-"):
                self.pos += 1
            if not self.digits():
                self.fail("expected an exponent")
        return float(self.text[start:self.pos])

    # -- grammar ---------------------------------------------------------
    def expr(self) -> tuple:
        self.skip_ws()
        coeffs = {}
        if self.peek() == "q":
            self.literal("q^")
            n, n_col = self.integer()
            if n == 0:
                self.fail("winding q^0 has rotation number zero", WindingZero, n_col)
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.literal("exp(")
                self.poly(coeffs)
                self.literal(")")
        elif self.peek() == "e":
            self.literal("exp(")
            self.poly(coeffs)
            self.literal(")")
            n = 0
        else:
            self.fail("expected 'q^' or 'exp('")
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing input")
        if n == 0:
            self.fail("no q^n factor: rotation number zero", WindingZero, 1)
        return n, coeffs

    def poly(self, coeffs: dict):
        s = self.sign()
        self.term(coeffs, s)
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch and ch in _SIGNS:
                self.pos += 1
                self.term(coeffs, -1 if ch in _MINUS else 1)
            elif ch == ")":
                return
            else:
                self.fail("expected '+', '-' or ')'")

    def term(self, coeffs: dict, s: int):
        self.skip_ws()
        ch = self.peek()
        if ch == "q":
            c, is_real = 1.0 + 0j, True
            k = self.monomial()
        else:
            c, is_real = self.coefficient()
            k = 0
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
                if self.peek() != "q":
                    self.fail("expected 'q'")
                k = self.monomial()
            elif self.peek() == "/":
                self.pos += 1
                self.skip_ws()
                if self.peek() != "q":
                    self.fail("expected 'q'")
                k = -self.monomial()
        if s < 0:
            # keep a +0.0 imaginary part on real coefficients
            c = complex(-c.real, c.imag) if is_real else -c
        if k in coeffs:
            coeffs[k] += c
        else:
            coeffs[k] = c

    def monomial(self) -> int:
        self.pos += 1  # the 'q'
        self.skip_ws()
        if self.peek() != "^":
            return 1
        self.pos += 1
        k, col = self.integer()
        if abs(k) > MAX_INDEX:
            self.fail(f"index {k} exceeds |k| <= {MAX_INDEX}", IndexOverflow, col)
        return k

    def coefficient(self) -> tuple:
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            re = self.sign() * self.real()
            self.skip_ws()
            ch = self.peek()
            if not (ch and ch in _SIGNS):
                self.fail("expected '+' or '-' before the imaginary part")
            self.pos += 1
            im = self.real()
            if ch in _MINUS:
                im = -im
            self.literal("i")
            self.literal(")")
            return complex(re, im), False
        return complex(self.real(), 0.0), True


def parse_gauss_map(src, circumference: float | None = None) -> GaussMap:
    """Parse ``src`` (a string or :class:`GaussMapSource`) into a GaussMap.

    Raises :class:`GaussMapSyntaxError` with a 1-based column, and its
    subclasses :class:`WindingZero` and :class:`IndexOverflow`.
    """
    if isinstance(src, GaussMapSource):
        text, circumference = src.text, src.circumference
    else:
        text = src
    if circumference is None:
        raise TypeError("circumference is required")
    n, coeffs = _Parser(text).expr()
    return GaussMap(n, circumference, coeffs)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def format_gauss_map(g: GaussMap) -> str:
    """Canonical text for ``g``: indices descending, 17 significant digits."""
    head = f"q^{g.n}"
    if not g.coeffs:
        return head
    parts = []
    for k, c in sorted(g.coeffs, reverse=True):
        mono = "" if k == 0 else f"*q^{k}"
        if c.imag == 0.0 and not math.copysign(1.0, c.imag) < 0:
            neg = math.copysign(1.0, c.real) < 0
            body = _fmt(abs(c.real)) + mono
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        else:
            im_sign = "-" if math.copysign(1.0, c.imag) < 0 else "+"
            body = f"({_fmt(c.real)}{im_sign}{_fmt(abs(c.imag))}i){mono}"
            parts.append(body if not parts else " + " + body)
    return f"{head} * exp({''.join(parts)})"
