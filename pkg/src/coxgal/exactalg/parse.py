"""Parser for cyclotomic literals such as ``1/2*z8^3 - 2``.

Grammar::

    literal := ['+'|'-'] term (('+'|'-') term)*
    term    := rational | [rational ['*']] 'z' int ['^' ['-'] int]
    rational:= int ['/' int]
"""
from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic, simplify

__all__ = ["CyclotomicSyntaxError", "parse_cyclotomic"]


class CyclotomicSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1} in {text!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise CyclotomicSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def term(self):
        coeff = Fraction(1)
        ch = self.peek()
        if ch.isdigit():
            coeff = self.rational()
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                if self.peek() != "z":
                    self.error("expected 'z' after '*'")
            elif ch != "z":
                return coeff
        if self.peek() != "z":
            self.error("expected number or 'z<m>'")
        self.pos += 1
        if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            self.error("expected order after 'z'")
        m = self.integer()
        if m < 1:
            self.error("root-of-unity order must be positive")
        k = 1
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            k = self.integer()
            if neg:
                k = -k
        return Cyclotomic.root_of_unity(m, k) * coeff

    def literal(self):
        total = Fraction(0)
        sign = 1
        ch = self.peek()
        if ch in "+-" and ch:
            sign = -1 if ch == "-" else 1
            self.pos += 1
        total = total + sign * self.term()
        while True:
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error(f"unexpected character {ch!r}")
            self.pos += 1
            sign = -1 if ch == "-" else 1
            total = total + sign * self.term()
        return simplify(total)


def parse_cyclotomic(text) -> Fraction | Cyclotomic:
    """Parse a cyclotomic literal; ints and Fractions pass straight through."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise CyclotomicSyntaxError(f"expected a string literal, got {type(text).__name__}", str(text), 0)
    if not text.strip():
        raise CyclotomicSyntaxError("empty literal", text, 0)
    return _Parser(text).literal()
