"""Text syntax for polynomials and ring polynomials.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*        # '/' only by a constant
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | 'X' | 'C(X,' INT ')' | GEN | '(' expr ')'
    GEN    := ('rho' | 'eps') INT

Monomial form prints as ``3/2*X^2 - X + 1``; binomial form as
``C(X,2) + 2*C(X,5)``.  Ring polynomials print as
``f0 + (g)*rho1 + (h)*rho1*rho2`` and may be preceded by a header line
``relations: [0, 2]``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .poly import Poly, to_binomial


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|(C\s*\(\s*X\s*,\s*(\d+)\s*\))|(X)|((?:rho|eps)(\d+))|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot tokenize at {text[pos:]!r}")
        pos = m.end()
        num, binom, bk, x, gen, gk, other = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif binom is not None:
            out.append(("binom", int(bk)))
        elif x is not None:
            out.append(("x", None))
        elif gen is not None:
            out.append(("gen", int(gk)))
        elif other.strip():
            if other not in "+-*/^()":
                raise ParseError(f"unexpected character {other!r}")
            out.append(("op", other))
    return out


class _Value:
    """Element of Q[X][rho_1..rho_n]: mask -> Poly."""

    __slots__ = ("parts", "relations")

    def __init__(self, parts, relations):
        self.parts = {m: p for m, p in parts.items() if not p.is_zero()}
        self.relations = relations

    @classmethod
    def scalar(cls, poly, relations):
        return cls({0: poly}, relations)

    def is_constant(self):
        return set(self.parts) <= {0} and (self.parts.get(0, Poly()).degree or 0) <= 0

    def constant_value(self):
        return self.parts.get(0, Poly()).coeff(0)

    def __add__(self, other):
        parts = dict(self.parts)
        for m, p in other.parts.items():
            parts[m] = parts.get(m, Poly()) + p
        return _Value(parts, self.relations)

    def __neg__(self):
        return _Value({m: -p for m, p in self.parts.items()}, self.relations)

    def __mul__(self, other):
        parts: dict[int, Poly] = {}
        for m1, p1 in self.parts.items():
            for m2, p2 in other.parts.items():
                scale = 1
                both = m1 & m2
                i = 0
                while both:
                    if both & 1:
                        scale *= self.relations[i]
                    both >>= 1
                    i += 1
                if scale:
                    m = m1 | m2
                    parts[m] = parts.get(m, Poly()) + p1 * p2 * scale
        return _Value(parts, self.relations)


class _Parser:
    def __init__(self, tokens, relations):
        self.toks = tokens
        self.i = 0
        self.relations = relations

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val is not None and tok[1] != val):
            raise ParseError(f"expected {val or kind}, got {tok[1] if tok[0] else 'end of input'}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.toks[self.i][1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v + (-rhs)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                v = v * rhs
            else:
                if not rhs.is_constant() or rhs.constant_value() == 0:
                    raise ParseError("division only by a nonzero constant")
                v = v * _Value.scalar(Poly([1 / rhs.constant_value()]), self.relations)
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.take("num")[1]
            out = _Value.scalar(Poly([1]), self.relations)
            for _ in range(e):
                out = out * v
            return out
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return _Value.scalar(Poly([val]), self.relations)
        if kind == "x":
            self.take()
            return _Value.scalar(Poly.x(), self.relations)
        if kind == "binom":
            self.take()
            return _Value.scalar(Poly.binomial(val), self.relations)
        if kind == "gen":
            self.take()
            if not 1 <= val <= len(self.relations):
                raise ParseError(f"generator index {val} outside 1..{len(self.relations)}")
            return _Value({1 << (val - 1): Poly([1])}, self.relations)
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> Poly:
    """Parse monomial or binomial syntax (they may be mixed) into a Poly."""
    v = _Parser(_tokenize(text), ()).parse()
    return v.parts.get(0, Poly())


_HEADER = re.compile(r"^\s*relations\s*:\s*(\[[^\]]*\])\s*(?:\n|;|$)")


def parse_ring_poly(text: str, relations: Sequence[int] | None = None):
    """Parse ``f0 + (g)*rho1 + ...`` into ``(relations, {mask: Poly})``.

    Relations come from an optional ``relations: [...]`` header or the
    ``relations`` argument; when both are given they must agree.
    """
    m = _HEADER.match(text)
    if m:
        hdr = tuple(int(r) for r in json.loads(m.group(1)))
        if relations is not None and tuple(relations) != hdr:
            raise ParseError(f"header relations {list(hdr)} disagree with {list(relations)}")
        relations = hdr
        text = text[m.end():]
    if relations is None:
        raise ParseError("relations not given")
    relations = tuple(int(r) for r in relations)
    v = _Parser(_tokenize(text), relations).parse()
    return relations, v.parts


def _format_coeff_term(c: Fraction, body: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if body == "":
        mag = str(a)
    elif a == 1:
        mag = body
    else:
        mag = f"{a}*{body}"
    if first:
        return mag if sign == "+" else f"-{mag}"
    return f" {sign} {mag}"


def format_poly(f: Poly) -> str:
    """Monomial syntax, highest degree first."""
    if f.is_zero():
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c:
            body = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            parts.append(_format_coeff_term(c, body, not parts))
    return "".join(parts)


def format_binomial(f: Poly) -> str:
    """Binomial syntax, lowest index first."""
    b = to_binomial(f)
    if not b.coeffs:
        return "0"
    parts = []
    for k, c in enumerate(b.coeffs):
        if c:
            body = "" if k == 0 else ("X" if k == 1 else f"C(X,{k})")
            parts.append(_format_coeff_term(c, body, not parts))
    return "".join(parts)


def _mask_name(mask: int, prefix: str = "rho") -> str:
    names = []
    i = 0
    while mask:
        if mask & 1:
            names.append(f"{prefix}{i + 1}")
        mask >>= 1
        i += 1
    return "*".join(names)


def format_ring_poly(relations: Sequence[int], parts: dict[int, Poly], binomial: bool = True,
                     header: bool = True) -> str:
    fmt = format_binomial if binomial else format_poly
    out = []
    for mask in sorted(parts, key=lambda m: (bin(m).count("1"), m)):
        p = parts[mask]
        if p.is_zero():
            continue
        if mask == 0:
            out.append(fmt(p))
        else:
            out.append(f"({fmt(p)})*{_mask_name(mask)}")
    body = " + ".join(out) if out else "0"
    if header:
        return f"relations: {json.dumps(list(relations))}\n{body}"
    return body
