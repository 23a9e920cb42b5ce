"""Textual element syntax and ring-descriptor strings.

Elements: integers, names (ring variables, ``z<m>`` for the distinguished
primitive m-th root of unity, ``X`` in fractions), ``+ - * / ^`` and
parentheses.  ``/`` divides by units only; ``^`` takes integer exponents
(negative ones invert).
"""
from __future__ import annotations

import re

from .errors import SyntaxParseError
from .rings import (
    Cyclotomic,
    FiniteField,
    IntegersMod,
    ModularCyclotomic,
    PolyExt,
    Product,
    Rationals,
    Ring,
    RingValue,
    make_ring,
    quotient,
)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_ROOT = re.compile(r"^z(\d+)$")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise SyntaxParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, resolve, lift):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.resolve = resolve
        self.lift = lift

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        if self.take() != ("op", op):
            raise SyntaxParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise SyntaxParseError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise SyntaxParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
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
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, tok = self.take()
            if kind != "num":
                raise SyntaxParseError(f"exponent must be an integer in {self.text!r}")
            v = v ** (sign * int(tok))
        return v

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.lift(int(tok))
        if kind == "name":
            return self.resolve(tok)
        if (kind, tok) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        raise SyntaxParseError(f"unexpected token {tok!r} in {self.text!r}")


def resolve_name(ring: Ring, name: str) -> RingValue:
    v = ring.lookup(name)
    if v is not None:
        return v
    m = _ROOT.match(name)
    if m:
        return ring.root_of_unity(int(m.group(1)))
    raise SyntaxParseError(f"unknown name {name!r} in {ring.descriptor}")


def parse_element(text: str, ring: Ring) -> RingValue:
    return _Parser(str(text), lambda n: resolve_name(ring, n), ring).parse()


def format_element(a: RingValue) -> str:
    return str(a)


def parse_poly_in(text: str, base: Ring, var: str) -> list[RingValue]:
    """Coefficients (lowest first) of a polynomial in ``var`` over ``base``."""
    P = make_ring(PolyExt(base.descriptor, var))
    p = parse_element(text, P)
    shift, coeffs = p.data
    return [base.wrap(c) for c in ((base.zero_d,) * shift + coeffs)]


def parse_matrix(rows, ring: Ring) -> list[list[RingValue]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SyntaxParseError("matrix must be a list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise SyntaxParseError("matrix must be square")
    return [[ring(x if isinstance(x, str) else int(x)) for x in r] for r in rows]


def format_matrix(M) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


# ---------------------------------------------------------------------------
# descriptors


def _split_args(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return parts


def parse_descriptor(text: str):
    s = text.strip()
    if s in ("Q", "QQ", "Rationals", "Rationals()"):
        return Rationals()
    m = re.match(r"^([A-Za-z]+)\((.*)\)$", s, re.S)
    if not m:
        raise SyntaxParseError(f"bad ring descriptor {text!r}")
    head, args = m.group(1), _split_args(m.group(2))
    try:
        if head == "Cyclotomic":
            return Cyclotomic(int(args[0]))
        if head == "FiniteField":
            return FiniteField(int(args[0]), int(args[1]) if len(args) > 1 else 1)
        if head == "ModularCyclotomic":
            return ModularCyclotomic(int(args[0]), int(args[1]), int(args[2]) if len(args) > 2 else 1)
        if head == "IntegersMod":
            return IntegersMod(int(args[0]))
        if head in ("PolyExt", "LaurentExt"):
            return PolyExt(parse_descriptor(args[0]), args[1], head == "LaurentExt")
        if head == "Quotient":
            return quotient(parse_descriptor(args[0]), args[1], args[2])
        if head == "Product":
            return Product(tuple(parse_descriptor(a) for a in args))
    except (IndexError, ValueError) as exc:
        raise SyntaxParseError(f"bad ring descriptor {text!r}: {exc}") from None
    raise SyntaxParseError(f"unknown ring kind {head!r}")


def parse_ring(text: str) -> Ring:
    return make_ring(parse_descriptor(text))
