"""Recursive-descent parser for element expressions.

Grammar (whitespace is ignored, ``−`` is read as ``-``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | 'zeta' | '(' expr ')' | '[' expr ',' expr ']'
             | LABEL '(' ints ')'          loop term  x (x) t^r
             | 'h' '[' ints ']'            Hamiltonian h_r
             | 'K' '[' '(' ints ')' ',' '(' ints ')' ']'   K(u, r)
             | 'K' INDEX | 'd' INDEX       K_i, d_i (1-based)

A loop term is read before the Hamiltonian, so ``h(1,0)`` is h (x) t^(1,0)
while ``h[1,0]`` is h_(1,0).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import CycScalar
from .tau import TauAlgebra, TauElement

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],]))")
_INDEXED = re.compile(r"([Kd])(\d+)$")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^ {self.message}"

    def __str__(self) -> str:
        return f"{self.message} at position {self.pos}"


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, field, text: str, tau: TauAlgebra | None = None):
        self.tau = tau
        self.field = field
        self.text = text
        self.tokens = _tokenize(text.replace("−", "-"))
        self.i = 0
        self.loop_pos: dict = {}

    # -- token helpers -------------------------------------------------------------
    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, pos=None):
        return ParseError(msg, self.text, self.tok[2] if pos is None else pos)

    def peek(self, value, offset=0) -> bool:
        t = self.tokens[min(self.i + offset, len(self.tokens) - 1)]
        return t[0] == "op" and t[1] == value

    def expect(self, value):
        if not self.peek(value):
            found = self.tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        self.i += 1

    def check_loops(self, val: TauElement) -> None:
        tau = self.tau
        for r, v in val.loop.items():
            if not tau.auts.contains(r, v):
                cls = tau.lattice.residue(r)
                raise self.error(f"loop part at degree {r} is not in the eigenspace g({cls})", self.loop_pos.get(r, 0))

    # -- values: CycScalar or TauElement ---------------------------------------------
    def combine(self, a, b, op, pos):
        sa, sb = isinstance(a, CycScalar), isinstance(b, CycScalar)
        if op in "+-":
            if sa != sb:
                if (sa and not a) or (sb and not b):
                    a = self.tau.zero() if sa else a
                    b = self.tau.zero() if sb else b
                else:
                    raise self.error("cannot add a nonzero scalar to an algebra element", pos)
            return a + b if op == "+" else a - b
        if op == "*":
            if sa and sb:
                return a * b
            if sa:
                return b.scale(a)
            if sb:
                return a.scale(b)
            raise self.error("product of two elements; use [a, b] for the bracket", pos)
        if not sb:
            raise self.error("can only divide by a scalar", pos)
        if not b:
            raise self.error("division by zero", pos)
        return a * b.inverse() if sa else a.scale(b.inverse())

    def expr(self):
        val = self.term()
        while self.peek("+") or self.peek("-"):
            op, pos = self.tok[1], self.tok[2]
            self.i += 1
            val = self.combine(val, self.term(), op, pos)
        return val

    def term(self):
        val = self.unary()
        while self.peek("*") or self.peek("/"):
            op, pos = self.tok[1], self.tok[2]
            self.i += 1
            val = self.combine(val, self.unary(), op, pos)
        return val

    def unary(self):
        if self.peek("-"):
            self.i += 1
            v = self.unary()
            return -v
        if self.peek("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek("^"):
            pos = self.tok[2]
            self.i += 1
            exp = self.unary()
            if not isinstance(base, CycScalar) or not isinstance(exp, CycScalar):
                raise self.error("'^' needs a scalar base and exponent", pos)
            if not exp.is_rational() or exp.to_fraction().denominator != 1:
                raise self.error("exponent must be an integer", pos)
            e = int(exp.to_fraction())
            if e < 0 and not base:
                raise self.error("zero to a negative power", pos)
            return base**e
        return base

    def ints(self, close):
        vals = []
        if self.peek(close):
            return vals
        while True:
            sign = 1
            while self.peek("-") or self.peek("+"):
                sign = -sign if self.tok[1] == "-" else sign
                self.i += 1
            if self.tok[0] != "num":
                raise self.error("expected an integer")
            vals.append(sign * int(self.tok[1]))
            self.i += 1
            if self.peek(","):
                self.i += 1
                continue
            return vals

    def degree(self, close, pos):
        vals = self.ints(close)
        self.expect(close)
        if len(vals) != self.tau.n:
            raise self.error(f"degree has {len(vals)} entries, expected {self.tau.n}", pos)
        return tuple(vals)

    def atom(self):
        kind, value, pos = self.tok
        if kind == "num":
            self.i += 1
            return self.field(Fraction(int(value)))
        if kind == "op" and value == "(":
            self.i += 1
            v = self.expr()
            self.expect(")")
            return v
        if kind == "op" and value == "[" and self.tau is not None:
            self.i += 1
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            if isinstance(a, CycScalar) or isinstance(b, CycScalar):
                raise self.error("bracket arguments must be algebra elements", pos)
            self.check_loops(a)
            self.check_loops(b)
            return self.tau.bracket(a, b)
        if kind != "ident":
            raise self.error(f"unexpected {value or 'end of input'!r}")
        self.i += 1
        if value == "zeta":
            return self.field.zeta
        tau = self.tau
        if tau is None:
            raise self.error(f"unknown symbol {value!r}", pos)
        if self.peek("("):
            if value not in tau.g.index:
                raise self.error(f"unknown basis label {value!r}", pos)
            self.i += 1
            r = self.degree(")", pos)
            self.loop_pos.setdefault(r, pos)
            return TauElement(tau.n, loop={r: tau.g.basis_vector(value)})
        if value == "h" and self.peek("["):
            self.i += 1
            r = self.degree("]", pos)
            try:
                return tau.ham(r)
            except ValueError as exc:
                raise self.error(str(exc), pos) from None
        if value == "K" and self.peek("["):
            self.i += 1
            self.expect("(")
            u = self.degree(")", pos)
            self.expect(",")
            self.expect("(")
            r = self.degree(")", pos)
            self.expect("]")
            if not tau.lattice.in_gamma_bar(r):
                raise self.error(f"central degree {r} is not in Gamma_bar", pos)
            return tau.central(u, r)
        m = _INDEXED.match(value)
        if m:
            i = int(m.group(2))
            if not 1 <= i <= tau.n:
                raise self.error(f"index {i} out of range 1..{tau.n}", pos)
            return tau.K(i) if m.group(1) == "K" else tau.d(i)
        raise self.error(f"unknown symbol {value!r}", pos)


def _run(p: _Parser):
    val = p.expr()
    if p.tok[0] != "end":
        raise p.error(f"unexpected {p.tok[1]!r}")
    return val


def parse_element(tau: TauAlgebra, text: str) -> TauElement:
    """Parse an expression into a canonical TauElement."""
    p = _Parser(tau.field, text, tau)
    val = _run(p)
    if isinstance(val, CycScalar):
        if val:
            raise ParseError("expression is a scalar, not an algebra element", text, 0)
        return tau.zero()
    p.check_loops(val)
    return val


def parse_scalar(field, text: str) -> CycScalar:
    """Parse a scalar expression such as ``1/2 + zeta^2``."""
    val = _run(_Parser(field, text))
    if not isinstance(val, CycScalar):
        raise ParseError("expected a scalar", text, 0)
    return val
