"""A general carrier inside g (x) A_n + Omega/dA + Der(A_n).

Derivations are arbitrary D(u, r), and the centre is reduced modulo dA plus
the transported ideal K_B = {K(Bu, Br) : (u, bar r) = 0} for a unimodular
frame B.  With B = I this is tau itself, written without the Hamiltonian
shortcut, so it doubles as a brute-force evaluator of the bracket formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .lattice import add, bar, dot
from .simple_lie import SimpleLieAlgebra, vec_add, vec_scale
from .tau import TauElement, _acc, _acc_vec


def _int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class TwistMatrix:
    """B in GL(n, Z) together with F = (B^T)^{-1}."""

    B: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "B", _int_matrix(self.B))
        n = len(self.B)
        if any(len(row) != n for row in self.B):
            raise ValueError("twist matrix must be square")
        inv = self.inverse_rational
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("twist matrix is not unimodular (det != +-1)")

    @classmethod
    def identity(cls, n: int) -> "TwistMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @cached_property
    def inverse_rational(self):
        rows = [[Fraction(x) for x in row] for row in self.B]
        try:
            return linalg.inverse(rows, Fraction(1), Fraction(0))
        except ZeroDivisionError:
            raise ValueError("twist matrix is singular") from None

    @cached_property
    def inverse(self) -> tuple[tuple[int, ...], ...]:
        return _int_matrix(self.inverse_rational)

    @cached_property
    def F(self) -> tuple[tuple[int, ...], ...]:
        inv = self.inverse
        n = len(inv)
        return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))

    @property
    def n(self) -> int:
        return len(self.B)

    def apply(self, v):
        return _apply(self.B, v)

    def apply_F(self, v):
        return _apply(self.F, v)

    def apply_inverse(self, v):
        return _apply(self.inverse, v)

    def __matmul__(self, other: "TwistMatrix") -> "TwistMatrix":
        n = self.n
        return TwistMatrix(
            tuple(
                tuple(sum(self.B[i][t] * other.B[t][j] for t in range(n)) for j in range(n))
                for i in range(n)
            )
        )

    def is_identity(self) -> bool:
        return self == TwistMatrix.identity(self.n)

    def normal(self, s):
        """The vector s_hat with K_B-relations at degree s equal to (v, s_hat) = 0."""
        return self.apply_F(bar(self.apply_inverse(s)))


def _apply(mat, v):
    out = []
    for row in mat:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = a * x + acc
        out.append(acc)
    return tuple(out)


class ToroidalElement:
    """Element of the carrier in a fixed frame.

    ``cen[s]`` is the coefficient on K(s_hat, s) where s_hat = frame.normal(s).
    ``der[r]`` is the vector u of D(u, r); r may be zero.
    """

    __slots__ = ("frame", "loop", "c0", "cen", "der")

    def __init__(self, frame: TwistMatrix, loop=None, c0=None, cen=None, der=None):
        self.frame = frame
        self.loop = loop or {}
        self.c0 = c0 or {}
        self.cen = cen or {}
        self.der = der or {}

    def _parts(self):
        return (self.loop, self.c0, self.cen, self.der)

    def __bool__(self) -> bool:
        return any(self._parts())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ToroidalElement):
            return NotImplemented
        return self.frame == other.frame and self._parts() == other._parts()

    __hash__ = None

    def __add__(self, other: "ToroidalElement") -> "ToroidalElement":
        if other.frame != self.frame:
            raise ValueError("cannot add elements in different frames")
        out = ToroidalElement(self.frame, dict(self.loop), dict(self.c0), dict(self.cen), dict(self.der))
        for r, v in other.loop.items():
            _acc_vec(out.loop, r, v)
        for i, v in other.c0.items():
            _acc(out.c0, i, v)
        for r, v in other.cen.items():
            _acc(out.cen, r, v)
        for r, v in other.der.items():
            _acc_vec(out.der, r, v)
        return out

    def __neg__(self) -> "ToroidalElement":
        return ToroidalElement(
            self.frame,
            {r: vec_scale(-1, v) for r, v in self.loop.items()},
            {i: -v for i, v in self.c0.items()},
            {r: -v for r, v in self.cen.items()},
            {r: vec_scale(-1, v) for r, v in self.der.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self) -> str:
        return f"ToroidalElement(frame={self.frame.B}, loop={self.loop}, c0={self.c0}, cen={self.cen}, der={self.der})"


class ToroidalAlgebra:
    """Bracket of the carrier, straight from the generic formulas:

    [x(p), y(q)]      = [x,y](p+q) + (x|y) K(p, p+q)
    [D(u,r), x(s)]    = (u,s) x(r+s)
    [D(u,r), K(v,s)]  = (u,s) K(v, r+s) + (u,v) K(r, r+s)
    [D(u,r), D(v,s)]  = D((u,s)v - (v,r)u, r+s) + (u,s)(v,r) K(r, r+s)
    """

    def __init__(self, g: SimpleLieAlgebra, n: int):
        self.g = g
        self.n = n
        self.field = g.field
        self.zero_degree = (0,) * n

    def _add_central(self, out: ToroidalElement, u, t, coef) -> None:
        if not coef:
            return
        if t == self.zero_degree:
            for i, ui in enumerate(u):
                if ui:
                    _acc(out.c0, i, coef * ui)
            return
        nv = out.frame.normal(t)
        val = dot(u, nv)
        if val:
            _acc(out.cen, t, coef * val / dot(nv, nv))

    def _central_terms(self, el: ToroidalElement):
        if el.c0:
            yield self.zero_degree, [el.c0.get(i, 0) for i in range(self.n)]
        for s, c in el.cen.items():
            yield s, [c * x for x in el.frame.normal(s)]

    def _deriv_on(self, out, a, b, sign) -> None:
        for r, u in a.der.items():
            uvec = [u.get(i, 0) for i in range(self.n)]
            for s, y in b.loop.items():
                w = dot(uvec, s)
                if w:
                    _acc_vec(out.loop, add(r, s), y, sign * w)
            for s, v in self._central_terms(b):
                rs = add(r, s)
                self._add_central(out, v, rs, sign * dot(uvec, s))
                self._add_central(out, r, rs, sign * dot(uvec, v))

    def bracket(self, a: ToroidalElement, b: ToroidalElement) -> ToroidalElement:
        if a.frame != b.frame:
            raise ValueError("cannot bracket elements in different frames")
        out = ToroidalElement(a.frame)
        g = self.g
        for p, x in a.loop.items():
            for q, y in b.loop.items():
                pq = add(p, q)
                _acc_vec(out.loop, pq, g.bracket(x, y))
                self._add_central(out, p, pq, g.form(x, y))
        self._deriv_on(out, a, b, 1)
        self._deriv_on(out, b, a, -1)
        for r, u in a.der.items():
            uvec = [u.get(i, 0) for i in range(self.n)]
            for s, v in b.der.items():
                vvec = [v.get(i, 0) for i in range(self.n)]
                us = dot(uvec, s)
                vr = dot(vvec, r)
                rs = add(r, s)
                w = vec_add(vec_scale(us, v) if us else {}, vec_scale(vr, u) if vr else {}, -1)
                _acc_vec(out.der, rs, w)
                if us and vr:
                    self._add_central(out, r, rs, us * vr)
        return out

    # -- conversions ---------------------------------------------------------------
    def embed(self, x: TauElement) -> ToroidalElement:
        """View a TauElement in the identity frame."""
        frame = TwistMatrix.identity(self.n)
        der = {}
        if x.d0:
            der[self.zero_degree] = dict(x.d0)
        for r, c in x.ham.items():
            der[r] = {i: c * v for i, v in enumerate(bar(r)) if v}
        return ToroidalElement(frame, dict(x.loop), dict(x.c0), dict(x.cen), der)

    def to_tau(self, y: ToroidalElement) -> TauElement:
        """Inverse of ``embed``; fails unless the frame is I and every D(u, r) is Hamiltonian."""
        if not y.frame.is_identity():
            raise ValueError("only identity-frame elements are elements of tau")
        out = TauElement(self.n, dict(y.loop), dict(y.c0), dict(y.cen))
        for r, u in y.der.items():
            if r == self.zero_degree:
                out.d0 = dict(u)
                continue
            rb = bar(r)
            j = next(i for i, v in enumerate(rb) if v)
            c = u.get(j, self.field.zero) / rb[j]
            if vec_add(u, {i: c * v for i, v in enumerate(rb) if v}, -1):
                raise ValueError(f"derivation at degree {r} is not Hamiltonian")
            if c:
                out.ham[r] = c
        return out

    def transport(self, B: TwistMatrix, y: ToroidalElement) -> ToroidalElement:
        """B.X(r) = X(Br), B.K(u,r) = K(Bu,Br), B.D(u,r) = D(Fu,Br); new frame B * old."""
        out = ToroidalElement(B @ y.frame)
        for r, x in y.loop.items():
            _acc_vec(out.loop, B.apply(r), x)
        if y.c0:
            u = B.apply([y.c0.get(i, 0) for i in range(self.n)])
            self._add_central(out, u, self.zero_degree, 1)
        for s, c in y.cen.items():
            self._add_central(out, B.apply(y.frame.normal(s)), B.apply(s), c)
        for r, u in y.der.items():
            fu = B.apply_F([u.get(i, 0) for i in range(self.n)])
            _acc_vec(out.der, B.apply(r), {i: v for i, v in enumerate(fu) if v})
        return out
