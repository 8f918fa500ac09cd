"""Elements, bracket and invariant form of tau = LT + Z/K(m) + H_n(m).

A ``TauElement`` stores five canonical parts:

* ``loop``  degree r -> vector of g lying in g(r mod Gamma_bar)
* ``c0``    degree-zero centre, coefficients on K_1..K_n
* ``cen``   degree r != 0 -> coefficient on the basis vector K(bar r, r)
* ``d0``    degree-zero derivations, coefficients on d_1..d_n
* ``ham``   degree r != 0 -> coefficient on h_r = D(bar r, r)

Central elements are kept reduced modulo dA + K(m), so equality is equality
of the stored dicts.
"""

from __future__ import annotations

from .lattice import GradingLattice, add, bar, dot
from .simple_lie import AutomorphismSet, SimpleLieAlgebra, vec_add, vec_scale


def _acc(d: dict, key, value) -> None:
    if not value:
        return
    v = d.get(key)
    v = value if v is None else v + value
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _acc_vec(d: dict, key, vec: dict, c=1) -> None:
    if not vec or not c:
        return
    v = vec_add(d.get(key, {}), vec, c)
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class TauElement:
    __slots__ = ("n", "loop", "c0", "cen", "d0", "ham")

    def __init__(self, n: int, loop=None, c0=None, cen=None, d0=None, ham=None):
        self.n = n
        self.loop = loop or {}
        self.c0 = c0 or {}
        self.cen = cen or {}
        self.d0 = d0 or {}
        self.ham = ham or {}

    @classmethod
    def zero(cls, n: int) -> "TauElement":
        return cls(n)

    def _parts(self):
        return (self.loop, self.c0, self.cen, self.d0, self.ham)

    def __bool__(self) -> bool:
        return any(self._parts())

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self
        if not isinstance(other, TauElement):
            return NotImplemented
        return self.n == other.n and self._parts() == other._parts()

    __hash__ = None

    def __add__(self, other: "TauElement") -> "TauElement":
        if isinstance(other, int) and other == 0:
            return self
        out = self.copy()
        out._iadd(other, 1)
        return out

    __radd__ = __add__

    def __sub__(self, other: "TauElement") -> "TauElement":
        out = self.copy()
        out._iadd(other, -1)
        return out

    def __neg__(self) -> "TauElement":
        return self.scale(-1)

    def __rmul__(self, c) -> "TauElement":
        return self.scale(c)

    def scale(self, c) -> "TauElement":
        if not c:
            return TauElement(self.n)
        return TauElement(
            self.n,
            {r: vec_scale(c, v) for r, v in self.loop.items()},
            {i: c * v for i, v in self.c0.items()},
            {r: c * v for r, v in self.cen.items()},
            {i: c * v for i, v in self.d0.items()},
            {r: c * v for r, v in self.ham.items()},
        )

    def copy(self) -> "TauElement":
        return TauElement(
            self.n, dict(self.loop), dict(self.c0), dict(self.cen), dict(self.d0), dict(self.ham)
        )

    def _iadd(self, other: "TauElement", c) -> None:
        if other.n != self.n:
            raise ValueError("elements over different n")
        for r, v in other.loop.items():
            _acc_vec(self.loop, r, v, c)
        for i, v in other.c0.items():
            _acc(self.c0, i, c * v)
        for r, v in other.cen.items():
            _acc(self.cen, r, c * v)
        for i, v in other.d0.items():
            _acc(self.d0, i, c * v)
        for r, v in other.ham.items():
            _acc(self.ham, r, c * v)

    def degrees(self) -> set:
        zero = (0,) * self.n
        out = set(self.loop) | set(self.cen) | set(self.ham)
        if self.c0 or self.d0:
            out.add(zero)
        return out

    def homogeneous_parts(self) -> dict:
        """Split into degree-homogeneous pieces."""
        zero = (0,) * self.n
        parts: dict = {}
        for r in self.degrees():
            el = TauElement(self.n)
            if r in self.loop:
                el.loop[r] = self.loop[r]
            if r in self.cen:
                el.cen[r] = self.cen[r]
            if r in self.ham:
                el.ham[r] = self.ham[r]
            if r == zero:
                el.c0 = dict(self.c0)
                el.d0 = dict(self.d0)
            parts[r] = el
        return parts

    def __repr__(self) -> str:
        bits = []
        for r, v in sorted(self.loop.items()):
            bits.append(f"loop{r}:{ {k: str(c) for k, c in sorted(v.items())} }")
        for i, v in sorted(self.c0.items()):
            bits.append(f"{v}*K{i + 1}")
        for r, v in sorted(self.cen.items()):
            bits.append(f"{v}*K[{bar(r)},{r}]")
        for i, v in sorted(self.d0.items()):
            bits.append(f"{v}*d{i + 1}")
        for r, v in sorted(self.ham.items()):
            bits.append(f"{v}*h{list(r)}")
        return "TauElement(" + (" + ".join(bits) or "0") + ")"


class TauAlgebra:
    """The configured algebra: g, its automorphisms and the grading lattice.

    ``hamiltonian_cocycle=False`` drops the central term of the
    derivation-derivation bracket.  It exists only as a negative control.
    """

    def __init__(self, g: SimpleLieAlgebra, auts: AutomorphismSet, *, hamiltonian_cocycle: bool = True):
        self.g = g
        self.auts = auts
        self.lattice: GradingLattice = auts.lattice
        self.n = self.lattice.n
        self.field = g.field
        self.hamiltonian_cocycle = hamiltonian_cocycle
        self.zero_degree = self.lattice.zero

    # -- constructors ---------------------------------------------------------
    def zero(self) -> TauElement:
        return TauElement(self.n)

    def loop(self, x, r) -> TauElement:
        """x (t^r) for a vector or basis label x; x must lie in g(r)."""
        r = self.lattice.check(r)
        if isinstance(x, (str, int)):
            x = self.g.basis_vector(x)
        x = {i: self.field(c) for i, c in x.items() if c}
        if not self.auts.contains(r, x):
            raise ValueError(f"{x} does not lie in the eigenspace g({self.lattice.residue(r)})")
        return TauElement(self.n, loop={r: x} if x else {})

    def ham(self, r, c=1) -> TauElement:
        r = self.lattice.check(r)
        if not self.lattice.in_gamma_bar(r):
            raise ValueError(f"Hamiltonian degree {r} is not in Gamma_bar")
        c = self.field(c)
        if r == self.zero_degree or not c:
            return self.zero()
        return TauElement(self.n, ham={r: c})

    def K(self, i: int, c=1) -> TauElement:
        """K_i, ``i`` 1-based."""
        c = self.field(c)
        return TauElement(self.n, c0={i - 1: c} if c else {})

    def d(self, i: int, c=1) -> TauElement:
        """d_i, ``i`` 1-based."""
        c = self.field(c)
        return TauElement(self.n, d0={i - 1: c} if c else {})

    def D0(self, u) -> TauElement:
        """D(u, 0) = sum u_i d_i."""
        d0 = {i: self.field(c) for i, c in enumerate(u) if c}
        return TauElement(self.n, d0=d0)

    def central(self, u, r) -> TauElement:
        """The class of K(u, r) in Z/K(m)."""
        out = self.zero()
        self._add_central(out, u, self.lattice.check(r), self.field.one)
        return out

    # -- central quotient -----------------------------------------------------
    def canonical_coefficient(self, u, r):
        """Coefficient c with K(u, r) = c K(bar r, r) modulo dA + K(m), r != 0."""
        rb = bar(r)
        return self.field(dot(u, rb)) / dot(rb, rb)

    def central_canonicalize(self, u, r):
        """Canonical form of K(u, r): the vector u for r = 0, else one scalar."""
        r = self.lattice.check(r)
        if not self.lattice.in_gamma_bar(r):
            raise ValueError(f"central degree {r} is not in Gamma_bar")
        if r == self.zero_degree:
            return tuple(self.field(c) for c in u)
        return self.canonical_coefficient(u, r)

    def _add_central(self, out: TauElement, u, t, coef) -> None:
        if t == self.zero_degree:
            for i, ui in enumerate(u):
                if ui:
                    _acc(out.c0, i, coef * ui)
            return
        if not self.lattice.in_gamma_bar(t):
            raise ValueError(f"central term at degree {t} outside Gamma_bar")
        tb = bar(t)
        val = dot(u, tb)
        if val:
            _acc(out.cen, t, coef * val / dot(tb, tb))

    def central_dimension(self, r) -> int:
        """dim (Z/K(m))_r by rank of the relation space (independent of the closed form)."""
        from . import linalg

        r = self.lattice.check(r)
        n = self.n
        if r == self.zero_degree:
            return n
        one, zero = self.field.one, self.field.zero
        rb = [self.field(x) for x in bar(r)]
        relations = [[self.field(x) for x in r]]  # dA
        relations += linalg.nullspace([rb], one, zero)  # K(m): (u, bar r) = 0
        return n - linalg.rank(relations)

    # -- bracket ----------------------------------------------------------------
    def bracket(self, a: TauElement, b: TauElement) -> TauElement:
        out = TauElement(self.n)
        self._bracket_into(out, a, b, 1)
        self._deriv_on(out, b, a, -1)
        return out

    def _bracket_into(self, out, a, b, sign) -> None:
        g = self.g
        # loop x loop
        for p, x in a.loop.items():
            for q, y in b.loop.items():
                pq = add(p, q)
                _acc_vec(out.loop, pq, g.bracket(x, y), sign)
                c = g.form(x, y)
                if c:
                    self._add_central(out, p, pq, sign * c)
        self._deriv_on(out, a, b, sign)
        # derivation x derivation
        for i, u in a.d0.items():
            for s, c in b.ham.items():
                if s[i]:
                    _acc(out.ham, s, sign * u * c * s[i])
        for r, c in a.ham.items():
            rb = bar(r)
            for j, v in b.d0.items():
                if r[j]:
                    _acc(out.ham, r, -sign * c * v * r[j])
            for s, c2 in b.ham.items():
                w = dot(rb, s)
                if not w:
                    continue
                rs = add(r, s)
                if rs != self.zero_degree:
                    _acc(out.ham, rs, sign * c * c2 * w)
                if self.hamiltonian_cocycle:
                    # (u,s)(v,r) K(r, r+s) with u = bar r, v = bar s, (bar s, r) = -w
                    self._add_central(out, r, rs, -sign * c * c2 * w * w)

    def _deriv_on(self, out, a, b, sign) -> None:
        """Add sign * (derivation part of a) acting on the loop and central parts of b."""
        if not (a.d0 or a.ham) or not (b.loop or b.c0 or b.cen):
            return
        zero = self.zero_degree
        for q, y in b.loop.items():
            w = sum((u * q[i] for i, u in a.d0.items() if q[i]), 0)
            if w:
                _acc_vec(out.loop, q, y, sign * w)
            for r, c in a.ham.items():
                w = dot(bar(r), q)
                if w:
                    _acc_vec(out.loop, add(r, q), y, sign * c * w)
        # central targets: (v, s) pairs with v a scalar vector
        targets = []
        if b.c0:
            targets.append((zero, [b.c0.get(i, 0) for i in range(self.n)]))
        for s, c in b.cen.items():
            targets.append((s, [c * x for x in bar(s)]))
        for s, v in targets:
            # D(u, 0) on K(v, s): (u, s) K(v, s)
            w = sum((u * s[i] for i, u in a.d0.items() if s[i]), 0)
            if w:
                self._add_central(out, v, s, sign * w)
            for r, c in a.ham.items():
                self._act_ham_on_central(out, bar(r), r, v, s, sign * c)

    def _act_ham_on_central(self, out, u, r, v, s, coef) -> None:
        """coef * D(u, r).K(v, s) = coef * ((u,s) K(v, r+s) + (u,v) K(r, r+s))."""
        rs = add(r, s)
        us = dot(u, s)
        if us:
            self._add_central(out, v, rs, coef * us)
        uv = dot(u, v)
        if uv:
            self._add_central(out, r, rs, coef * uv)

    def act_on_raw_central(self, x: TauElement, u, r) -> TauElement:
        """[x, K(u, r)] computed from the raw pair (u, r) before any reduction."""
        r = self.lattice.check(r)
        out = TauElement(self.n)
        u = [self.field(c) for c in u]
        w = sum((c * r[i] for i, c in x.d0.items() if r[i]), 0)
        if w:
            self._add_central(out, u, r, w)
        for s, c in x.ham.items():
            self._act_ham_on_central(out, bar(s), s, u, r, c)
        return out

    def jacobi_residual(self, a, b, c) -> TauElement:
        br = self.bracket
        return br(br(a, b), c) + br(br(b, c), a) + br(br(c, a), b)

    # -- invariant form -----------------------------------------------------------
    def form(self, a: TauElement, b: TauElement):
        return self._half_form(a, b) + self._half_form(b, a) + self._loop_form(a, b)

    def _loop_form(self, a, b):
        acc = self.field.zero
        for r, x in a.loop.items():
            y = b.loop.get(tuple(-t for t in r))
            if y:
                acc = acc + self.g.form(x, y)
        return acc

    def _half_form(self, a, b):
        """Pairings of derivations in a with central terms in b."""
        acc = self.field.zero
        for i, u in a.d0.items():
            v = b.c0.get(i)
            if v:
                acc = acc + u * v
        for r, c in a.ham.items():
            s = tuple(-t for t in r)
            c2 = b.cen.get(s)
            if c2:
                acc = acc + c * c2 * dot(bar(r), bar(s))
        return acc

    # -- sampling helpers -----------------------------------------------------------
    def loop_basis(self, r) -> list[TauElement]:
        """Weight-vector basis of g(r) (t^r)."""
        r = self.lattice.check(r)
        return [TauElement(self.n, loop={r: v}) for _, v in self.auts.root_spaces(r)]
