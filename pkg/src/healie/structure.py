"""Roots, coroots, reflections, translations, the triangular decomposition and twists."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lattice import add, bar
from .simple_lie import vec_add
from .tau import TauAlgebra, TauElement
from .toroidal import ToroidalAlgebra, ToroidalElement, TwistMatrix

__all__ = [
    "Weight",
    "RootDatum",
    "TwistMatrix",
    "root_of",
    "root_weight",
    "coroot",
    "pair",
    "reflect",
    "translate",
    "is_root",
    "weight_leq",
    "triangular_class",
    "triangular_classes",
    "bnn",
    "random_unimodular",
    "is_compatible",
    "twist",
    "twist_element",
]


class NotHomogeneousError(ValueError):
    pass


class TwistCompatibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    """A functional on H = h(0) + sum C K_i + sum C d_i, stored by values."""

    finite: tuple
    K: tuple
    d: tuple

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            tuple(a + b for a, b in zip(self.K, other.K)),
            tuple(a + b for a, b in zip(self.d, other.d)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + other.scale(-1)

    def scale(self, c) -> "Weight":
        return Weight(
            tuple(c * a for a in self.finite), tuple(c * a for a in self.K), tuple(c * a for a in self.d)
        )

    @property
    def dimension(self) -> int:
        return len(self.finite) + len(self.K) + len(self.d)

    @classmethod
    def zero(cls, tau: TauAlgebra) -> "Weight":
        z = tau.field.zero
        return cls((z,) * tau.g.rank, (z,) * tau.n, (z,) * tau.n)

    @classmethod
    def delta(cls, tau: TauAlgebra, i: int) -> "Weight":
        """delta_i (0-based i): 1 on d_i, 0 elsewhere."""
        w = cls.zero(tau)
        d = list(w.d)
        d[i] = tau.field.one
        return cls(w.finite, w.K, tuple(d))


@dataclass(frozen=True)
class RootDatum:
    """alpha + delta_r; ``alpha`` is a weight tuple on the Cartan basis of h(0)."""

    alpha: tuple
    degree: tuple

    @property
    def is_real(self) -> bool:
        return any(self.alpha)


def root_weight(tau: TauAlgebra, beta: RootDatum) -> Weight:
    f = tau.field
    return Weight(
        tuple(f(a) for a in beta.alpha),
        (f.zero,) * tau.n,
        tuple(f(x) for x in beta.degree),
    )


def root_of(tau: TauAlgebra, x: TauElement) -> RootDatum:
    """The root space containing a nonzero homogeneous x."""
    degs = x.degrees()
    if len(degs) != 1:
        raise NotHomogeneousError(f"element spans degrees {sorted(degs)}")
    (r,) = degs
    weights = set()
    if r in x.loop:
        weights |= set(tau.auts.weight_decompose(x.loop[r], r))
    if x.cen or x.ham or x.c0 or x.d0:
        weights.add(tau.g.zero_weight)
    if len(weights) != 1:
        raise NotHomogeneousError("element is not a weight vector for h(0)")
    (alpha,) = weights
    return RootDatum(alpha, r)


def coroot(tau: TauAlgebra, beta: RootDatum) -> TauElement:
    """alpha^vee + (2/(alpha|alpha)) sum r_i K_i."""
    if not beta.is_real:
        raise ValueError("isotropic roots have no coroot")
    g = tau.g
    length = g.root_length(beta.alpha)
    out = TauElement(tau.n, loop={tau.zero_degree: g.coroot(beta.alpha)})
    c = 2 / length
    for i, ri in enumerate(beta.degree):
        if ri:
            out.c0[i] = c * ri
    return out


def pair(tau: TauAlgebra, lam: Weight, h: TauElement):
    """lambda(h) for h in the Cartan H."""
    if h.cen or h.ham or set(h.loop) - {tau.zero_degree}:
        raise ValueError("element is not in the Cartan subalgebra H")
    acc = tau.field.zero
    if h.loop:
        acc = acc + tau.g.evaluate_weight(lam.finite, h.loop[tau.zero_degree])
    for i, c in h.c0.items():
        acc = acc + c * lam.K[i]
    for i, c in h.d0.items():
        acc = acc + c * lam.d[i]
    return acc


def reflect(tau: TauAlgebra, gamma: RootDatum, lam: Weight) -> Weight:
    """r_gamma(lambda) = lambda - lambda(gamma^vee) gamma."""
    c = pair(tau, lam, coroot(tau, gamma))
    return lam - root_weight(tau, gamma).scale(c)


def translate(tau: TauAlgebra, i: int, h: TauElement, lam: Weight, *, check_lattice: bool = True) -> Weight:
    """t_{i,h}(lambda) = lambda - lambda(h) delta_i, for slot i (0-based) outside {k, 2k}."""
    lat = tau.lattice
    if i in (lat.k_slot, lat.k2_slot):
        raise ValueError("translations are defined only for slots other than k and 2k")
    if h.c0 or h.d0 or h.cen or h.ham or set(h.loop) - {tau.zero_degree}:
        raise ValueError("translation element must lie in h(0)")
    if check_lattice and h.loop and not in_long_coroot_lattice(tau, h.loop[tau.zero_degree]):
        raise ValueError("translation element is not in Z(W_0 theta^vee)")
    return lam - Weight.delta(tau, i).scale(pair(tau, lam, h))


def _g0_roots(tau: TauAlgebra):
    """Roots of g(0) relative to h(0)."""
    return [w for w, _ in tau.auts.root_spaces(tau.zero_degree) if any(w)]


def in_long_coroot_lattice(tau: TauAlgebra, h) -> bool:
    """Membership of h in the Z-span of the coroots of long roots of g(0)."""
    g = tau.g
    roots = _g0_roots(tau)
    if not roots:
        return not h
    top = max(g.root_length(a).to_fraction() for a in roots)
    gens = [g.cartan_coordinates(g.coroot(a)) for a in roots if g.root_length(a).to_fraction() == top]
    target = g.cartan_coordinates(h)
    if target is None:
        return False
    return _in_integer_span([[c.to_fraction() for c in v] for v in gens], [c.to_fraction() for c in target])


def _in_integer_span(gens, target) -> bool:
    """Integer-span membership by Hermite-style row reduction over Z (after clearing denominators)."""
    from math import lcm

    den = 1
    for v in gens + [target]:
        for x in v:
            den = lcm(den, x.denominator)
    rows = [[int(x * den) for x in v] for v in gens]
    t = [int(x * den) for x in target]
    ncols = len(t)
    basis = []
    col = 0
    while rows and col < ncols:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in nz if r[col]]) > 1:
            nz.sort(key=lambda r: abs(r[col]) if r[col] else float("inf"))
            p = nz[0]
            nz = [p] + [[a - (r[col] // p[col]) * b for a, b in zip(r, p)] for r in nz[1:]]
        p = next(r for r in nz if r[col])
        basis.append((col, p))
        # rows reduced to zero in this column stay in the span
        rows = [r for r in rows if not r[col]] + [r for r in nz if r is not p]
        col += 1
    for c, p in basis:
        if t[c] % p[c]:
            return False
        q = t[c] // p[c]
        t = [a - q * b for a, b in zip(t, p)]
    return not any(t)


def is_root(tau: TauAlgebra, lam: Weight) -> bool:
    """True iff lam = alpha + delta_r is a root or zero (K-values must vanish)."""
    if any(lam.K):
        return False
    try:
        r = tuple(int(x.to_fraction()) for x in lam.d)
    except ValueError:
        return False
    if any(x.to_fraction() != y for x, y in zip(lam.d, r)):
        return False
    alpha = tuple(lam.finite)
    for w, _ in tau.auts.root_spaces(r):
        if tuple(w) == alpha:
            return True
    if not any(alpha):
        return r == tau.zero_degree or tau.lattice.in_gamma_bar(r)
    return False


def weight_leq(tau: TauAlgebra, lam: Weight, mu: Weight) -> bool:
    """lam <= mu in the ordering on H^* used for highest weights."""
    diff = mu - lam
    lat = tau.lattice
    if any(diff.K):
        return False
    for i, x in enumerate(diff.d):
        if i not in (lat.k_slot, lat.k2_slot) and x:
            return False
    coords = tau.g.simple_coordinates(diff.finite)
    if coords is None:
        return False
    fr = [c.to_fraction() for c in coords]
    nk, n2k = diff.d[lat.k_slot].to_fraction(), diff.d[lat.k2_slot].to_fraction()
    if any(x.denominator != 1 for x in fr + [nk, n2k]):
        return False
    if nk - n2k > 0:
        return True
    if nk == n2k and nk > 0:
        return True
    return nk == n2k == 0 and all(x >= 0 for x in fr)


# ---------------------------------------------------------------------------
# triangular decomposition
# ---------------------------------------------------------------------------


def _degree_class(a: int, b: int):
    if a > b:
        return "++"
    if a < b:
        return "--"
    if a > 0:
        return "+"
    if a < 0:
        return "-"
    return None


def triangular_class(tau: TauAlgebra, x: TauElement) -> str:
    """One of '++', '+', '0', '-', '--' for a nonzero homogeneous x."""
    degs = x.degrees()
    if len(degs) != 1:
        raise NotHomogeneousError(f"element spans degrees {sorted(degs)}")
    (r,) = degs
    lat = tau.lattice
    cls = _degree_class(r[lat.k_slot], r[lat.k2_slot])
    if cls is not None:
        return cls
    signs = set()
    if r in x.loop:
        for w in tau.auts.weight_decompose(x.loop[r], r):
            signs.add(tau.g.sign(w))
    if x.cen or x.ham or x.c0 or x.d0:
        signs.add(0)
    if len(signs) != 1:
        raise NotHomogeneousError("element mixes triangular classes")
    return {1: "+", 0: "0", -1: "-"}[signs.pop()]


def triangular_classes(tau: TauAlgebra, x: TauElement) -> set[str]:
    """Classes of all homogeneous (degree and weight) components of x."""
    out = set()
    for r, part in x.homogeneous_parts().items():
        pieces = []
        if r in part.loop:
            for _, v in tau.auts.weight_decompose(part.loop[r], r).items():
                pieces.append(TauElement(tau.n, loop={r: v}))
        rest = TauElement(tau.n, cen=part.cen, ham=part.ham, c0=part.c0, d0=part.d0)
        if rest:
            pieces.append(rest)
        for p in pieces:
            out.add(triangular_class(tau, p))
    return out


# ---------------------------------------------------------------------------
# GL(n, Z) twists
# ---------------------------------------------------------------------------


def bnn(n: int, a: int) -> TwistMatrix:
    """Identity except the (k, 2k) block [[a, 1], [a - 1, 1]]; requires 2a - 1 > 0."""
    if 2 * a - 1 <= 0:
        raise ValueError("B_{n,n} requires 2a - 1 > 0")
    if n % 2:
        raise ValueError("n must be even")
    k = n // 2
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    rows[k - 1][k - 1], rows[k - 1][n - 1] = a, 1
    rows[n - 1][k - 1], rows[n - 1][n - 1] = a - 1, 1
    return TwistMatrix(rows)


def is_compatible(tau: TauAlgebra, B: TwistMatrix) -> bool:
    """Sufficient test that B preserves every eigenspace class: B = I mod m_i in row i."""
    m = tau.lattice.m
    for i, row in enumerate(B.B):
        for j, x in enumerate(row):
            if (x - (i == j)) % m[i]:
                return False
    return True


def random_unimodular(tau: TauAlgebra, rng: random.Random, steps: int = 6) -> TwistMatrix:
    """A random compatible unimodular matrix: product of transvections I + c e_i e_j^T with m_i | c."""
    n = tau.n
    m = tau.lattice.m
    B = TwistMatrix.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2]) * m[i]
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        rows[i][j] = c
        B = TwistMatrix(rows) @ B
    return B


def twist_element(tau: TauAlgebra, B: TwistMatrix, y: ToroidalElement) -> ToroidalElement:
    """Apply B to a carrier element, checking that loop terms stay in their eigenspaces."""
    for r, x in y.loop.items():
        if not tau.auts.contains(B.apply(r), x):
            raise TwistCompatibilityError(
                f"loop term at degree {r} leaves its eigenspace under B (image degree {B.apply(r)})"
            )
    return ToroidalAlgebra(tau.g, tau.n).transport(B, y)


def twist(tau: TauAlgebra, B: TwistMatrix, x: TauElement) -> ToroidalElement:
    """B.x as an element of tau_B (carrier in frame B)."""
    if B.n != tau.n:
        raise ValueError("twist matrix size does not match n")
    return twist_element(tau, B, ToroidalAlgebra(tau.g, tau.n).embed(x))
