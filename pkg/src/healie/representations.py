"""sp_n modules, the H'_n(m) action, jet modules W (x) A_n(m) and evaluation maps."""

from __future__ import annotations

from itertools import product

from . import linalg
from .lattice import GradingLattice, add, bar, dot
from .scalars import CyclotomicField
from .simple_lie import SimpleLieAlgebra, vec_add
from .tau import TauElement

CONVENTIONS = ("rt_rbar", "rbar_rt")


def rank_one_sp(r, field: CyclotomicField, convention: str = "rt_rbar"):
    """The n x n matrix r^t bar(r) (column r times row bar r).

    ``rbar_rt`` is the transposed spelling bar(r)^t r; it is kept only to show
    that the bracket identity pins the convention.
    """
    rb = bar(r)
    if convention == "rt_rbar":
        col, row = r, rb
    elif convention == "rbar_rt":
        col, row = rb, r
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return [[field(a * b) for b in row] for a in col]


def symplectic_form(n: int, field: CyclotomicField):
    k = n // 2
    J = [[field.zero] * n for _ in range(n)]
    for i in range(k):
        J[i][k + i] = field.one
        J[k + i][i] = -field.one
    return J


def is_symplectic(M, field: CyclotomicField) -> bool:
    """M^T J + J M = 0."""
    J = symplectic_form(len(M), field)
    lhs = linalg.matmul(linalg.transpose(M), J)
    rhs = linalg.matmul(J, M)
    return all(a + b == 0 for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))


def commutator(A, B):
    ab = linalg.matmul(A, B)
    ba = linalg.matmul(B, A)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


class SpModule:
    """A finite-dimensional sp_n-module given by a linear map rho on matrices."""

    def __init__(self, name: str, n: int, dim: int, field: CyclotomicField, rho):
        self.name = name
        self.n = n
        self.dim = dim
        self.field = field
        self._rho = rho

    @classmethod
    def trivial(cls, n: int, field: CyclotomicField) -> "SpModule":
        return cls("trivial", n, 1, field, lambda M: [[field.zero]])

    @classmethod
    def natural(cls, n: int, field: CyclotomicField) -> "SpModule":
        return cls(f"natural sp_{n}", n, n, field, lambda M: [list(row) for row in M])

    def rho(self, M):
        return self._rho(M)

    def act(self, M, w):
        return linalg.matvec(self.rho(M), list(w))

    def basis(self):
        one, zero = self.field.one, self.field.zero
        return [[one if i == j else zero for j in range(self.dim)] for i in range(self.dim)]

    def homomorphism_residual(self, M, N):
        """rho([M, N]) - [rho(M), rho(N)]."""
        lhs = self.rho(commutator(M, N))
        rhs = commutator(self.rho(M), self.rho(N))
        return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]


def _vadd(v, w, c=1):
    return [a + c * b for a, b in zip(v, w)]


def hprime_action(module: SpModule, r, zeta, w, convention: str = "rt_rbar"):
    """I(bar r, r).w = rho(r^t bar r) w + (bar r, zeta) w."""
    f = module.field
    if len(r) != module.n:
        raise ValueError(f"degree {tuple(r)} does not match sp_{module.n}")
    out = module.act(rank_one_sp(r, f, convention), w)
    return _vadd(out, w, f(dot(bar(r), zeta)))


def hprime_residual(module: SpModule, r, s, zeta, w, convention: str = "rt_rbar"):
    """[I_r, I_s] w - (bar r, s)(I_{r+s} - I_r - I_s) w; zero iff the action closes."""
    act = lambda t, v: hprime_action(module, t, zeta, v, convention)  # noqa: E731
    lhs = _vadd(act(r, act(s, w)), act(s, act(r, w)), -1)
    c = dot(bar(r), s)
    rhs = _vadd(_vadd(act(add(r, s), w), act(r, w), -1), act(s, w), -1)
    return _vadd(lhs, rhs, -c)


# ---------------------------------------------------------------------------
# jet modules
# ---------------------------------------------------------------------------


class JetGenerator:
    """h(r) = D(bar r, r), d(u) = D(u, 0) or mono(r) = t^r; combinations via ``terms``."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        # terms: list of (kind, key, coefficient); key is a degree or a vector u
        self.terms = [t for t in terms if t[2]]

    @classmethod
    def ham(cls, r, c=1):
        r = tuple(r)
        return cls([("ham", r, c)] if any(r) else [])

    @classmethod
    def deriv(cls, u, c=1):
        return cls([("deriv", tuple(u), c)])

    @classmethod
    def mono(cls, r, c=1):
        return cls([("mono", tuple(r), c)])

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{kind}{key}" for kind, key, c in self.terms) or "0"


def semidirect_bracket(a: JetGenerator, b: JetGenerator) -> JetGenerator:
    """Bracket in H_n(m) x A_n(m) (no central terms)."""
    out = []
    for ka, xa, ca in a.terms:
        for kb, xb, cb in b.terms:
            out.extend(_bracket_pair(ka, xa, kb, xb, ca * cb))
    return JetGenerator(out)


def _bracket_pair(ka, xa, kb, xb, c):
    if ka == "mono" and kb == "mono":
        return []
    if kb == "mono":
        if ka == "ham":
            return [("mono", add(xa, xb), c * dot(bar(xa), xb))]
        return [("mono", xb, c * dot(xa, xb))]
    if ka == "mono":
        return [(kind, key, -v) for kind, key, v in _bracket_pair(kb, xb, ka, xa, c)]
    if ka == "deriv" and kb == "deriv":
        return []
    if ka == "deriv" and kb == "ham":
        return [("ham", xb, c * dot(xa, xb))]
    if ka == "ham" and kb == "deriv":
        return [("ham", xa, -c * dot(xb, xa))]
    w = dot(bar(xa), xb)
    rs = add(xa, xb)
    return [("ham", rs, c * w)] if any(rs) else []


class JetModuleVector:
    """Finite sum of w (x) t^k: ``parts`` maps degree k to a vector of W."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts = {}
        for k, v in (parts or {}).items():
            if any(v):
                self.parts[tuple(k)] = list(v)

    def add_term(self, k, v, c=1) -> None:
        k = tuple(k)
        cur = self.parts.get(k)
        new = _vadd(cur, v, c) if cur is not None else [c * x for x in v]
        if any(new):
            self.parts[k] = new
        else:
            self.parts.pop(k, None)

    def __add__(self, other: "JetModuleVector") -> "JetModuleVector":
        out = JetModuleVector(self.parts)
        for k, v in other.parts.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "JetModuleVector") -> "JetModuleVector":
        out = JetModuleVector(self.parts)
        for k, v in other.parts.items():
            out.add_term(k, v, -1)
        return out

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetModuleVector):
            return NotImplemented
        return self.parts == other.parts

    __hash__ = None

    def __repr__(self) -> str:
        return f"JetModuleVector({ {k: [str(x) for x in v] for k, v in sorted(self.parts.items())} })"


class JetModule:
    """L(W) = W (x) A_n(m) for H_n(m) x A_n(m) with parameters alpha, beta (and a zeta shift)."""

    def __init__(self, module: SpModule, lattice: GradingLattice, alpha, beta, zeta=None, *, convention="rt_rbar"):
        if module.n != lattice.n:
            raise ValueError("sp_n module and lattice disagree on n")
        f = module.field
        self.module = module
        self.lattice = lattice
        self.alpha = [f(x) for x in alpha]
        self.beta = [f(x) for x in beta]
        self.zeta = [f(x) for x in (zeta or [0] * lattice.n)]
        self.convention = convention

    def _check_degree(self, r) -> None:
        if not self.lattice.in_gamma_bar(r):
            raise ValueError(f"degree {tuple(r)} is not in the lattice of A_n(m)")

    def act(self, gen: JetGenerator, v: JetModuleVector) -> JetModuleVector:
        out = JetModuleVector()
        for kind, key, c in gen.terms:
            if kind != "deriv":
                self._check_degree(key)
            for k, w in v.parts.items():
                if kind == "mono":
                    out.add_term(add(k, key), w, c)
                elif kind == "deriv":
                    out.add_term(k, w, c * dot(key, _vadd(self.alpha, k)))
                else:
                    img = hprime_action(self.module, key, self.zeta, w, self.convention)
                    img = _vadd(img, w, dot(bar(key), _vadd(self.beta, k)))
                    out.add_term(add(k, key), img, c)
        return out

    def commutator_residual(self, a: JetGenerator, b: JetGenerator, v: JetModuleVector) -> JetModuleVector:
        """a(b v) - b(a v) - [a, b] v."""
        lhs = self.act(a, self.act(b, v)) - self.act(b, self.act(a, v))
        return lhs - self.act(semidirect_bracket(a, b), v)


# ---------------------------------------------------------------------------
# evaluation map
# ---------------------------------------------------------------------------


class SeparationError(ValueError):
    pass


class EvaluationMap:
    """phi(X t^r) = (a_S^r X) for S in {1..l}^n in lexicographic order."""

    def __init__(self, g: SimpleLieAlgebra, points, m):
        f = g.field
        self.g = g
        self.points = [tuple(f(a) for a in row) for row in points]
        self.m = tuple(m)
        if len(self.points) != len(self.m):
            raise ValueError("need one tuple of points per automorphism")
        lengths = {len(row) for row in self.points}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError("every slot needs the same positive number l of points")
        self.l = lengths.pop()
        for i, row in enumerate(self.points):
            if any(not a for a in row):
                raise SeparationError(f"slot {i + 1} has a zero evaluation point")
            powers = [a ** self.m[i] for a in row]
            for j in range(self.l):
                for t in range(j + 1, self.l):
                    if powers[j] == powers[t]:
                        raise SeparationError(
                            f"slot {i + 1}: points {j + 1} and {t + 1} have equal m_i-th powers"
                        )
        self.index = list(product(range(self.l), repeat=len(self.m)))

    def monomial(self, S, r):
        acc = self.g.field.one
        for i, (j, ri) in enumerate(zip(S, r)):
            if ri:
                acc = acc * self.points[i][j] ** ri
        return acc

    def apply(self, x: TauElement) -> list:
        """Image of the loop part of x (central and derivation parts are dropped)."""
        out = []
        for S in self.index:
            acc: dict = {}
            for r, v in x.loop.items():
                acc = vec_add(acc, v, self.monomial(S, r))
            out.append(acc)
        return out

    def homomorphism_residual(self, x: TauElement, y: TauElement, bracket) -> list:
        """phi([x, y]) - [phi x, phi y] componentwise."""
        lhs = self.apply(bracket(x, y))
        px, py = self.apply(x), self.apply(y)
        return [vec_add(a, self.g.bracket(b, c), -1) for a, b, c in zip(lhs, px, py)]

    def same_monomial(self, r, s) -> bool:
        return all(self.monomial(S, r) == self.monomial(S, s) for S in self.index)
