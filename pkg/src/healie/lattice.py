"""The degree lattice Z^n (n = 2k), its sublattices and the symplectic pairings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

LatticeVector = tuple[int, ...]


def bar(s) -> LatticeVector:
    """(s_{k+1}, ..., s_{2k}, -s_1, ..., -s_k)."""
    n = len(s)
    if n % 2:
        raise ValueError(f"bar twist needs even length, got {n}")
    k = n // 2
    return tuple(s[k:]) + tuple(-x for x in s[:k])


def dot(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = a * b + acc
    return acc


def sympl(r, s):
    """The alternating form (bar(r), s)."""
    return dot(bar(r), s)


def add(u, v) -> LatticeVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> LatticeVector:
    return tuple(a - b for a, b in zip(u, v))


def neg(u) -> LatticeVector:
    return tuple(-a for a in u)


def scale(c, u) -> LatticeVector:
    return tuple(c * a for a in u)


@dataclass(frozen=True)
class GradingLattice:
    """Z^n together with the orders m and the derived sublattices.

    Slots are 1-based in the names below; ``k_slot`` and ``k2_slot`` are the
    0-based positions of slots k and 2k.
    """

    n: int
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.n <= 0 or self.n % 2:
            raise ValueError(f"n must be a positive even integer, got {self.n}")
        if len(self.m) != self.n:
            raise ValueError(f"expected {self.n} orders, got {len(self.m)}")
        if any(x < 1 for x in self.m):
            raise ValueError(f"orders must be >= 1, got {self.m}")

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def k_slot(self) -> int:
        return self.k - 1

    @property
    def k2_slot(self) -> int:
        return self.n - 1

    @cached_property
    def reduced_slots(self) -> tuple[int, ...]:
        """0-based slots of Z^{n-2}: everything except k and 2k."""
        return tuple(i for i in range(self.n) if i not in (self.k_slot, self.k2_slot))

    @property
    def m_prime(self) -> tuple[int, ...]:
        return tuple(self.m[i] for i in self.reduced_slots)

    @property
    def zero(self) -> LatticeVector:
        return (0,) * self.n

    def check(self, r) -> LatticeVector:
        r = tuple(int(x) for x in r)
        if len(r) != self.n:
            raise ValueError(f"degree {r} has length {len(r)}, expected {self.n}")
        return r

    # -- membership --------------------------------------------------------
    def in_gamma_bar(self, r) -> bool:
        """r in m_1 Z + ... + m_n Z."""
        r = self.check(r)
        return all(x % mi == 0 for x, mi in zip(r, self.m))

    def in_gamma(self, r) -> bool:
        """r in Z^{n-2} lies in the sublattice over the reduced slots."""
        if len(r) != self.n - 2:
            raise ValueError(f"expected a vector of length {self.n - 2}")
        return all(x % mi == 0 for x, mi in zip(r, self.m_prime))

    def in_gamma0(self, pair) -> bool:
        """(r_k, r_2k) in m_k Z + m_2k Z."""
        a, b = pair
        return a % self.m[self.k_slot] == 0 and b % self.m[self.k2_slot] == 0

    def membership(self, r, which: str) -> bool:
        if which in ("gamma_bar", "Γ̄"):
            return self.in_gamma_bar(r)
        if which in ("gamma", "Γ"):
            return self.in_gamma(r)
        if which in ("gamma0", "Γ₀"):
            return self.in_gamma0(r)
        raise ValueError(f"unknown sublattice {which!r}")

    def coset(self, r) -> LatticeVector:
        """Least non-negative representative of r in Z^{n-2} / Gamma."""
        if len(r) != self.n - 2:
            raise ValueError(f"expected a vector of length {self.n - 2}")
        return tuple(x % mi for x, mi in zip(r, self.m_prime))

    def residue(self, r) -> LatticeVector:
        """Class of r in Z^n / Gamma_bar, reduced into [0, m_i)."""
        return tuple(x % mi for x, mi in zip(r, self.m))

    def classes(self):
        """All residue classes of Z^n / Gamma_bar in lexicographic order."""
        out = [()]
        for mi in self.m:
            out = [c + (j,) for c in out for j in range(mi)]
        return out

    def restrict(self, r) -> LatticeVector:
        """Project r in Z^n onto the reduced slots."""
        return tuple(r[i] for i in self.reduced_slots)
