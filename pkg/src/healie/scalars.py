"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are polynomials in zeta_N of degree < phi(N) with rational
coefficients, reduced modulo the N-th cyclotomic polynomial.  Storage is
sparse (exponent -> Fraction) with no explicit zeros, so equality of
canonical maps is field equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational


class FieldMismatchError(ValueError):
    """Raised when scalars from two different cyclotomic fields are combined."""


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (dense lists, low degree first)
# ---------------------------------------------------------------------------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Long division over Q.  ``b`` must be nonzero."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = Fraction(a[-1]) / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
    return _trim(q), a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _poly_sub(a, b):
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first.

    Uses x^n - 1 = prod_{d | n} Phi_d and exact division.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not r, "cyclotomic division left a remainder"
            num = q
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


# ---------------------------------------------------------------------------
# field and elements
# ---------------------------------------------------------------------------


class CyclotomicField:
    """The field Q(zeta_N).  One instance per N (instances are cached)."""

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, N: int):
        if N < 1:
            raise ValueError("N must be a positive integer")
        inst = cls._instances.get(N)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(N)
            cls._instances[N] = inst
        return inst

    def _setup(self, N: int) -> None:
        self.N = N
        self.modulus = cyclotomic_polynomial(N)
        self.degree = len(self.modulus) - 1
        # x^e reduced mod Phi_N for 0 <= e < max(N, 2*degree - 1)
        top = max(N, 2 * self.degree - 1)
        table = []
        cur = {0: Fraction(1)}
        for _ in range(top):
            table.append(cur)
            cur = self._times_x(cur)
        self._powers = table
        self.zero = CycScalar(self, {})
        self.one = CycScalar(self, {0: Fraction(1)})
        self.zeta = self.root_of_unity(N, 1)

    def _times_x(self, coeffs):
        d = self.degree
        out = {}
        for e, c in coeffs.items():
            if e + 1 < d:
                out[e + 1] = out.get(e + 1, 0) + c
            else:
                # x^d = -(modulus without leading term)
                for j, mj in enumerate(self.modulus[:-1]):
                    if mj:
                        out[j] = out.get(j, 0) - c * mj
        return {e: c for e, c in out.items() if c != 0}

    def __repr__(self) -> str:
        return f"CyclotomicField({self.N})"

    def __reduce__(self):
        return (CyclotomicField, (self.N,))

    def __call__(self, value) -> "CycScalar":
        """Coerce an int, Fraction or CycScalar into this field."""
        if isinstance(value, CycScalar):
            if value.field is not self:
                raise FieldMismatchError(f"scalar lives in Q(zeta_{value.field.N}), not Q(zeta_{self.N})")
            return value
        if isinstance(value, (int, Rational)):
            value = Fraction(value)
            return CycScalar(self, {0: value} if value else {})
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def from_powers(self, terms) -> "CycScalar":
        """Build sum c * zeta_N^e from (e, c) pairs; e may be any integer."""
        acc: dict[int, Fraction] = {}
        for e, c in terms:
            c = Fraction(c)
            if not c:
                continue
            for j, v in self._powers[e % self.N].items():
                acc[j] = acc.get(j, 0) + c * v
        return CycScalar(self, {j: v for j, v in acc.items() if v})

    def root_of_unity(self, order: int, power: int) -> "CycScalar":
        """zeta_order^power, where zeta_order = zeta_N^(N/order)."""
        if self.N % order:
            raise FieldMismatchError(f"order {order} does not divide N={self.N}")
        return self.from_powers([((self.N // order) * power, 1)])


class CycScalar:
    """An element of Q(zeta_N) in canonical sparse form."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: dict[int, Fraction]):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- coercion ------------------------------------------------------------
    def _other(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise FieldMismatchError(
                    f"cannot combine Q(zeta_{self.field.N}) with Q(zeta_{other.field.N})"
                )
            return other
        if isinstance(other, (int, Rational)):
            return self.field(other)
        return NotImplemented

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        other = self._other(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CycScalar(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.field, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            if not c:
                return self.field.zero
            return CycScalar(self.field, {e: v * c for e, v in self.coeffs.items()})
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return self.field.zero
        if len(other.coeffs) == 1 and 0 in other.coeffs:
            return self * other.coeffs[0]
        if len(self.coeffs) == 1 and 0 in self.coeffs:
            return other * self.coeffs[0]
        raw: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                raw[e1 + e2] = raw.get(e1 + e2, 0) + c1 * c2
        d = self.field.degree
        powers = self.field._powers
        out: dict[int, Fraction] = {}
        for e, c in raw.items():
            if not c:
                continue
            if e < d:
                out[e] = out.get(e, 0) + c
            else:
                for j, v in powers[e].items():
                    out[j] = out.get(j, 0) + c * v
        return CycScalar(self.field, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        """Multiplicative inverse via the extended Euclidean algorithm with Phi_N."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self.coeffs) == 1 and 0 in self.coeffs:
            return CycScalar(self.field, {0: 1 / self.coeffs[0]})
        a = [Fraction(x) for x in self.field.modulus]
        b = [self.coeffs.get(e, Fraction(0)) for e in range(max(self.coeffs) + 1)]
        # invariant: s0 * self == a and s1 * self == b  (mod Phi_N)
        s0, s1 = [], [Fraction(1)]
        while len(b) > 1:
            q, r = _poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if not b:
                raise ArithmeticError("cyclotomic modulus is not irreducible")
        c = b[0]
        return self.field.from_powers((e, v / c) for e, v in enumerate(s1))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = self.field.one, self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- comparison / hashing ------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            return other.field is self.field and other.coeffs == self.coeffs
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            if not other:
                return not self.coeffs
            return self.coeffs == {0: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not self.coeffs:
                self._hash = hash(0)
            elif len(self.coeffs) == 1 and 0 in self.coeffs:
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.field.N, tuple(sorted(self.coeffs.items()))))
        return self._hash

    def is_rational(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def __repr__(self) -> str:
        return f"CycScalar({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
                continue
            z = "zeta" if e == 1 else f"zeta^{e}"
            if c == 1:
                parts.append(z)
            elif c == -1:
                parts.append(f"-{z}")
            else:
                parts.append(f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ")


def zeta_power(field: CyclotomicField, m: tuple[int, ...], i: int, r_i: int) -> CycScalar:
    """Eigenvalue zeta_i^{r_i} of the i-th automorphism (``i`` is 1-based)."""
    if not 1 <= i <= len(m):
        raise IndexError(f"automorphism index {i} out of range 1..{len(m)}")
    return field.root_of_unity(m[i - 1], r_i)
