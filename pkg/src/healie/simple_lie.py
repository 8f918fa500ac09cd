"""Finite-dimensional simple Lie algebras given by structure constants.

A ``SimpleLieAlgebra`` holds a basis, its bracket table, a normalized
invariant form and a user-supplied Cartan subalgebra h(0) of the fixed
points.  An ``AutomorphismSet`` adds n commuting finite-order
automorphisms and splits g into simultaneous eigenspaces g(r), each further
split into h(0)-weight spaces g(r, alpha).

Vectors of g are sparse dicts {basis index: scalar}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product

from . import linalg
from .lattice import GradingLattice
from .scalars import CyclotomicField, CycScalar, zeta_power


class ValidationError(ValueError):
    """A structure table, form or automorphism failed a load-time check."""


class NotAdaptedError(ValueError):
    """The basis of g is not ad-diagonal for the supplied Cartan."""


Vector = dict  # {basis index: CycScalar}


def vec_add(x: Vector, y: Vector, c=1) -> Vector:
    out = dict(x)
    for i, v in y.items():
        w = out.get(i, 0) + (v if c == 1 else c * v)
        if w:
            out[i] = w
        else:
            out.pop(i, None)
    return out


def vec_scale(c, x: Vector) -> Vector:
    if not c:
        return {}
    out = {}
    for i, v in x.items():
        w = c * v
        if w:
            out[i] = w
    return out


def _weight_key(w):
    return tuple(w)


class SimpleLieAlgebra:
    """Structure-constant model of g with an invariant form and a Cartan h(0).

    ``brackets`` maps ordered index pairs (i, j) to vectors; the antisymmetric
    partner of every entry is filled in, and an explicit entry for both orders
    is taken as given (so a corrupted table is reported, not repaired).
    """

    def __init__(
        self,
        labels,
        brackets,
        field: CyclotomicField,
        *,
        form=None,
        cartan=(),
        simple_roots=None,
        name: str = "custom",
        validate: bool = True,
    ):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.field = field
        self.name = name
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != self.dim:
            raise ValidationError("duplicate basis labels")
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), v in brackets.items():
            v = {k: field(c) for k, c in v.items() if c}
            table[(i, j)] = v
            if (j, i) not in brackets:
                table[(j, i)] = vec_scale(-1, v)
        self.struct = table
        self.cartan = [{k: field(c) for k, c in h.items() if c} for h in cartan]
        if form is None:
            form = self._normalized_killing()
        self.form_table = {}
        for (i, j), c in form.items():
            c = field(c)
            if c:
                self.form_table[(i, j)] = c
                self.form_table.setdefault((j, i), c)
        self._simple_roots_in = simple_roots
        if validate:
            self.validate()

    # -- basic operations ------------------------------------------------------
    def basis_vector(self, label) -> Vector:
        i = self.index[label] if isinstance(label, str) else int(label)
        return {i: self.field.one}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.struct.get((i, j))
                if v:
                    out = vec_add(out, v, a * b)
        return out

    def form(self, x: Vector, y: Vector):
        acc = self.field.zero
        for i, a in x.items():
            for j, b in y.items():
                c = self.form_table.get((i, j))
                if c:
                    acc = acc + a * b * c
        return acc

    def ad_matrix(self, x: Vector):
        zero = self.field.zero
        cols = [self.bracket(x, {j: self.field.one}) for j in range(self.dim)]
        return [[cols[j].get(i, zero) for j in range(self.dim)] for i in range(self.dim)]

    def _normalized_killing(self):
        ads = [self.ad_matrix({i: self.field.one}) for i in range(self.dim)]
        kill = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                prod_ = linalg.matmul(ads[i], ads[j])
                tr = sum((prod_[a][a] for a in range(self.dim)), self.field.zero)
                if tr:
                    kill[(i, j)] = tr
                    kill[(j, i)] = tr
        self.form_table = kill
        lengths = [self.root_length(a) for a in self.roots] if self.cartan else []
        if lengths:
            scale = Fraction(2) / max(l.to_fraction() for l in lengths)
            kill = {k: v * scale for k, v in kill.items()}
        self.__dict__.pop("_gram_inverse", None)
        return kill

    # -- validation --------------------------------------------------------------
    def validate(self) -> None:
        zero_vec: Vector = {}
        basis = [{i: self.field.one} for i in range(self.dim)]
        for i in range(self.dim):
            if self.struct.get((i, i)):
                raise ValidationError(f"[{self.labels[i]}, {self.labels[i]}] != 0")
            for j in range(self.dim):
                a = self.struct.get((i, j), zero_vec)
                b = self.struct.get((j, i), zero_vec)
                if vec_add(a, b):
                    raise ValidationError(f"bracket not antisymmetric on ({self.labels[i]}, {self.labels[j]})")
        for i, j, k in product(range(self.dim), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            res = vec_add(
                vec_add(self.bracket(self.bracket(x, y), z), self.bracket(self.bracket(y, z), x)),
                self.bracket(self.bracket(z, x), y),
            )
            if res:
                raise ValidationError(
                    f"Jacobi identity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                )
        for i, j in product(range(self.dim), repeat=2):
            if self.form_table.get((i, j)) != self.form_table.get((j, i)):
                raise ValidationError("invariant form is not symmetric")
        for i, j, k in product(range(self.dim), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            if self.form(self.bracket(x, y), z) != self.form(x, self.bracket(y, z)):
                raise ValidationError(
                    f"form not invariant on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                )
        for a in self.cartan:
            for b in self.cartan:
                if self.bracket(a, b):
                    raise ValidationError("Cartan elements do not commute")
        self.basis_weights  # raises NotAdaptedError
        if self.roots:
            top = max(self.root_length(a).to_fraction() for a in self.roots)
            if top != 2:
                raise ValidationError(f"form not normalized: longest root has (a|a) = {top}, expected 2")

    # -- weights and roots ---------------------------------------------------------
    @cached_property
    def basis_weights(self) -> tuple[tuple, ...]:
        """Weight (values on the Cartan basis) of every basis vector."""
        weights = []
        for j in range(self.dim):
            w = []
            for h in self.cartan:
                img = self.bracket(h, {j: self.field.one})
                if set(img) - {j}:
                    raise NotAdaptedError(
                        f"basis vector {self.labels[j]} is not an ad-eigenvector of the Cartan; "
                        "supply a basis adapted to h(0)"
                    )
                w.append(img.get(j, self.field.zero))
            weights.append(tuple(w))
        return tuple(weights)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def zero_weight(self) -> tuple:
        return (self.field.zero,) * self.rank

    @cached_property
    def roots(self) -> tuple[tuple, ...]:
        """Nonzero weights of g relative to h(0), in basis order."""
        seen = []
        for w in self.basis_weights:
            if any(w) and w not in seen:
                seen.append(w)
        return tuple(seen)

    @cached_property
    def _gram_inverse(self):
        gram = [[self.form(a, b) for b in self.cartan] for a in self.cartan]
        return linalg.inverse(gram, self.field.one, self.field.zero)

    def dual_vector(self, weight) -> Vector:
        """t_weight in h(0) with (t_weight | h) = weight(h) for all h."""
        coeffs = linalg.matvec(self._gram_inverse, list(weight))
        out: Vector = {}
        for c, h in zip(coeffs, self.cartan):
            out = vec_add(out, h, c) if c else out
        return out

    def cartan_coordinates(self, h: Vector):
        """Coordinates of h in the Cartan basis (None if h is not in its span)."""
        cols = [[c.get(i, self.field.zero) for c in self.cartan] for i in range(self.dim)]
        rhs = [h.get(i, self.field.zero) for i in range(self.dim)]
        if not self.cartan:
            return [] if not h else None
        return linalg.solve(cols, rhs)

    def evaluate_weight(self, weight, h: Vector):
        coords = self.cartan_coordinates(h)
        if coords is None:
            raise ValueError("element is not in the Cartan subalgebra h(0)")
        return sum((c * w for c, w in zip(coords, weight)), self.field.zero)

    def root_inner(self, a, b):
        """(a|b) for weights a, b via the form restricted to h(0)."""
        return self.evaluate_weight(b, self.dual_vector(a))

    def root_length(self, a):
        return self.root_inner(a, a)

    def coroot(self, a) -> Vector:
        """a^vee = 2 t_a / (a|a)."""
        length = self.root_length(a)
        if not length:
            raise ValueError("isotropic weight has no coroot")
        return vec_scale(2 / length, self.dual_vector(a))

    @cached_property
    def simple_roots(self) -> tuple[tuple, ...]:
        if self._simple_roots_in is not None:
            return tuple(tuple(self.field(c) for c in a) for a in self._simple_roots_in)
        # lexicographic positive system
        pos = [a for a in self.roots if _lex_positive(a)]
        sums = {tuple(x + y for x, y in zip(a, b)) for a in pos for b in pos}
        return tuple(a for a in pos if a not in sums)

    def simple_coordinates(self, weight):
        """Coordinates of ``weight`` in the simple-root basis, or None."""
        if not self.simple_roots:
            return [] if not any(weight) else None
        cols = [[a[i] for a in self.simple_roots] for i in range(self.rank)]
        return linalg.solve(cols, list(weight))

    def sign(self, weight) -> int:
        """+1 for Q+ minus 0, -1 for its negative, 0 for the zero weight."""
        if not any(weight):
            return 0
        coords = self.simple_coordinates(weight)
        if coords is None:
            raise ValueError(f"weight {weight} is not in the root lattice span")
        fr = [c.to_fraction() for c in coords]
        if all(c >= 0 for c in fr):
            return 1
        if all(c <= 0 for c in fr):
            return -1
        raise ValueError(f"weight {weight} is neither positive nor negative")

    @cached_property
    def roots_en(self) -> tuple[tuple, ...]:
        """Delta_en: the roots, plus twice the short roots in type B."""
        if not self._is_type_b():
            return self.roots
        short = min(self.root_length(a).to_fraction() for a in self.roots)
        extra = tuple(
            tuple(2 * c for c in a) for a in self.roots if self.root_length(a).to_fraction() == short
        )
        return self.roots + tuple(e for e in extra if e not in self.roots)

    def _is_type_b(self) -> bool:
        """Two root lengths in ratio 2 with exactly 2*rank short roots (B_l, including B_2)."""
        if not self.roots:
            return False
        lengths = [self.root_length(a).to_fraction() for a in self.roots]
        lo, hi = min(lengths), max(lengths)
        return hi == 2 * lo and lengths.count(lo) == 2 * len(self.simple_roots)

    def __repr__(self) -> str:
        return f"SimpleLieAlgebra({self.name}, dim={self.dim})"


def _lex_positive(a) -> bool:
    for c in a:
        if c:
            f = c.to_fraction()
            return f > 0
    return False


# ---------------------------------------------------------------------------
# built-in tables
# ---------------------------------------------------------------------------


def _matrix_unit(n, i, j):
    return [[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)]


def from_matrices(labels, matrices, field, *, cartan_labels=(), simple_root_labels=None, name="custom"):
    """Structure constants and trace form from a faithful matrix realization.

    The trace form is normalized so that long roots have (a|a) = 2; for sl_n
    this is exactly tr(xy).
    """
    dim = len(labels)
    flat = [[field(x) for row in m for x in row] for m in matrices]
    cols = [[flat[k][p] for k in range(dim)] for p in range(len(flat[0]))]

    def coords(mat):
        rhs = [field(x) for row in mat for x in row]
        sol = linalg.solve(cols, rhs)
        if sol is None:
            raise ValidationError("matrix bracket left the span of the basis")
        return {k: c for k, c in enumerate(sol) if c}

    def mul(a, b):
        n = len(a)
        return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]

    brackets = {}
    form = {}
    for i in range(dim):
        for j in range(dim):
            ab = mul(matrices[i], matrices[j])
            ba = mul(matrices[j], matrices[i])
            if i < j:
                comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
                c = coords(comm)
                if c:
                    brackets[(i, j)] = c
            tr = sum(ab[t][t] for t in range(len(ab)))
            if tr:
                form[(i, j)] = field(tr)
    idx = {lab: i for i, lab in enumerate(labels)}
    cartan = [{idx[lab]: field.one} for lab in cartan_labels]
    g = SimpleLieAlgebra(labels, brackets, field, form=form, cartan=cartan, name=name, validate=False)
    if simple_root_labels is not None:
        g._simple_roots_in = [g.basis_weights[idx[lab]] for lab in simple_root_labels]
    g.validate()
    return g


def sl2(field: CyclotomicField) -> SimpleLieAlgebra:
    e = _matrix_unit(2, 0, 1)
    f = _matrix_unit(2, 1, 0)
    h = [[1, 0], [0, -1]]
    return from_matrices(
        ("e", "f", "h"), [e, f, h], field, cartan_labels=("h",), simple_root_labels=("e",), name="sl2"
    )


def sl3(field: CyclotomicField) -> SimpleLieAlgebra:
    E = lambda i, j: _matrix_unit(3, i, j)  # noqa: E731
    mats = [
        E(0, 1), E(1, 2), E(0, 2),
        E(1, 0), E(2, 1), E(2, 0),
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
    ]  # fmt: skip
    return from_matrices(
        ("e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2"),
        mats,
        field,
        cartan_labels=("h1", "h2"),
        simple_root_labels=("e1", "e2"),
        name="sl3",
    )


BUILTIN_TYPES = {"sl2": sl2, "sl3": sl3}


# ---------------------------------------------------------------------------
# automorphisms and the eigenspace decomposition
# ---------------------------------------------------------------------------


class AutomorphismSet:
    """n commuting automorphisms of g with declared orders m_1..m_n.

    ``matrices[i][a][b]`` is the coefficient of basis vector a in sigma_i(b_b).
    """

    def __init__(self, g: SimpleLieAlgebra, matrices, lattice: GradingLattice, *, validate: bool = True):
        self.g = g
        self.lattice = lattice
        self.field = g.field
        if len(matrices) != lattice.n:
            raise ValidationError(f"expected {lattice.n} automorphisms, got {len(matrices)}")
        self.matrices = [[[g.field(x) for x in row] for row in mat] for mat in matrices]
        for mat in self.matrices:
            if len(mat) != g.dim or any(len(row) != g.dim for row in mat):
                raise ValidationError(f"automorphism matrices must be {g.dim}x{g.dim}")
        if validate:
            self.validate()

    @classmethod
    def identity(cls, g, lattice):
        eye = linalg.identity(g.dim, g.field.one, g.field.zero)
        return cls(g, [eye] * lattice.n, lattice)

    @property
    def orders(self):
        return self.lattice.m

    def apply(self, i: int, x: Vector) -> Vector:
        """sigma_i(x), ``i`` 0-based."""
        mat = self.matrices[i]
        out: Vector = {}
        for b, c in x.items():
            for a in range(self.g.dim):
                v = mat[a][b]
                if v:
                    w = out.get(a, 0) + c * v
                    if w:
                        out[a] = w
                    else:
                        out.pop(a, None)
        return out

    def validate(self) -> None:
        g = self.g
        one, zero = self.field.one, self.field.zero
        eye = linalg.identity(g.dim, one, zero)
        basis = [{i: one} for i in range(g.dim)]
        for i, (mat, m_i) in enumerate(zip(self.matrices, self.orders)):
            for a, b in product(range(g.dim), repeat=2):
                lhs = self.apply(i, g.bracket(basis[a], basis[b]))
                rhs = g.bracket(self.apply(i, basis[a]), self.apply(i, basis[b]))
                if lhs != rhs:
                    raise ValidationError(f"sigma_{i + 1} is not a Lie algebra automorphism")
                if g.form(self.apply(i, basis[a]), self.apply(i, basis[b])) != g.form(basis[a], basis[b]):
                    raise ValidationError(f"sigma_{i + 1} does not preserve the invariant form")
            power = eye
            for j in range(1, m_i + 1):
                power = linalg.matmul(mat, power)
                if j < m_i and power == eye:
                    raise ValidationError(f"sigma_{i + 1} has order {j}, declared {m_i}")
            if power != eye:
                raise ValidationError(f"sigma_{i + 1}^{m_i} is not the identity")
            for h in g.cartan:
                if self.apply(i, h) != h:
                    raise ValidationError(f"Cartan element is not fixed by sigma_{i + 1}")
        for i in range(len(self.matrices)):
            for j in range(i + 1, len(self.matrices)):
                if linalg.matmul(self.matrices[i], self.matrices[j]) != linalg.matmul(
                    self.matrices[j], self.matrices[i]
                ):
                    raise ValidationError(f"sigma_{i + 1} and sigma_{j + 1} do not commute")
        self.weight_blocks  # every automorphism must preserve each weight space

    def eigenvalue(self, i: int, r_i: int) -> CycScalar:
        return zeta_power(self.field, self.orders, i + 1, r_i)

    @cached_property
    def weight_blocks(self) -> dict[tuple, list[int]]:
        blocks: dict[tuple, list[int]] = {}
        for j, w in enumerate(self.g.basis_weights):
            blocks.setdefault(_weight_key(w), []).append(j)
        for idx in blocks.values():
            inside = set(idx)
            for mat in self.matrices:
                for b in idx:
                    if any(mat[a][b] for a in range(self.g.dim) if a not in inside):
                        raise ValidationError("automorphism does not preserve the h(0) weight spaces")
        return blocks

    @cached_property
    def _spaces(self) -> dict[tuple, list[tuple[tuple, Vector]]]:
        """class -> [(weight, basis vector)] for every nonzero g(r, alpha)."""
        one, zero = self.field.one, self.field.zero
        out: dict[tuple, list] = {}
        for cls in self.lattice.classes():
            entries = []
            for w, idx in self.weight_blocks.items():
                rows = []
                for i, mat in enumerate(self.matrices):
                    lam = self.eigenvalue(i, cls[i])
                    for a in idx:
                        rows.append([mat[a][b] - (lam if a == b else zero) for b in idx])
                null = linalg.nullspace(rows, one, zero)
                if not null:
                    continue
                for v in linalg.row_space(null):
                    entries.append((w, {idx[t]: c for t, c in enumerate(v) if c}))
            if entries:
                out[cls] = entries
        total = sum(len(v) for v in out.values())
        if total != self.g.dim:
            raise ValidationError(f"eigenspaces have total dimension {total}, expected {self.g.dim}")
        return out

    def eigenspace(self, rbar) -> list[Vector]:
        """Basis of g(rbar); rbar may be any representative."""
        return [v for _, v in self._spaces.get(self.lattice.residue(rbar), [])]

    def root_spaces(self, rbar) -> list[tuple[tuple, Vector]]:
        """[(weight, basis vector)] of g(rbar), each vector a weight vector."""
        return list(self._spaces.get(self.lattice.residue(rbar), []))

    def dimension(self, rbar) -> int:
        return len(self._spaces.get(self.lattice.residue(rbar), []))

    def contains(self, rbar, x: Vector) -> bool:
        """True iff x lies in g(rbar)."""
        for i in range(len(self.matrices)):
            lam = self.eigenvalue(i, rbar[i])
            if self.apply(i, x) != vec_scale(lam, x):
                return False
        return True

    def weight_decompose(self, x: Vector, rbar) -> dict[tuple, Vector]:
        """Split x in g(rbar) into h(0)-weight components."""
        if not self.contains(rbar, x):
            raise ValueError(f"element does not lie in g({tuple(rbar)})")
        parts: dict[tuple, Vector] = {}
        weights = self.g.basis_weights
        for j, c in x.items():
            key = _weight_key(weights[j])
            parts[key] = vec_add(parts.get(key, {}), {j: c})
        return {w: v for w, v in parts.items() if v}

    def group_order(self, bound: int = 10_000) -> int:
        """Order of the group generated by the automorphisms, by closure."""
        total = 1
        for m_i in self.orders:
            total *= m_i
        if total > bound:
            raise ValueError(f"product of orders {total} exceeds enumeration bound {bound}")

        def key(mat):
            return tuple(tuple(row) for row in mat)

        eye = linalg.identity(self.g.dim, self.field.one, self.field.zero)
        seen = {key(eye)}
        frontier = [eye]
        while frontier:
            nxt = []
            for mat in frontier:
                for gen in self.matrices:
                    prod_ = linalg.matmul(gen, mat)
                    k = key(prod_)
                    if k not in seen:
                        if len(seen) >= bound:
                            raise ValueError(f"group exceeds enumeration bound {bound}")
                        seen.add(k)
                        nxt.append(prod_)
            frontier = nxt
        return len(seen)


def lie_torus_condition3(auts: AutomorphismSet, bound: int = 10_000) -> bool:
    """|<sigma_1, ..., sigma_n>| == m_1 * ... * m_n."""
    total = 1
    for m_i in auts.orders:
        total *= m_i
    return auts.group_order(bound) == total
