"""Seeded randomized verification suites.

Every sample draws from its own ``random.Random(f"{seed}:{suite}:{i}")`` so a
report depends only on (config, suite, samples, seed), never on ordering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .lattice import add, bar, dot, neg
from .representations import (
    EvaluationMap,
    JetGenerator,
    JetModule,
    JetModuleVector,
    SeparationError,
    SpModule,
    hprime_residual,
    is_symplectic,
    rank_one_sp,
)
from .serialize import render
from .structure import (
    TwistCompatibilityError,
    TwistMatrix,
    bnn,
    is_compatible,
    random_unimodular,
    triangular_class,
    triangular_classes,
    twist,
    twist_element,
)
from .tau import TauAlgebra, TauElement
from .toroidal import ToroidalAlgebra

SUITES = ("jacobi", "form", "ideal", "triangular", "twist", "modules")
DEFAULT_SAMPLES = {"jacobi": 1000, "form": 500, "ideal": 200, "triangular": 300, "twist": 300, "modules": 200}


@dataclass
class SuiteReport:
    suite: str
    config: str
    seed: int
    samples: int
    passed: int = 0
    checks: dict = field(default_factory=dict)
    first_failure: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.samples and self.first_failure is None

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.suite} [{self.config}]: {status} {self.passed}/{self.samples}"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "seed": self.seed,
            "status": "PASS" if self.ok else "FAIL",
            "passed": self.passed,
            "samples": self.samples,
            "checks": dict(sorted(self.checks.items())),
            "first_failure": self.first_failure,
            "notes": list(self.notes),
        }


class _Sample:
    """Collects named checks for one sample."""

    def __init__(self, report: SuiteReport, index: int):
        self.report = report
        self.index = index
        self.ok = True

    def check(self, name: str, cond: bool, detail=None) -> bool:
        self.report.checks[name] = self.report.checks.get(name, 0) + 1
        if not cond:
            self.ok = False
            if self.report.first_failure is None:
                info = {"sample": self.index, "check": name}
                if detail is not None:
                    info.update(detail() if callable(detail) else detail)
                self.report.first_failure = info
        return cond


# ---------------------------------------------------------------------------
# random elements
# ---------------------------------------------------------------------------


class Sampler:
    def __init__(self, tau: TauAlgebra, box: int = 2):
        self.tau = tau
        self.lat = tau.lattice
        self.n = tau.n
        self.box = box
        self.classes = [c for c in self.lat.classes() if tau.auts.dimension(c)]

    def degree(self, rng) -> tuple:
        return tuple(rng.randint(-self.box, self.box) for _ in range(self.n))

    def gamma_bar(self, rng, nonzero: bool = True) -> tuple:
        while True:
            r = tuple(mi * rng.randint(-self.box, self.box) for mi in self.lat.m)
            if any(r) or not nonzero:
                return r

    def scalar(self, rng, nonzero: bool = True):
        f = self.tau.field
        while True:
            c = f(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
            if f.degree > 1 and rng.random() < 0.3:
                c = c + f.from_powers([(rng.randrange(f.N), rng.randint(-2, 2))])
            if c or not nonzero:
                return c

    def loop_degree(self, rng) -> tuple:
        cls = rng.choice(self.classes)
        return tuple(c + mi * rng.randint(-self.box, self.box) for c, mi in zip(cls, self.lat.m))

    def loop(self, rng, r=None) -> TauElement:
        r = self.loop_degree(rng) if r is None else r
        _, v = rng.choice(self.tau.auts.root_spaces(r))
        return TauElement(self.n, loop={r: v})

    def central(self, rng) -> TauElement:
        if rng.random() < 1 / 3:
            return self.tau.K(rng.randint(1, self.n))
        r = self.gamma_bar(rng)
        return TauElement(self.n, cen={r: self.tau.field.one})

    def deriv(self, rng) -> TauElement:
        if rng.random() < 1 / 3:
            return self.tau.d(rng.randint(1, self.n))
        return self.tau.ham(self.gamma_bar(rng))

    def basis(self, rng) -> TauElement:
        u = rng.random()
        if u < 0.5:
            return self.loop(rng)
        if u < 0.7:
            return self.central(rng)
        return self.deriv(rng)

    def element(self, rng, terms: int = 3) -> TauElement:
        out = self.tau.zero()
        for _ in range(rng.randint(1, terms)):
            out = out + self.basis(rng).scale(self.scalar(rng))
        return out


def _show(tau, *xs):
    return {"inputs": [render(tau, x) for x in xs]}


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_jacobi(tau: TauAlgebra, samples: int, seed: int, name: str) -> SuiteReport:
    rep = SuiteReport("jacobi", name, seed, samples)
    smp = Sampler(tau)
    tor = ToroidalAlgebra(tau.g, tau.n)
    for i in range(samples):
        rng = random.Random(f"{seed}:jacobi:{i}")
        a, b, c = smp.basis(rng), smp.basis(rng), smp.basis(rng)
        s = _Sample(rep, i)
        res = tau.jacobi_residual(a, b, c)
        s.check("jacobi", not res, lambda: {**_show(tau, a, b, c), "residual": render(tau, res)})
        ab = tau.bracket(a, b)
        s.check("antisymmetry", not (ab + tau.bracket(b, a)), lambda: _show(tau, a, b))
        (da,), (db,) = a.degrees(), b.degrees()
        s.check("grading", ab.degrees() <= {add(da, db)}, lambda: _show(tau, a, b))
        direct = tor.bracket(tor.embed(a), tor.embed(b))
        s.check(
            "generic_formulas",
            tor.embed(ab) == direct,
            lambda: {**_show(tau, a, b), "tau": render(tau, ab), "generic": repr(direct)},
        )
        rep.passed += s.ok
    return rep


def suite_form(tau: TauAlgebra, samples: int, seed: int, name: str) -> SuiteReport:
    rep = SuiteReport("form", name, seed, samples)
    smp = Sampler(tau)
    f = tau.field
    for i in range(samples):
        rng = random.Random(f"{seed}:form:{i}")
        a, b, c = smp.basis(rng), smp.basis(rng), smp.basis(rng)
        s = _Sample(rep, i)
        s.check("symmetric", tau.form(a, b) == tau.form(b, a), lambda: _show(tau, a, b))
        lhs = tau.form(tau.bracket(a, b), c)
        rhs = tau.form(a, tau.bracket(b, c))
        s.check("invariant", lhs == rhs, lambda: {**_show(tau, a, b, c), "lhs": str(lhs), "rhs": str(rhs)})
        r = smp.gamma_bar(rng)
        partner = tau.central(bar(neg(r)), neg(r))
        val = tau.form(tau.ham(r), partner)
        s.check("h_K_pairing", val == dot(bar(r), bar(neg(r))) and val != 0, {"degree": list(r)})
        i1, j1 = rng.randint(1, tau.n), rng.randint(1, tau.n)
        s.check("d_K_pairing", tau.form(tau.d(i1), tau.K(j1)) == int(i1 == j1), {"i": i1, "j": j1})
        q = smp.loop_degree(rng)
        left = tau.loop_basis(q)
        right = tau.loop_basis(neg(q))
        gram = [[tau.form(x, y) for y in right] for x in left]
        full = len(left) == len(right) == linalg.rank(gram) if left else True
        s.check("loop_pairing_nondegenerate", full, {"degree": list(q)})
        rep.passed += s.ok
    return rep


def _quotient_oracle(tau: TauAlgebra, u, r):
    """c with u - c bar(r) in span(r) + bar(r)-perp, by solving a linear system."""
    f = tau.field
    one, zero = f.one, f.zero
    rb = [f(x) for x in bar(r)]
    rels = [[f(x) for x in r]] + linalg.nullspace([rb], one, zero)
    cols = rels + [rb]
    a = [[cols[j][i] for j in range(len(cols))] for i in range(tau.n)]
    sol = linalg.solve(a, [f(x) for x in u])
    return None if sol is None else sol[-1]


def suite_ideal(tau: TauAlgebra, samples: int, seed: int, name: str) -> SuiteReport:
    rep = SuiteReport("ideal", name, seed, samples)
    smp = Sampler(tau)
    n = tau.n
    for i in range(samples):
        rng = random.Random(f"{seed}:ideal:{i}")
        s = _Sample(rep, i)
        x = smp.element(rng)
        r = smp.gamma_bar(rng)
        rb = bar(r)
        v = [rng.randint(-3, 3) for _ in range(n)]
        u = [dot(rb, rb) * a - dot(v, rb) * b for a, b in zip(v, rb)]
        s.check("member_is_zero", not tau.central(u, r), {"u": u, "degree": list(r)})
        out = tau.act_on_raw_central(x, u, r)
        s.check("ideal", not out, lambda: {**_show(tau, x), "u": u, "degree": list(r), "result": render(tau, out)})
        s.check("dim_r", tau.central_dimension(r) == 1, {"degree": list(r)})
        basis = tau.central(rb, r)
        s.check("basis_K(rbar,r)", basis.cen == {r: tau.field.one} and not basis.c0, {"degree": list(r)})
        w = [rng.randint(-3, 3) for _ in range(n)]
        oracle = _quotient_oracle(tau, w, r)
        s.check(
            "canonical_coefficient",
            oracle is not None and oracle == tau.canonical_coefficient(w, r),
            {"u": w, "degree": list(r)},
        )
        s.check("dim_0", tau.central_dimension(tau.zero_degree) == n)
        rep.passed += s.ok
    return rep


def _pick_class(smp: Sampler, rng, wanted: set, tries: int = 2000):
    for _ in range(tries):
        x = smp.basis(rng)
        if triangular_class(smp.tau, x) in wanted:
            return x
    return None


def suite_triangular(tau: TauAlgebra, samples: int, seed: int, name: str) -> SuiteReport:
    rep = SuiteReport("triangular", name, seed, samples)
    smp = Sampler(tau)
    br = tau.bracket
    rules = [
        ({"++"}, ({"-"}, {"+"}), {"++"}),
        ({"--"}, ({"-"}, {"+"}), {"--"}),
        ({"+"}, ({"+"},), {"++", "+"}),
        ({"-"}, ({"-"},), {"--", "-"}),
        ({"0"}, ({"0"},), {"0"}),
    ]
    missing = set()
    for i in range(samples):
        rng = random.Random(f"{seed}:triangular:{i}")
        s = _Sample(rep, i)
        x = smp.basis(rng)
        try:
            triangular_class(tau, x)
            classified = True
        except ValueError:
            classified = False
        s.check("partition", classified, lambda: _show(tau, x))
        for left, right, target in rules:
            a = _pick_class(smp, rng, left)
            parts = [_pick_class(smp, rng, cls) for cls in right]
            if a is None or any(p is None for p in parts):
                missing.add("/".join(sorted(left)))
                continue
            b = sum(parts[1:], parts[0])
            got = triangular_classes(tau, br(a, b))
            label = f"[{'/'.join(sorted(left))}, {'+'.join('/'.join(c) for c in right)}]"
            s.check(label, got <= target, lambda: {**_show(tau, a, b), "classes": sorted(got)})
        rep.passed += s.ok
    rep.notes.extend(f"no sample found for class {c}" for c in sorted(missing))
    return rep


def _twist_matrices(tau: TauAlgebra, seed: int):
    n = tau.n
    out = [("I", TwistMatrix.identity(n)), ("B_nn(a=1)", bnn(n, 1)), ("B_nn(a=2)", bnn(n, 2))]
    out.append(("random", random_unimodular(tau, random.Random(f"{seed}:twist:matrix"))))
    return out


def suite_twist(tau: TauAlgebra, samples: int, seed: int, name: str) -> SuiteReport:
    rep = SuiteReport("twist", name, seed, samples)
    smp = Sampler(tau)
    tor = ToroidalAlgebra(tau.g, tau.n)
    mats = []
    for label, B in _twist_matrices(tau, seed):
        if is_compatible(tau, B):
            mats.append((label, B))
        else:
            rep.notes.append(f"{label} {list(map(list, B.B))} skipped: it moves eigenspace classes for m={list(tau.lattice.m)}")
    for i in range(samples):
        rng = random.Random(f"{seed}:twist:{i}")
        s = _Sample(rep, i)
        x, y = smp.element(rng, 2), smp.element(rng, 2)
        B2 = random_unimodular(tau, rng, steps=3)
        for label, B in mats:
            try:
                lhs = twist(tau, B, tau.bracket(x, y))
                rhs = tor.bracket(twist(tau, B, x), twist(tau, B, y))
                s.check(f"homomorphism {label}", lhs == rhs, lambda: _show(tau, x, y))
                comp = twist_element(tau, B, twist(tau, B2, x))
                s.check(f"composition {label}", comp == twist(tau, B @ B2, x), lambda: _show(tau, x))
                if label == "I":
                    s.check("identity", twist(tau, B, x) == tor.embed(x), lambda: _show(tau, x))
            except TwistCompatibilityError as exc:
                s.check(f"compatible {label}", False, {**_show(tau, x, y), "error": str(exc)})
        rep.passed += s.ok
    return rep


def _rand_field_vector(smp: Sampler, rng, zero_ok=True):
    return [smp.scalar(rng, nonzero=False) for _ in range(smp.n)]


def _eval_points(tau: TauAlgebra, rng, l: int):
    pts = []
    for _ in tau.lattice.m:
        vals = rng.sample([Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(5, 3)], l)
        pts.append(tuple(vals))
    return pts


def suite_modules(tau: TauAlgebra, samples: int, seed: int, name: str, *, convention: str = "rt_rbar") -> SuiteReport:
    rep = SuiteReport("modules", name, seed, samples)
    smp = Sampler(tau)
    f = tau.field
    n = tau.n
    lat = tau.lattice
    mods = [SpModule.trivial(n, f), SpModule.natural(n, f)]
    for i in range(samples):
        rng = random.Random(f"{seed}:modules:{i}")
        s = _Sample(rep, i)
        r, t = smp.gamma_bar(rng), smp.gamma_bar(rng)
        M = rank_one_sp(r, f, convention)
        s.check("rank_one_symplectic", is_symplectic(M, f), {"r": list(r)})
        zeta = _rand_field_vector(smp, rng) if rng.random() < 0.5 else [f.zero] * n
        for W in mods:
            N = rank_one_sp(t, f, convention)
            s.check(f"sp_homomorphism {W.name}", linalg.is_zero_matrix(W.homomorphism_residual(M, N)))
            for w in W.basis():
                res = hprime_residual(W, r, t, zeta, w, convention)
                s.check(
                    f"hprime_bracket {W.name}",
                    not any(res),
                    {"r": list(r), "s": list(t), "zeta": [str(z) for z in zeta], "residual": [str(c) for c in res]},
                )
        alpha, beta = _rand_field_vector(smp, rng), _rand_field_vector(smp, rng)
        gens = []
        for _ in range(2):
            kind = rng.choice(("ham", "deriv", "mono"))
            if kind == "ham":
                gens.append(JetGenerator.ham(smp.gamma_bar(rng)))
            elif kind == "deriv":
                gens.append(JetGenerator.deriv([rng.randint(-3, 3) for _ in range(n)]))
            else:
                gens.append(JetGenerator.mono(smp.gamma_bar(rng, nonzero=False)))
        k = smp.gamma_bar(rng, nonzero=False)
        for W in mods:
            L = JetModule(W, lat, alpha, beta, convention=convention)
            for w in W.basis():
                v = JetModuleVector({k: w})
                res = L.commutator_residual(gens[0], gens[1], v)
                s.check(f"jet_axiom {W.name}", not res, {"a": repr(gens[0]), "b": repr(gens[1]), "k": list(k)})
                img = L.act(gens[0], v)
                shift = gens[0].terms[0][1] if gens[0].terms and gens[0].terms[0][0] != "deriv" else (0,) * n
                s.check("jet_degree", set(img.parts) <= {add(k, shift)}, {"a": repr(gens[0])})
        for l in (1, 2):
            phi = EvaluationMap(tau.g, _eval_points(tau, rng, l), lat.m)
            x, y = smp.loop(rng), smp.loop(rng)
            if rng.random() < 0.5:
                x = x + smp.loop(rng).scale(smp.scalar(rng))
            res = phi.homomorphism_residual(x, y, tau.bracket)
            s.check(f"evaluation_homomorphism l={l}", not any(res), lambda: _show(tau, x, y))
        # factoring: slots evaluated at +-1 see only r mod 2
        signs = [rng.choice((1, -1, 2)) for _ in range(n)]
        phi1 = EvaluationMap(tau.g, [(f(a),) for a in signs], lat.m)
        q = smp.loop_degree(rng)
        q2 = tuple(qi + (2 * lat.m[j] if signs[j] != 2 else 0) for j, qi in enumerate(q))
        x = smp.loop(rng, q)
        x2 = TauElement(n, loop={q2: x.loop[q]})
        same = phi1.same_monomial(q, q2)
        s.check("evaluation_factors", same and phi1.apply(x) == phi1.apply(x2), {"r": list(q), "s": list(q2)})
        bad = [(f(2), f(2) * f.root_of_unity(mi, 1)) for mi in lat.m]
        try:
            EvaluationMap(tau.g, bad, lat.m)
            rejected = False
        except SeparationError:
            rejected = True
        s.check("separation_rejected", rejected)
        rep.passed += s.ok
    return rep


_RUNNERS = {
    "jacobi": suite_jacobi,
    "form": suite_form,
    "ideal": suite_ideal,
    "triangular": suite_triangular,
    "twist": suite_twist,
    "modules": suite_modules,
}


def run_suite(tau: TauAlgebra, suite: str, samples: int | None = None, seed: int = 0, name: str = "config", **kw):
    if suite == "all":
        return [run_suite(tau, s, samples, seed, name) for s in SUITES]
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    count = DEFAULT_SAMPLES[suite] if samples is None else samples
    return _RUNNERS[suite](tau, count, seed, name, **kw)
