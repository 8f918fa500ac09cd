from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from healie.checks import Sampler
from healie.lattice import add, bar, dot
from healie.toroidal import ToroidalAlgebra


def quotient_coefficient(u, r):
    """Solve u = c*bar(r) + a*r + y with (y, bar r) = 0 by sympy, return c."""
    n = len(r)
    c, a = sympy.symbols("c a")
    ys = sympy.symbols(f"y0:{n}")
    eqs = [sympy.Eq(u[i], c * bar(r)[i] + a * r[i] + ys[i]) for i in range(n)]
    eqs.append(sympy.Eq(sum(y * b for y, b in zip(ys, bar(r))), 0))
    sol = sympy.solve(eqs, [c, a, *ys], dict=True)[0]
    return Fraction(str(sol[c]))


def raw_ham_bracket(r, s):
    """[D(u,r), D(v,s)] with u = bar r, v = bar s, as (w, degree, cocycle coefficient)."""
    u, v = bar(r), bar(s)
    us, vr = dot(u, s), dot(v, r)
    w = tuple(us * vi - vr * ui for ui, vi in zip(u, v))
    return w, add(r, s), us * vr


def test_hamiltonian_bracket_example(sl2u):
    tau = sl2u.tau
    got = tau.bracket(tau.ham((1, 0)), tau.ham((0, 1)))
    want = tau.ham((1, 1), -1) + tau.central((1, 0), (1, 1)).scale(-1)
    assert got == want
    assert got.cen == {(1, 1): tau.field(Fraction(-1, 2))}


def test_loop_bracket_with_central_term(sl2u):
    tau = sl2u.tau
    x = tau.loop("e", (1, 0))
    y = tau.loop("f", (-1, 0))
    assert tau.bracket(x, y) == tau.loop("h", (0, 0)) + tau.K(1)


def test_center_commutes_with_loops_and_center(sl2u):
    tau = sl2u.tau
    rng = random.Random(0)
    smp = Sampler(tau)
    for _ in range(30):
        assert tau.bracket(tau.K(1), smp.element(rng)) == 0
        z = smp.central(rng)
        assert tau.bracket(z, smp.loop(rng)) == 0
        assert tau.bracket(z, smp.central(rng)) == 0


def test_ham_kills_symplectic_orthogonal(sl2u):
    tau = sl2u.tau
    assert tau.bracket(tau.ham((1, 1)), tau.loop("e", (2, 2))) == 0


@pytest.mark.parametrize("u,r", [((1, 0), (1, 1)), ((3, -2), (2, 1)), ((0, 5), (-1, 3)), ((1, 2, 3, 4), (1, 0, 2, 1))])
def test_canonical_coefficient_oracle(u, r):
    from healie.config import load_config

    cfg = load_config({"type": "sl2", "n": len(r), "m": [1] * len(r), "automorphisms": ["identity"] * len(r)})
    assert cfg.tau.canonical_coefficient(u, r) == quotient_coefficient(u, r)


def test_canonical_examples(sl2u):
    tau = sl2u.tau
    assert tau.canonical_coefficient((1, 0), (1, 1)) == Fraction(1, 2)
    for r in [(1, 1), (2, -3), (0, 4)]:
        assert tau.canonical_coefficient(r, r) == 0
        assert tau.canonical_coefficient(bar(r), r) == 1
    assert tau.central_canonicalize((3, 4), (0, 0)) == (3, 4)


def test_central_outside_gamma_bar(sl2t):
    with pytest.raises(ValueError):
        sl2t.tau.central_canonicalize((1, 0), (1, 0))


def test_central_dimensions(sl2u, sl3t):
    assert sl2u.tau.central_dimension((0, 0)) == 2
    assert sl2u.tau.central_dimension((1, -2)) == 1
    assert sl3t.tau.central_dimension((0, 0, 0, 0)) == 4
    assert sl3t.tau.central_dimension((3, 1, 0, -1)) == 1


degrees2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
degrees4 = st.tuples(*[st.integers(-3, 3)] * 4)


def _untwisted(n):
    from healie.config import load_config

    return load_config({"type": "sl2", "n": n, "m": [1] * n, "automorphisms": ["identity"] * n}).tau


_UNTWISTED = {2: _untwisted(2), 4: _untwisted(4)}


def _multiple_of(w, b):
    c = sympy.Symbol("c")
    sol = sympy.solve([sympy.Eq(wi, c * bi) for wi, bi in zip(w, b)], c, dict=True)
    assert sol, f"{w} is not a multiple of {b}"
    return Fraction(str(sol[0][c]))


@settings(max_examples=60, deadline=None)
@given(st.one_of(st.tuples(degrees2, degrees2), st.tuples(degrees4, degrees4)))
def test_ham_bracket_against_raw_formula(rs):
    r, s = rs
    tau = _UNTWISTED[len(r)]
    got = tau.bracket(tau.ham(r), tau.ham(s))
    if not any(r) or not any(s):
        assert got == 0
        return
    w, t, cc = raw_ham_bracket(r, s)
    if any(t):
        want = tau.ham(t, _multiple_of(w, bar(t)))
        c = cc * quotient_coefficient(r, t)
        if c:
            want = want + tau.central(bar(t), t).scale(tau.field(c))
    else:
        assert not any(w)
        want = tau.K(1, 0)
        for i, ri in enumerate(r):
            want = want + tau.K(i + 1, cc * ri)
    assert got == want


def test_form_examples(sl2u):
    tau = sl2u.tau
    assert tau.form(tau.ham((1, 0)), tau.central((0, 1), (-1, 0))) == -1
    assert tau.form(tau.d(1), tau.K(1)) == 1
    assert tau.form(tau.d(1), tau.K(2)) == 0
    assert tau.form(tau.loop("e", (1, 2)), tau.loop("e", (-1, -2))) == 0
    assert tau.form(tau.loop("e", (1, 2)), tau.loop("f", (-1, -2))) == 1


def test_jacobi_specific_triples(sl2u):
    tau = sl2u.tau
    a, b = tau.loop("e", (1, 0)), tau.ham((0, 1))
    assert tau.jacobi_residual(a, a, b) == 0
    assert tau.jacobi_residual(tau.loop("e", (1, 0)), tau.loop("f", (0, 1)), tau.ham((1, -1))) == 0
    assert tau.jacobi_residual(tau.ham((1, 0)), tau.ham((0, 1)), tau.ham((1, 1))) == 0
    assert tau.jacobi_residual(tau.ham((2, 1)), tau.ham((-1, 3)), tau.d(1)) == 0


def test_bracket_matches_generic_carrier(sl3t):
    tau = sl3t.tau
    tor = ToroidalAlgebra(tau.g, tau.n)
    rng = random.Random(3)
    smp = Sampler(tau)
    for _ in range(100):
        x, y = smp.element(rng), smp.element(rng)
        assert tor.to_tau(tor.bracket(tor.embed(x), tor.embed(y))) == tau.bracket(x, y)


def test_loop_outside_eigenspace(sl2t):
    with pytest.raises(ValueError):
        sl2t.tau.loop("e", (0, 0))
    with pytest.raises(ValueError):
        sl2t.tau.ham((1, 0))
