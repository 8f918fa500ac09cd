from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from healie.lattice import GradingLattice, bar
from healie.representations import (
    EvaluationMap,
    JetGenerator,
    JetModule,
    JetModuleVector,
    SeparationError,
    SpModule,
    hprime_action,
    hprime_residual,
    is_symplectic,
    rank_one_sp,
    semidirect_bracket,
)
from healie.scalars import CyclotomicField

F = CyclotomicField(1)


def to_sympy(M):
    return sympy.Matrix([[sympy.Rational(str(x.to_fraction())) for x in row] for row in M])


def J(n):
    k = n // 2
    return sympy.Matrix(sympy.BlockMatrix([[sympy.zeros(k), sympy.eye(k)], [-sympy.eye(k), sympy.zeros(k)]]))


def test_rank_one_examples():
    assert rank_one_sp((0, 0), F) == [[0, 0], [0, 0]]
    assert rank_one_sp((1, 0), F) == [[0, -1], [0, 0]]
    assert rank_one_sp((0, 1), F) == [[0, 0], [1, 0]]
    with pytest.raises(ValueError):
        rank_one_sp((1, 0), F, "nope")


vec4 = st.lists(st.integers(-5, 5), min_size=4, max_size=4).map(tuple)
vec2 = st.lists(st.integers(-5, 5), min_size=2, max_size=2).map(tuple)


@settings(max_examples=50, deadline=None)
@given(st.one_of(vec2, vec4))
def test_rank_one_against_sympy(r):
    n = len(r)
    col = sympy.Matrix(r)
    oracle = col * sympy.Matrix(bar(r)).T
    M = rank_one_sp(r, F)
    assert to_sympy(M) == oracle
    assert oracle.T * J(n) + J(n) * oracle == sympy.zeros(n)
    assert is_symplectic(M, F)


@settings(max_examples=50, deadline=None)
@given(st.one_of(st.tuples(vec2, vec2), st.tuples(vec4, vec4)), st.integers(-3, 3))
def test_hprime_closed_bracket_sympy_oracle(rs, z):
    r, s = rs
    n = len(r)
    zeta = [z] * n

    def I(t):
        return sympy.Matrix(t) * sympy.Matrix(bar(t)).T + sympy.Matrix(bar(t)).dot(sympy.Matrix(zeta)) * sympy.eye(n)

    c = sympy.Matrix(bar(r)).dot(sympy.Matrix(s))
    lhs = I(r) * I(s) - I(s) * I(r)
    rt = tuple(a + b for a, b in zip(r, s))
    assert lhs == c * (I(rt) - I(r) - I(s))
    W = SpModule.natural(n, F)
    for w in W.basis():
        assert not any(hprime_residual(W, r, s, zeta, w))


def test_hprime_examples():
    W = SpModule.natural(2, F)
    _, e2 = W.basis()
    assert hprime_action(W, (1, 0), [0, 0], e2) == [-1, 0]
    T = SpModule.trivial(2, F)
    # trivial module: only the (bar r, zeta) scalar survives
    assert hprime_action(T, (1, 2), [3, 5], [F.one]) == [F(dot2(bar((1, 2)), (3, 5)))]


def dot2(a, b):
    return sum(x * y for x, y in zip(a, b))


def test_transposed_convention_breaks_closure():
    W = SpModule.natural(2, F)
    bad = any(
        any(hprime_residual(W, r, s, [0, 0], w, "rbar_rt"))
        for r in [(1, 0), (2, 1), (1, -1)]
        for s in [(0, 1), (1, 3)]
        for w in W.basis()
    )
    assert bad


def test_jet_examples():
    lat = GradingLattice(2, (1, 1))
    T = SpModule.trivial(2, F)
    L = JetModule(T, lat, [0, 0], [0, 0])
    v = JetModuleVector({(2, -1): [F.one]})
    assert L.act(JetGenerator.mono((0, 0)), v) == v
    # trivial W, beta = 0: D(bar r, r)(w t^k) = (bar r, k) w t^(k+r)
    r = (1, 1)
    got = L.act(JetGenerator.ham(r), v)
    assert got == JetModuleVector({(3, 0): [F(dot2(bar(r), (2, -1)))]})
    L2 = JetModule(T, lat, [Fraction(1, 2), 0], [0, 0])
    assert L2.act(JetGenerator.deriv((1, 0)), v) == JetModuleVector({(2, -1): [F(Fraction(5, 2))]})


def test_jet_degree_outside_lattice():
    lat = GradingLattice(2, (2, 1))
    L = JetModule(SpModule.trivial(2, F), lat, [0, 0], [0, 0])
    with pytest.raises(ValueError):
        L.act(JetGenerator.ham((1, 0)), JetModuleVector({(0, 0): [F.one]}))


@settings(max_examples=40, deadline=None)
@given(vec2, vec2, vec2, st.sampled_from(["ham", "deriv", "mono"]), st.sampled_from(["ham", "deriv", "mono"]))
def test_jet_axiom_natural(r, s, k, ka, kb):
    lat = GradingLattice(2, (1, 1))
    W = SpModule.natural(2, F)
    L = JetModule(W, lat, [Fraction(1, 3), -2], [1, Fraction(-1, 2)], zeta=[2, 1])
    gen = {"ham": JetGenerator.ham, "deriv": JetGenerator.deriv, "mono": JetGenerator.mono}
    a, b = gen[ka](r), gen[kb](s)
    for w in W.basis():
        assert not L.commutator_residual(a, b, JetModuleVector({k: w}))


def test_semidirect_bracket_antisymmetric():
    a, b = JetGenerator.ham((1, 2)), JetGenerator.mono((3, -1))
    ab, ba = semidirect_bracket(a, b), semidirect_bracket(b, a)
    assert [(k, x, -c) for k, x, c in ab.terms] == ba.terms


def test_evaluation_examples(sl2u):
    g = sl2u.g
    phi = EvaluationMap(g, [(1,), (1,)], (1, 1))
    x = sl2u.tau.loop("e", (3, -2))
    assert phi.apply(x) == [g.basis_vector("e")]
    phi2 = EvaluationMap(g, [(1, 2), (3, 5)], (1, 1))
    assert len(phi2.apply(x)) == 4
    assert phi2.apply(x)[3] == {g.index["e"]: F(Fraction(8, 25))}


def test_evaluation_separation(sl2t):
    g = sl2t.g
    f = g.field
    with pytest.raises(SeparationError):
        EvaluationMap(g, [(1, -1), (1, 2)], (2, 1))
    with pytest.raises(SeparationError):
        EvaluationMap(g, [(0,), (1,)], (2, 1))
    EvaluationMap(g, [(f(1), f(2)), (f(1), f(2))], (2, 1))
