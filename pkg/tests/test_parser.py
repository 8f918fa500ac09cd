from __future__ import annotations

import random

import pytest

from healie.checks import Sampler
from healie.parser import ParseError, parse_element, parse_scalar
from healie.scalars import CyclotomicField
from healie.serialize import render


def test_scalar_expressions():
    f = CyclotomicField(3)
    assert parse_scalar(f, "zeta + zeta^2") == -1
    assert parse_scalar(f, "1/2 + 1/3") == f(5) / 6
    assert parse_scalar(f, "zeta^-1") == f.zeta ** 2
    assert parse_scalar(f, "−(2*3)") == -6
    assert parse_scalar(CyclotomicField(4), "zeta*zeta") == -1


def test_elements(sl2u):
    tau = sl2u.tau
    assert parse_element(tau, "h[1,0]") == tau.ham((1, 0))
    assert parse_element(tau, "h(1,0)") == tau.loop("h", (1, 0))
    assert parse_element(tau, "K[(1,-1),(1,1)]") == tau.central((1, -1), (1, 1))
    assert parse_element(tau, "2*K1 - d2/3") == tau.K(1, 2) + tau.d(2, tau.field(-1) / 3)
    assert parse_element(tau, "[e(1,0), f(-1,0)]") == tau.loop("h", (0, 0)) + tau.K(1)
    assert parse_element(tau, "[K1, e(1,0)]") == 0
    assert parse_element(tau, "0") == 0


def test_round_trip(sl2u, sl3t, klein):
    for cfg in (sl2u, sl3t, klein):
        tau = cfg.tau
        smp = Sampler(tau)
        rng = random.Random(11)
        for _ in range(60):
            x = smp.element(rng, 4)
            assert parse_element(tau, render(tau, x)) == x


@pytest.mark.parametrize(
    "text,pos",
    [
        ("h[1,0] +", 8),
        ("e(1,0,0)", 0),
        ("q(1,0)", 0),
        ("e(1,0) $ 2", 7),
        ("[e(1,0) f(0,1)]", 8),
        ("e(1,0) * f(0,1)", 7),
        ("K3", 0),
        ("e(1,0) / 0", 7),
    ],
)
def test_errors_report_position(sl2u, text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(sl2u.tau, text)
    assert info.value.pos == pos
    caret = info.value.caret().splitlines()
    assert caret[0] == text
    assert caret[1].index("^") == pos


def test_eigenspace_check(sl2t):
    with pytest.raises(ParseError):
        parse_element(sl2t.tau, "e(0,0)")
    with pytest.raises(ParseError):
        parse_element(sl2t.tau, "K[(1,0),(1,0)]")
    with pytest.raises(ParseError):
        parse_element(sl2t.tau, "1 + e(1,0)")


def test_scalar_only_rejected(sl2u):
    with pytest.raises(ParseError):
        parse_element(sl2u.tau, "3")
    with pytest.raises(ParseError):
        parse_scalar(CyclotomicField(1), "K1")
