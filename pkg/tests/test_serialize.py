from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from healie.checks import Sampler
from healie.scalars import CyclotomicField
from healie.serialize import (
    SerializationError,
    element_from_json,
    element_to_json,
    root_from_json,
    root_to_json,
    scalar_from_json,
    scalar_to_json,
    weight_from_json,
    weight_to_json,
)
from healie.structure import Weight, root_of
from tests.conftest import config


@given(st.lists(st.fractions(max_denominator=20), min_size=2, max_size=2))
def test_scalar_round_trip(coeffs):
    f = CyclotomicField(3)
    c = f.from_powers(list(enumerate(coeffs)))
    assert scalar_from_json(f, json.loads(json.dumps(scalar_to_json(c)))) == c


def test_scalar_forms():
    f = CyclotomicField(1)
    assert scalar_from_json(f, 3) == 3
    assert scalar_from_json(f, "-2/5") == f(Fraction(-2, 5))
    assert scalar_from_json(f, {"rational": [1, 2]}) == f(Fraction(1, 2))
    for bad in (True, {"rational": [1, 0]}, "x", [1]):
        with pytest.raises(SerializationError):
            scalar_from_json(f, bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["sl2_untwisted", "sl2_twisted", "sl3_twisted", "sl2_klein"]))
def test_element_round_trip(seed, name):
    tau = config(name).tau
    x = Sampler(tau).element(random.Random(seed), 4)
    blob = json.dumps(element_to_json(tau, x), sort_keys=True)
    assert element_from_json(tau, json.loads(blob)) == x


def test_weight_and_root_round_trip(sl3t):
    tau = sl3t.tau
    smp = Sampler(tau)
    rng = random.Random(2)
    for _ in range(20):
        beta = root_of(tau, smp.loop(rng))
        assert root_from_json(tau, json.loads(json.dumps(root_to_json(beta)))) == beta
    lam = Weight.delta(tau, 2)
    assert weight_from_json(tau, weight_to_json(lam)) == lam
    with pytest.raises(SerializationError):
        weight_from_json(tau, {"finite": [0]})


def test_bad_central_degree(sl2t):
    with pytest.raises(SerializationError):
        element_from_json(sl2t.tau, {"central": [{"degree": [0, 0], "coeff": 1}]})
