"""Twist maps: undeformed brackets, twisted coproducts, invertibility."""

from __future__ import annotations

import pytest

from jordconf.poly import ParamPoly
from jordconf.uea import GENERATORS, FamilyConfig, algebra
from jordconf.hopf import coproduct_extend, tensor_of
from jordconf.twist import (twist_images, twist_map, twist_realization,
                            twist_report, twisted_coproducts)
from jordconf import ore

TIME = FamilyConfig("time")
SPACE = FamilyConfig("space")


def test_twisted_boost_translation_bracket():
    # [K', P'] = mu * H' with H' the forward-difference series.
    alg = algebra(TIME)
    fwd = twist_images("time", "forward", TIME)
    got = alg.mul(fwd["K"], fwd["P"]) - alg.mul(fwd["P"], fwd["K"])
    assert got == fwd["H"].scale(alg.mu)


def test_twisted_primary_coproduct():
    # coproduct(H') = 1 (x) H' + H' (x) 1 + tau H' (x) H'.
    alg = algebra(TIME)
    fwd = twist_images("time", "forward", TIME)
    hp = fwd["H"]
    got = coproduct_extend(hp)
    expected = (tensor_of(alg.one(), hp) + tensor_of(hp, alg.one())
                + tensor_of(hp, hp).scale(ParamPoly.var("tau")))
    assert got == expected


def test_forward_then_inverse_is_identity():
    alg = algebra(TIME)
    for g in GENERATORS:
        e = alg.gen(g)
        assert twist_map("time", "inverse", twist_map("time", "forward", e)) == e


def test_twist_of_composite_element():
    # The substitution is multiplicative: images of products match products
    # of images.
    alg = algebra(TIME)
    prod = alg.mul(alg.gen("C1"), alg.gen("H"))
    fwd = twist_images("time", "forward", TIME)
    assert twist_map("time", "forward", prod) == alg.mul(fwd["C1"], fwd["H"])


def test_twisted_realization_matches_shift_form():
    for name, config in (("time", TIME), ("space", SPACE)):
        twisted = twist_realization(name, config)
        target = ore.realization(f"{name}_twisted", config)
        for g in GENERATORS:
            assert twisted[g] == target[g], (name, g)


def test_twisted_coproducts_match_tabulated_forms():
    for config in (TIME, SPACE):
        name = config.family
        fwd = twist_images(name, "forward", config)
        claimed = twisted_coproducts(config)
        for g in GENERATORS:
            assert coproduct_extend(fwd[g]) == claimed[g], (name, g)


@pytest.mark.parametrize("config", [TIME, SPACE])
def test_full_twist_suite(config):
    assert twist_report(config).passed


def test_wrong_family_rejected():
    with pytest.raises(ValueError):
        twist_images("time", "forward", SPACE)
    with pytest.raises(ValueError):
        twist_images("time", "sideways", TIME)
