"""Coproducts, Hopf axioms, cocommutators, Yang-Baxter checks."""

from __future__ import annotations

from fractions import Fraction

import pytest

from jordconf.poly import ParamPoly
from jordconf.uea import GENERATORS, FamilyConfig, algebra
from jordconf.hopf import (Hopf, WedgeElement, bialgebra_report,
                           check_coassociativity, check_homomorphism,
                           classical_r_matrix, cocommutator_from_r, coproduct,
                           coproduct_extend, counit_and_antipode,
                           first_order_antisymmetrization, hopf,
                           schouten_cybe, tensor_of, universal_R_conjugation,
                           wedge)

TIME = FamilyConfig("time")
SPACE = FamilyConfig("space")
CLASSICAL = FamilyConfig("classical")


def _tau():
    return ParamPoly.var("tau")


def _nu():
    return ParamPoly.var("nu")


# -- tabulated coproducts --------------------------------------------------------

def test_coproduct_H_primitive():
    alg = algebra(TIME)
    expected = tensor_of(alg.one(), alg.gen("H")) + tensor_of(alg.gen("H"), alg.one())
    assert coproduct("H", TIME) == expected


def test_coproduct_K_has_single_tail():
    alg = algebra(TIME)
    expected = (tensor_of(alg.one(), alg.gen("K"))
                + tensor_of(alg.gen("K"), alg.one())
                - tensor_of(alg.gen("D"), alg.mul(alg.exp(-1), alg.gen("P")))
                .scale(_tau() * _nu()))
    assert coproduct("K", TIME) == expected


def test_order_zero_coproducts_are_primitive():
    config = FamilyConfig("time", order=0)
    alg = algebra(config)
    for g in GENERATORS:
        expected = tensor_of(alg.one(), alg.gen(g)) + tensor_of(alg.gen(g), alg.one())
        assert coproduct(g, config) == expected


# -- multiplicative extension -------------------------------------------------------

def test_extend_on_square():
    alg = algebra(TIME)
    h2 = alg.mul(alg.gen("H"), alg.gen("H"))
    d = coproduct("H", TIME)
    assert coproduct_extend(h2) == d * d


def test_exp_series_is_group_like():
    alg = algebra(TIME)
    s = alg.exp(1)
    assert coproduct_extend(s) == tensor_of(s, s)


def test_coproduct_of_casimir_is_central_in_tensor_square():
    from jordconf.uea import casimir
    w2 = casimir(TIME, "W2")
    dw2 = coproduct_extend(w2)
    for g in GENERATORS:
        dg = coproduct(g, TIME)
        assert (dw2 * dg - dg * dw2).is_zero()


# -- homomorphism and coassociativity ----------------------------------------------

@pytest.mark.parametrize("config", [TIME, SPACE, CLASSICAL])
def test_coproduct_is_algebra_homomorphism(config):
    report = check_homomorphism(config)
    assert report.passed
    assert len(report.records) == 15


def test_H_C2_pair_specifically():
    h = hopf(TIME)
    bracket = algebra(TIME).table[("H", "C2")]
    dh, dc2 = h.coproduct("H"), h.coproduct("C2")
    assert (h.extend(bracket) - (dh * dc2 - dc2 * dh)).is_zero()


def test_mutated_coproduct_fails_homomorphism():
    # Drop the last tail term of coproduct(C2): the (H, C2) pair must fail.
    alg = algebra(TIME)
    mutated = (tensor_of(alg.one(), alg.gen("C2"))
               + tensor_of(alg.gen("C2"), alg.exp(-1))
               + tensor_of(alg.gen("D"), alg.mul(alg.exp(-1), alg.gen("K")))
               .scale(2 * _tau()))
    report = check_homomorphism(TIME, coproducts={"C2": mutated})
    assert not report.passed
    failing = {r.name for r in report.records if not r.passed}
    assert "hom[H,C2]" in failing


@pytest.mark.parametrize("config", [TIME, SPACE, CLASSICAL])
def test_coassociativity(config):
    report = check_coassociativity(config)
    assert report.passed
    assert len(report.records) == 6


# -- counit and antipode --------------------------------------------------------------

def test_counit_axiom_on_K():
    h = hopf(TIME)
    left = h._apply_counit(h.coproduct("K"), 0)
    assert left == algebra(TIME).gen("K")


@pytest.mark.parametrize("config", [TIME, SPACE, CLASSICAL])
def test_counit_and_antipode_axioms(config):
    eps, smap, report = counit_and_antipode(config)
    assert report.passed
    assert all(v == 0 for v in eps.values())


def test_antipode_closed_forms_time():
    # Solving the axiom by hand gives S(H) = -H, S(P) = -P e^{-tau H},
    # S(D) = -D e^{tau H}, S(C1) = -C1 e^{tau H}, S(K) = -K - tau*nu D P.
    alg = algebra(TIME)
    _, smap, _ = counit_and_antipode(TIME)
    assert smap["H"] == -alg.gen("H")
    assert smap["P"] == -alg.mul(alg.gen("P"), alg.exp(-1))
    assert smap["D"] == -alg.mul(alg.gen("D"), alg.exp(1))
    assert smap["C1"] == -alg.mul(alg.gen("C1"), alg.exp(1))
    assert smap["K"] == (-alg.gen("K")
                         - alg.mul(alg.gen("D"), alg.gen("P")).scale(_tau() * _nu()))


def test_antipode_back_substitution_to_low_order():
    # S(D) through order 2 satisfies the axiom when truncated there.
    config = FamilyConfig("time", order=2)
    _, smap, report = counit_and_antipode(config)
    alg = algebra(config)
    tau = _tau()
    expected = (-alg.gen("D") - alg.gen("H").scale(tau)
                - alg.mul(alg.gen("H"), alg.gen("D")).scale(tau)
                - alg.mul(alg.gen("H"), alg.gen("H")).scale(tau * tau * Fraction(1, 2))
                - alg.mul(alg.mul(alg.gen("H"), alg.gen("H")), alg.gen("D"))
                .scale(tau * tau * Fraction(1, 2)))
    assert smap["D"] == expected
    assert report.passed


# -- cocommutators ------------------------------------------------------------------

def test_cocommutator_table_time():
    tau, nu = _tau(), _nu()
    expected = {
        "H": WedgeElement({}, 2),
        "D": wedge("D", "H", -tau),
        "P": wedge("P", "H", tau),
        "K": wedge("D", "P", -tau * nu),
        "C1": wedge("C1", "H", -tau),
        "C2": wedge("C2", "H", -tau) + wedge("D", "K", 2 * tau),
    }
    for g in GENERATORS:
        assert cocommutator_from_r(g, TIME) == expected[g], g


@pytest.mark.parametrize("config", [TIME, SPACE])
def test_cocommutator_equals_first_order_of_coproduct(config):
    for g in GENERATORS:
        assert cocommutator_from_r(g, config) == first_order_antisymmetrization(g, config)


# -- classical Yang-Baxter -------------------------------------------------------------

@pytest.mark.parametrize("config", [TIME, SPACE])
def test_cybe_for_the_generating_element(config):
    assert schouten_cybe(classical_r_matrix(config), config).is_zero()


def oracle_schouten(r_wedge, config):
    """Index-wise structure-constant contraction, independent of the module."""
    from jordconf.hopf import _lie_brackets, _lie_bracket
    brackets = _lie_brackets(config)
    rt = r_wedge.to_tensor()
    total = {}

    def add(key, coeff):
        if coeff.is_zero():
            return
        acc = total.get(key)
        acc = coeff if acc is None else acc + coeff
        if acc.is_zero():
            total.pop(key, None)
        else:
            total[key] = acc

    items = list(rt.items())
    for (a1, b1), c1 in items:
        for (a2, b2), c2 in items:
            c = c1 * c2
            for z, cz in _lie_bracket(brackets, a1, a2).items():
                add((z, b1, b2), c * cz)
            for z, cz in _lie_bracket(brackets, b1, a2).items():
                add((a1, z, b2), c * cz)
            for z, cz in _lie_bracket(brackets, b1, b2).items():
                add((a1, a2, z), c * cz)
    return total


def test_probe_r_matrix_against_contraction_oracle():
    probe = wedge("K", "H")  # nu stays symbolic
    got = schouten_cybe(probe, TIME)
    expected = oracle_schouten(probe, TIME)
    assert got.to_tensor() == expected
    assert not got.is_zero()


def test_wedge_antisymmetry_enforced():
    with pytest.raises(ValueError):
        WedgeElement.from_tensor({("H", "H"): ParamPoly.one()}, 2)


# -- universal R -------------------------------------------------------------------------

@pytest.mark.parametrize("config", [TIME, SPACE])
def test_universal_R_conjugation(config):
    report = universal_R_conjugation(config)
    assert report.passed


def test_inner_conjugation_value_for_C1():
    # The single-exponential conjugation adds exactly 2 tau nu D (x) D.
    from jordconf.hopf import _exp_tensor
    alg = algebra(TIME)
    d = coproduct("C1", TIME)
    inner = _exp_tensor(TIME, "D", "H", -1) * d * _exp_tensor(TIME, "D", "H", 1)
    expected = (tensor_of(alg.one(), alg.gen("C1"))
                + tensor_of(alg.gen("C1"), alg.one())
                + tensor_of(alg.gen("D"), alg.gen("D")).scale(2 * _tau() * _nu()))
    assert (inner - expected).zero_to_order(TIME.order - 2)


@pytest.mark.parametrize("config", [TIME, SPACE])
def test_bialgebra_report(config):
    assert bialgebra_report(config).passed


@pytest.mark.parametrize("mv,nv", [(1, -1), (0, 1), (-1, 0)])
def test_checks_pass_with_specialized_parameters(mv, nv):
    config = FamilyConfig("time", mv, nv, order=4)
    assert check_homomorphism(config).passed
    assert check_coassociativity(config).passed
    assert counit_and_antipode(config)[2].passed
