"""Contraction classification, Hopf subalgebras, duality, null-plane basis.

The two contraction parameters range over sign classes {+, 0, -}, giving a
3x3 grid per family.  Each cell records the real form of the algebra, the
quantum labels of its distinguished Hopf subalgebras, and the invariant
lattice equation, stored as a structured operator tag (not a string) so the
operator module can instantiate it and the CLI can render it.

The duality map exchanges H with P and C1 with -C2, swaps the two lattice
constants and the two contraction parameters, and identifies the two families
cell by cell; it is an involution, and the grid cells on the main diagonal
classes (+,+), (-,-), (0,0) are self-dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .report import VerificationReport
from .uea import (DUAL_GEN, DUAL_SIGN, GEN_INDEX, GENERATORS, NGEN,
                  FamilyConfig, PbwElement, algebra, commutator_table,
                  dual_coeff, dual_image, generator_pairs)
from .hopf import TensorElement, coproduct, hopf, tensor_of
from . import ore

SIGNS = ("+", "0", "-")


# ---------------------------------------------------------------------------
# Equation tags.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquationTag:
    """Invariant lattice equation as a signed sum of squared symbols.

    ``terms`` is a tuple of (sign, op) pairs with op in {dx, dt, Dx, Dt}
    (derivatives and forward differences), each squared; an empty tuple marks
    the degenerate cell.
    """

    terms: tuple

    def is_degenerate(self):
        return not self.terms

    def render(self):
        if not self.terms:
            return "degenerate"
        body = ""
        for i, (sign, op) in enumerate(self.terms):
            if i == 0:
                body = f"{'-' if sign < 0 else ''}{op}^2"
            else:
                body += f" {'-' if sign < 0 else '+'} {op}^2"
        return f"({body})Phi = 0"

    def to_operator(self):
        """Instantiate as an exact difference-differential operator."""
        if not self.terms:
            raise ValueError("the degenerate cell has no equation operator")
        out = ore.OreElement()
        for sign, op in self.terms:
            if op in ("dx", "dt"):
                factor = ore.atom(op)
            elif op == "Dx":
                factor = ore.forward_difference("x")
            else:
                factor = ore.forward_difference("t")
            out = out + (factor * factor).scale(sign)
        return out


def _sign_value(s):
    return {"+": Fraction(1), "0": Fraction(0), "-": Fraction(-1)}[s]


def _equation_tag(family, mu_sign, nu_sign):
    main, secondary = ("dx", "Dt") if family == "time" else ("Dx", "dt")
    m, n = _sign_value(mu_sign), _sign_value(nu_sign)
    if n != 0:
        # normalize the leading coefficient to +1
        lead = 1 if n > 0 else -1
        second = -int(m * n)
        terms = [(1, main)]
        if second:
            terms.append((second, secondary))
        return EquationTag(tuple(terms))
    if m != 0:
        return EquationTag(((1, secondary),))
    return EquationTag(())


# ---------------------------------------------------------------------------
# Classification of the 9-cell grid.
# ---------------------------------------------------------------------------

ALGEBRA_NAME = {
    ("+", "+"): "so(2,2)", ("-", "-"): "so(2,2)",
    ("+", "-"): "so(3,1)", ("-", "+"): "so(3,1)",
    ("+", "0"): "iso(2,1)", ("-", "0"): "iso(2,1)",
    ("0", "+"): "iso(2,1)", ("0", "-"): "iso(2,1)",
    ("0", "0"): "i'iso(1,1)",
}

WEYL_LABEL = {
    ("+", "+"): "WM", ("-", "-"): "WM",
    ("+", "-"): "WE", ("-", "+"): "WE",
    ("0", "+"): "WG", ("0", "-"): "WG",
    ("+", "0"): "WC", ("-", "0"): "WC",
    ("0", "0"): "WA",
}


@dataclass(frozen=True)
class ClassificationRow:
    mu_sign: str
    nu_sign: str
    algebra_name: str
    quantum_label: str
    triple_subalgebra: str
    weyl_label: str
    equation: EquationTag
    k_central: bool

    def cell_lines(self):
        return [
            f"({self.mu_sign},{self.nu_sign}) {self.quantum_label}",
            f"{self.triple_subalgebra}  {self.weyl_label}",
            self.equation.render() + ("  [K central]" if self.k_central else ""),
        ]

    def to_dict(self):
        return {
            "mu_sign": self.mu_sign,
            "nu_sign": self.nu_sign,
            "algebra_name": self.algebra_name,
            "quantum_label": self.quantum_label,
            "triple_subalgebra": self.triple_subalgebra,
            "weyl_label": self.weyl_label,
            "equation": self.equation.render(),
            "k_central": self.k_central,
        }


def classify(mu_sign, nu_sign, family):
    """The grid cell of one sign pair for the chosen deformation family."""
    if mu_sign not in SIGNS or nu_sign not in SIGNS:
        raise ValueError(f"signs must be in {SIGNS}")
    if family not in ("time", "space"):
        raise ValueError("classification concerns the deformed families")
    prefix = "U_tau" if family == "time" else "U_sigma"
    name = ALGEBRA_NAME[(mu_sign, nu_sign)]
    if family == "time":
        triple = f"{prefix}(sl(2,R))" if nu_sign != "0" else f"{prefix}(iso(1,1))"
    else:
        triple = f"{prefix}(sl(2,R))" if mu_sign != "0" else f"{prefix}(iso(1,1))"
    weyl = f"{prefix}({WEYL_LABEL[(mu_sign, nu_sign)]})"
    return ClassificationRow(
        mu_sign, nu_sign, name, f"{prefix}({name})", triple, weyl,
        _equation_tag(family, mu_sign, nu_sign),
        k_central=(mu_sign == "0" and nu_sign == "0"))


def classification_rows(family):
    """All nine cells, row-major with nu = +, 0, - and mu = +, 0, -."""
    return [classify(m, n, family) for n in SIGNS for m in SIGNS]


def render_table_text(family):
    rows = classification_rows(family)
    lines = []
    title = 1 if family == "time" else 2
    lines.append(f"Table {title}: {'time' if family == 'time' else 'space'}-type "
                 f"quantum algebras by contraction signs (mu, nu)")
    for band in range(3):
        cells = [rows[band * 3 + col].cell_lines() for col in range(3)]
        width = max(len(line) for cell in cells for line in cell) + 2
        for line_idx in range(3):
            lines.append("".join(cells[col][line_idx].ljust(width) for col in range(3)).rstrip())
        lines.append("")
    return "\n".join(lines).rstrip()


def render_table_json(family):
    return {"table": 1 if family == "time" else 2,
            "family": family,
            "cells": [row.to_dict() for row in classification_rows(family)]}


# ---------------------------------------------------------------------------
# Hopf subalgebra closure.
# ---------------------------------------------------------------------------

def _element_within(e, subset):
    allowed = {GEN_INDEX[g] for g in subset}
    return all(all(m[i] == 0 for i in range(NGEN) if i not in allowed)
               for m in e.terms)


def _tensor_within(te, subset):
    allowed = {GEN_INDEX[g] for g in subset}
    return all(all(m[i] == 0 for i in range(NGEN) if i not in allowed)
               for key in te.terms for m in key)


def _violating_terms(te, subset):
    allowed = {GEN_INDEX[g] for g in subset}
    bad = {k: c for k, c in te.terms.items()
           if any(m[i] for m in k for i in range(NGEN) if i not in allowed)}
    return TensorElement(bad, te.config, te.legs)


def verify_hopf_subalgebras(config):
    """Closure of the distinguished generator subsets under bracket and coproduct.

    The triple and the four-generator similitude set close unconditionally;
    the translation-boost triple {K, H, P} closes only when the relevant
    contraction parameter vanishes, and the violating coproduct term is
    exhibited otherwise.
    """
    if config.family == "time":
        triple = ("H", "D", "C1")
        conditional_param = "nu"
    elif config.family == "space":
        triple = ("P", "D", "C2")
        conditional_param = "mu"
    else:
        raise ValueError("Hopf subalgebras concern the deformed families")
    weyl = ("H", "P", "K", "D")
    iso = ("H", "P", "K")
    report = VerificationReport("hopf-subalgebras", config.echo())
    table = commutator_table(config)
    h = hopf(config)

    for name, subset in (("triple", triple), ("weyl", weyl)):
        closed_brackets = all(
            _element_within(table[(x, y)], subset)
            for x, y in generator_pairs() if x in subset and y in subset)
        closed_coproducts = all(_tensor_within(h.coproduct(g), subset) for g in subset)
        label = "{" + ",".join(subset) + "}"
        report.note(f"{name}-brackets", f"brackets of {label} close", closed_brackets)
        report.note(f"{name}-coproducts", f"coproducts of {label} close", closed_coproducts)

    closed_brackets = all(
        _element_within(table[(x, y)], iso)
        for x, y in generator_pairs() if x in iso and y in iso)
    report.note("iso-brackets", "brackets of {H,P,K} close", closed_brackets)
    violating = _violating_terms(h.coproduct("K"), iso)
    value = getattr(config, conditional_param)
    if value == 0:
        report.note("iso-coproducts",
                    f"{{H,P,K}} coproducts close at {conditional_param} = 0",
                    all(_tensor_within(h.coproduct(g), iso) for g in iso))
    else:
        report.note("iso-violating-term",
                    f"coproduct(K) leaves {{H,P,K}} unless {conditional_param} = 0",
                    not violating.is_zero(),
                    "expected a violating term")
        if value == "sym":
            # Only meaningful symbolically: the exhibited term must be a
            # multiple of the conditional parameter.
            vanishes = _param_zeroed(violating, conditional_param)
            report.note("iso-violating-vanishes",
                        f"the violating term ({violating}) vanishes at "
                        f"{conditional_param} = 0",
                        vanishes.is_zero(), str(vanishes))
    return report


def _param_zeroed(te, param):
    out = {}
    for k, c in te.terms.items():
        s = c.substitute({param: 0})
        if not s.is_zero():
            out[k] = s
    return TensorElement(out, te.config, te.legs)


# ---------------------------------------------------------------------------
# Duality.
# ---------------------------------------------------------------------------

def dual_ore(op):
    """Coordinate exchange x<->t on operators, with both parameter swaps."""
    out = {}
    for (i, j, a, b, m, n), coeff in op.terms.items():
        out[(j, i, b, a, n, m)] = dual_coeff(coeff)
    return ore.OreElement(out)


def apply_duality(target):
    """Duality image of an element, an operator, or a whole table."""
    if isinstance(target, PbwElement):
        return dual_image(target)
    if isinstance(target, ore.OreElement):
        return dual_ore(target)
    if isinstance(target, TensorElement):
        return dual_tensor(target)
    if isinstance(target, dict):
        sample = next(iter(target))
        if isinstance(sample, tuple):
            return _dual_commutator_table(target)
        return {g: dual_tensor(te) for g, te in
                ((DUAL_GEN[g], te) for g, te in target.items())}
    raise TypeError(f"no duality action on {type(target).__name__}")


def _dual_commutator_table(table):
    out = {}
    for (x, y), e in table.items():
        img = dual_image(e)
        xs, ys = DUAL_GEN[x], DUAL_GEN[y]
        sign = DUAL_SIGN[x] * DUAL_SIGN[y]
        if GEN_INDEX[xs] > GEN_INDEX[ys]:
            xs, ys = ys, xs
            sign = -sign
        out[(xs, ys)] = img.scale(Fraction(sign))
    return out


def dual_tensor(te):
    """Duality image of a tensor element, legwise, renormalized in the dual."""
    target = te.config.dual()
    alg = algebra(target)
    out = TensorElement({}, target, te.legs)
    for key, coeff in te.terms.items():
        sign = 1
        legs = []
        for mono in key:
            word = []
            for gi, power in enumerate(mono):
                if not power:
                    continue
                g = GENERATORS[gi]
                word.extend([DUAL_GEN[g]] * power)
                if DUAL_SIGN[g] < 0 and power % 2:
                    sign = -sign
            legs.append(alg.from_word(word) if word else alg.one())
        c = dual_coeff(coeff)
        if sign < 0:
            c = -c
        out = out + tensor_of(*legs).scale(c)
    return out


def _dual_coproduct_table(cop):
    out = {}
    for g, te in cop.items():
        img = dual_tensor(te)
        target = DUAL_GEN[g]
        if DUAL_SIGN[g] < 0:
            img = img.scale(Fraction(-1))
        out[target] = img
    return out


def duality_report(order=None, mu="sym", nu="sym"):
    """The generator-exchange map identifies the two families, table by table."""
    from .uea import DEFAULT_ORDER
    n = DEFAULT_ORDER if order is None else order
    time_cfg = FamilyConfig("time", mu, nu, n)
    space_cfg = time_cfg.dual()
    report = VerificationReport("duality", {"order": n, "mu": str(mu), "nu": str(nu)})

    ttab = commutator_table(time_cfg)
    stab = commutator_table(space_cfg)
    dual_tab = _dual_commutator_table(ttab)
    for pair in generator_pairs():
        report.check(f"table[{pair[0]},{pair[1]}]",
                     "duality image of the time bracket table equals the space table",
                     dual_tab[pair] - stab[pair])

    tcop = {g: coproduct(g, time_cfg) for g in GENERATORS}
    scop = {g: coproduct(g, space_cfg) for g in GENERATORS}
    dual_cop = _dual_coproduct_table(tcop)
    for g in GENERATORS:
        report.check(f"coproduct[{g}]",
                     "duality image of the time coproducts equals the space coproducts",
                     dual_cop[g] - scop[g])

    for g in GENERATORS:
        e = algebra(time_cfg).gen(g)
        report.check(f"involution[{g}]", "applying the duality twice is the identity",
                     dual_image(dual_image(e)) - e)

    # Classical brackets: the map relates the contracted families with
    # exchanged parameters.
    ccfg = FamilyConfig("classical", mu, nu, n)
    ctab = commutator_table(ccfg)
    cdual = _dual_commutator_table(ctab)
    ctab_swapped = commutator_table(ccfg.dual())
    for pair in generator_pairs():
        report.check(f"classical[{pair[0]},{pair[1]}]",
                     "classical brackets map onto the parameter-swapped ones",
                     cdual[pair] - ctab_swapped[pair])

    # Self-dual classification cells; the mixed cells exchange their Weyl labels.
    for signs in (("+", "+"), ("-", "-"), ("0", "0")):
        a = classify(signs[0], signs[1], "time")
        b = classify(signs[1], signs[0], "space")
        report.check_equal(f"self-dual[{signs[0]},{signs[1]}]",
                           "diagonal sign classes are self-dual",
                           a.algebra_name, b.algebra_name)
    swaps = []
    for m, n_ in (("+", "0"), ("-", "0"), ("0", "+"), ("0", "-")):
        a = classify(m, n_, "time")
        b = classify(n_, m, "space")
        swaps.append((a.weyl_label.split("(")[1], b.weyl_label.split("(")[1]))
    report.note("weyl-exchange",
                "duality exchanges the Galilean and Carroll Weyl labels",
                all({x.rstrip(')'), y.rstrip(')')} == {"WC", "WG"} for x, y in swaps),
                str(swaps))

    # Realization duality: coordinate exchange sends the time realization to
    # the space realization, generator by generator.
    rho_t = ore.realization("time_deformed", time_cfg)
    rho_s = ore.realization("space_deformed", space_cfg)
    for g in GENERATORS:
        image = dual_ore(rho_t[g])
        expected = rho_s[DUAL_GEN[g]].scale(Fraction(DUAL_SIGN[g]))
        report.check(f"realization[{g}]",
                     "coordinate exchange maps the time realization to the space one",
                     image - expected)
    return report


# ---------------------------------------------------------------------------
# Null-plane basis.
# ---------------------------------------------------------------------------

class NPElement:
    """Element of the enveloping algebra extended by r2 with 2*r2^2 = 1.

    Stored as even + odd*r2 with both components PBW elements; r2 plays the
    role of the inverse square root of two, exactly.
    """

    __slots__ = ("even", "odd")

    def __init__(self, even, odd):
        self.even = even
        self.odd = odd

    def __add__(self, other):
        return NPElement(self.even + other.even, self.odd + other.odd)

    def __neg__(self):
        return NPElement(-self.even, -self.odd)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        half = Fraction(1, 2)
        return NPElement(
            self.even * other.even + (self.odd * other.odd).scale(half),
            self.even * other.odd + self.odd * other.even)

    def commutator(self, other):
        return self * other - other * self

    def scale(self, c):
        return NPElement(self.even.scale(c), self.odd.scale(c))

    def is_zero(self):
        return self.even.is_zero() and self.odd.is_zero()

    def __eq__(self, other):
        if not isinstance(other, NPElement):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if not self.even.is_zero():
            parts.append(str(self.even))
        if not self.odd.is_zero():
            parts.append(f"r2*({self.odd})")
        return " + ".join(parts)

    def __repr__(self):
        return f"<np {self}>"


NULLPLANE_LABELS = ("P+", "P1", "P-", "E1", "F1", "K2")


class NullPlaneError(ValueError):
    """Null-plane basis requested away from (mu, nu) = (0, 1)."""


def nullplane_basis(config):
    """The null-plane generators over the ring extended by 1/sqrt(2).

    Defined for the contraction (mu, nu) = (0, 1): P+ and P- are the light
    cone translations, P1 the transverse one, E1 and F1 the boosts, K2 the
    remaining rotation-like generator.
    """
    if config.mu != 0 or config.nu != 1:
        raise NullPlaneError(
            f"null-plane basis needs (mu, nu) = (0, 1), got ({config.mu}, {config.nu})")
    classical = FamilyConfig("classical", 0, 1, config.order)
    alg = algebra(classical)
    zero = alg.zero()

    def even(e):
        return NPElement(e, zero)

    def odd(e):
        return NPElement(zero, e)

    return {
        "P+": odd(alg.gen("P")),
        "P1": even(alg.gen("K")),
        "P-": odd(-alg.gen("C2")),
        "E1": odd(-alg.gen("H")),
        "F1": odd(alg.gen("C1")),
        "K2": even(alg.gen("D")),
    }


def _np_decompose(elem, basis):
    """Write an NPElement over the null-plane basis; None if not in the span."""
    # Each basis element is a signed single generator in one component, so
    # decomposition is coefficient matching.
    slots = {}
    for label, b in basis.items():
        comp = "even" if not b.even.is_zero() else "odd"
        src = getattr(b, comp)
        (mono, coeff), = src.terms.items()
        slots[(comp, mono)] = (label, coeff)
    out = {}
    for comp in ("even", "odd"):
        for mono, coeff in getattr(elem, comp).terms.items():
            hit = slots.get((comp, mono))
            if hit is None:
                return None
            label, base = hit
            ratio_terms = {}
            # coefficient must be a rational multiple of the basis coefficient
            for exps, val in coeff.terms.items():
                base_val = base.terms.get(exps)
                if base_val is None or len(coeff.terms) != len(base.terms):
                    return None
                ratio_terms[exps] = val / base_val
            ratios = set(ratio_terms.values())
            if len(ratios) != 1:
                return None
            out[label] = ratios.pop()
    return out


def nullplane_report(config):
    """Closure of the null-plane brackets plus the primitivity bookkeeping."""
    basis = nullplane_basis(config)
    report = VerificationReport("null-plane", config.echo())
    labels = list(NULLPLANE_LABELS)
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            br = basis[a].commutator(basis[b])
            if br.is_zero():
                report.note(f"bracket[{a},{b}]", f"[{a},{b}] = 0", True)
                continue
            decomp = _np_decompose(br, basis)
            rendering = None
            if decomp is not None:
                rendering = " + ".join(
                    (f"{c}*{l}" if c != 1 else l) for l, c in sorted(decomp.items()))
            report.note(f"bracket[{a},{b}]",
                        f"[{a},{b}] closes in the null-plane span"
                        + (f": {rendering}" if rendering else ""),
                        decomp is not None, str(br))
    # Primitivity: the deformation leaves exactly one translation primitive.
    primitive = "E1" if config.family == "time" else "P+"
    source = "H" if config.family == "time" else "P"
    d = coproduct(source, config)
    alg = algebra(config)
    expected = tensor_of(alg.one(), alg.gen(source)) + tensor_of(alg.gen(source), alg.one())
    report.check(f"primitive[{primitive}]",
                 f"{primitive} is primitive (it is a multiple of {source})",
                 d - expected)
    return report
