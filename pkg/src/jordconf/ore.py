"""Exact differential-difference operator algebra on the (x, t) plane.

Operators are finite sums of monomials ``x^i t^j dx^a dt^b Tx^m Tt^n`` with
coefficients that are Laurent polynomials in the lattice constants tau and
sigma (and ordinary polynomials in mu and nu).  ``Tx`` and ``Tt`` shift the
coordinates by one lattice step; the forward differences ``(Tx-1)/sigma`` and
``(Tt-1)/tau`` are first-class elements because division by the lattice
constant is exact in the coefficient ring.

The shift and derivative generators are independent: the semantic relation
``T = exp(step * d)`` is never imposed as a rewrite rule (it is not
polynomial).  It enters only through the realization dictionary, which sends
abstract exponentials of the primitive generator to shift powers, and through
``classical_limit``, which re-expands shifts as Taylor series before sending
the lattice constants to zero.  Every bracket identity of the families lives
in this ring and is checked exactly, with no series truncation anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .poly import POLICY_LAURENT, ParamPoly, VAR_INDEX
from .report import VerificationReport
from .uea import GENERATORS, casimir_terms, commutator_entries

# Monomial slots: x^i t^j dx^a dt^b Tx^m Tt^n.
SLOT_X, SLOT_T, SLOT_DX, SLOT_DT, SLOT_TX, SLOT_TT = range(6)
UNIT = (0, 0, 0, 0, 0, 0)

REALIZATIONS = ("classical", "time_deformed", "time_twisted",
                "space_deformed", "space_twisted")

# Which family's bracket table each realization satisfies (the twisted
# realizations restore the undeformed brackets), and which configuration
# family each belongs to.
REALIZATION_FAMILY = {
    "classical": "classical",
    "time_deformed": "time",
    "time_twisted": "classical",
    "space_deformed": "space",
    "space_twisted": "classical",
}
REALIZATION_CONFIG = {
    "classical": "classical",
    "time_deformed": "time",
    "time_twisted": "time",
    "space_deformed": "space",
    "space_twisted": "space",
}


def _lpoly(c):
    if isinstance(c, ParamPoly):
        return c
    return ParamPoly.const(c, POLICY_LAURENT)


def _lvar(name, power=1):
    return ParamPoly.var(name, power, POLICY_LAURENT)


class OreElement:
    """Skew-polynomial operator in canonical written order."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @classmethod
    def from_coeff(cls, c):
        c = _lpoly(c)
        return cls({UNIT: c} if not c.is_zero() else {})

    def __add__(self, other):
        if not isinstance(other, OreElement):
            other = OreElement.from_coeff(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return OreElement(out)

    __radd__ = __add__

    def __neg__(self):
        return OreElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OreElement):
            other = OreElement.from_coeff(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _lpoly(c)
        out = {}
        for m, v in self.terms.items():
            s = v * c
            if not s.is_zero():
                out[m] = s
        return OreElement(out)

    def __mul__(self, other):
        if not isinstance(other, OreElement):
            return self.scale(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _mono_product(out, m1, m2, c1 * c2)
        return OreElement({m: c for m, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("operator powers must be nonnegative integers")
        out = OreElement.from_coeff(1)
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, OreElement):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def substitute_params(self, bindings):
        out = {}
        for m, c in self.terms.items():
            s = c.substitute(bindings)
            if not s.is_zero():
                s2 = out.get(m)
                out[m] = s if s2 is None else s2 + s
        return OreElement({m: c for m, c in out.items() if not c.is_zero()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(map(abs, kv[0])), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = ("x", "t", "dx", "dt", "Tx", "Tt")
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            cs = str(c)
            if not body:
                parts.append(cs if len(c.terms) <= 1 else f"({cs})")
            elif cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append(f"-{body}")
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{body}")
            else:
                parts.append(f"({cs})*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"<ore {self}>"


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _chain_moves(a, shift, i):
    """Expansion of d^a T^shift x^i as [(k, q, int_coeff)] contributions.

    d^a T^s x^i = sum_k C(a,k) (i)_k (x + s*step)^(i-k) d^(a-k) T^s, with the
    binomial (x + s*step)^(i-k) expanded; q is the power of the lattice step.
    """
    out = []
    for k in range(min(a, i) + 1):
        base = comb(a, k) * _falling(i, k)
        if base == 0:
            continue
        rem = i - k
        for q in range(rem + 1):
            c = base * comb(rem, q) * (shift ** q)
            if c:
                out.append((k, q, c))
    return out


def _mono_product(acc, m1, m2, coeff):
    """Accumulate the product of two monomials into ``acc``."""
    if coeff.is_zero():
        return
    i1, j1, a1, b1, mm1, n1 = m1
    i2, j2, a2, b2, mm2, n2 = m2
    x_moves = _chain_moves(a1, mm1, i2)
    t_moves = _chain_moves(b1, n1, j2)
    for k, q, cx in x_moves:
        cqx = coeff * cx
        if q:
            cqx = cqx.shift_param("sigma", q)
        for l, r, ct in t_moves:
            c = cqx * ct
            if r:
                c = c.shift_param("tau", r)
            mono = (i1 + i2 - k - q, j1 + j2 - l - r,
                    a1 - k + a2, b1 - l + b2, mm1 + mm2, n1 + n2)
            s = acc.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                acc.pop(mono, None)
            else:
                acc[mono] = s


def ore_mul(a, b):
    return a * b


# -- atoms ---------------------------------------------------------------------

def atom(name, power=1):
    """x, t, dx, dt, Tx, Tt to an integer power (negative only on Tx/Tt)."""
    slots = {"x": SLOT_X, "t": SLOT_T, "dx": SLOT_DX, "dt": SLOT_DT,
             "Tx": SLOT_TX, "Tt": SLOT_TT}
    slot = slots[name]
    if power < 0 and slot not in (SLOT_TX, SLOT_TT):
        raise ValueError(f"negative powers are only defined on shifts, not {name}")
    mono = [0] * 6
    mono[slot] = power
    return OreElement({tuple(mono): ParamPoly.one(POLICY_LAURENT)})


def forward_difference(coord):
    """(T - 1)/step on the named coordinate ('x' or 't')."""
    if coord == "t":
        shift, step = atom("Tt"), "tau"
    elif coord == "x":
        shift, step = atom("Tx"), "sigma"
    else:
        raise ValueError("coordinate must be 'x' or 't'")
    return (shift - OreElement.from_coeff(1)).scale(_lvar(step, -1))


def backward_difference(coord):
    """(1 - T^-1)/step, i.e. the forward difference times T^-1."""
    if coord == "t":
        inv, step = atom("Tt", -1), "tau"
    else:
        inv, step = atom("Tx", -1), "sigma"
    return (OreElement.from_coeff(1) - inv).scale(_lvar(step, -1))


# -- action on polynomials -------------------------------------------------------

class ApplyError(ValueError):
    """The operator's Laurent poles did not cancel on the given polynomial."""


def _poly_derivative(p, name):
    i = VAR_INDEX[name]
    out = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        if not e:
            continue
        new = list(exps)
        new[i] = e - 1
        key = tuple(new)
        s = out.get(key, 0) + coeff * e
        if s:
            out[key] = s
        else:
            del out[key]
    return ParamPoly._raw(out, p.laurent)


def apply_operator(op, phi):
    """Exact action of an operator on a polynomial in x and t.

    Derivatives differentiate, shifts translate the arguments by multiples of
    the lattice constants, coordinates multiply.  Raises ApplyError when the
    operator's 1/tau or 1/sigma factors fail to cancel on this input.
    """
    phi = phi.with_policy(POLICY_LAURENT)
    sigma = _lvar("sigma")
    tau = _lvar("tau")
    xvar = _lvar("x")
    tvar = _lvar("t")
    total = ParamPoly.zero(POLICY_LAURENT)
    for (i, j, a, b, m, n), coeff in op.terms.items():
        cur = phi
        if m:
            cur = cur.substitute_var("x", xvar + sigma * m)
        if n:
            cur = cur.substitute_var("t", tvar + tau * n)
        for _ in range(a):
            cur = _poly_derivative(cur, "x")
        for _ in range(b):
            cur = _poly_derivative(cur, "t")
        if i:
            cur = cur * xvar ** i
        if j:
            cur = cur * tvar ** j
        total = total + cur * coeff
    if total.min_exponent("tau") < 0 or total.min_exponent("sigma") < 0:
        raise ApplyError("operator poles in the lattice constants did not cancel")
    return ParamPoly(total.terms)


# -- realizations ----------------------------------------------------------------

def _symbolic_realization(name):
    mu = _lvar("mu")
    nu = _lvar("nu")
    tau = _lvar("tau")
    sigma = _lvar("sigma")
    x = atom("x")
    t = atom("t")
    dx = atom("dx")
    dt = atom("dt")
    if name == "classical":
        return {
            "H": dt,
            "P": dx,
            "K": -(t * dx).scale(nu) - (x * dt).scale(mu),
            "D": -(x * dx) - (t * dt),
            "C1": ((x * x).scale(mu) + (t * t).scale(nu)) * dt + (x * t * dx).scale(2 * nu),
            "C2": -((x * x).scale(mu) + (t * t).scale(nu)) * dx - (x * t * dt).scale(2 * mu),
        }
    if name == "time_deformed":
        ttinv = atom("Tt", -1)
        ttinv2 = atom("Tt", -2)
        fwd = forward_difference("t")
        bwd = backward_difference("t")
        return {
            "H": dt,
            "P": dx,
            "K": -(t * ttinv * dx).scale(nu) - (x * fwd).scale(mu),
            "D": -(x * dx) - t * bwd,
            "C1": ((x * x).scale(mu) + (t * t * ttinv).scale(nu)) * fwd
                + (x * t * dx).scale(2 * nu)
                + (x * dx + x * x * dx * dx).scale(tau * nu),
            "C2": -((x * x).scale(mu) + (t * t * ttinv2).scale(nu)) * dx
                - (x * t * bwd).scale(2 * mu)
                + (t * ttinv2 * dx).scale(tau * nu),
        }
    if name == "time_twisted":
        ttinv = atom("Tt", -1)
        ttinv2 = atom("Tt", -2)
        fwd = forward_difference("t")
        return {
            "H": fwd,
            "P": dx,
            "K": -(t * ttinv * dx).scale(nu) - (x * fwd).scale(mu),
            "D": -(x * dx) - t * ttinv * fwd,
            "C1": ((x * x).scale(mu) + (t * t * ttinv2).scale(nu)) * fwd
                + (x * t * ttinv * dx).scale(2 * nu)
                - (t * ttinv2 * fwd).scale(tau * nu),
            "C2": -((x * x).scale(mu) + (t * t * ttinv2).scale(nu)) * dx
                - (x * t * ttinv * fwd).scale(2 * mu)
                + (t * ttinv2 * dx).scale(tau * nu),
        }
    if name == "space_deformed":
        txinv = atom("Tx", -1)
        txinv2 = atom("Tx", -2)
        fwd = forward_difference("x")
        bwd = backward_difference("x")
        return {
            "P": dx,
            "H": dt,
            "K": -(t * fwd).scale(nu) - (x * txinv * dt).scale(mu),
            "D": -x * bwd - (t * dt),
            "C1": ((x * x * txinv2).scale(mu) + (t * t).scale(nu)) * dt
                + (x * t * bwd).scale(2 * nu)
                - (x * txinv2 * dt).scale(sigma * mu),
            "C2": -((x * x * txinv).scale(mu) + (t * t).scale(nu)) * fwd
                - (x * t * dt).scale(2 * mu)
                - (t * dt + t * t * dt * dt).scale(sigma * mu),
        }
    if name == "space_twisted":
        txinv = atom("Tx", -1)
        txinv2 = atom("Tx", -2)
        fwd = forward_difference("x")
        return {
            "P": fwd,
            "H": dt,
            "K": -(t * fwd).scale(nu) - (x * txinv * dt).scale(mu),
            "D": -x * txinv * fwd - (t * dt),
            "C1": ((x * x * txinv2).scale(mu) + (t * t).scale(nu)) * dt
                + (x * t * txinv * fwd).scale(2 * nu)
                - (x * txinv2 * dt).scale(sigma * mu),
            "C2": -((x * x * txinv2).scale(mu) + (t * t).scale(nu)) * fwd
                - (x * t * txinv * dt).scale(2 * mu)
                + (x * txinv2 * fwd).scale(sigma * mu),
        }
    raise ValueError(f"unknown realization {name!r}; expected one of {REALIZATIONS}")


def realization(name, config):
    """The six generator images for a realization, parameters substituted."""
    images = _symbolic_realization(name)
    bindings = {}
    if config.mu != "sym":
        bindings["mu"] = config.mu
    if config.nu != "sym":
        bindings["nu"] = config.nu
    if bindings:
        images = {g: e.substitute_params(bindings) for g, e in images.items()}
    return images


class OreContext:
    """Algebra-context over operators: the realization provides the generators,
    shifts provide the exponentials of the primitive generator."""

    def __init__(self, family, images, config):
        self.family = family
        self.images = images
        self.config = config
        self.mu = _lvar("mu") if config.mu == "sym" else _lpoly(config.mu)
        self.nu = _lvar("nu") if config.nu == "sym" else _lpoly(config.nu)
        if family == "time":
            self.defparam = _lvar("tau")
            self._shift, self._coord = "Tt", "t"
        elif family == "space":
            self.defparam = _lvar("sigma")
            self._shift, self._coord = "Tx", "x"
        else:
            self.defparam = ParamPoly.zero(POLICY_LAURENT)
            self._shift = self._coord = None

    def zero(self):
        return OreElement()

    def one(self):
        return OreElement.from_coeff(1)

    def gen(self, label):
        return self.images[label]

    def mul(self, a, b):
        return a * b

    def exp(self, k):
        return atom(self._shift, k)

    def dq_plus(self):
        return forward_difference(self._coord)

    def dq_minus(self):
        return backward_difference(self._coord)


def check_realization_homomorphism(name, config):
    """Every bracket of the realization's family holds exactly as operators."""
    if config.family != REALIZATION_CONFIG[name]:
        raise ValueError(f"realization {name!r} belongs to the "
                         f"{REALIZATION_CONFIG[name]} family, not {config.family}")
    family = REALIZATION_FAMILY[name]
    images = realization(name, config)
    ctx = OreContext(family, images, config)
    report = VerificationReport(f"realization[{name}]", config.echo())
    for (xg, yg), build in commutator_entries(family):
        expected = build(ctx)
        residual = images[xg].commutator(images[yg]) - expected
        report.check(f"bracket[{xg},{yg}]",
                     f"[{xg},{yg}] holds in the {name} realization", residual)
    return report


# -- invariant operators and symmetry multipliers --------------------------------

def casimir_operator(name, config, which):
    """Realized invariant operators.

    ``E`` is the translation-boost subalgebra Casimir in the realization's own
    generators; ``E_def`` replaces the primitive generator by the forward
    difference (they coincide on twisted realizations).  ``W1``/``W2`` realize
    the full Casimirs; they vanish identically for every realization here.
    """
    family = REALIZATION_FAMILY[name]
    images = realization(name, config)
    ctx = OreContext(family, images, config)
    if which in ("W1", "W2"):
        return casimir_terms(family, which, ctx)
    if which == "E":
        p, h = images["P"], images["H"]
        return (p * p).scale(ctx.nu) - (h * h).scale(ctx.mu)
    if which == "E_def":
        if family == "time":
            p, h = images["P"], forward_difference("t")
        elif family == "space":
            p, h = forward_difference("x"), images["H"]
        else:
            p, h = images["P"], images["H"]
        return (p * p).scale(ctx.nu) - (h * h).scale(ctx.mu)
    raise ValueError(f"unknown invariant {which!r}")


def symmetry_multipliers(name, config):
    """The operator Lambda_O with [E, O] = Lambda_O * E, per generator."""
    mu = _lvar("mu") if config.mu == "sym" else _lpoly(config.mu)
    nu = _lvar("nu") if config.nu == "sym" else _lpoly(config.nu)
    x = atom("x")
    t = atom("t")
    zero = OreElement()
    minus2 = OreElement.from_coeff(-2)
    out = {"H": zero, "P": zero, "K": zero, "D": minus2}
    if name in ("classical", "space_deformed", "space_twisted"):
        out["C1"] = t.scale(4 * nu)
    elif name == "time_deformed":
        tau = _lvar("tau")
        out["C1"] = (t + OreElement.from_coeff(tau)
                     + (x * atom("dx")).scale(tau)).scale(4 * nu)
    else:  # time_twisted
        out["C1"] = (t * atom("Tt", -1)).scale(4 * nu)
    if name in ("classical", "time_deformed", "time_twisted"):
        out["C2"] = x.scale(-4 * mu)
    elif name == "space_deformed":
        sigma = _lvar("sigma")
        out["C2"] = (x + OreElement.from_coeff(sigma)
                     + (t * atom("dt")).scale(sigma)).scale(-4 * mu)
    else:  # space_twisted
        out["C2"] = (x * atom("Tx", -1)).scale(-4 * mu)
    return out


def symmetry_check(name, config):
    """[E, O] = Lambda_O E for every generator O, exactly."""
    images = realization(name, config)
    inv = casimir_operator(name, config, "E_def")
    multipliers = symmetry_multipliers(name, config)
    report = VerificationReport(f"symmetry[{name}]", config.echo())
    for g in GENERATORS:
        residual = inv.commutator(images[g]) - multipliers[g] * inv
        lam = multipliers[g]
        anchor = (f"[E, {g}] = 0" if lam.is_zero()
                  else f"[E, {g}] = ({lam}) * E")
        report.check(f"multiplier[{g}]", anchor, residual)
    return report


# -- classical limit ---------------------------------------------------------------

class ClassicalLimitError(ValueError):
    """A genuine pole survives the lattice-constant limit."""


def classical_limit(op):
    """The vanishing-lattice-constant limit, expressed in x, t, dx, dt only.

    Shifts are re-expanded as Taylor series in the matching derivative to the
    pole order of each coefficient; surviving negative powers mean the limit
    does not exist and raise ClassicalLimitError naming the term.
    """
    expanded = {}
    for mono, coeff in op.terms.items():
        i, j, a, b, m, n = mono
        pole_s = max(0, -coeff.min_exponent("sigma"))
        pole_t = max(0, -coeff.min_exponent("tau"))
        for k, ck in _taylor_shift(m, "sigma", pole_s + 1):
            for l, cl in _taylor_shift(n, "tau", pole_t + 1):
                c = coeff * ck * cl
                key = (i, j, a + k, b + l, 0, 0)
                s = expanded.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    expanded.pop(key, None)
                else:
                    expanded[key] = s
    out = {}
    for mono, coeff in expanded.items():
        if coeff.min_exponent("tau") < 0 or coeff.min_exponent("sigma") < 0:
            raise ClassicalLimitError(
                f"pole survives the limit on term {mono}: {coeff}")
        limited = coeff.substitute({"tau": 0, "sigma": 0})
        if not limited.is_zero():
            out[mono] = limited
    return OreElement(out)


def _taylor_shift(power, step, order):
    """(step*power*d)^k/k! coefficients for T^power, k = 0..order."""
    if power == 0:
        return [(0, ParamPoly.one(POLICY_LAURENT))]
    out = []
    fact = 1
    for k in range(order + 1):
        if k:
            fact *= k
        c = _lvar(step, k) * Fraction(power ** k, fact)
        out.append((k, c))
    return out


# -- lattice solutions ---------------------------------------------------------------

def seed_solution():
    """mu*x^2 + nu*t*(t - tau): the quadratic lattice solution."""
    mu = ParamPoly.var("mu")
    nu = ParamPoly.var("nu")
    x = ParamPoly.var("x")
    t = ParamPoly.var("t")
    tau = ParamPoly.var("tau")
    return mu * x * x + nu * t * (t - tau)


def lattice_solutions(config, count=10):
    """Transport the seed through symmetry operators; all stay solutions.

    Returns ``count`` distinct nonzero polynomials obtained by applying words
    in the time-deformed realization to the seed.
    """
    images = realization("time_deformed", config)
    words = [("H",), ("P",), ("K",), ("D",), ("C1",), ("C2",),
             ("D", "D"), ("K", "D"), ("C1", "D"), ("C2", "P"),
             ("C1", "C1"), ("C2", "D"), ("K", "K")]
    seed = _specialize_poly(seed_solution(), config)
    out = []
    seen = set()
    for word in words:
        phi = seed
        for g in word:
            phi = apply_operator(images[g], phi)
        key = frozenset(phi.terms.items())
        if phi.is_zero() or key in seen:
            continue
        seen.add(key)
        out.append(phi)
        if len(out) == count:
            break
    return out


def _specialize_poly(p, config):
    bindings = {}
    if config.mu != "sym":
        bindings["mu"] = config.mu
    if config.nu != "sym":
        bindings["nu"] = config.nu
    return p.substitute(bindings) if bindings else p


def transport_report(config, count=10):
    """The invariant operator annihilates the seed and its transports."""
    inv = casimir_operator("time_deformed", config, "E_def")
    report = VerificationReport("solution-transport", config.echo())
    seed = _specialize_poly(seed_solution(), config)
    report.check("seed", "E annihilates mu*x^2 + nu*t*(t - tau)",
                 apply_operator(inv, seed))
    solutions = lattice_solutions(config, count)
    report.note("descendants", f"{count} distinct transported solutions found",
                len(solutions) == count, f"only {len(solutions)} found")
    for idx, phi in enumerate(solutions):
        residual = apply_operator(inv, phi)
        report.check(f"transport[{idx}]", f"E annihilates descendant {idx} ({phi})",
                     residual)
    return report
