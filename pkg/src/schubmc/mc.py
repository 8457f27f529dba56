"""Motivic Chern classes of Schubert cells: duals, Segre forms, specializations,
star duality, chi_y genera, and push-forwards to partial flag manifolds."""

from __future__ import annotations

from dataclasses import dataclass, field

from .kclasses import KClass, Space, ktheory
from .laurent import (
    FactoredFraction,
    LaurentPolynomial,
    YPolynomial,
    one_minus_e,
    one_plus_ye,
    product_of_factors,
)
from .roots import neg_weight


class ConventionError(AssertionError):
    """An identity that pins a sign or basis convention failed."""


# -- class constructors -----------------------------------------------------------


def motivic_chern(kt, w):
    """MC_y of the cell indexed by w, by the Demazure-Lusztig recursion."""

    def build():
        if w.length == 0:
            return kt.iota(w)
        i = w.word[-1]
        return kt.dl_operator(i, motivic_chern(kt, w * kt.rs.simple_reflection(i)))

    return kt._cached("MC", w, build)


def dual_motivic_chern(kt, w, opposite=True):
    """The orthogonal-dual class, built by the shifted dual operator word.

    With ``opposite`` set this is the class attached to the opposite cell
    Y(w), grown from the opposite big point class; otherwise the ordinary
    variant grown from the identity point class.
    """
    if not opposite:

        def build_x():
            if w.length == 0:
                return kt.iota(w)
            i = w.word[-1]
            return kt.l_operator(i, dual_motivic_chern(kt, w * kt.rs.simple_reflection(i), opposite=False))

        return kt._cached("MCdualX", w, build_x)

    def build_y():
        w0 = kt.rs.longest_element()
        if w == w0:
            return kt.opp_structure_sheaf(w0)
        for i in range(1, kt.rs.rank + 1):
            ws = w * kt.rs.simple_reflection(i)
            if ws.length > w.length:
                return kt.l_operator(i, dual_motivic_chern(kt, ws, opposite=True))
        raise AssertionError("no ascent below the longest element")

    return kt._cached("MCdualY", w, build_y)


def lambda_y_opposite_cotangent(kt):
    """prod over positive roots of (1 + y e^{-alpha}), as a Laurent polynomial."""
    factors = tuple(one_plus_ye(neg_weight(a)) for a in kt.rs.positive_roots)
    return product_of_factors(factors, kt.rs.rank)


def verify_mc_duality(kt, u, v):
    """Pairing of MC at u against the dual class at v; returns (ok, got, want)."""
    got = kt.pair(motivic_chern(kt, u), dual_motivic_chern(kt, v, opposite=True))
    if u == v:
        want = FactoredFraction(lambda_y_opposite_cotangent(kt))
    else:
        want = FactoredFraction.zero(kt.rs.rank)
    return got == want, got, want


@dataclass
class MotivicClassRecord:
    """A motivic class together with its cached Schubert-type expansions."""

    kt: object
    cell: object
    opposite: bool
    dual: bool
    kclass: KClass
    expansions: dict = field(default_factory=dict)

    def expansion(self, basis="O"):
        exp = self.expansions.get(basis)
        if exp is None:
            exp = self.kt.expand(self.kclass, basis)
            self.expansions[basis] = exp
        return exp

    def check_negative_cone(self, basis="O"):
        """Every expansion coefficient uses only e^{-alpha} monomials."""
        bad = []
        for w, c in self.expansion(basis).items():
            if not coefficients_in_negative_cone(self.kt.rs, c):
                bad.append(w)
        return bad


def coefficients_in_negative_cone(rs, poly):
    for (exp, _), _c in poly.terms.items():
        coords = rs.weight_in_simple_roots(exp)
        for q in coords:
            if q.denominator != 1 or q > 0:
                return False
    return True


def motivic_record(kt, w, dual=False, opposite=False):
    if dual:
        cls = dual_motivic_chern(kt, w, opposite=opposite)
    else:
        cls = motivic_chern(kt, w)
    return MotivicClassRecord(kt, w, opposite, dual, cls)


# -- Segre form --------------------------------------------------------------------


def segre_mc(kt, w, check=True):
    """Segre form MC / lambda_y(T*X), pointwise; optionally checked against
    the dual-operator route divided by the scalar product over positive roots."""
    mc = motivic_chern(kt, w)
    out = {}
    for u, c in mc.coeffs.items():
        out[u] = c.divide_by_factors(kt.lambda_y_cotangent_factors(u))
    pointwise = KClass(kt.space, out)
    if check:
        word_route = kt.apply_word(kt.dl_dual, w.inverse(), kt.iota(kt.rs.identity))
        scalar = tuple(one_plus_ye(a) for a in kt.rs.positive_roots)
        word_route = word_route.map_coefficients(lambda c: c.divide_by_factors(scalar))
        if not pointwise == word_route:
            raise ConventionError("Segre routes disagree")
    return pointwise


# -- specializations -----------------------------------------------------------------


def omega_class(kt, w):
    """Dualizing-sheaf class: boundary ideal sheaf twisted by rho both ways."""
    cls = kt.line_bundle_mul(kt.rs.rho, kt.ideal_sheaf(w))
    return kt.trivial_bundle_mul(neg_weight(kt.rs.rho), cls)


def specialize_mc(kt, w, mode):
    """Specializations of MC at the cell w; returns (class, expected, ok)."""
    mc = motivic_chern(kt, w)
    if mode == "y=-1":
        got = mc.y_specialize(-1)
        want = kt.iota(w)
    elif mode == "y=0":
        got = mc.y_specialize(0)
        want = kt.ideal_sheaf(w)
    elif mode == "top":
        if mc.y_degree() != w.length:
            raise ConventionError(f"y-degree {mc.y_degree()} differs from length {w.length}")
        got = mc.y_coefficient(w.length)
        want = omega_class(kt, w)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return got, want, got == want


def specialize_dual_mc(kt, w, mode):
    cls = dual_motivic_chern(kt, w, opposite=True)
    if mode == "y=0":
        got = cls.y_specialize(0)
        want = kt.opp_structure_sheaf(w)
    elif mode == "y=-1":
        got = cls.y_specialize(-1)
        num = product_of_factors(
            tuple(one_minus_e(neg_weight(a)) for a in kt.rs.positive_roots), kt.rs.rank
        )
        ratio = FactoredFraction(num, tuple(one_minus_e(w.act(a)) for a in kt.rs.positive_roots))
        want = kt.iota(w).scale(ratio)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return got, want, got == want


# -- star duality ----------------------------------------------------------------------


def _sign(k):
    return -1 if k % 2 else 1


def star_duality_report(kt, w):
    """All star-duality identities at the cell w; returns dict of booleans."""
    rs = kt.rs
    n = kt.space.dim
    rho = rs.rho
    results = {}

    mc = motivic_chern(kt, w)
    mdx = dual_motivic_chern(kt, w, opposite=False)
    sign = _sign(n - w.length)

    lhs = kt.trivial_bundle_mul(neg_weight(rho), kt.line_bundle_mul(neg_weight(rho), mc))
    rhs = kt.star(mdx).scale(sign)
    results["rho_twist_vs_star"] = lhs == rhs

    c_exp = kt.expand(mc, "O")
    d_exp = kt.expand(mdx, "I")
    ok = True
    for u in set(c_exp.coeffs) | set(d_exp.coeffs):
        s = _sign(u.length - w.length)
        if c_exp.coefficient(u) != s * d_exp.coefficient(u).star():
            ok = False
    results["coeffs_O_vs_starI"] = ok

    a_exp = kt.expand(mc, "I")
    b_exp = kt.expand(mdx, "O")
    ok = True
    for u in set(a_exp.coeffs) | set(b_exp.coeffs):
        s = _sign(u.length - w.length)
        if a_exp.coefficient(u) != s * b_exp.coefficient(u).star():
            ok = False
    results["coeffs_I_vs_O"] = ok

    ideal = kt.ideal_sheaf(w)
    lhs = kt.trivial_bundle_mul(neg_weight(rho), kt.line_bundle_mul(neg_weight(rho), ideal))
    rhs = kt.star(kt.structure_sheaf(w)).scale(_sign(n - w.length))
    results["ideal_vs_star_structure"] = lhs == rhs

    psi = kt.psi(kt.iota(w))
    mono = LaurentPolynomial.monomial(
        neg_weight(tuple(a - b for a, b in zip(w.act(rho), rho))), coeff=_sign(n)
    )
    results["psi_on_point"] = psi == kt.iota(w).scale(mono)

    return results


def psi_intertwines_dl(kt, a, i):
    """Psi(T_i(a)) must equal -L_i(Psi(a))."""
    return kt.psi(kt.dl_operator(i, a)) == -kt.l_operator(i, kt.psi(a))


# -- chi_y genus --------------------------------------------------------------------------


def chi_y_genus(rs, parabolic=None, cell=None):
    """Length generating polynomial in (-y) over the relevant coset set."""
    if parabolic is None:
        pool = rs.weyl_group()
    else:
        pool = parabolic.min_reps
    if cell is not None:
        pool = [v for v in pool if rs.bruhat_leq(v, cell)]
    coeffs = {}
    for v in pool:
        coeffs[v.length] = coeffs.get(v.length, 0) + (-1) ** v.length
    return YPolynomial.from_dict(coeffs)


def chi_minus_q(rs, parabolic=None, cell=None):
    """Point-count form: substitute y = -q, giving nonnegative coefficients."""
    chi = chi_y_genus(rs, parabolic, cell)
    return YPolynomial.from_dict({k: c * (-1) ** k for k, c in chi.to_dict().items()})


# -- parabolic push-forward ------------------------------------------------------------------


def quotient_space(kt, pdat):
    return kt._cached("QSPACE", pdat.subset, lambda: Space(kt.rs, pdat))


def _outer_factors(rs, levi_set, v):
    return tuple(
        one_minus_e(v.act(a)) for a in rs.positive_roots if a not in levi_set
    )


def parabolic_pushforward(kt, a, pdat):
    """Push a class forward along G/B -> G/P by fixed-point summation.

    In iota-coordinates the contribution of v to its coset representative u
    is the coefficient at v times the ratio of the quotient-space
    self-intersection products at v and at u.
    """
    space = quotient_space(kt, pdat)
    levi = set(pdat.levi_positive_roots)
    out = {}
    for v, c in a.coeffs.items():
        u = pdat.min_rep(v)
        contrib = FactoredFraction(
            c.num * product_of_factors(_outer_factors(kt.rs, levi, v), kt.rs.rank),
            c.den + space.selfint_factors(u),
        )
        out[u] = out.get(u, FactoredFraction.zero(kt.rs.rank)) + contrib
    return KClass(space, {u: c.reduce() for u, c in out.items()})


def pushforward_between(kt, a, pdat_small, pdat_big):
    """Push a class on G/P forward to G/Q for nested parabolic subsets.

    In iota-coordinates the fiberwise sum telescopes: each source point v
    contributes its coefficient times the ratio of the target quotient's
    self-intersection products at v and at its coset representative.
    """
    if not set(pdat_small.subset) <= set(pdat_big.subset):
        raise ValueError("push-forward requires nested parabolic subsets")
    target = quotient_space(kt, pdat_big)
    levi_big = set(pdat_big.levi_positive_roots)
    out = {}
    for v, c in a.coeffs.items():
        u = pdat_big.min_rep(v)
        contrib = FactoredFraction(
            c.num * product_of_factors(_outer_factors(kt.rs, levi_big, v), kt.rs.rank),
            c.den + target.selfint_factors(u),
        )
        out[u] = out.get(u, FactoredFraction.zero(kt.rs.rank)) + contrib
    return KClass(target, {u: c.reduce() for u, c in out.items()})


def quotient_structure_sheaf(kt, pdat, u):
    return kt._cached(
        ("QO", pdat.subset), u, lambda: parabolic_pushforward(kt, kt.structure_sheaf(u), pdat)
    )


def quotient_ideal_sheaf(kt, pdat, u):
    return kt._cached(
        ("QI", pdat.subset), u, lambda: parabolic_pushforward(kt, kt.ideal_sheaf(u), pdat)
    )


def motivic_chern_parabolic(kt, pdat, u):
    """MC of the cell of G/P indexed by a minimal representative u."""
    if u not in set(pdat.min_reps):
        raise ValueError("cell label must be a minimal coset representative")
    return kt._cached(
        ("QMC", pdat.subset), u, lambda: parabolic_pushforward(kt, motivic_chern(kt, u), pdat)
    )


def minus_y_power(nvars, k):
    return LaurentPolynomial.monomial((0,) * nvars, ypow=k, coeff=(-1) ** k)


def check_pushforward_mc(kt, pdat, w):
    """pi_* MC(cell of w) against (-y)^{length drop} MC(parabolic cell)."""
    lhs = parabolic_pushforward(kt, motivic_chern(kt, w), pdat)
    u = pdat.min_rep(w)
    drop = w.length - u.length
    rhs = motivic_chern_parabolic(kt, pdat, u).scale(minus_y_power(kt.rs.rank, drop))
    return lhs == rhs
