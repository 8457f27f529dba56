"""Equivariant Chern character, Todd transformation, and Hirzebruch classes.

All values live in the completed equivariant homology: GKM restriction maps
into degree-truncated series over Q[y, (1+y)^-1].  Every identity is checked
modulo the truncation degree; localization sums are computed over a padded
degree window so the surviving components are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import (
    GradedSeries,
    Poly,
    YFrac,
    normalized_hirzebruch_coefficients,
    series_of_linear,
    todd_coefficients,
    unnormalized_hirzebruch_coefficients,
)
from .roots import neg_weight


class TruncationError(ArithmeticError):
    """A quantity was requested beyond the valid truncation window."""


class HClass:
    """Hirzebruch-layer class: fixed point -> truncated graded series."""

    __slots__ = ("hz", "coeffs", "normalized")

    def __init__(self, hz, coeffs, normalized=False):
        self.hz = hz
        self.coeffs = {w: s for w, s in coeffs.items() if s}
        self.normalized = normalized

    def coefficient(self, w):
        s = self.coeffs.get(w)
        if s is not None:
            return s
        return GradedSeries.zero(self.cap(), self.hz.rs.rank)

    def cap(self):
        return min((s.cap for s in self.coeffs.values()), default=self.hz.cap)

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, s in other.coeffs.items():
            q = out.get(w)
            q = s if q is None else q + s
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return HClass(self.hz, out, self.normalized)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HClass(self.hz, {w: -s for w, s in self.coeffs.items()}, self.normalized)

    def scale(self, c):
        return HClass(self.hz, {w: s * c for w, s in self.coeffs.items()}, self.normalized)

    def __mul__(self, other):
        out = {}
        for w, s in self.coeffs.items():
            t = other.coeffs.get(w)
            if t is not None:
                out[w] = s * t
        return HClass(self.hz, out, self.normalized)

    def eq_mod_cap(self, other, cap=None):
        caps = [self.cap(), other.cap()]
        if cap is not None:
            caps.append(cap)
        cap = min(caps)
        for w in set(self.coeffs) | set(other.coeffs):
            if not self.coefficient(w).truncate(cap) == other.coefficient(w).truncate(cap):
                return False
        return True

    def truncate(self, cap):
        return HClass(self.hz, {w: s.truncate(cap) for w, s in self.coeffs.items()}, self.normalized)

    def evaluate_y(self, v):
        """Specialize y, returning fixed point -> Poly over Fractions."""
        out = {}
        for w, s in self.coeffs.items():
            p = Poly.zero(self.hz.rs.rank)
            for d, comp in s.comps.items():
                p = p + comp.map_coefficients(lambda c: c.evaluate(v))
            out[w] = p
        return out

    def __repr__(self):
        bits = [f"{w.name()}: {s!r}" for w, s in self.coeffs.items()]
        return "HClass{" + ", ".join(bits) + "}"


class Hirzebruch:
    """Hirzebruch-transformation calculus for one root system at a default cap."""

    def __init__(self, rs, cap=None):
        self.rs = rs
        self.dim = rs.num_positive_roots
        self.cap = 2 * self.dim if cap is None else cap
        self._cache = {}
        self._forms = {}

    # -- linear forms and basic series -----------------------------------------

    def form(self, weight):
        """c_1 of a weight; same global sign convention as the cohomology layer."""
        weight = tuple(weight)
        p = self._forms.get(weight)
        if p is None:
            coords = self.rs.weight_in_simple_roots(weight)
            p = Poly.linear([YFrac.const(-c) for c in coords])
            self._forms[weight] = p
        return p

    def _univ(self, mode, cap):
        key = ("univ", mode, cap)
        val = self._cache.get(key)
        if val is None:
            if mode == "Td":
                val = todd_coefficients(cap)
            elif mode == "uTdy":
                val = unnormalized_hirzebruch_coefficients(cap)
            elif mode == "nTdy":
                val = normalized_hirzebruch_coefficients(cap)
            else:
                raise ValueError(f"unknown Todd mode {mode!r}")
            self._cache[key] = val
        return val

    def todd_series(self, weight, mode="Td", cap=None):
        """The chosen Todd-type series of a single weight, truncated."""
        cap = self.cap if cap is None else cap
        key = ("ts", tuple(weight), mode, cap)
        val = self._cache.get(key)
        if val is None:
            val = series_of_linear(self._univ(mode, cap), self.form(weight), cap)
            self._cache[key] = val
        return val

    def todd_series_of_weights(self, weights, mode="Td", cap=None):
        cap = self.cap if cap is None else cap
        out = GradedSeries.const(YFrac.const(1), cap, self.rs.rank)
        for mu in weights:
            out = out * self.todd_series(mu, mode, cap)
        return out

    def tangent_weights(self, w):
        return tuple(neg_weight(w.act(a)) for a in self.rs.positive_roots)

    def tangent_todd(self, w, mode="Td", cap=None):
        cap = self.cap if cap is None else cap
        key = ("tt", w, mode, cap)
        val = self._cache.get(key)
        if val is None:
            val = self.todd_series_of_weights(self.tangent_weights(w), mode, cap)
            self._cache[key] = val
        return val

    def euler_poly(self, w):
        key = ("euler", w)
        val = self._cache.get(key)
        if val is None:
            val = Poly.const(YFrac.const(1), self.rs.rank)
            for mu in self.tangent_weights(w):
                val = val * self.form(mu)
            self._cache[key] = val
        return val

    def point_class(self, w, cap=None):
        cap = self.cap if cap is None else cap
        return HClass(self, {w: GradedSeries.from_poly(self.euler_poly(w), cap)})

    # -- Chern character and Todd transformation ----------------------------------

    def chern_character(self, a, cap=None):
        """ch of a K-class given by polynomial restrictions, as an HClass.

        The input must restrict to genuine Laurent polynomials at every
        fixed point; a surviving denominator raises.
        """
        from .polyring import exp_linear

        cap = self.cap if cap is None else cap
        out = {}
        for w in a.coeffs:
            poly = a.restriction(w).as_polynomial()
            total = GradedSeries.zero(cap, self.rs.rank)
            for (lam, k), c in poly.terms.items():
                series = self._exp_cached(lam, cap)
                coeff = YFrac.y_power(k, c) if k >= 0 else None
                if coeff is None:
                    raise TruncationError("negative y power in a Chern character input")
                total = total + series * coeff
            out[w] = total
        return HClass(self, out)

    def _exp_cached(self, lam, cap):
        key = ("exp", tuple(lam), cap)
        val = self._cache.get(key)
        if val is None:
            from .polyring import exp_linear

            val = exp_linear(self.form(lam), cap, coeff_one=YFrac.const(1))
            self._cache[key] = val
        return val

    def todd_transform(self, a, cap=None):
        """td of a K-theory class: ch times the tangent Todd class, pointwise."""
        cap = self.cap if cap is None else cap
        ch = self.chern_character(a, cap)
        return HClass(self, {w: s * self.tangent_todd(w, "Td", cap) for w, s in ch.coeffs.items()})

    # -- operators -------------------------------------------------------------------

    def bgg(self, i, a):
        s = self.rs.simple_reflection(i)
        alpha = self.rs.simple_root(i)
        out = {}
        for u in set(a.coeffs) | {v * s for v in a.coeffs}:
            num = a.coefficient(u * s) - a.coefficient(u)
            if not num:
                continue
            q = num.divide_by_poly(self.form(u.act(alpha)))
            if q is None:
                raise TruncationError("divided difference not exact")
            out[u] = q
        return HClass(self, out, a.normalized)

    def _relative_todd_at(self, u, i, mode, cap):
        # relative tangent weight of the rank-one projection at the point u
        return self.todd_series(neg_weight(u.act(self.rs.simple_root(i))), mode, cap)

    def dl_h(self, i, a, normalized=False, dual=False):
        """Hirzebruch analogues of the Demazure-Lusztig operators."""
        mode = "nTdy" if normalized else "uTdy"
        cap = a.cap()
        if dual:
            scaled = HClass(
                self,
                {u: s * self._relative_todd_at(u, i, mode, cap) for u, s in a.coeffs.items()},
                a.normalized,
            )
            first = self.bgg(i, scaled)
        else:
            d = self.bgg(i, a)
            first = HClass(
                self,
                {u: s * self._relative_todd_at(u, i, mode, s.cap) for u, s in d.coeffs.items()},
                a.normalized,
            )
        return first - a.truncate(first.cap())

    def l_h(self, i, a, normalized=False):
        one_plus_y = YFrac([1, 1])
        b = self.dl_h(i, a, normalized, dual=True)
        return b + a.truncate(b.cap()).scale(one_plus_y)

    def apply_word(self, op, v, a):
        for i in reversed(v.word):
            a = op(i, a)
        return a

    # -- Adams operation ----------------------------------------------------------------

    def adams_normalize(self, a):
        """Scale homological degree j by (1+y)^-j; degrees measured against dim."""
        out = {}
        for w, s in a.coeffs.items():
            comps = {}
            for d, p in s.comps.items():
                k = d - self.dim
                if k >= 0:
                    comps[d] = p.map_coefficients(lambda c: c * YFrac([1, 1]) ** k)
                else:
                    comps[d] = p.map_coefficients(lambda c: c.divide_by_one_plus_y(-k))
            out[w] = GradedSeries(comps, s.cap, s.nvars)
        return HClass(self, out, normalized=True)

    def assert_cleared(self, a):
        for w, s in a.coeffs.items():
            for d, p in s.comps.items():
                for c in p.terms.values():
                    if not c.cleared():
                        raise TruncationError(f"(1+y) denominator survives at {w.name()}")
        return a

    # -- the Hirzebruch classes of cells ---------------------------------------------------

    def hirzebruch_class(self, w, normalized=False, cap=None, check_routes=True):
        """Hirzebruch class of the cell of w; two routes compared modulo cap."""
        cap = self.cap if cap is None else cap
        key = ("H", w, normalized, cap, check_routes)
        val = self._cache.get(key)
        if val is not None:
            return val
        from .mc import motivic_chern
        from .kclasses import ktheory

        # route by the operator word, computed with enough slack to survive
        # the divided differences
        work_cap = cap + w.length
        cur = self.point_class(self.rs.identity, work_cap)
        for i in w.word:
            cur = self.dl_h(i, cur, normalized=False)
        word_route = cur.truncate(cap)
        if check_routes:
            kt = ktheory(self.rs)
            direct = self.todd_transform(motivic_chern(kt, w), cap)
            if not word_route.eq_mod_cap(direct, cap):
                raise TruncationError(f"Hirzebruch routes disagree at {w.name()}")
        out = word_route
        if normalized:
            out = self.assert_cleared(self.adams_normalize(out))
        self._cache[key] = out
        return out

    def dual_hirzebruch_class(self, v, cap=None):
        """The orthogonal-dual class built from the opposite point class."""
        cap = self.cap if cap is None else cap
        w0 = self.rs.longest_element()
        word = (v.inverse() * w0).word
        cur = self.point_class(w0, cap + len(word))
        for i in reversed(word):
            cur = self.l_h(i, cur, normalized=False)
        return cur.truncate(cap)

    # -- localization integrals --------------------------------------------------------------

    def integrate(self, a, cap=None):
        """Localization sum over the fixed points, exact below the cap window."""
        cap = a.cap() if cap is None else cap
        items = list(a.coeffs.items())
        if not items:
            return GradedSeries.zero(cap - self.dim, self.rs.rank)
        pad = cap + self.dim * (len(items) - 1)
        num = GradedSeries.zero(pad, self.rs.rank)
        den = Poly.const(YFrac.const(1), self.rs.rank)
        for w, s in items:
            e = self.euler_poly(w)
            num = num * e + GradedSeries(dict(s.comps), pad, s.nvars) * den
            den = den * e
        target = cap - self.dim
        return _divide_series_by_homogeneous(num, den, target)

    def pair(self, a, b, cap=None):
        return self.integrate(a * b, cap)


def hirzebruch_duality_check(hz, u, v, cap=None):
    """Orthogonality of a cell class against a dual class, modulo the cap."""
    cap = hz.cap if cap is None else cap
    val = hz.pair(hz.hirzebruch_class(u, cap=cap), hz.dual_hirzebruch_class(v, cap=cap))
    if u == v:
        w0 = hz.rs.longest_element()
        want = hz.todd_series_of_weights(hz.tangent_weights(w0), "uTdy", val.cap)
    else:
        want = GradedSeries.zero(val.cap, hz.rs.rank)
    return val == want, val


def segre_hirzebruch(hz, w, cap=None, check=True):
    """Hirzebruch class divided pointwise by the tangent class of the space.

    With ``check`` the quotient is compared against the adjoint operator
    word applied to the normalized point class, modulo the cap.
    """
    cap = hz.cap if cap is None else cap
    h = hz.hirzebruch_class(w, cap=cap)
    out = {}
    for u, s in h.coeffs.items():
        out[u] = s * hz.todd_series_of_weights(hz.tangent_weights(u), "uTdy", s.cap).inverse()
    result = HClass(hz, out)
    if check:
        word = w.inverse().word
        start = hz.point_class(hz.rs.identity, cap + len(word))
        denom = hz.todd_series_of_weights(
            hz.tangent_weights(hz.rs.identity), "uTdy", cap + len(word)
        ).inverse()
        cur = HClass(hz, {u: s * denom for u, s in start.coeffs.items()})
        for i in reversed(word):
            cur = hz.dl_h(i, cur, dual=True)
        if not result.eq_mod_cap(cur):
            raise TruncationError(f"Segre routes disagree at {w.name()}")
    return result


def parabolic_pushforward_h(hz, a, pdat):
    """Localization push-forward of a Hirzebruch-layer class to a quotient."""
    groups = {}
    for v, s in a.coeffs.items():
        groups.setdefault(pdat.min_rep(v), []).append((v, s))
    fiber_dim = len(pdat.levi_positive_roots)
    out = {}
    for u, terms in groups.items():
        cap = min(s.cap for _, s in terms)
        pad = cap + fiber_dim * (len(terms) - 1)
        num = GradedSeries.zero(pad, hz.rs.rank)
        den = Poly.const(YFrac.const(1), hz.rs.rank)
        for v, s in terms:
            d = Poly.const(YFrac.const(1), hz.rs.rank)
            for beta in pdat.levi_positive_roots:
                d = d * hz.form(neg_weight(v.act(beta)))
            num = num * d + GradedSeries(dict(s.comps), pad, s.nvars) * den
            den = den * d
        out[u] = _divide_series_by_homogeneous(num, den, cap - fiber_dim)
    return out


def _divide_series_by_homogeneous(num, den, target_cap):
    """Componentwise quotient num/den valid up to target_cap."""
    m = den.degree()
    comps = {}
    for d in range(0, target_cap + 1):
        comp = num.component(d + m)
        if not comp:
            continue
        q = comp.divide_exact(den)
        if q is None:
            raise TruncationError("localization sum not exact in the valid window")
        comps[d] = q
    return GradedSeries(comps, target_cap, num.nvars)


_HIRZEBRUCH = {}


def hirzebruch(rs, cap=None):
    key = (rs, cap)
    hz = _HIRZEBRUCH.get(key)
    if hz is None:
        hz = Hirzebruch(rs, cap)
        _HIRZEBRUCH[key] = hz
    return hz
