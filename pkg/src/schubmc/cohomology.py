"""Equivariant cohomology of flag manifolds in the GKM fixed-point model.

Classes are maps from fixed points to polynomials in the simple roots and a
degree-one formal variable (the homogenizing parameter, always the last
variable).  Divided differences and their twisted variants act pointwise;
CSM classes are produced by the twisted recursion and, as an independent
route, extracted from motivic Chern classes by the leading-term procedure.

A small numeric sub-engine evaluates classes at a generic rational point of
the parameter space; any pairing whose value is a degree-zero constant is
computed exactly this way.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPolynomial, YPolynomial, divide_exact
from .polyring import Poly, exp_linear
from .roots import neg_weight


class GKMError(ArithmeticError):
    """A divided difference or localization sum failed to divide exactly."""


class Cohomology:
    """GKM operator calculus for one root system; variables (alpha..., hbar)."""

    def __init__(self, rs):
        self.rs = rs
        self.nvars = rs.rank + 1
        self._cache = {}
        self._form_cache = {}

    def form(self, weight):
        """First Chern class of the weight, as a linear polynomial.

        The sign convention (the class of the weight lambda is minus the
        simple-root expansion of lambda) is the one fixed by the worked
        rank-one value (hbar - alpha_1) and by Schubert positivity of CSM
        expansions; the opposite choice is the global flip.
        """
        weight = tuple(weight)
        p = self._form_cache.get(weight)
        if p is None:
            coords = self.rs.weight_in_simple_roots(weight)
            p = Poly.linear([-c for c in coords] + [Fraction(0)])
            self._form_cache[weight] = p
        return p

    def root_variable_form(self, weight):
        """The display polynomial of a root-lattice weight in the alpha variables."""
        coords = self.rs.weight_in_simple_roots(weight)
        return Poly.linear(list(coords) + [Fraction(0)])

    def hbar(self):
        return Poly.variable(self.nvars - 1, self.nvars)

    def euler_at(self, w):
        """Equivariant Euler class of the tangent space at the fixed point w."""
        key = ("euler", w)
        p = self._cache.get(key)
        if p is None:
            p = Poly.const(1, self.nvars)
            for a in self.rs.positive_roots:
                p = p * self.form(neg_weight(w.act(a)))
            self._cache[key] = p
        return p

    def point_class(self, w):
        return CohClass(self, {w: self.euler_at(w)})

    def zero(self):
        return CohClass(self, {})

    def total_chern_at(self, w, dual=False):
        """c of the (co)tangent space restricted at w: prod (1 -+ w alpha)."""
        p = Poly.const(1, self.nvars)
        one = Poly.const(1, self.nvars)
        for a in self.rs.positive_roots:
            wa = self.form(w.act(a))
            p = p * (one + wa if dual else one - wa)
        return p

    # -- operators -------------------------------------------------------------

    def bgg(self, i, a):
        s = self.rs.simple_reflection(i)
        alpha = self.rs.simple_root(i)
        out = {}
        for u in set(a.coeffs) | {v * s for v in a.coeffs}:
            num = a.coefficient(u * s) - a.coefficient(u)
            if not num:
                continue
            q = num.divide_exact(self.form(u.act(alpha)))
            if q is None:
                raise GKMError("divided difference is not exact; not a GKM class")
            out[u] = q
        return CohClass(self, out)

    def si_auto(self, i, a):
        s = self.rs.simple_reflection(i)
        return CohClass(self, {u: a.coefficient(u * s) for u in (set(a.coeffs) | {v * s for v in a.coeffs})})

    def dl_coh(self, i, a, dual=False):
        """Homogenized twisted operator: hbar * bgg -+ right-translation."""
        first = self.bgg(i, a).scale(self.hbar())
        second = self.si_auto(i, a)
        return first + second if dual else first - second

    def apply_word(self, op, v, a):
        for i in reversed(v.word):
            a = op(i, a)
        return a

    def w0_images(self):
        """Substitution images of the variables under the longest element.

        The variable alpha_j maps to the expansion of w0(alpha_j); this is
        independent of the global sign convention in ``form``.
        """
        key = ("w0sub",)
        images = self._cache.get(key)
        if images is None:
            w0 = self.rs.longest_element()
            images = [
                self.root_variable_form(w0.act(self.rs.simple_root(j)))
                for j in range(1, self.rs.rank + 1)
            ]
            images.append(self.hbar())
            self._cache[key] = images
        return images

    def w0_twist(self, a):
        w0 = self.rs.longest_element()
        images = self.w0_images()
        return CohClass(
            self, {w0 * u: p.substitute_linear(images) for u, p in a.coeffs.items()}
        )

    # -- distinguished classes ---------------------------------------------------

    def _cached(self, kind, key, builder):
        k = (kind, key)
        val = self._cache.get(k)
        if val is None:
            val = builder()
            self._cache[k] = val
        return val

    def schubert_class(self, w):
        def build():
            if w.length == 0:
                return self.point_class(w)
            i = w.word[-1]
            return self.bgg(i, self.schubert_class(w * self.rs.simple_reflection(i)))

        return self._cached("X", w, build)

    def opposite_schubert_class(self, w):
        return self._cached(
            "Y", w, lambda: self.w0_twist(self.schubert_class(self.rs.longest_element() * w))
        )

    def csm(self, w):
        """Homogenized CSM class of the cell of w, by the twisted recursion."""

        def build():
            if w.length == 0:
                return self.point_class(w)
            i = w.word[-1]
            return self.dl_coh(i, self.csm(w * self.rs.simple_reflection(i)))

        return self._cached("csm", w, build)

    def csm_opposite(self, w):
        return self._cached(
            "csmY", w, lambda: self.w0_twist(self.csm(self.rs.longest_element() * w))
        )

    def sm(self, w, opposite=False):
        """Segre-MacPherson class: CSM with the total-Chern denominator implicit."""
        numerator = self.csm_opposite(w) if opposite else self.csm(w)
        return SegreMacPherson(self, numerator)

    def dual_csm(self, v):
        """Dual CSM class attached to the opposite cell, via the adjoint word."""

        def build():
            w0 = self.rs.longest_element()
            if v == w0:
                return self.point_class(w0)
            for i in range(1, self.rs.rank + 1):
                vs = v * self.rs.simple_reflection(i)
                if vs.length > v.length:
                    return self.dl_coh(i, self.dual_csm(vs), dual=True)
            raise AssertionError("no ascent below the longest element")

        return self._cached("csmdual", v, build)

    # -- pairings -----------------------------------------------------------------

    def integrate(self, a, extra_denominator=None):
        """Localization sum over fixed points; must clear to a polynomial."""
        num = Poly.zero(self.nvars)
        den = Poly.const(1, self.nvars)
        for w, p in a.coeffs.items():
            d = self.euler_at(w)
            if extra_denominator is not None:
                d = d * extra_denominator(w)
            num = num * d + p * den
            den = den * d
        if not num:
            return Poly.zero(self.nvars)
        q = num.divide_exact(den)
        if q is None:
            raise GKMError("localization sum is not polynomial")
        return q

    def pair(self, a, b, extra_denominator=None):
        return self.integrate(a * b, extra_denominator)

    # -- Schubert expansion ----------------------------------------------------------

    def expand(self, a, opposite=False):
        """Triangular solve against the (opposite) Schubert classes."""
        residual = dict(a.coeffs)
        coeffs = {}
        guard = len(self.rs.weyl_group()) + 1
        while residual:
            guard -= 1
            if guard < 0:
                raise GKMError("expansion did not terminate")
            key = (lambda w: (w.length, w.word))
            pivot = (min if opposite else max)(residual, key=key)
            basis = (
                self.opposite_schubert_class(pivot) if opposite else self.schubert_class(pivot)
            )
            c = residual[pivot].divide_exact(basis.coefficient(pivot))
            if c is None:
                raise GKMError(f"expansion coefficient at {pivot.name()} is not polynomial")
            coeffs[pivot] = c
            for u, p in basis.coeffs.items():
                cur = residual.get(u, Poly.zero(self.nvars))
                nxt = cur - c * p
                if nxt:
                    residual[u] = nxt
                else:
                    residual.pop(u, None)
            if pivot in residual:
                raise GKMError("pivot did not cancel")
        return coeffs


class SegreMacPherson:
    """A CSM class divided by the total Chern class of the tangent bundle.

    The quotient is kept as (numerator, implicit denominator): restrictions
    of the denominator vanish nowhere but are not polynomial inverses, so
    honest values only exist inside localization integrals.
    """

    __slots__ = ("ctx", "numerator")

    def __init__(self, ctx, numerator):
        self.ctx = ctx
        self.numerator = numerator

    def pair_with(self, other):
        """Poincare pairing against an ordinary class."""
        return self.ctx.pair(
            self.numerator, other, extra_denominator=self.ctx.total_chern_at
        )

    def pair_with_sm(self, other):
        """Pairing of two Segre-MacPherson classes (denominator squared)."""
        return self.ctx.pair(
            self.numerator,
            other.numerator,
            extra_denominator=lambda w: self.ctx.total_chern_at(w) ** 2,
        )


class CohClass:
    """GKM class: map from fixed points to polynomial restrictions."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = {w: p for w, p in coeffs.items() if p}

    def coefficient(self, w):
        p = self.coeffs.get(w)
        return p if p is not None else Poly.zero(self.ctx.nvars)

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, p in other.coeffs.items():
            q = out.get(w)
            q = p if q is None else q + p
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return CohClass(self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CohClass(self.ctx, {w: -p for w, p in self.coeffs.items()})

    def __mul__(self, other):
        """Pointwise (cup) product of restriction functions."""
        out = {}
        for w, p in self.coeffs.items():
            q = other.coeffs.get(w)
            if q is not None:
                out[w] = p * q
        return CohClass(self.ctx, out)

    def scale(self, s):
        return CohClass(self.ctx, {w: p * s for w, p in self.coeffs.items()})

    def set_hbar(self, value):
        return CohClass(
            self.ctx, {w: p.set_variable(self.ctx.nvars - 1, value) for w, p in self.coeffs.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def support(self):
        return sorted(self.coeffs, key=lambda w: (w.length, w.word))

    def __repr__(self):
        bits = [f"{w.name()}: {p!r}" for w, p in sorted(self.coeffs.items(), key=lambda kv: (kv[0].length, kv[0].word))]
        return "CohClass{" + ", ".join(bits) + "}"


_COHOMOLOGY = {}


def cohomology(rs):
    ctx = _COHOMOLOGY.get(rs)
    if ctx is None:
        ctx = Cohomology(rs)
        _COHOMOLOGY[rs] = ctx
    return ctx


# -- CSM extraction from motivic Chern classes ------------------------------------------


def csm_from_mc_nonequivariant(kt, w):
    """Integer CSM coefficients by divide-then-specialize on MC coefficients."""
    from .mc import motivic_chern

    exp = kt.expand(motivic_chern(kt, w), "O")
    rank = kt.rs.rank
    one_plus_y = LaurentPolynomial({((0,) * rank, 0): 1, ((0,) * rank, 1): 1}, rank)
    out = {}
    for u, c in exp.coeffs.items():
        p = c.substitute_nonequivariant().to_laurent(rank)
        for _ in range(u.length):
            q = divide_exact(p, one_plus_y)
            if q is None:
                raise GKMError(f"coefficient at {u.name()} not divisible by (1+y)^len")
            p = q
        val = p.y_specialize(-1)
        const = val.terms.get(((0,) * rank, 0), 0)
        out[u] = const
    return out


def csm_from_mc_equivariant(kt, ctx, w):
    """Leading terms of the equivariant MC coefficients, with y = -exp(-hbar).

    Returns the map u -> homogeneous polynomial of degree length(u) in the
    simple roots and the homogenizing variable.
    """
    from .mc import motivic_chern

    exp = kt.expand(motivic_chern(kt, w), "O")
    out = {}
    for u, c in exp.coeffs.items():
        cap = u.length
        total = None
        for (lam, k), coeff in c.terms.items():
            linear = ctx.form(lam) - ctx.hbar() * Fraction(k)
            series = exp_linear(linear, cap)
            sign = Fraction(coeff) * (-1) ** k
            comp = series.component(cap) * sign
            total = comp if total is None else total + comp
        out[u] = total if total is not None else Poly.zero(ctx.nvars)
    return out


def csm_expansion(ctx, w):
    """Schubert coefficients of the homogenized CSM class (recursion route)."""
    return ctx._cached("csmexp", w, lambda: ctx.expand(ctx.csm(w)))


def csm_vector(kt, w):
    """Non-equivariant CSM Schubert coefficients as plain integers."""
    return kt._cached("csmvec", w, lambda: csm_from_mc_nonequivariant(kt, w))


# -- numeric engine for constant pairings ----------------------------------------------

_GENERIC_PRIMES = (10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079)


class NumericCohomology:
    """GKM classes evaluated at a fixed generic rational parameter point."""

    def __init__(self, rs, alphas=None, hbar=Fraction(1)):
        self.rs = rs
        if alphas is None:
            alphas = tuple(Fraction(p) for p in _GENERIC_PRIMES[: rs.rank])
        self.alphas = tuple(alphas)
        self.hbar = hbar
        self._cache = {}
        self._twin = None

    def weight_value(self, weight):
        coords = self.rs.weight_in_simple_roots(weight)
        return sum(c * a for c, a in zip(coords, self.alphas))

    def euler_at(self, w):
        key = ("euler", w)
        v = self._cache.get(key)
        if v is None:
            v = Fraction(1)
            for a in self.rs.positive_roots:
                v *= -self.weight_value(w.act(a))
            self._cache[key] = v
        return v

    def schubert(self, w):
        key = ("X", w)
        f = self._cache.get(key)
        if f is None:
            if w.length == 0:
                f = {w: self.euler_at(w)}
            else:
                i = w.word[-1]
                s = self.rs.simple_reflection(i)
                alpha = self.rs.simple_root(i)
                prev = self.schubert(w * s)
                f = {}
                for u in set(prev) | {v * s for v in prev}:
                    num = prev.get(u * s, Fraction(0)) - prev.get(u, Fraction(0))
                    if num:
                        f[u] = num / self.weight_value(u.act(alpha))
            self._cache[key] = f
        return f

    def _transformed_twin(self):
        if self._twin is None:
            w0 = self.rs.longest_element()
            images = tuple(
                self.weight_value(w0.act(self.rs.simple_root(j)))
                for j in range(1, self.rs.rank + 1)
            )
            # express in simple-root coordinates of the twin: the twin engine
            # simply runs at the transformed parameter values
            twin_alphas = []
            for j in range(1, self.rs.rank + 1):
                twin_alphas.append(self.weight_value(w0.act(self.rs.simple_root(j))))
            self._twin = NumericCohomology(self.rs, tuple(twin_alphas), self.hbar)
        return self._twin

    def opposite_schubert(self, w):
        key = ("Y", w)
        f = self._cache.get(key)
        if f is None:
            w0 = self.rs.longest_element()
            g = self._transformed_twin().schubert(w0 * w)
            f = {w0 * u: val for u, val in g.items()}
            self._cache[key] = f
        return f

    def integrate(self, f):
        return sum(v / self.euler_at(w) for w, v in f.items())

    def triple_opposite_constant(self, a, b, c):
        """Cup-product constant of [Y(a)][Y(b)] against [X(c)]; codims add."""
        if a.length + b.length != c.length:
            return 0
        fa, fb = self.opposite_schubert(a), self.opposite_schubert(b)
        fc = self.schubert(c)
        total = Fraction(0)
        for w, va in fa.items():
            vb = fb.get(w)
            vc = fc.get(w)
            if vb is not None and vc is not None:
                total += va * vb * vc / self.euler_at(w)
        if total.denominator != 1:
            raise GKMError("structure constant did not come out integral")
        return int(total)


_NUMERIC = {}


def numeric_cohomology(rs):
    eng = _NUMERIC.get(rs)
    if eng is None:
        eng = NumericCohomology(rs)
        _NUMERIC[rs] = eng
    return eng


# -- non-equivariant vector calculus ------------------------------------------------------


class SchubertCalculus:
    """Integer Schubert-basis calculus on G/B or G/P, non-equivariant.

    Classes are dicts mapping cells (minimal representatives) to integers,
    relative to the Schubert-variety basis.  Products go through cached
    triple-intersection constants from the numeric engine.
    """

    def __init__(self, rs, parabolic=None):
        self.rs = rs
        self.parabolic = parabolic
        self.cells = rs.weyl_group() if parabolic is None else parabolic.min_reps
        self._numeric = numeric_cohomology(rs)
        self._nconst = {}

    def opposite_label(self, v):
        """The cell whose opposite Schubert variety equals the variety of v."""
        w0 = self.rs.longest_element()
        return w0 * v if self.parabolic is None else self.parabolic.min_rep(w0 * v)

    def _constants(self, a, b):
        """Cup constants of [Y(a)][Y(b)] over the [Y(c)] basis (codims add)."""
        key = (a, b)
        row = self._nconst.get(key)
        if row is None:
            row = {}
            for c in self.cells:
                if c.length == a.length + b.length:
                    n = self._triple(a, b, c)
                    if n:
                        row[c] = n
            self._nconst[key] = row
        return row

    def _triple(self, a, b, c):
        """<[Y(a)] [Y(b)], [X(c)]>, the coefficient of [Y(c)] in the product."""
        if self.parabolic is None:
            return self._numeric.triple_opposite_constant(a, b, c)
        num = self._numeric
        pd = self.parabolic
        levi = set(pd.levi_positive_roots)
        if a.length + b.length != c.length:
            return 0

        def pushed(f):
            out = {}
            for v, val in f.items():
                u = pd.min_rep(v)
                rel = Fraction(1)
                for beta in pd.levi_positive_roots:
                    rel *= -num.weight_value(v.act(beta))
                out[u] = out.get(u, Fraction(0)) + val / rel
            return out

        fa = pushed(num.opposite_schubert(a))
        fb = pushed(num.opposite_schubert(b))
        fc = pushed(num.schubert(c))
        total = Fraction(0)
        for w, va in fa.items():
            vb = fb.get(w)
            vc = fc.get(w)
            if vb is None or vc is None:
                continue
            e = Fraction(1)
            for beta in self.rs.positive_roots:
                if beta not in levi:
                    e *= -num.weight_value(w.act(beta))
            total += va * vb * vc / e
        if total.denominator != 1:
            raise GKMError("structure constant did not come out integral")
        return int(total)

    def multiply(self, va, vb):
        """Cup product of two classes given in the Schubert-variety basis."""
        out = {}
        for a, ca in va.items():
            if not ca:
                continue
            ya = self.opposite_label(a)
            for b, cb in vb.items():
                if not cb:
                    continue
                yb = self.opposite_label(b)
                for c, n in self._constants(ya, yb).items():
                    x = self.opposite_label(c)
                    out[x] = out.get(x, 0) + ca * cb * n
        return {c: v for c, v in out.items() if v}

    def csm(self, kt, w):
        """CSM vector of the cell of w (w any element; coefficients restrict)."""
        pd = self.parabolic
        base = csm_vector(kt, w)
        if pd is None:
            return dict(base)
        return {u: c for u, c in base.items() if u in set(pd.min_reps)}

    def total_chern(self, kt):
        out = {}
        for w in self.cells:
            for u, c in self.csm(kt, w).items():
                out[u] = out.get(u, 0) + c
        return {u: c for u, c in out.items() if c}

    def sm_of_opposite(self, kt, u):
        """SM class of the opposite cell of u, in the Schubert-variety basis."""
        w0u = (
            self.rs.longest_element() * u
            if self.parabolic is None
            else self.parabolic.min_rep(self.rs.longest_element() * u)
        )
        csm = self.csm(kt, w0u)
        return {v: c * (-1) ** ((w0u.length - v.length) % 2) for v, c in csm.items()}

    def sm_of_cell(self, kt, u):
        csm = self.csm(kt, u)
        return {v: c * (-1) ** ((u.length - v.length) % 2) for v, c in csm.items()}

    def expand_in_sm_basis(self, kt, vec):
        """Triangular solve against the SM vectors of cells (diagonal 1)."""
        residual = dict(vec)
        out = {}
        guard = len(self.cells) + 1
        while residual:
            guard -= 1
            if guard < 0:
                raise GKMError("SM expansion did not terminate")
            pivot = max(residual, key=lambda w: (w.length, w.word))
            c = residual[pivot]
            basis = self.sm_of_cell(kt, pivot)
            if basis.get(pivot) != 1:
                raise GKMError("SM basis diagonal is not 1")
            out[pivot] = c
            for u, b in basis.items():
                nxt = residual.get(u, 0) - c * b
                if nxt:
                    residual[u] = nxt
                else:
                    residual.pop(u, None)
        return out

    def sm_structure_constants(self, kt, u, v):
        """Coefficients e of the SM product of two opposite cells."""
        su = self.sm_of_opposite(kt, u)
        sv = self.sm_of_opposite(kt, v)
        prod = self.multiply(su, sv)
        exp = self.expand_in_sm_basis(kt, prod)
        # the basis element at z is the SM vector of the cell of z, which is
        # the SM class of the opposite cell of w0 z (restricted to cells)
        w0 = self.rs.longest_element()
        out = {}
        for z, c in exp.items():
            w = w0 * z if self.parabolic is None else self.parabolic.min_rep(w0 * z)
            out[w] = c
        return out

    def richardson_csm(self, kt, u, v):
        """CSM vector of the intersection of the opposite cell of u with the
        cell of v, expanded over opposite Schubert varieties."""
        s1 = self.sm_of_opposite(kt, u)
        s2 = self.sm_of_cell(kt, v)
        prod = self.multiply(s1, s2)
        total = self.multiply(prod, self.total_chern(kt))
        # re-express over opposite varieties: [Y(w)] = [X(w0 w)]
        return {self.opposite_label(c): val for c, val in total.items()}


def h_polynomial(vector):
    """Generating polynomial of a Schubert vector by cell dimension."""
    coeffs = {}
    for w, c in vector.items():
        coeffs[w.length] = coeffs.get(w.length, 0) + c
    return YPolynomial.from_dict(coeffs)


# -- parabolic push-forward (GKM form) -----------------------------------------------------


def parabolic_pushforward_coh(ctx, a, pdat):
    """Localization push-forward of restriction functions to the quotient."""
    groups = {}
    for v, p in a.coeffs.items():
        groups.setdefault(pdat.min_rep(v), []).append((v, p))
    out = {}
    for u, terms in groups.items():
        num = Poly.zero(ctx.nvars)
        den = Poly.const(1, ctx.nvars)
        for v, p in terms:
            d = Poly.const(1, ctx.nvars)
            for beta in pdat.levi_positive_roots:
                d = d * ctx.form(neg_weight(v.act(beta)))
            num = num * d + p * den
            den = den * d
        if not num:
            continue
        q = num.divide_exact(den)
        if q is None:
            raise GKMError("push-forward sum is not polynomial")
        out[u] = q
    return CohClass(ctx, out)


def quotient_euler_at(ctx, pdat, u):
    levi = set(pdat.levi_positive_roots)
    p = Poly.const(1, ctx.nvars)
    for beta in ctx.rs.positive_roots:
        if beta not in levi:
            p = p * ctx.form(neg_weight(u.act(beta)))
    return p


def integrate_quotient(ctx, pdat, a, extra_denominator=None):
    num = Poly.zero(ctx.nvars)
    den = Poly.const(1, ctx.nvars)
    for w, p in a.coeffs.items():
        d = quotient_euler_at(ctx, pdat, w)
        if extra_denominator is not None:
            d = d * extra_denominator(w)
        num = num * d + p * den
        den = den * d
    if not num:
        return Poly.zero(ctx.nvars)
    q = num.divide_exact(den)
    if q is None:
        raise GKMError("localization sum is not polynomial")
    return q
