"""Localized torus-equivariant K-theory of flag manifolds in the fixed-point basis.

A ``KClass`` is a finitely supported vector over the fixed points (Weyl
group elements for the full flag manifold, minimal coset representatives
for a quotient), with ``FactoredFraction`` coefficients relative to the
point-class basis ``iota_w``.  Demazure and Demazure-Lusztig operators act
through their explicit fixed-point formulas; structure and ideal sheaves
are produced by the standard recursions and cached per space.
"""

from __future__ import annotations

from .laurent import (
    FactoredFraction,
    LaurentPolynomial,
    one_minus_e,
    one_plus_ye,
    product_of_factors,
)
from .roots import RootSystemError, neg_weight


class IntegralityError(ArithmeticError):
    """An expansion coefficient failed to reduce to a Laurent polynomial."""


class StructuralError(RuntimeError):
    """A triangular solve did not terminate against the requested basis."""


class Space:
    """Fixed-point data shared by the full flag manifold and its quotients."""

    def __init__(self, rs, parabolic=None):
        self.rs = rs
        self.parabolic = parabolic
        if parabolic is None:
            self.points = rs.weyl_group()
            self._outer_roots = rs.positive_roots
        else:
            self.points = parabolic.min_reps
            levi = set(parabolic.levi_positive_roots)
            self._outer_roots = tuple(a for a in rs.positive_roots if a not in levi)
        self._point_set = set(self.points)
        self.dim = len(self._outer_roots)
        self._selfint = {}

    def is_point(self, w):
        return w in self._point_set

    def cotangent_weights(self, w):
        """Cotangent weights of the space at the fixed point labelled by w."""
        return tuple(w.act(a) for a in self._outer_roots)

    def selfint_factors(self, w):
        """Factors of lambda_-1 of the cotangent space at w, i.e. prod(1 - e^{w a})."""
        f = self._selfint.get(w)
        if f is None:
            f = tuple(one_minus_e(mu) for mu in self.cotangent_weights(w))
            self._selfint[w] = f
        return f

    def zero(self):
        return KClass(self, {})

    def point_class(self, w):
        if not self.is_point(w):
            raise RootSystemError(f"{w!r} is not a fixed point of this space")
        return KClass(self, {w: FactoredFraction.from_int(1, self.rs.rank)})

    def __repr__(self):
        tag = "" if self.parabolic is None else f"/P{list(self.parabolic.subset)}"
        return f"Space({self.rs.lie_type}{self.rs.rank}{tag})"


class KClass:
    """Vector of iota-basis coefficients over the fixed points of a space."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = {w: c for w, c in coeffs.items() if not c.is_zero()}

    @property
    def rank(self):
        return self.space.rs.rank

    def coefficient(self, w):
        c = self.coeffs.get(w)
        return c if c is not None else FactoredFraction.zero(self.rank)

    def support(self):
        return sorted(self.coeffs, key=lambda w: (w.length, w.word))

    def restriction(self, w):
        """Localization a|_w = coeff(w) * lambda_-1(T*_w), as a fraction."""
        return self.coefficient(w) * product_of_factors(
            self.space.selfint_factors(w), self.rank
        )

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return KClass(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return KClass(self.space, {w: -c for w, c in self.coeffs.items()})

    def scale(self, factor):
        """Multiply every coefficient by a scalar (int, Laurent, or fraction)."""
        return KClass(self.space, {w: c * factor for w, c in self.coeffs.items()})

    def __mul__(self, other):
        """Tensor product: pointwise with the self-intersection normalization."""
        self._check(other)
        out = {}
        for w, c in self.coeffs.items():
            d = other.coeffs.get(w)
            if d is not None:
                out[w] = (c * d) * product_of_factors(
                    self.space.selfint_factors(w), self.rank
                )
        return KClass(self.space, out)

    def _check(self, other):
        if self.space is not other.space:
            raise RootSystemError("classes live on different spaces")

    def __eq__(self, other):
        if not isinstance(other, KClass) or self.space is not other.space:
            return NotImplemented
        for w in set(self.coeffs) | set(other.coeffs):
            if self.coefficient(w) != other.coefficient(w):
                return False
        return True

    def reduce(self):
        return KClass(self.space, {w: c.reduce() for w, c in self.coeffs.items()})

    def map_coefficients(self, fn):
        return KClass(self.space, {w: fn(c) for w, c in self.coeffs.items()})

    def y_specialize(self, v):
        """Set y to 0 or -1 in every coefficient."""
        if v not in (0, -1):
            raise ValueError("fraction-level specialization supports y in {0, -1}")

        def spec(frac):
            den = []
            for kind, mu in frac.den:
                if kind == "om":
                    den.append((kind, mu))
                elif v == -1:
                    if not any(mu):
                        raise ZeroDivisionError("1 + y vanishes at y = -1")
                    den.append(("om", mu))
                # at y = 0 an opy factor becomes 1 and drops out
            return FactoredFraction(frac.num.y_specialize(v), tuple(den))

        return self.map_coefficients(spec)

    def y_coefficient(self, power):
        """Extract the y^power part; denominators must be y-free."""

        def part(frac):
            if any(kind != "om" for kind, _ in frac.den):
                frac = frac.reduce()
                if any(kind != "om" for kind, _ in frac.den):
                    raise ArithmeticError("y appears in a denominator factor")
            return FactoredFraction(frac.num.y_coefficient(power), frac.den)

        return self.map_coefficients(part)

    def y_degree(self):
        deg = -1
        for c in self.coeffs.values():
            c = c.reduce()
            if any(kind != "om" for kind, _ in c.den):
                raise ArithmeticError("y appears in a denominator factor")
            deg = max(deg, c.num.y_degree())
        return deg

    def __repr__(self):
        bits = [f"{w.name()}: {c!r}" for w, c in sorted(self.coeffs.items(), key=lambda kv: (kv[0].length, kv[0].word))]
        return "KClass{" + ", ".join(bits) + "}"


class SchubertExpansion:
    """Coefficients of a class in one of the Schubert-type bases."""

    BASES = ("O", "Oop", "I", "Iop", "iota")

    def __init__(self, space, basis, coeffs):
        if basis not in self.BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.space = space
        self.basis = basis
        self.coeffs = dict(coeffs)

    def coefficient(self, w):
        c = self.coeffs.get(w)
        if c is None:
            return LaurentPolynomial.zero(self.space.rs.rank)
        return c

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].length, kv[0].word))

    def nonequivariant(self):
        """Substitute e^lam -> 1 in every coefficient; map of YPolynomials."""
        return {w: c.substitute_nonequivariant() for w, c in self.coeffs.items()}

    def to_json_obj(self):
        return {
            "basis": self.basis,
            "coeffs": {w.name(): c.to_json_obj() for w, c in self.items()},
        }


class KTheory:
    """Operator calculus on the localized K-theory of G/B for one root system."""

    def __init__(self, rs):
        self.rs = rs
        self.space = Space(rs)
        self.nvars = rs.rank
        self._cache = {}

    # -- generators of the fixed point basis ---------------------------------

    def iota(self, w):
        return self.space.point_class(w)

    def zero(self):
        return self.space.zero()

    def _minus_one_plus_y(self):
        n = self.nvars
        z = (0,) * n
        return LaurentPolynomial({(z, 0): -1, (z, 1): -1}, n)

    # -- operators ------------------------------------------------------------

    def _apply(self, a, i, diag, off):
        """Linear extension of op(iota_v) = diag(v) iota_v + off(v) iota_{v s_i}."""
        s = self.rs.simple_reflection(i)
        alpha = self.rs.simple_root(i)
        out = {}
        for v, c in a.coeffs.items():
            va = v.act(alpha)
            d = c * diag(va)
            if v in out:
                out[v] = out[v] + d
            else:
                out[v] = d
            vs = v * s
            o = c * off(va)
            if vs in out:
                out[vs] = out[vs] + o
            else:
                out[vs] = o
        return KClass(self.space, {w: c.reduce() for w, c in out.items()})

    def demazure(self, i, a):
        n = self.nvars
        one = LaurentPolynomial.const(1, n)
        return self._apply(
            a,
            i,
            lambda va: FactoredFraction(one, (one_minus_e(va),)),
            lambda va: FactoredFraction(one, (one_minus_e(neg_weight(va)),)),
        )

    def dl_operator(self, i, a):
        m1y = self._minus_one_plus_y()
        return self._apply(
            a,
            i,
            lambda va: FactoredFraction(m1y, (one_minus_e(neg_weight(va)),)),
            lambda va: FactoredFraction(
                product_of_factors((one_plus_ye(neg_weight(va)),), self.nvars),
                (one_minus_e(neg_weight(va)),),
            ),
        )

    def dl_dual(self, i, a):
        m1y = self._minus_one_plus_y()
        return self._apply(
            a,
            i,
            lambda va: FactoredFraction(m1y, (one_minus_e(neg_weight(va)),)),
            lambda va: FactoredFraction(
                product_of_factors((one_plus_ye(va),), self.nvars),
                (one_minus_e(neg_weight(va)),),
            ),
        )

    def dl_dual_inverse(self, i, a):
        n = self.nvars
        z = (0,) * n
        minus_one_plus_yinv = LaurentPolynomial({(z, 0): -1, (z, -1): -1}, n)

        def off_num(va):
            return LaurentPolynomial({(z, -1): -1, (tuple(va), 0): -1}, n)

        return self._apply(
            a,
            i,
            lambda va: FactoredFraction(minus_one_plus_yinv, (one_minus_e(va),)),
            lambda va: FactoredFraction(off_num(va), (one_minus_e(neg_weight(va)),)),
        )

    def l_operator(self, i, a):
        """The shifted dual operator: dual DL plus (1+y) times the identity."""
        n = self.nvars
        z = (0,) * n
        one_plus_y = LaurentPolynomial({(z, 0): 1, (z, 1): 1}, n)
        return self.dl_dual(i, a) + a.scale(one_plus_y)

    def line_bundle_mul(self, lam, a):
        lam = tuple(lam)
        if len(lam) != self.nvars:
            raise RootSystemError("weight rank mismatch")
        return KClass(
            a.space,
            {w: c.scale_monomial(w.act(lam)) for w, c in a.coeffs.items()},
        )

    def trivial_bundle_mul(self, lam, a):
        """Tensor by the trivial line bundle of weight lam (a global scalar)."""
        mono = LaurentPolynomial.monomial(tuple(lam))
        return a.scale(mono)

    def star(self, a):
        """Vector-bundle duality: e^lam -> e^{-lam} on restrictions, y fixed.

        On iota-basis coefficients this is the coefficientwise duality times
        the bookkeeping monomial (-1)^dim e^{-2 w rho} coming from dualizing
        the self-intersection product at each fixed point.
        """
        sign = (-1) ** self.space.dim
        two_rho = tuple(2 * r for r in self.rs.rho)
        out = {}
        for w, c in a.coeffs.items():
            twist = LaurentPolynomial.monomial(neg_weight(w.act(two_rho)), coeff=sign)
            out[w] = c.star() * twist
        return KClass(a.space, out)

    def psi(self, a):
        """The rho-twisted duality: trivial weight rho, line bundle rho, then star."""
        b = self.star(a)
        b = self.line_bundle_mul(self.rs.rho, b)
        return self.trivial_bundle_mul(self.rs.rho, b)

    def apply_word(self, op, v, a):
        """Apply op(i, -) along a reduced word of v, rightmost letter first."""
        for i in reversed(v.word):
            a = op(i, a)
        return a

    # -- Schubert-type classes -------------------------------------------------

    def _cached(self, kind, w, builder):
        key = (kind, w)
        val = self._cache.get(key)
        if val is None:
            val = builder()
            self._cache[key] = val
        return val

    def structure_sheaf(self, w):
        def build():
            if w.length == 0:
                return self.iota(w)
            i = w.word[-1]
            return self.demazure(i, self.structure_sheaf(w * self.rs.simple_reflection(i)))

        return self._cached("O", w, build)

    def ideal_sheaf(self, w):
        def build():
            if w.length == 0:
                return self.iota(w)
            i = w.word[-1]
            prev = self.ideal_sheaf(w * self.rs.simple_reflection(i))
            return self.demazure(i, prev) - prev

        return self._cached("I", w, build)

    def w0_twist(self, a):
        """Left translation by the longest element, as a basis relabelling."""
        w0 = self.rs.longest_element()
        return KClass(
            a.space, {w0 * w: c.weyl_map(w0) for w, c in a.coeffs.items()}
        )

    def opp_structure_sheaf(self, w):
        return self._cached(
            "Oop", w, lambda: self.w0_twist(self.structure_sheaf(self.rs.longest_element() * w))
        )

    def opp_ideal_sheaf(self, w):
        return self._cached(
            "Iop", w, lambda: self.w0_twist(self.ideal_sheaf(self.rs.longest_element() * w))
        )

    def basis_class(self, basis, w):
        if basis == "O":
            return self.structure_sheaf(w)
        if basis == "I":
            return self.ideal_sheaf(w)
        if basis == "Oop":
            return self.opp_structure_sheaf(w)
        if basis == "Iop":
            return self.opp_ideal_sheaf(w)
        if basis == "iota":
            return self.iota(w)
        raise ValueError(f"unknown basis {basis!r}")

    # -- pairings ---------------------------------------------------------------

    def integrate(self, a):
        """Push-forward to the point: the sum of iota-basis coefficients."""
        total = FactoredFraction.zero(self.nvars)
        for c in a.coeffs.values():
            total = total + c
        return total.reduce()

    def pair(self, a, b):
        return self.integrate(a * b)

    def lambda_y_cotangent_factors(self, w):
        """Factors of lambda_y(T*X) restricted at the fixed point w."""
        return tuple(one_plus_ye(mu) for mu in self.space.cotangent_weights(w))

    # -- expansions ---------------------------------------------------------------

    def expand(self, a, basis="O", expect_integral=True):
        if basis == "iota":
            coeffs = {}
            for w, c in a.coeffs.items():
                coeffs[w] = c.as_polynomial() if expect_integral else c
            return SchubertExpansion(a.space, basis, coeffs)
        descending = basis in ("O", "I")
        residual = dict(a.coeffs)
        coeffs = {}
        steps = 0
        bound = len(self.rs.weyl_group()) + 1
        while residual:
            steps += 1
            if steps > bound:
                raise StructuralError("expansion did not terminate")
            key = (lambda w: (w.length, w.word))
            pivot = (max if descending else min)(residual, key=key)
            pivot_coeff = self.basis_class(basis, pivot).coefficient(pivot).reduce()
            if pivot_coeff.num != LaurentPolynomial.const(1, self.nvars):
                raise StructuralError("basis pivot is not an inverted product")
            c_frac = (residual[pivot] * product_of_factors(pivot_coeff.den, self.nvars)).reduce()
            if expect_integral:
                try:
                    c = c_frac.as_polynomial()
                except ArithmeticError as exc:
                    raise IntegralityError(
                        f"coefficient at {pivot.name()} is not a Laurent polynomial"
                    ) from exc
            else:
                c = c_frac
            coeffs[pivot] = c
            cls = self.basis_class(basis, pivot)
            for w, d in cls.coeffs.items():
                cur = residual.get(w, FactoredFraction.zero(self.nvars))
                nxt = (cur - d * c).reduce()
                if nxt.is_zero():
                    residual.pop(w, None)
                else:
                    residual[w] = nxt
            if pivot in residual:
                raise StructuralError("pivot did not cancel; support is not triangular")
        return SchubertExpansion(a.space, basis, coeffs)

    def from_expansion(self, expansion):
        out = self.zero()
        for w, c in expansion.coeffs.items():
            out = out + self.basis_class(expansion.basis, w).scale(c)
        return out


_KTHEORY = {}


def ktheory(rs):
    kt = _KTHEORY.get(rs)
    if kt is None:
        kt = KTheory(rs)
        _KTHEORY[rs] = kt
    return kt
