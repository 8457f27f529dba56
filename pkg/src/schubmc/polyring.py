"""Exact polynomial and truncated-series arithmetic for the cohomology layers.

``Poly`` is a sparse multivariate polynomial over an exact coefficient ring:
``Fraction`` for ordinary equivariant cohomology (variables are the simple
roots, with the degree-one formal variable appended last when homogenizing),
or ``YFrac`` (rationals in y with powers of 1+y inverted) for the Hirzebruch
layer.  ``GradedSeries`` is a degree-truncated series with homogeneous
components, the working form of completed equivariant (co)homology.
"""

from __future__ import annotations

from fractions import Fraction


class YFrac:
    """Element of Q[y, (1+y)^-1]: a y-polynomial over a power of (1+y)."""

    __slots__ = ("num", "k")

    def __init__(self, num, k=0, normalize=True):
        num = list(num)
        while num and num[-1] == 0:
            num.pop()
        if not num:
            self.num, self.k = (), 0
            return
        if normalize:
            while k > 0:
                q = _divide_one_plus_y(num)
                if q is None:
                    break
                num = q
                k -= 1
        self.num = tuple(Fraction(c) for c in num)
        self.k = k

    @classmethod
    def const(cls, c):
        return cls([Fraction(c)])

    @classmethod
    def y_power(cls, p, c=1):
        return cls([0] * p + [Fraction(c)])

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = YFrac.const(other)
        return isinstance(other, YFrac) and self.num == other.num and self.k == other.k

    def __hash__(self):
        return hash((self.num, self.k))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = YFrac.const(other)
        k = max(self.k, other.k)
        a = _mul_one_plus_y_power(list(self.num), k - self.k)
        b = _mul_one_plus_y_power(list(other.num), k - other.k)
        n = max(len(a), len(b))
        a += [Fraction(0)] * (n - len(a))
        b += [Fraction(0)] * (n - len(b))
        return YFrac([x + y for x, y in zip(a, b)], k)

    __radd__ = __add__

    def __neg__(self):
        return YFrac([-c for c in self.num], self.k, normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return YFrac([c * other for c in self.num], self.k)
        out = [Fraction(0)] * (len(self.num) + len(other.num) - 1) if self.num and other.num else []
        for i, a in enumerate(self.num):
            for j, b in enumerate(other.num):
                out[i + j] += a * b
        return YFrac(out, self.k + other.k)

    __rmul__ = __mul__

    def divide_by_one_plus_y(self, power=1):
        return YFrac(self.num, self.k + power)

    def inverse(self):
        """Inverse when the numerator is c (1+y)^m; raises otherwise."""
        num = list(self.num)
        m = 0
        while len(num) > 1:
            q = _divide_one_plus_y(num)
            if q is None:
                raise ArithmeticError(f"{self!r} is not invertible in Q[y,(1+y)^-1]")
            num = q
            m += 1
        if not num or num[0] == 0:
            raise ZeroDivisionError("inverting zero")
        inv = [Fraction(1, 1) / num[0]]
        return YFrac(_mul_one_plus_y_power(inv, self.k), m)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return YFrac([c / Fraction(other) for c in self.num], self.k)
        return self * other.inverse()

    def __pow__(self, n):
        out = YFrac.const(1)
        for _ in range(n):
            out = out * self
        return out

    def cleared(self):
        """True when no (1+y) denominator remains."""
        return self.k == 0

    def evaluate(self, v):
        v = Fraction(v)
        val = sum(c * v**i for i, c in enumerate(self.num))
        if self.k:
            if v == -1:
                raise ZeroDivisionError("pole at y = -1")
            val /= (1 + v) ** self.k
        return val

    def as_y_coeff_dict(self):
        if self.k:
            raise ArithmeticError("denominator (1+y) power not cleared")
        return {i: c for i, c in enumerate(self.num) if c}

    def __repr__(self):
        body = " + ".join(f"{c}*y^{i}" if i else str(c) for i, c in enumerate(self.num) if c)
        body = body or "0"
        return f"({body})/(1+y)^{self.k}" if self.k else f"({body})"


def _divide_one_plus_y(num):
    """Exact quotient of a coefficient list by (1 + y), or None."""
    if not num:
        return []
    out = []
    carry = Fraction(0)
    for c in num:
        cur = c - carry
        out.append(cur)
        carry = cur
    if out and out[-1] != 0:
        return None
    return out[:-1]


def _mul_one_plus_y_power(num, p):
    num = list(num)
    for _ in range(p):
        num = [
            (num[i] if i < len(num) else Fraction(0))
            + (num[i - 1] if i >= 1 else Fraction(0))
            for i in range(len(num) + 1)
        ]
    return num


class Poly:
    """Sparse multivariate polynomial over an exact coefficient ring."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars):
        self.terms = {k: v for k, v in terms.items() if v}
        self.nvars = nvars

    @classmethod
    def zero(cls, nvars):
        return cls({}, nvars)

    @classmethod
    def const(cls, c, nvars):
        c = Fraction(c) if isinstance(c, int) else c
        return cls({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def variable(cls, j, nvars, coeff=Fraction(1)):
        exp = tuple(int(i == j) for i in range(nvars))
        return cls({exp: coeff}, nvars)

    @classmethod
    def linear(cls, coeffs):
        nvars = len(coeffs)
        terms = {}
        for j, c in enumerate(coeffs):
            if c:
                exp = tuple(int(i == j) for i in range(nvars))
                terms[exp] = Fraction(c) if isinstance(c, int) else c
        return cls(terms, nvars)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k)
            c = v if c is None else c + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, YFrac)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly({k: v * other for k, v in self.terms.items()}, self.nvars)
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                c = out.get(k)
                c = va * vb if c is None else c + va * vb
                if c:
                    out[k] = c
                else:
                    del out[k]
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def map_coefficients(self, fn):
        return Poly({k: fn(v) for k, v in self.terms.items()}, self.nvars)

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def homogeneous_component(self, d):
        return Poly({k: v for k, v in self.terms.items() if sum(k) == d}, self.nvars)

    def homogeneous_split(self):
        out = {}
        for k, v in self.terms.items():
            out.setdefault(sum(k), {})[k] = v
        return {d: Poly(t, self.nvars) for d, t in sorted(out.items())}

    def is_homogeneous(self, d=None):
        degs = {sum(k) for k in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def evaluate(self, values):
        total = None
        for k, v in self.terms.items():
            term = v
            for x, e in zip(values, k):
                for _ in range(e):
                    term = term * x
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def set_variable(self, j, value):
        """Substitute a constant for variable j."""
        out = {}
        for k, v in self.terms.items():
            c = v
            if k[j]:
                c = c * (Fraction(value) ** k[j] if not isinstance(value, YFrac) else value ** k[j])
            key = k[:j] + (0,) + k[j + 1 :]
            prev = out.get(key)
            c2 = c if prev is None else prev + c
            if c2:
                out[key] = c2
            else:
                out.pop(key, None)
        return Poly(out, self.nvars)

    def drop_last_variable(self):
        """Forget the final variable (which must not occur)."""
        out = {}
        for k, v in self.terms.items():
            if k[-1]:
                raise ValueError("last variable still occurs")
            out[k[:-1]] = v
        return Poly(out, self.nvars - 1)

    def substitute_linear(self, images):
        """Substitute variable j -> images[j] (a Poly), ring homomorphism."""
        out = Poly.zero(images[0].nvars if images else self.nvars)
        for k, v in self.terms.items():
            term = Poly.const(v, out.nvars)
            for j, e in enumerate(k):
                for _ in range(e):
                    term = term * images[j]
            out = out + term
        return out

    def divide_exact(self, q):
        """Exact quotient self/q over the coefficient ring, else None."""
        if not q.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return Poly.zero(self.nvars)
        rem = dict(self.terms)
        lead_q = max(q.terms)
        cq = q.terms[lead_q]
        quot = {}
        while rem:
            lead_r = max(rem)
            if any(x < y for x, y in zip(lead_r, lead_q)):
                return None
            cr = rem[lead_r]
            qc = _coeff_div(cr, cq)
            if qc is None:
                return None
            qk = tuple(x - y for x, y in zip(lead_r, lead_q))
            quot[qk] = qc
            for bk, bc in q.terms.items():
                k = tuple(x + y for x, y in zip(qk, bk))
                c = rem.get(k, None)
                c = -qc * bc if c is None else c - qc * bc
                if c:
                    rem[k] = c
                else:
                    rem.pop(k, None)
        return Poly(quot, self.nvars)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, v in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{j}^{e}" if e > 1 else f"x{j}" for j, e in enumerate(k) if e)
            bits.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def _coeff_div(a, b):
    if isinstance(b, YFrac):
        try:
            return a * b.inverse() if isinstance(a, YFrac) else YFrac.const(a) * b.inverse()
        except ArithmeticError:
            return None
    if isinstance(a, YFrac):
        return a / b
    if b == 0:
        return None
    return a / b


class GradedSeries:
    """Degree-truncated series: homogeneous components indexed by degree <= cap."""

    __slots__ = ("comps", "cap", "nvars")

    def __init__(self, comps, cap, nvars):
        self.comps = {d: p for d, p in comps.items() if p and d <= cap}
        self.cap = cap
        self.nvars = nvars

    @classmethod
    def zero(cls, cap, nvars):
        return cls({}, cap, nvars)

    @classmethod
    def const(cls, c, cap, nvars):
        p = Poly.const(c, nvars)
        return cls({0: p} if p else {}, cap, nvars)

    @classmethod
    def from_poly(cls, poly, cap):
        return cls(poly.homogeneous_split(), cap, poly.nvars)

    def __bool__(self):
        return bool(self.comps)

    def component(self, d):
        return self.comps.get(d, Poly.zero(self.nvars))

    def truncate(self, cap):
        return GradedSeries({d: p for d, p in self.comps.items() if d <= cap}, cap, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        for d in range(cap + 1):
            if self.component(d) != other.component(d):
                return False
        return True

    def __add__(self, other):
        if isinstance(other, GradedSeries):
            cap = min(self.cap, other.cap)
            out = {d: p for d, p in self.comps.items() if d <= cap}
            for d, p in other.comps.items():
                if d > cap:
                    continue
                q = out.get(d)
                q = p if q is None else q + p
                if q:
                    out[d] = q
                else:
                    out.pop(d, None)
            return GradedSeries(out, cap, self.nvars)
        return self + GradedSeries.const(other, self.cap, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries({d: -p for d, p in self.comps.items()}, self.cap, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, YFrac)):
            return GradedSeries({d: p * other for d, p in self.comps.items()}, self.cap, self.nvars)
        if isinstance(other, Poly):
            other = GradedSeries(other.homogeneous_split(), self.cap, self.nvars)
        cap = min(self.cap, other.cap)
        out = {}
        for da, pa in self.comps.items():
            for db, pb in other.comps.items():
                d = da + db
                if d > cap:
                    continue
                q = pa * pb
                prev = out.get(d)
                q = q if prev is None else prev + q
                if q:
                    out[d] = q
                else:
                    out.pop(d, None)
        return GradedSeries(out, cap, self.nvars)

    __rmul__ = __mul__

    def inverse(self):
        """Series inverse; the constant term must be an invertible coefficient."""
        c0 = self.component(0)
        if len(c0.terms) != 1 or (0,) * self.nvars not in c0.terms:
            raise ArithmeticError("constant term is not a unit")
        c = c0.terms[(0,) * self.nvars]
        cinv = c.inverse() if isinstance(c, YFrac) else 1 / c
        minus_g = -((self * cinv) - GradedSeries.const(1, self.cap, self.nvars))
        acc = GradedSeries.const(1, self.cap, self.nvars)
        power = GradedSeries.const(1, self.cap, self.nvars)
        for _ in range(self.cap):
            power = power * minus_g
            if not power:
                break
            acc = acc + power
        return acc * cinv

    def divide_by_poly(self, q):
        """Exact componentwise-compatible division by a homogeneous polynomial."""
        if not q.is_homogeneous():
            raise ValueError("divisor must be homogeneous")
        dq = q.degree()
        out = {}
        for d, p in self.comps.items():
            r = p.divide_exact(q)
            if r is None:
                return None
            if r:
                out[d - dq] = r
        return GradedSeries(out, self.cap - dq, self.nvars)

    def map_coefficients(self, fn):
        out = {}
        for d, p in self.comps.items():
            q = p.map_coefficients(fn)
            if q:
                out[d] = q
        return GradedSeries(out, self.cap, self.nvars)

    def __repr__(self):
        return "Series{" + ", ".join(f"{d}: {p!r}" for d, p in sorted(self.comps.items())) + f"}}@{self.cap}"


def exp_linear(linear, cap, coeff_one=None):
    """Truncated exponential of a homogeneous linear polynomial."""
    one = Fraction(1) if coeff_one is None else coeff_one
    comps = {0: Poly.const(one, linear.nvars)}
    power = Poly.const(one, linear.nvars)
    fact = 1
    for k in range(1, cap + 1):
        power = power * linear
        fact *= k
        comp = power * Fraction(1, fact)
        if comp:
            comps[k] = comp
    return GradedSeries(comps, cap, linear.nvars)


def series_of_linear(coeff_list, linear, cap):
    """sum_k c_k L^k as a graded series, for a homogeneous linear L."""
    comps = {}
    power = Poly.const(Fraction(1), linear.nvars)
    for k, c in enumerate(coeff_list):
        if k > cap:
            break
        if k:
            power = power * linear
        comp = power * c
        if comp:
            comps[k] = comp
    return GradedSeries(comps, cap, linear.nvars)


def univ_mul(a, b, cap):
    out = [YFrac.const(0) for _ in range(cap + 1)]
    for i, x in enumerate(a[: cap + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: cap + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def univ_inverse(a, cap):
    """Inverse of a univariate coefficient list with invertible constant term."""
    c0 = a[0]
    c0inv = c0.inverse() if isinstance(c0, YFrac) else YFrac.const(1) / YFrac.const(c0)
    out = [c0inv] + [YFrac.const(0)] * cap
    for n in range(1, cap + 1):
        s = YFrac.const(0)
        for k in range(1, min(n, len(a) - 1) + 1):
            s = s + a[k] * out[n - k]
        out[n] = -(c0inv * s)
    return out


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def todd_coefficients(cap):
    """Coefficients of x/(1 - e^-x) as a univariate series."""
    v = [YFrac.const(Fraction((-1) ** k, _factorial(k + 1))) for k in range(cap + 1)]
    return univ_inverse(v, cap)


def unnormalized_hirzebruch_coefficients(cap):
    """Coefficients of x (1 + y e^-x) / (1 - e^-x)."""
    v = [YFrac.const(Fraction((-1) ** k, _factorial(k + 1))) for k in range(cap + 1)]
    n = [
        (YFrac.const(1) if k == 0 else YFrac.const(0))
        + YFrac.y_power(1, Fraction((-1) ** k, _factorial(k)))
        for k in range(cap + 1)
    ]
    return univ_mul(n, univ_inverse(v, cap), cap)


def normalized_hirzebruch_coefficients(cap):
    """Coefficients of x (1 + y e^{-x(1+y)}) / (1 - e^{-x(1+y)})."""
    one_plus_y = YFrac([1, 1])
    v = [
        YFrac.const(Fraction((-1) ** k, _factorial(k + 1))) * one_plus_y**k
        for k in range(cap + 1)
    ]
    n = []
    for k in range(cap + 1):
        term = YFrac.y_power(1, Fraction((-1) ** k, _factorial(k))) * one_plus_y**k
        if k == 0:
            term = term + YFrac.const(1)
        n.append(term.divide_by_one_plus_y())
    return univ_mul(n, univ_inverse(v, cap), cap)
