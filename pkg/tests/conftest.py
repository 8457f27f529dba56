import random

import pytest

from schubmc.kclasses import KClass, ktheory
from schubmc.laurent import FactoredFraction, LaurentPolynomial
from schubmc.roots import root_system


def random_kclass(rs, rng, y_inverted=False):
    """A small random class in the fixed-point basis with polynomial coefficients."""
    kt = ktheory(rs)
    coeffs = {}
    lo = -1 if y_inverted else 0
    for w in rs.weyl_group():
        if rng.random() < 0.6:
            terms = {}
            for _ in range(rng.randint(1, 3)):
                exp = tuple(rng.randint(-2, 2) for _ in range(rs.rank))
                terms[(exp, rng.randint(lo, 2))] = rng.randint(-4, 4)
            poly = LaurentPolynomial({k: v for k, v in terms.items() if v}, rs.rank)
            if poly:
                coeffs[w] = FactoredFraction(poly)
    if not coeffs:
        coeffs = {rs.identity: FactoredFraction.from_int(1, rs.rank)}
    return KClass(kt.space, coeffs)


@pytest.fixture
def rng():
    return random.Random(20260810)
