"""Pure-Python kernel for exact Laurent-polynomial term arithmetic.

Terms are dicts mapping (exponent tuple, y power) -> integer coefficient,
with no stored zeros.  A Cython twin (``_kernel_cy``) implements the same
five functions; ``schubmc.laurent`` picks whichever is importable.
"""


def lp_add(a, b):
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def lp_neg(a):
    return {k: -v for k, v in a.items()}


def lp_scale(a, c):
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def lp_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for (ea, ya), ca in a.items():
        for (eb, yb), cb in b.items():
            k = (tuple(x + y for x, y in zip(ea, eb)), ya + yb)
            c = out.get(k, 0) + ca * cb
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def lp_divide_exact(a, b):
    """Quotient a/b when it is exact over the integers, else None.

    Laurent divisibility reduces to polynomial divisibility after pulling
    the monomial content out of each operand: per-variable minimum orders
    of a product add, so the normalized quotient has no negative exponents.
    Division is lex leading-term elimination; any failed coefficient or
    exponent step certifies non-divisibility.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    nv = len(next(iter(a))[0]) + 1

    def flat(term):
        return term[0] + (term[1],)

    akeys = [flat(t) for t in a]
    bkeys = [flat(t) for t in b]
    ma = [min(k[i] for k in akeys) for i in range(nv)]
    mb = [min(k[i] for k in bkeys) for i in range(nv)]
    rem = {tuple(k[i] - ma[i] for i in range(nv)): c for k, c in zip(akeys, a.values())}
    div = {tuple(k[i] - mb[i] for i in range(nv)): c for k, c in zip(bkeys, b.values())}
    lead_b = max(div)
    cb = div[lead_b]
    quot = {}
    while rem:
        lead_a = max(rem)
        ca = rem[lead_a]
        if ca % cb:
            return None
        qk = tuple(x - y for x, y in zip(lead_a, lead_b))
        if any(x < 0 for x in qk):
            return None
        qc = ca // cb
        quot[qk] = qc
        for bk, bc in div.items():
            k = tuple(x + y for x, y in zip(qk, bk))
            c = rem.get(k, 0) - qc * bc
            if c:
                rem[k] = c
            else:
                rem.pop(k, None)
    off = [ma[i] - mb[i] for i in range(nv)]
    return {
        (tuple(q[i] + off[i] for i in range(nv - 1)), q[nv - 1] + off[nv - 1]): c
        for q, c in quot.items()
    }
