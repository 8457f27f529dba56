# cython: language_level=3
"""Compiled kernel for exact Laurent-polynomial term arithmetic.

Same contract as the pure twin ``_kernel_py``: terms are dicts mapping
(exponent tuple, y power) -> int with no stored zeros.  Coefficients stay
arbitrary-precision Python ints; the win is loop and tuple overhead.
"""


def lp_add(dict a, dict b):
    cdef dict out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def lp_neg(dict a):
    cdef dict out = {}
    for k, v in a.items():
        out[k] = -v
    return out


def lp_scale(dict a, c):
    cdef dict out
    if c == 0:
        return {}
    out = {}
    for k, v in a.items():
        out[k] = v * c
    return out


def lp_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, k, ke
    cdef Py_ssize_t i, n
    if len(a) > len(b):
        a, b = b, a
    for ka, ca in a.items():
        ea = <tuple> (<tuple> ka)[0]
        ya = (<tuple> ka)[1]
        n = len(ea)
        for kb, cb in b.items():
            eb = <tuple> (<tuple> kb)[0]
            ke = tuple([ea[i] + eb[i] for i in range(n)])
            k = (ke, ya + (<tuple> kb)[1])
            c = out.get(k, 0) + ca * cb
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def lp_divide_exact(dict a, dict b):
    cdef Py_ssize_t nv, i
    cdef dict rem, div, quot, out
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    for k0 in a:
        nv = len((<tuple> k0)[0]) + 1
        break

    def flat(t):
        return (<tuple> t)[0] + ((<tuple> t)[1],)

    akeys = [flat(t) for t in a]
    bkeys = [flat(t) for t in b]
    ma = [min([k[i] for k in akeys]) for i in range(nv)]
    mb = [min([k[i] for k in bkeys]) for i in range(nv)]
    rem = {}
    for k, c in zip(akeys, a.values()):
        rem[tuple([k[i] - ma[i] for i in range(nv)])] = c
    div = {}
    for k, c in zip(bkeys, b.values()):
        div[tuple([k[i] - mb[i] for i in range(nv)])] = c
    lead_b = max(div)
    cb = div[lead_b]
    quot = {}
    while rem:
        lead_a = max(rem)
        ca = rem[lead_a]
        if ca % cb:
            return None
        qk = tuple([x - y for x, y in zip(lead_a, lead_b)])
        for x in qk:
            if x < 0:
                return None
        qc = ca // cb
        quot[qk] = qc
        for bk, bc in div.items():
            k = tuple([x + y for x, y in zip(qk, <tuple> bk)])
            c = rem.get(k, 0) - qc * bc
            if c:
                rem[k] = c
            else:
                rem.pop(k, None)
    out = {}
    off = [ma[i] - mb[i] for i in range(nv)]
    for q, c in quot.items():
        key = (tuple([(<tuple> q)[i] + off[i] for i in range(nv - 1)]), (<tuple> q)[nv - 1] + off[nv - 1])
        out[key] = c
    return out
