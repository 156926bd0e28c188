"""Pure-Python term-map kernels.

A term map is a dict from dense exponent tuples (length 2n) to nonzero
exact rational coefficients.  These functions carry the hot inner loops
of the package; `_kernels.pyx` is the compiled twin with identical
semantics, selected at import time by `_backend`.
"""

from fractions import Fraction

BACKEND_NAME = "pure"

_ZERO = Fraction(0)


def add_terms(a, b):
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            cur = cur + v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def sub_terms(a, b):
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        if cur is None:
            out[k] = -v
        else:
            cur = cur - v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def neg_terms(a):
    return {k: -v for k, v in a.items()}


def scale_terms(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def mul_terms(a, b, bound):
    """Product of two term maps, dropping terms of total degree > bound.

    bound < 0 means no truncation.
    """
    out = {}
    if len(a) > len(b):
        a, b = b, a
    bitems = list(b.items())
    for ka, va in a.items():
        for kb, vb in bitems:
            key = tuple(x + y for x, y in zip(ka, kb))
            if bound >= 0 and sum(key) > bound:
                continue
            cur = out.get(key)
            if cur is None:
                out[key] = va * vb
            else:
                cur = cur + va * vb
                if cur:
                    out[key] = cur
                else:
                    del out[key]
    return out


def apply_linear_terms(a, rows):
    """Image of a term map under the linear vector field sum_k (sum_l c_kl z_l) d/dz_k.

    rows[k] is a tuple of (l, c_kl) pairs with nonzero c_kl.
    """
    out = {}
    for mono, coeff in a.items():
        for k, e in enumerate(mono):
            if not e:
                continue
            row = rows[k]
            if not row:
                continue
            base = coeff * e
            for l, rc in row:
                key = list(mono)
                key[k] = e - 1
                key[l] += 1
                key = tuple(key)
                cur = out.get(key)
                if cur is None:
                    out[key] = base * rc
                else:
                    cur = cur + base * rc
                    if cur:
                        out[key] = cur
                    else:
                        del out[key]
    return out


def truncate_terms(a, bound):
    return {k: v for k, v in a.items() if sum(k) <= bound}
