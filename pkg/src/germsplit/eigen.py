"""Complex eigencoordinates for model components.

Every model field acts diagonally on monomials once elliptic components are
written in z = x + iy, zbar = x - iy and focus pairs in z1 = x_i + i*x_{i+1},
z2 = y_i + i*y_{i+1} (hyperbolic components are diagonal already).  These
helpers move polynomials to and from that basis and read off the integer
eigenvalues; everything is exact over the Gaussian rationals.

Slot convention: a transformed monomial reuses the component's variable
slots.  For an elliptic component the (x, y) slots hold the (z, zbar)
powers; for a focus pair the (x_i, y_i, x_{i+1}, y_{i+1}) slots hold the
(z1, z1bar, z2, z2bar) powers, in that order.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import InternalError
from .poly import CPoly, Poly
from .williamson import ELLIPTIC, FOCUS, HYPERBOLIC, ModelSystem

_F0 = Fraction(0)
_F1 = Fraction(1)

# i**k as an exact (re, im) pair.
_IPOW = ((_F1, _F0), (_F0, _F1), (-_F1, _F0), (_F0, -_F1))

_PAIR_TO = {}
_PAIR_FROM = {}


def _pair_to_eigen(a: int, b: int):
    """Expansion of u^a v^b with u = (w + wbar)/2, v = (w - wbar)/(2i),
    as a tuple of ((p, q), re, im) entries for w^p wbar^q."""
    key = (a, b)
    hit = _PAIR_TO.get(key)
    if hit is not None:
        return hit
    scale = Fraction(1, 2 ** (a + b))
    # 1/i^b = (-i)^b = i^(3b mod 4)
    ire, iim = _IPOW[(3 * b) % 4]
    acc = {}
    for s in range(a + 1):
        ca = comb(a, s)
        for t in range(b + 1):
            c = Fraction(ca * comb(b, t) * (-1) ** (b - t)) * scale
            p = s + t
            q = a + b - p
            acc[(p, q)] = acc.get((p, q), _F0) + c
    out = tuple(((p, q), c * ire, c * iim)
                for (p, q), c in acc.items() if c)
    _PAIR_TO[key] = out
    return out


def _pair_from_eigen(p: int, q: int):
    """Expansion of w^p wbar^q with w = u + iv, as ((a, b), re, im) entries
    for u^a v^b."""
    key = (p, q)
    hit = _PAIR_FROM.get(key)
    if hit is not None:
        return hit
    acc = {}
    for s in range(p + 1):
        cp = comb(p, s)
        for t in range(q + 1):
            ire, iim = _IPOW[(s + 3 * t) % 4]
            c = Fraction(cp * comb(q, t))
            a = p + q - s - t
            b = s + t
            cur = acc.get((a, b), (_F0, _F0))
            acc[(a, b)] = (cur[0] + c * ire, cur[1] + c * iim)
    out = tuple(((a, b), cre, cim)
                for (a, b), (cre, cim) in acc.items() if cre or cim)
    _PAIR_FROM[key] = out
    return out


def _transform_positions(system: ModelSystem, comps):
    if comps is None:
        return tuple(c.index for c in system.components if c.kind != HYPERBOLIC)
    return tuple(sorted(set(comps)))


def _expand_mono(system: ModelSystem, mono, positions, forward: bool):
    """Expansion of one monomial under the (forward or inverse) transform of
    the given component positions, as a tuple of (mono, re, im)."""
    cache = system._eigen_cache
    key = (forward, positions, mono)
    hit = cache.get(key)
    if hit is not None:
        return hit
    base = list(mono)
    factor_lists = []
    for pos in positions:
        comp = system.components[pos]
        if comp.kind == HYPERBOLIC:
            continue
        v = comp.var_indices
        if comp.kind == ELLIPTIC:
            u0, u1 = v
            table = _pair_to_eigen if forward else _pair_from_eigen
            entries = table(mono[u0], mono[u1])
            factor_lists.append(
                tuple((((u0, e[0][0]), (u1, e[0][1])), e[1], e[2])
                      for e in entries))
            base[u0] = base[u1] = 0
        else:
            u1, v1, u2, v2 = v
            if forward:
                # x-pair (x_i, x_{i+1}) -> (z1, z1bar); y-pair -> (z2, z2bar).
                ex = _pair_to_eigen(mono[u1], mono[u2])
                ey = _pair_to_eigen(mono[v1], mono[v2])
                fx = tuple((((u1, e[0][0]), (v1, e[0][1])), e[1], e[2]) for e in ex)
                fy = tuple((((u2, e[0][0]), (v2, e[0][1])), e[1], e[2]) for e in ey)
            else:
                # (z1, z1bar) -> (x_i, x_{i+1}); (z2, z2bar) -> (y_i, y_{i+1}).
                ex = _pair_from_eigen(mono[u1], mono[v1])
                ey = _pair_from_eigen(mono[u2], mono[v2])
                fx = tuple((((u1, e[0][0]), (u2, e[0][1])), e[1], e[2]) for e in ex)
                fy = tuple((((v1, e[0][0]), (v2, e[0][1])), e[1], e[2]) for e in ey)
            factor_lists.append(fx)
            factor_lists.append(fy)
            base[u1] = base[v1] = base[u2] = base[v2] = 0
    acc = {tuple(base): (_F1, _F0)}
    for factors in factor_lists:
        nxt = {}
        for m, (vre, vim) in acc.items():
            for slots, fre, fim in factors:
                mm = list(m)
                for slot, e in slots:
                    mm[slot] += e
                mm = tuple(mm)
                nre = vre * fre - vim * fim
                nim = vre * fim + vim * fre
                cur = nxt.get(mm)
                if cur is None:
                    nxt[mm] = (nre, nim)
                else:
                    nxt[mm] = (cur[0] + nre, cur[1] + nim)
        acc = nxt
    out = tuple((m, c[0], c[1]) for m, c in acc.items() if c[0] or c[1])
    cache[key] = out
    return out


def _transform(obj, system: ModelSystem, comps, forward: bool) -> CPoly:
    positions = _transform_positions(system, comps)
    if isinstance(obj, Poly):
        re_in, im_in = obj.terms, {}
        n, bound = obj.n, obj.degree_bound
    else:
        re_in, im_in = obj.re.terms, obj.im.terms
        n, bound = obj.n, obj.degree_bound
    re_out, im_out = {}, {}

    def feed(terms, rot):
        # rot = False feeds c, rot = True feeds i*c (imaginary-part source).
        for mono, c in terms.items():
            for m, fre, fim in _expand_mono(system, mono, positions, forward):
                if rot:
                    dre, dim = -c * fim, c * fre
                else:
                    dre, dim = c * fre, c * fim
                if dre:
                    cur = re_out.get(m)
                    if cur is None:
                        re_out[m] = dre
                    else:
                        cur = cur + dre
                        if cur:
                            re_out[m] = cur
                        else:
                            del re_out[m]
                if dim:
                    cur = im_out.get(m)
                    if cur is None:
                        im_out[m] = dim
                    else:
                        cur = cur + dim
                        if cur:
                            im_out[m] = cur
                        else:
                            del im_out[m]

    feed(re_in, False)
    if im_in:
        feed(im_in, True)
    return CPoly(Poly._raw(n, re_out, bound), Poly._raw(n, im_out, bound))


def to_eigen(obj, system: ModelSystem, comps=None) -> CPoly:
    """Rewrite a Poly or CPoly in the complex eigencoordinates of the given
    component positions (default: every elliptic and focus component)."""
    return _transform(obj, system, comps, True)


def from_eigen(obj, system: ModelSystem, comps=None) -> CPoly:
    """Inverse of `to_eigen` over the same component positions."""
    return _transform(obj, system, comps, False)


def from_eigen_real(obj, system: ModelSystem, comps=None) -> Poly:
    """Inverse transform that must land in real polynomials; a nonzero
    imaginary residue is a defect, not user error."""
    out = from_eigen(obj, system, comps)
    if not out.im.is_zero:
        raise InternalError(
            "imaginary parts failed to cancel in an eigenbasis round trip: "
            + out.im.render())
    return out.re


def field_eigenvalue(system: ModelSystem, mono, field: int):
    """Integer eigenvalue pair (re, im) of an eigenbasis monomial under
    field index `field` (0-based)."""
    comp = system.field_component(field)
    v = comp.var_indices
    if comp.kind == ELLIPTIC:
        return (0, 2 * (mono[v[0]] - mono[v[1]]))
    if comp.kind == HYPERBOLIC:
        return (mono[v[1]] - mono[v[0]], 0)
    a, b, c, d = mono[v[0]], mono[v[1]], mono[v[2]], mono[v[3]]
    if field == comp.field_indices[0]:
        return (c + d - a - b, 0)
    return (0, b + d - a - c)


def eigenvalues(system: ModelSystem, mono):
    """Tuple of integer eigenvalue pairs of an eigenbasis monomial under
    X_1..X_r."""
    out = []
    for comp in system.components:
        v = comp.var_indices
        if comp.kind == ELLIPTIC:
            out.append((0, 2 * (mono[v[0]] - mono[v[1]])))
        elif comp.kind == HYPERBOLIC:
            out.append((mono[v[1]] - mono[v[0]], 0))
        else:
            a, b, c, d = mono[v[0]], mono[v[1]], mono[v[2]], mono[v[3]]
            out.append((c + d - a - b, 0))
            out.append((0, b + d - a - c))
    return tuple(out)


def is_joint_kernel_mono(system: ModelSystem, mono) -> bool:
    return all(lre == 0 and lim == 0 for lre, lim in eigenvalues(system, mono))


def cdiv(cre, cim, lre, lim):
    """Exact division (cre + i*cim) / (lre + i*lim) for integer eigenvalues."""
    den = lre * lre + lim * lim
    return ((cre * lre + cim * lim) / Fraction(den),
            (cim * lre - cre * lim) / Fraction(den))
