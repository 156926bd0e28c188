"""Deformation complex of a full model system (r = n).

Cochains are alternating multilinear maps from the abelian algebra spanned
by e_1..e_n into polynomials, acting through {q(l), .}.  The differential
carries the 1/(k+1) normalization of the defining formula; per-degree
scalars do not affect d o d = 0 or any cohomological statement.

The quotient by the commutant is represented concretely by the canonical
joint-kernel projection, and the bracket/field sign relation is pinned in
one place: {h, q_i} = -X_i(h).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import CocycleError, InternalError, ValidationError
from .poincare import CocycleData, CocycleReport, joint_kernel_projection, solve
from .poly import Poly, poisson
from .williamson import ModelSystem


def _check_full_rank(system: ModelSystem):
    if system.r != system.n:
        raise ValidationError(
            "the deformation complex needs a full system (r = n); got "
            f"r = {system.r}, n = {system.n}")


def _sort_with_sign(indices):
    """Sorted tuple and permutation sign; sign 0 on repeated indices."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return tuple(sorted(idx)), 0
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                idx[i], idx[j] = idx[j], idx[i]
                sign = -sign
    return tuple(idx), sign


class Cochain:
    """Alternating q-linear map, stored by its values on sorted basis
    tuples; values on other tuples follow by antisymmetry."""

    def __init__(self, system: ModelSystem, degree: int, values=None):
        _check_full_rank(system)
        if degree < 0:
            raise ValidationError("cochain degree must be non-negative")
        self.system = system
        self.degree = degree
        clean = {}
        n = system.n
        if values:
            for key, p in values.items():
                key = tuple(key)
                if len(key) != degree:
                    raise ValidationError(
                        f"key {key} has wrong arity for degree {degree}")
                if any(not 0 <= i < n for i in key):
                    raise ValidationError(f"basis index out of range in {key}")
                skey, sign = _sort_with_sign(key)
                if sign == 0:
                    continue
                p = p if sign == 1 else -p
                if p.n != n:
                    raise ValidationError("cochain value has wrong dimension")
                cur = clean.get(skey)
                if cur is not None:
                    p = cur + p
                if p.is_zero:
                    clean.pop(skey, None)
                else:
                    clean[skey] = p
        self.values = clean

    @classmethod
    def zero(cls, system: ModelSystem, degree: int) -> "Cochain":
        return cls(system, degree)

    @classmethod
    def from_polys(cls, system: ModelSystem, polys) -> "Cochain":
        """Degree-1 cochain e_i -> polys[i]."""
        return cls(system, 1, {(i,): p for i, p in enumerate(polys)})

    def value(self, indices) -> Poly:
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return Poly.zero(self.system.n)
        p = self.values.get(key)
        if p is None:
            return Poly.zero(self.system.n)
        return p if sign == 1 else -p

    def polys(self):
        """Degree-1 convenience: the tuple (alpha(e_1), ..., alpha(e_n))."""
        if self.degree != 1:
            raise ValidationError("polys() applies to degree-1 cochains")
        return tuple(self.value((i,)) for i in range(self.system.n))

    @property
    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.system is other.system and self.degree == other.degree
                and self.values == other.values)

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, Cochain) or other.degree != self.degree:
            return NotImplemented
        merged = dict(self.values)
        for key, p in other.values.items():
            cur = merged.get(key)
            total = p if cur is None else cur + p
            if total.is_zero:
                merged.pop(key, None)
            else:
                merged[key] = total
        out = Cochain(self.system, self.degree)
        out.values = merged
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = Cochain(self.system, self.degree)
        out.values = {k: -p for k, p in self.values.items()}
        return out

    def scale(self, c) -> "Cochain":
        out = Cochain(self.system, self.degree)
        out.values = {k: q for k, q in
                      ((k, p.scale(c)) for k, p in self.values.items())
                      if not q.is_zero}
        return out

    def __repr__(self):
        return f"Cochain(degree={self.degree}, keys={sorted(self.values)})"


def differential(c: Cochain) -> Cochain:
    """d(phi)(l_1..l_{k+1}) = 1/(k+1) * sum_i (-1)^(i+1) {q(l_i), phi(without i)}."""
    system = c.system
    n = system.n
    k = c.degree
    scale = Fraction(1, k + 1)
    values = {}
    for key in combinations(range(n), k + 1):
        total = Poly.zero(n)
        for pos, l in enumerate(key):
            rest = key[:pos] + key[pos + 1:]
            inner = c.value(rest)
            if inner.is_zero:
                continue
            term = poisson(system.q[l], inner)
            total = total - term if pos % 2 else total + term
        total = total.scale(scale)
        if not total.is_zero:
            values[key] = total
    out = Cochain(system, k + 1)
    out.values = values
    return out


def is_cocycle(alpha: Cochain) -> CocycleReport:
    """Exact residuals {g_i, q_j} - {g_j, q_i} for a degree-1 cochain."""
    if alpha.degree != 1:
        raise ValidationError("cocycle predicate applies to degree-1 cochains")
    system = alpha.system
    g = alpha.polys()
    residuals = {}
    for i in range(system.n):
        for j in range(i + 1, system.n):
            residuals[(i, j)] = (poisson(g[i], system.q[j])
                                 - poisson(g[j], system.q[i]))
    return CocycleReport(residuals)


def coboundary_of(h: Poly, system: ModelSystem) -> Cochain:
    """The degree-1 coboundary e_i -> {h, q_i}.

    By the fixed bracket convention {h, q_i} = -X_i(h); the sign is pinned
    here and nowhere else.
    """
    _check_full_rank(system)
    return Cochain.from_polys(
        system, [poisson(h, system.q[i]) for i in range(system.n)])


def h1_witness(alpha: Cochain):
    """Explicit coboundary witness: h and kernel parts f with
    alpha(e_i) = f_i + {h, q_i} exactly.

    Delegates to the decomposition solver; since {h, q_i} = -X_i(h), the
    witness is h = -G for the canonical (f, G).
    """
    report = is_cocycle(alpha)
    if not report.ok:
        pairs = ", ".join(f"({i + 1},{j + 1})" for i, j in report.failing_pairs())
        raise CocycleError(f"not a cocycle: residuals nonzero for pairs {pairs}")
    system = alpha.system
    g = alpha.polys()
    dec = solve(CocycleData(system, g))
    h = -dec.G
    for i in range(system.n):
        residual = g[i] - dec.f[i] - poisson(h, system.q[i])
        if not residual.is_zero:
            raise InternalError("witness reassembly failed: " + residual.render())
    return h, list(dec.f)


class CocycleClass:
    """A degree-1 cocycle considered modulo commutant-valued cochains.

    Predicates go through the canonical representative, whose values have
    zero joint-kernel component, so they cannot depend on the choice of
    representative.
    """

    def __init__(self, alpha: Cochain):
        if alpha.degree != 1:
            raise ValidationError("cocycle classes are built from degree-1 cochains")
        self.alpha = alpha

    def canonical(self) -> Cochain:
        system = self.alpha.system
        polys = [p - joint_kernel_projection(p, system)
                 for p in self.alpha.polys()]
        return Cochain.from_polys(system, polys)

    def __eq__(self, other):
        if not isinstance(other, CocycleClass):
            return NotImplemented
        return self.canonical() == other.canonical()

    __hash__ = None

    def is_coboundary_witness(self):
        """The witness h for the class; classes always bound here."""
        return h1_witness(self.alpha)[0]
