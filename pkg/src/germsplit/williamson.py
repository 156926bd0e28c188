"""Williamson model systems.

Builds the standard commuting quadratics q_1..q_r and their Hamiltonian
vector fields for a type (k_e, k_h, k_f), applies linear vector fields to
polynomials, reads off monomial eigenvalues in the component's complex
coordinates, and detects the type of a commuting quadratic family from the
spectrum of a generic combination.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _backend
from .errors import ValidationError
from .poly import CPoly, CRat, Poly, poisson, substitute_linear

ELLIPTIC = "elliptic"
HYPERBOLIC = "hyperbolic"
FOCUS = "focus"


@dataclass(frozen=True)
class WilliamsonType:
    """Counts of elliptic, hyperbolic and focus-focus components in an
    ambient half-dimension n; r = k_e + k_h + 2*k_f fields occupy the first
    r coordinate pairs and the rest are spectators."""

    k_e: int
    k_h: int
    k_f: int
    n: int

    def __post_init__(self):
        if min(self.k_e, self.k_h, self.k_f) < 0 or self.n < 0:
            raise ValidationError("Williamson counts must be non-negative")
        if self.r > self.n:
            raise ValidationError(
                f"r = {self.r} exceeds ambient half-dimension n = {self.n}")

    @property
    def r(self) -> int:
        return self.k_e + self.k_h + 2 * self.k_f

    @property
    def s(self) -> int:
        """Number of components (focus pairs count once)."""
        return self.k_e + self.k_h + self.k_f

    def __str__(self) -> str:
        return f"({self.k_e},{self.k_h},{self.k_f})@{self.n}"

    @classmethod
    def parse(cls, text: str) -> "WilliamsonType":
        m = _re.fullmatch(r"\((\d+),(\d+),(\d+)\)@(\d+)", text.strip())
        if not m:
            raise ValidationError(
                f"cannot parse Williamson type {text!r}; expected (k_e,k_h,k_f)@n")
        return cls(int(m.group(1)), int(m.group(2)), int(m.group(3)), int(m.group(4)))


@dataclass(frozen=True)
class Component:
    """One elliptic/hyperbolic component or one focus-focus pair.

    `index` is the position in the system's component list, `field_indices`
    the 0-based positions of its field(s) among X_1..X_r, `var_indices` the
    variable slots it owns (2 for elliptic/hyperbolic, 4 for a pair).
    """

    kind: str
    index: int
    field_indices: tuple
    var_indices: tuple


class Derivation:
    """A linear vector field sum_k (A z)_k d/dz_k as an exact operator.

    Stored sparsely: rows[k] lists the (l, A_kl) pairs with A_kl != 0.
    Linear fields preserve total degree termwise.
    """

    __slots__ = ("n", "rows", "label")

    def __init__(self, n: int, rows, label: str = ""):
        clean = []
        for k in range(2 * n):
            row = tuple((int(l), c if isinstance(c, Fraction) else Fraction(c))
                        for l, c in rows[k] if c)
            clean.append(row)
        self.n = n
        self.rows = tuple(clean)
        self.label = label

    @classmethod
    def from_matrix(cls, n: int, matrix, label: str = "") -> "Derivation":
        rows = []
        for k in range(2 * n):
            rows.append([(l, matrix[k][l]) for l in range(2 * n) if matrix[k][l]])
        return cls(n, rows, label)

    def matrix(self):
        """Dense 2n x 2n Fraction matrix A."""
        size = 2 * self.n
        mat = [[Fraction(0)] * size for _ in range(size)]
        for k, row in enumerate(self.rows):
            for l, c in row:
                mat[k][l] = c
        return mat

    def apply(self, p):
        """Exact image of a Poly or CPoly; degree preserved termwise."""
        if isinstance(p, CPoly):
            return CPoly(self.apply(p.re), self.apply(p.im))
        if not isinstance(p, Poly):
            raise TypeError("Derivation.apply expects a Poly or CPoly")
        if p.n != self.n:
            raise ValidationError("ambient dimension mismatch in Derivation.apply")
        terms = _backend.kernels.apply_linear_terms(p.terms, self.rows)
        return Poly._raw(p.n, terms, p.degree_bound)

    __call__ = apply

    def commutes_with(self, other: "Derivation") -> bool:
        a, b = self.matrix(), other.matrix()
        size = 2 * self.n
        for i in range(size):
            for j in range(size):
                ab = sum(a[i][k] * b[k][j] for k in range(size))
                ba = sum(b[i][k] * a[k][j] for k in range(size))
                if ab != ba:
                    return False
        return True

    def __repr__(self):
        return f"Derivation({self.label or 'unlabelled'}, n={self.n})"


class ModelSystem:
    """Standard basis q_1..q_r with fields X_1..X_r for a Williamson type.

    Immutable after construction; instances own memo caches used by the
    eigencoordinate machinery.
    """

    def __init__(self, wtype: WilliamsonType, q, X, components):
        self.wtype = wtype
        self.q = tuple(q)
        self.X = tuple(X)
        self.components = tuple(components)
        self._eigen_cache = {}
        self._verify()

    @property
    def n(self) -> int:
        return self.wtype.n

    @property
    def r(self) -> int:
        return self.wtype.r

    @property
    def spectator_vars(self) -> tuple:
        return tuple(range(2 * self.r, 2 * self.n))

    def field_component(self, i: int) -> Component:
        """The component owning field index i."""
        for comp in self.components:
            if i in comp.field_indices:
                return comp
        raise ValidationError(f"field index {i} out of range")

    def _verify(self):
        r = self.r
        if len(self.q) != r or len(self.X) != r:
            raise ValidationError("model system must carry exactly r fields")
        for i, Xi in enumerate(self.X):
            for j, qj in enumerate(self.q):
                if not Xi.apply(qj).is_zero:
                    raise ValidationError(
                        f"X_{i + 1}(q_{j + 1}) != 0: model fields must commute "
                        "with every basis quadratic")
        for i in range(r):
            for j in range(i + 1, r):
                if not self.X[i].commutes_with(self.X[j]):
                    raise ValidationError(
                        f"[X_{i + 1}, X_{j + 1}] != 0: model fields must commute")

    def __repr__(self):
        return f"ModelSystem({self.wtype})"


def _zero_rows(n):
    return [[] for _ in range(2 * n)]


def standard_basis(wtype: WilliamsonType) -> ModelSystem:
    """The standard quadratics and fields of the given Williamson type.

    Components are laid out elliptic first, then hyperbolic, then focus
    pairs; component j occupies the coordinate pair(s) starting at x_j.
    """
    n = wtype.n
    q, X, components = [], [], []
    one, two = Fraction(1), Fraction(2)

    def var_poly(k):
        return Poly.variable(n, k)

    field = 0
    comp_index = 0
    for _ in range(wtype.k_e):
        u, v = 2 * field, 2 * field + 1
        q.append(var_poly(u) ** 2 + var_poly(v) ** 2)
        rows = _zero_rows(n)
        rows[u] = [(v, -two)]
        rows[v] = [(u, two)]
        X.append(Derivation(n, rows, label=f"X{field + 1} elliptic"))
        components.append(Component(ELLIPTIC, comp_index, (field,), (u, v)))
        field += 1
        comp_index += 1
    for _ in range(wtype.k_h):
        u, v = 2 * field, 2 * field + 1
        q.append(var_poly(u) * var_poly(v))
        rows = _zero_rows(n)
        rows[u] = [(u, -one)]
        rows[v] = [(v, one)]
        X.append(Derivation(n, rows, label=f"X{field + 1} hyperbolic"))
        components.append(Component(HYPERBOLIC, comp_index, (field,), (u, v)))
        field += 1
        comp_index += 1
    for _ in range(wtype.k_f):
        u1, v1, u2, v2 = 2 * field, 2 * field + 1, 2 * field + 2, 2 * field + 3
        q.append(var_poly(u1) * var_poly(v1) + var_poly(u2) * var_poly(v2))
        q.append(var_poly(u1) * var_poly(v2) - var_poly(u2) * var_poly(v1))
        rows1 = _zero_rows(n)
        rows1[u1] = [(u1, -one)]
        rows1[v1] = [(v1, one)]
        rows1[u2] = [(u2, -one)]
        rows1[v2] = [(v2, one)]
        rows2 = _zero_rows(n)
        rows2[u1] = [(u2, one)]
        rows2[v1] = [(v2, one)]
        rows2[u2] = [(u1, -one)]
        rows2[v2] = [(v1, -one)]
        X.append(Derivation(n, rows1, label=f"X{field + 1} focus"))
        X.append(Derivation(n, rows2, label=f"X{field + 2} focus"))
        components.append(Component(FOCUS, comp_index,
                                    (field, field + 1), (u1, v1, u2, v2)))
        field += 2
        comp_index += 1
    return ModelSystem(wtype, q, X, components)


def monomial_eigenvalue(comp: Component, exponents, field: int = 0) -> CRat:
    """Eigenvalue of a complex monomial under the component's field.

    `exponents` is a dense exponent vector over the full variable space,
    read in the component's complex coordinates: elliptic slots hold
    (z, zbar) powers (a, b) with eigenvalue 2i(a-b); hyperbolic slots are
    real already, eigenvalue k-j for x^j y^k; a focus pair holds
    (z1, z1bar, z2, z2bar) powers (a, b, c, d) with eigenvalue c+d-a-b
    under its first field and i(b+d-a-c) under its second.
    """
    if comp.kind == ELLIPTIC:
        a, b = exponents[comp.var_indices[0]], exponents[comp.var_indices[1]]
        return CRat(0, 2 * (a - b))
    if comp.kind == HYPERBOLIC:
        j, k = exponents[comp.var_indices[0]], exponents[comp.var_indices[1]]
        return CRat(k - j, 0)
    a = exponents[comp.var_indices[0]]
    b = exponents[comp.var_indices[1]]
    c = exponents[comp.var_indices[2]]
    d = exponents[comp.var_indices[3]]
    if field == 0:
        return CRat(c + d - a - b, 0)
    if field == 1:
        return CRat(0, b + d - a - c)
    raise ValidationError("a focus pair has exactly two fields")


_COMBINATION_ATTEMPTS = 5


def _combination_coeffs(r: int, attempt: int):
    # Fixed deterministic sequence; each retry changes the spread.
    base = attempt + 2
    return [Fraction(base ** i + attempt, 1) for i in range(1, r + 1)]


def _hamiltonian_matrix(quad: Poly):
    """Matrix A of the linear field X_quad, i.e. X_quad(z_k) = (A z)_k."""
    n = quad.n
    size = 2 * n
    mat = [[Fraction(0)] * size for _ in range(size)]
    for k in range(size):
        image = poisson(quad, Poly.variable(n, k))
        for mono, coeff in image.terms.items():
            if sum(mono) != 1:
                raise ValidationError("family member is not a quadratic form")
            l = mono.index(1)
            mat[k][l] = coeff
    return mat


def classify_family(quadratics: Sequence[Poly]) -> WilliamsonType:
    """Williamson type of a commuting family of r quadratics in 2r variables.

    Uses float eigenvalues of the Hamiltonian matrix of a generic linear
    combination; a real or imaginary part below 1e-9 times the spectral
    radius is treated as zero.  Retries with a different deterministic
    combination on a near-degenerate spectrum, up to 5 attempts.
    """
    quads = list(quadratics)
    if not quads:
        raise ValidationError("empty quadratic family")
    r = len(quads)
    n = quads[0].n
    if n != r:
        raise ValidationError(
            f"expected {r} quadratics in {2 * r} variables, got n = {n}")
    for p in quads:
        if p.n != n:
            raise ValidationError("family members have mismatched dimensions")
        if p.is_zero or any(sum(m) != 2 for m in p.terms):
            raise ValidationError("not a Cartan family: "
                                  "members must be nonzero quadratic forms")
    for i in range(r):
        for j in range(i + 1, r):
            if not poisson(quads[i], quads[j]).is_zero:
                raise ValidationError(
                    f"family does not commute: {{q{i + 1}, q{j + 1}}} != 0")

    mats = [_hamiltonian_matrix(p) for p in quads]
    last_problem = "degenerate spectrum"
    for attempt in range(_COMBINATION_ATTEMPTS):
        coeffs = _combination_coeffs(r, attempt)
        combo = np.zeros((2 * r, 2 * r))
        for c, mat in zip(coeffs, mats):
            combo += float(c) * np.array([[float(v) for v in row] for row in mat])
        eigs = np.linalg.eigvals(combo)
        radius = max(abs(eigs))
        if radius == 0:
            raise ValidationError("not a Cartan family: nilpotent combination")
        tol = 1e-9 * radius
        if min(abs(eigs[i] - eigs[j])
               for i in range(len(eigs)) for j in range(i + 1, len(eigs))) < 1e-6 * radius:
            last_problem = "near-degenerate spectrum"
            continue
        k_e = k_h = k_f = 0
        ok = True
        for ev in eigs:
            re_zero = abs(ev.real) < tol
            im_zero = abs(ev.imag) < tol
            if re_zero and im_zero:
                ok = False
                break
            if re_zero:
                k_e += 1
            elif im_zero:
                k_h += 1
            else:
                k_f += 1
        if not ok or k_e % 2 or k_h % 2 or k_f % 4:
            last_problem = "spectrum does not split into conjugate groups"
            continue
        k_e //= 2
        k_h //= 2
        k_f //= 4
        if k_e + k_h + 2 * k_f != r:
            last_problem = "component counts inconsistent with r"
            continue
        return WilliamsonType(k_e, k_h, k_f, n)
    raise ValidationError(f"not a Cartan family: {last_problem} after "
                          f"{_COMBINATION_ATTEMPTS} attempts")


def _symplectic_j(n: int):
    size = 2 * n
    mat = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        mat[2 * i][2 * i + 1] = Fraction(1)
        mat[2 * i + 1][2 * i] = Fraction(-1)
    return mat


def is_symplectic(matrix, n: int) -> bool:
    """Exact check of S^T J S = J for the interleaved coordinate order."""
    size = 2 * n
    J = _symplectic_j(n)
    for i in range(size):
        for j in range(size):
            acc = Fraction(0)
            for k in range(size):
                for l in range(size):
                    acc += matrix[k][i] * J[k][l] * matrix[l][j]
            if acc != J[i][j]:
                return False
    return True


def _identity(size):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(size)]
            for i in range(size)]


def _matmul(a, b):
    size = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)]
            for i in range(size)]


# Rational points on the unit circle used for exact in-block rotations.
_PYTHAGOREAN = [(Fraction(3, 5), Fraction(4, 5)),
                (Fraction(5, 13), Fraction(12, 13)),
                (Fraction(8, 17), Fraction(15, 17)),
                (Fraction(20, 29), Fraction(21, 29))]


def random_symplectic_matrix(n: int, rng) -> list:
    """Exact-rational symplectic matrix built from elementary shears and
    in-block Pythagorean rotations; symplecticity asserted on return."""
    size = 2 * n
    result = _identity(size)
    steps = rng.randint(4, 8)
    for _ in range(steps):
        gen = _identity(size)
        kind = rng.randrange(3)
        if kind == 0:
            # In-block shear x_i += t y_i or y_i += t x_i.
            i = rng.randrange(n)
            t = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if rng.randrange(2):
                gen[2 * i][2 * i + 1] = t
            else:
                gen[2 * i + 1][2 * i] = t
        elif kind == 1 or n == 1:
            # In-block rational rotation.
            i = rng.randrange(n)
            c, s = _PYTHAGOREAN[rng.randrange(len(_PYTHAGOREAN))]
            if rng.randrange(2):
                s = -s
            gen[2 * i][2 * i] = c
            gen[2 * i][2 * i + 1] = -s
            gen[2 * i + 1][2 * i] = s
            gen[2 * i + 1][2 * i + 1] = c
        else:
            # Cross-block shear from the quadratic y_i y_j or x_i x_j.
            i, j = rng.sample(range(n), 2)
            t = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
            if rng.randrange(2):
                gen[2 * i][2 * j + 1] = t
                gen[2 * j][2 * i + 1] = t
            else:
                gen[2 * i + 1][2 * j] = t
                gen[2 * j + 1][2 * i] = t
        result = _matmul(result, gen)
    if not is_symplectic(result, n):
        raise ValidationError("generated matrix failed the exact symplectic check")
    return result


def conjugate_quadratics(quadratics: Sequence[Poly], matrix) -> list:
    """Compose each quadratic with the linear map given by `matrix`."""
    return [substitute_linear(p, matrix) for p in quadratics]
