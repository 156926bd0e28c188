"""Exact sparse polynomial arithmetic over the rationals and Gaussian rationals.

Polynomials live in the 2n variables x1, y1, ..., xn, yn.  Variable k is
x_{k//2+1} for even k and y_{k//2+1} for odd k, so each (x_i, y_i) pair is
contiguous.  Terms are stored as a dict mapping dense exponent tuples of
length 2n to nonzero Fraction coefficients:

    {(2, 0, 0, 1): Fraction(3, 2), (0, 1, 0, 0): Fraction(-1)}

is the polynomial rendered as "3/2*x1^2*y2 - 1*y1" for n = 2.

All arithmetic is exact.  An optional total-degree bound truncates eagerly
after multiplication; bounds combine by min.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple

from . import _backend
from .errors import ValidationError

#: Dense exponent vector of length 2n.
Monomial = Tuple[int, ...]


def mono_degree(m: Monomial) -> int:
    return sum(m)


def var_name(k: int) -> str:
    return ("x" if k % 2 == 0 else "y") + str(k // 2 + 1)


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational coefficient, got {type(c).__name__}")


def _combine_bounds(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("n", "terms", "degree_bound")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None,
                 degree_bound: int | None = None):
        if n < 0:
            raise ValidationError("ambient half-dimension must be non-negative")
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(mono)
                if len(mono) != 2 * n:
                    raise ValidationError(
                        f"exponent vector {mono} does not match 2n = {2 * n}")
                if any(e < 0 for e in mono):
                    raise ValidationError(f"negative exponent in {mono}")
                coeff = _coerce(coeff)
                if not coeff:
                    continue
                if degree_bound is not None and sum(mono) > degree_bound:
                    continue
                cur = clean.get(mono)
                if cur is not None:
                    coeff = cur + coeff
                    if not coeff:
                        del clean[mono]
                        continue
                clean[mono] = coeff
        self.n = n
        self.terms = clean
        self.degree_bound = degree_bound

    @classmethod
    def _raw(cls, n: int, terms: dict, degree_bound=None) -> "Poly":
        """Wrap an already-canonical term dict without copying or checks."""
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        p.degree_bound = degree_bound
        return p

    @classmethod
    def zero(cls, n: int, degree_bound=None) -> "Poly":
        return cls._raw(n, {}, degree_bound)

    @classmethod
    def constant(cls, n: int, c, degree_bound=None) -> "Poly":
        c = _coerce(c)
        return cls._raw(n, {(0,) * (2 * n): c} if c else {}, degree_bound)

    @classmethod
    def variable(cls, n: int, k: int, degree_bound=None) -> "Poly":
        if not 0 <= k < 2 * n:
            raise ValidationError(f"variable index {k} out of range for n = {n}")
        mono = tuple(1 if i == k else 0 for i in range(2 * n))
        return cls._raw(n, {mono: Fraction(1)}, degree_bound)

    @classmethod
    def monomial(cls, n: int, exponents: Iterable[int], coeff=1,
                 degree_bound=None) -> "Poly":
        return cls(n, {tuple(exponents): coeff}, degree_bound)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(map(sum, self.terms))

    def coeff(self, exponents: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    __hash__ = None

    # -- arithmetic ------------------------------------------------------

    def _check_compat(self, other: "Poly"):
        if self.n != other.n:
            raise ValidationError(
                f"ambient dimension mismatch: n = {self.n} vs n = {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compat(other)
        bound = _combine_bounds(self.degree_bound, other.degree_bound)
        terms = _backend.kernels.add_terms(self.terms, other.terms)
        if bound is not None:
            terms = _backend.kernels.truncate_terms(terms, bound)
        return Poly._raw(self.n, terms, bound)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compat(other)
        bound = _combine_bounds(self.degree_bound, other.degree_bound)
        terms = _backend.kernels.sub_terms(self.terms, other.terms)
        if bound is not None:
            terms = _backend.kernels.truncate_terms(terms, bound)
        return Poly._raw(self.n, terms, bound)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly._raw(self.n, _backend.kernels.neg_terms(self.terms),
                         self.degree_bound)

    def scale(self, c) -> "Poly":
        return Poly._raw(self.n, _backend.kernels.scale_terms(self.terms, _coerce(c)),
                         self.degree_bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compat(other)
        bound = _combine_bounds(self.degree_bound, other.degree_bound)
        terms = _backend.kernels.mul_terms(self.terms, other.terms,
                                           -1 if bound is None else bound)
        return Poly._raw(self.n, terms, bound)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValidationError("polynomial powers must be non-negative integers")
        result = Poly.constant(self.n, 1, self.degree_bound)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def truncate(self, bound: int) -> "Poly":
        return Poly._raw(self.n, _backend.kernels.truncate_terms(self.terms, bound),
                         bound)

    # -- calculus --------------------------------------------------------

    def partial(self, var: int) -> "Poly":
        """Exact partial derivative with respect to variable `var`."""
        if not 0 <= var < 2 * self.n:
            raise ValidationError(f"variable index {var} out of range")
        out = {}
        for mono, coeff in self.terms.items():
            e = mono[var]
            if not e:
                continue
            key = mono[:var] + (e - 1,) + mono[var + 1:]
            out[key] = coeff * e
        return Poly._raw(self.n, out, self.degree_bound)

    def evaluate(self, point: Sequence):
        """Value at a point of length 2n; exact on rational points, IEEE
        double when any coordinate is a float."""
        if len(point) != 2 * self.n:
            raise ValidationError(
                f"point has length {len(point)}, expected {2 * self.n}")
        use_float = any(isinstance(v, float) for v in point)
        if use_float:
            total = 0.0
            pt = [float(v) for v in point]
            for mono, coeff in self.terms.items():
                term = float(coeff)
                for v, e in zip(pt, mono):
                    if e:
                        term *= v ** e
                total += term
            return total
        total = Fraction(0)
        pt = [_coerce(v) for v in point]
        for mono, coeff in self.terms.items():
            term = coeff
            for v, e in zip(pt, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    def homogeneous_components(self) -> list:
        """List of (degree, component) pairs, ascending, omitting zeros."""
        buckets = {}
        for mono, coeff in self.terms.items():
            buckets.setdefault(sum(mono), {})[mono] = coeff
        return [(d, Poly._raw(self.n, t, self.degree_bound))
                for d, t in sorted(buckets.items())]

    def homogeneous_part(self, d: int) -> "Poly":
        out = {m: c for m, c in self.terms.items() if sum(m) == d}
        return Poly._raw(self.n, out, self.degree_bound)

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms sorted by descending (total degree,
        exponent vector), coefficients as reduced fractions, e.g.
        "3/2*x1^2*y2 - 1*y1"."""
        if not self.terms:
            return "0"
        ordered = sorted(self.terms.items(),
                         key=lambda item: (sum(item[0]), item[0]), reverse=True)
        pieces = []
        for i, (mono, coeff) in enumerate(ordered):
            factors = []
            for k, e in enumerate(mono):
                if e == 1:
                    factors.append(var_name(k))
                elif e > 1:
                    factors.append(f"{var_name(k)}^{e}")
            body = str(abs(coeff))
            if factors:
                body += "*" + "*".join(factors)
            if i == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()!r}, n={self.n})"


def x(i: int, n: int, degree_bound=None) -> Poly:
    """The coordinate x_i (1-based)."""
    if not 1 <= i <= n:
        raise ValidationError(f"x{i} out of range for n = {n}")
    return Poly.variable(n, 2 * (i - 1), degree_bound)


def y(i: int, n: int, degree_bound=None) -> Poly:
    """The coordinate y_i (1-based)."""
    if not 1 <= i <= n:
        raise ValidationError(f"y{i} out of range for n = {n}")
    return Poly.variable(n, 2 * (i - 1) + 1, degree_bound)


def poisson(f: Poly, g: Poly) -> Poly:
    """Poisson bracket {f, g} = sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i).

    The sign convention is fixed so that the Hamiltonian field of q acts by
    X_q(g) = {q, g}; with this choice {x1^2+y1^2, .} is the standard
    elliptic field 2(-y1 d/dx1 + x1 d/dy1).
    """
    if f.n != g.n:
        raise ValidationError("ambient dimension mismatch in poisson bracket")
    n = f.n
    total = Poly.zero(n, _combine_bounds(f.degree_bound, g.degree_bound))
    for i in range(n):
        xi, yi = 2 * i, 2 * i + 1
        total = total + f.partial(xi) * g.partial(yi) - f.partial(yi) * g.partial(xi)
    return total


def substitute_linear(p: Poly, matrix) -> Poly:
    """Exact substitution p(M w): old variable k becomes the linear form
    sum_l M[k][l] * w_l in the new variables."""
    two_n = 2 * p.n
    forms = []
    for k in range(two_n):
        row = matrix[k]
        terms = {}
        for l in range(two_n):
            c = _coerce(row[l])
            if c:
                mono = tuple(1 if j == l else 0 for j in range(two_n))
                terms[mono] = c
        forms.append(Poly._raw(p.n, terms))
    powers = [{0: Poly.constant(p.n, 1)} for _ in range(two_n)]

    def form_power(k, e):
        cache = powers[k]
        if e not in cache:
            cache[e] = form_power(k, e - 1) * forms[k]
        return cache[e]

    out = Poly.zero(p.n, p.degree_bound)
    for mono, coeff in p.terms.items():
        piece = Poly.constant(p.n, coeff)
        for k, e in enumerate(mono):
            if e:
                piece = piece * form_power(k, e)
        out = out + piece
    return out


class CRat:
    """Exact Gaussian rational a + b*i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, CRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _as_crat(other)
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_crat(other)
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_crat(other) - self

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_crat(other)
        return CRat(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_crat(other)
        d = other.re * other.re + other.im * other.im
        if not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return CRat((self.re * other.re + self.im * other.im) / d,
                    (self.im * other.re - self.re * other.im) / d)

    def __repr__(self):
        return f"CRat({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}*i"


def _as_crat(v) -> CRat:
    if isinstance(v, CRat):
        return v
    if isinstance(v, (int, Fraction)):
        return CRat(v)
    raise TypeError(f"cannot interpret {type(v).__name__} as a Gaussian rational")


CRat.ZERO = CRat(0)
CRat.ONE = CRat(1)
CRat.I = CRat(0, 1)


class CPoly:
    """Polynomial with Gaussian-rational coefficients, stored as a real and
    an imaginary Poly sharing n and degree bound."""

    __slots__ = ("re", "im")

    def __init__(self, re: Poly, im: Poly | None = None):
        if im is None:
            im = Poly.zero(re.n, re.degree_bound)
        if re.n != im.n:
            raise ValidationError("CPoly parts have mismatched ambient dimension")
        if re.degree_bound != im.degree_bound:
            bound = _combine_bounds(re.degree_bound, im.degree_bound)
            re = re if re.degree_bound == bound else re.truncate(bound)
            im = im if im.degree_bound == bound else im.truncate(bound)
        self.re = re
        self.im = im

    @classmethod
    def from_poly(cls, p: Poly) -> "CPoly":
        return cls(p, Poly.zero(p.n, p.degree_bound))

    @classmethod
    def zero(cls, n: int, degree_bound=None) -> "CPoly":
        return cls(Poly.zero(n, degree_bound))

    @property
    def n(self) -> int:
        return self.re.n

    @property
    def degree_bound(self):
        return self.re.degree_bound

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def conjugate(self) -> "CPoly":
        return CPoly(self.re, -self.im)

    def as_real(self) -> Poly:
        """The real part, raising if the imaginary part is nonzero."""
        if not self.im.is_zero:
            raise ValidationError("imaginary part did not cancel: "
                                  f"{self.im.render()}")
        return self.re

    def coeff(self, exponents) -> CRat:
        key = tuple(exponents)
        return CRat(self.re.terms.get(key, Fraction(0)),
                    self.im.terms.get(key, Fraction(0)))

    def cterms(self):
        """Iterate (monomial, (re, im)) over the union support."""
        zero = Fraction(0)
        re_t, im_t = self.re.terms, self.im.terms
        for mono, c in re_t.items():
            yield mono, (c, im_t.get(mono, zero))
        for mono, c in im_t.items():
            if mono not in re_t:
                yield mono, (zero, c)

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Poly):
            return self.im.is_zero and self.re == other
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        other = _as_cpoly(other, self.n)
        return CPoly(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_cpoly(other, self.n)
        return CPoly(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CPoly(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, CRat):
            return CPoly(self.re.scale(other.re) - self.im.scale(other.im),
                         self.re.scale(other.im) + self.im.scale(other.re))
        other = _as_cpoly(other, self.n)
        return CPoly(self.re * other.re - self.im * other.im,
                     self.re * other.im + self.im * other.re)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            return self * other if isinstance(other, CRat) else \
                CPoly(self.re * other, self.im * other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValidationError("polynomial powers must be non-negative integers")
        result = CPoly.from_poly(Poly.constant(self.n, 1, self.degree_bound))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def render(self) -> str:
        return f"({self.re.render()}) + i*({self.im.render()})"

    def __repr__(self):
        return f"CPoly(re={self.re.render()!r}, im={self.im.render()!r})"


def _as_cpoly(v, n: int) -> CPoly:
    if isinstance(v, CPoly):
        return v
    if isinstance(v, Poly):
        return CPoly.from_poly(v)
    if isinstance(v, (int, Fraction)):
        return CPoly.from_poly(Poly.constant(n, v))
    if isinstance(v, CRat):
        return CPoly(Poly.constant(n, v.re), Poly.constant(n, v.im))
    raise TypeError(f"cannot interpret {type(v).__name__} as a CPoly")
