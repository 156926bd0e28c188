"""Per-component decompositions g = kernel_part + X(potential).

Each split is a diagonal projection/inversion in the component's complex
monomial basis, so it is exact and total on polynomials.  Potentials are
normalized to have no component on zero-eigenvalue monomials, which makes
every split a deterministic linear map; the kernel part is the unique
invariant summand.  Smooth-category flat corrections are identically zero
here, so uniqueness statements that hold "modulo flat functions" hold
exactly.

The quadrature counterparts of these operations (flow averages and flow
integrals) live in `oracles` as numeric cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .eigen import cdiv, field_eigenvalue, from_eigen_real, to_eigen
from .errors import CocycleError, InternalError, ValidationError
from .poly import CPoly, Poly
from .williamson import ELLIPTIC, FOCUS, HYPERBOLIC, Component, ModelSystem


@dataclass
class SplitResult:
    """Decomposition g = kernel_part + X(potential) for a single field."""

    kernel_part: Poly
    potential: Poly


@dataclass
class FocusSplitResult:
    """Joint decomposition g1 = f1 + X_i(F), g2 = f2 + X_{i+1}(F) for a
    focus pair, with f1, f2 annihilated by both fields."""

    f1: Poly
    f2: Poly
    F: Poly


def _component(system: ModelSystem, index: int, kind: str) -> Component:
    try:
        comp = system.components[index]
    except IndexError:
        raise ValidationError(f"component index {index} out of range") from None
    if comp.kind != kind:
        raise ValidationError(
            f"component {index} is {comp.kind}, expected {kind}")
    return comp


def _split_single_field(g: Poly, system: ModelSystem, comp: Component,
                        field: int) -> SplitResult:
    """Project onto the field's zero-eigenvalue monomials and invert the
    rest, in the component's eigencoordinates."""
    cp = to_eigen(g, system, comps=(comp.index,))
    ker_re, ker_im = {}, {}
    pot_re, pot_im = {}, {}
    for mono, (cre, cim) in cp.cterms():
        lre, lim = field_eigenvalue(system, mono, field)
        if lre == 0 and lim == 0:
            if cre:
                ker_re[mono] = cre
            if cim:
                ker_im[mono] = cim
        else:
            dre, dim = cdiv(cre, cim, lre, lim)
            if dre:
                pot_re[mono] = dre
            if dim:
                pot_im[mono] = dim
    n, bound = g.n, g.degree_bound
    kernel = from_eigen_real(
        CPoly(Poly._raw(n, ker_re, bound), Poly._raw(n, ker_im, bound)),
        system, comps=(comp.index,))
    potential = from_eigen_real(
        CPoly(Poly._raw(n, pot_re, bound), Poly._raw(n, pot_im, bound)),
        system, comps=(comp.index,))
    return SplitResult(kernel, potential)


def elliptic_split(g: Poly, system: ModelSystem, index: int) -> SplitResult:
    """Split g along the elliptic component at `index`.

    kernel_part is the unique X-invariant summand (the flow average);
    potential solves X(potential) = g - kernel_part and has no invariant
    component.
    """
    comp = _component(system, index, ELLIPTIC)
    return _split_single_field(g, system, comp, comp.field_indices[0])


def hyperbolic_obstruction(g: Poly, system: ModelSystem, index: int) -> Poly:
    """Diagonal part sum_k c_k(rest) * (x_i y_i)^k of g.

    X_i(f) = g is solvable in polynomials exactly when this vanishes;
    terms independent of (x_i, y_i) count as k = 0 and obstruct too.
    """
    comp = _component(system, index, HYPERBOLIC)
    u, v = comp.var_indices
    out = {m: c for m, c in g.terms.items() if m[u] == m[v]}
    return Poly._raw(g.n, out, g.degree_bound)


def hyperbolic_split(g: Poly, system: ModelSystem, index: int) -> SplitResult:
    """Split g along the hyperbolic component at `index`.

    kernel_part equals `hyperbolic_obstruction`; the potential divides each
    off-diagonal monomial x^j y^k by its eigenvalue k - j.
    """
    comp = _component(system, index, HYPERBOLIC)
    u, v = comp.var_indices
    ker, pot = {}, {}
    for m, c in g.terms.items():
        lam = m[v] - m[u]
        if lam == 0:
            ker[m] = c
        else:
            pot[m] = c / lam
    return SplitResult(Poly._raw(g.n, ker, g.degree_bound),
                       Poly._raw(g.n, pot, g.degree_bound))


def focus_average(g2: Poly, system: ModelSystem, index: int):
    """Circle average of g2 over the pair's second field, plus a potential.

    Returns (f2, F2) with f2 the sum of monomials invariant under the
    S^1 field X_{i+1} and X_{i+1}(F2) = g2 - f2; f2 is uniquely defined.
    """
    comp = _component(system, index, FOCUS)
    res = _split_single_field(g2, system, comp, comp.field_indices[1])
    return res.kernel_part, res.potential


def focus_split(g1: Poly, g2: Poly, system: ModelSystem,
                index: int) -> FocusSplitResult:
    """Joint split of a pair (g1, g2) along the focus component at `index`.

    Requires the commutation hypothesis X_i(g2) = X_{i+1}(g1), checked
    exactly.  Averages g2 over the circle action, removes the induced part
    from g1, and inverts the hyperbolic field on what remains; f1 and f2
    land in the pair's joint kernel and F carries no joint-kernel
    component.
    """
    comp = _component(system, index, FOCUS)
    i1, i2 = comp.field_indices
    X1, X2 = system.X[i1], system.X[i2]
    residual = X1.apply(g2) - X2.apply(g1)
    if not residual.is_zero:
        raise CocycleError(
            "focus pair commutation hypothesis fails: X_i(g2) - X_{i+1}(g1) = "
            + residual.render())

    f2, F2 = focus_average(g2, system, index)
    g1_tilde = g1 - X1.apply(F2)

    cp = to_eigen(g1_tilde, system, comps=(comp.index,))
    ker_re, ker_im = {}, {}
    pot_re, pot_im = {}, {}
    for mono, (cre, cim) in cp.cterms():
        l1re, l1im = field_eigenvalue(system, mono, i1)
        l2re, l2im = field_eigenvalue(system, mono, i2)
        if l2re or l2im:
            # Unreachable once the commutation hypothesis held exactly.
            raise InternalError(
                "residue of g1 after circle averaging is not S^1-invariant")
        if l1re == 0 and l1im == 0:
            if cre:
                ker_re[mono] = cre
            if cim:
                ker_im[mono] = cim
        else:
            dre, dim = cdiv(cre, cim, l1re, l1im)
            if dre:
                pot_re[mono] = dre
            if dim:
                pot_im[mono] = dim
    n, bound = g1.n, g1.degree_bound
    f1 = from_eigen_real(
        CPoly(Poly._raw(n, ker_re, bound), Poly._raw(n, ker_im, bound)),
        system, comps=(comp.index,))
    F1 = from_eigen_real(
        CPoly(Poly._raw(n, pot_re, bound), Poly._raw(n, pot_im, bound)),
        system, comps=(comp.index,))
    return FocusSplitResult(f1, f2, F1 + F2)


def split_for(g: Poly, system: ModelSystem, index: int) -> SplitResult:
    """Dispatch to the matching single-field splitter (not for focus pairs)."""
    comp = system.components[index]
    if comp.kind == ELLIPTIC:
        return elliptic_split(g, system, index)
    if comp.kind == HYPERBOLIC:
        return hyperbolic_split(g, system, index)
    raise ValidationError("focus pairs split jointly; use focus_split")
