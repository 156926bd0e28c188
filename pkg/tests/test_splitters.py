"""Per-component splits: exact reconstruction, kernels, canonicity."""

from fractions import Fraction

import pytest

from germsplit import (CocycleError, Poly, ValidationError, WilliamsonType,
                       elliptic_split, focus_average, focus_split,
                       hyperbolic_obstruction, hyperbolic_split,
                       joint_kernel_projection, standard_basis, x, y)
from helpers import random_poly, rand_rng

F = Fraction

ELL = standard_basis(WilliamsonType(1, 0, 0, 2))
HYP = standard_basis(WilliamsonType(0, 1, 0, 2))
FOC = standard_basis(WilliamsonType(0, 0, 1, 3))


def test_elliptic_split_examples():
    n = ELL.n
    q1 = x(1, n) ** 2 + y(1, n) ** 2
    res = elliptic_split(q1, ELL, 0)
    assert res.kernel_part == q1 and res.potential.is_zero

    res = elliptic_split(x(1, n), ELL, 0)
    assert res.kernel_part.is_zero
    assert res.potential == y(1, n).scale(F(1, 2))
    assert ELL.X[0].apply(res.potential) == x(1, n)

    g = q1 * x(2, n)
    res = elliptic_split(g, ELL, 0)
    assert res.kernel_part == g and res.potential.is_zero
    assert ELL.X[0].apply(g).is_zero


def test_hyperbolic_obstruction_examples():
    n = HYP.n
    xy = x(1, n) * y(1, n)
    assert hyperbolic_obstruction(xy, HYP, 0) == xy
    assert hyperbolic_obstruction(x(1, n) ** 2, HYP, 0).is_zero
    g = x(1, n) ** 2 * y(1, n) ** 2 + x(1, n)
    assert hyperbolic_obstruction(g, HYP, 0) == x(1, n) ** 2 * y(1, n) ** 2
    # terms constant in (x_i, y_i) sit on the diagonal at k = 0
    assert hyperbolic_obstruction(x(2, n), HYP, 0) == x(2, n)


def test_hyperbolic_split_examples():
    n = HYP.n
    g = x(1, n) * y(1, n) * x(2, n)
    res = hyperbolic_split(g, HYP, 0)
    assert res.kernel_part == g and res.potential.is_zero

    res = hyperbolic_split(x(1, n) ** 2, HYP, 0)
    assert res.kernel_part.is_zero
    assert res.potential == (x(1, n) ** 2).scale(F(-1, 2))

    res = hyperbolic_split(x(1, n) + y(1, n), HYP, 0)
    assert res.kernel_part.is_zero
    assert res.potential == -x(1, n) + y(1, n)


def test_focus_average_examples():
    n = FOC.n
    q2 = FOC.q[1]
    f2, F2 = focus_average(q2, FOC, 0)
    assert f2 == q2 and F2.is_zero

    f2, F2 = focus_average(x(2, n), FOC, 0)
    assert f2.is_zero
    assert FOC.X[1].apply(F2) == x(2, n)

    f2, F2 = focus_average(Poly.zero(n), FOC, 0)
    assert f2.is_zero and F2.is_zero


def test_focus_split_examples():
    n = FOC.n
    res = focus_split(FOC.q[0], FOC.q[1], FOC, 0)
    assert res.f1 == FOC.q[0] and res.f2 == FOC.q[1] and res.F.is_zero

    res = focus_split(x(1, n), -x(2, n), FOC, 0)
    assert res.f1.is_zero and res.f2.is_zero
    assert res.F == -x(1, n)

    rng = rand_rng(3)
    for _ in range(10):
        H = random_poly(rng, n, 4)
        g1, g2 = FOC.X[0].apply(H), FOC.X[1].apply(H)
        res = focus_split(g1, g2, FOC, 0)
        assert res.f1.is_zero and res.f2.is_zero
        assert res.F == H - joint_kernel_projection(H, FOC)


def test_focus_split_checks_commutation():
    n = FOC.n
    with pytest.raises(CocycleError):
        focus_split(x(1, n), x(1, n), FOC, 0)


def test_split_validates_component_kind():
    with pytest.raises(ValidationError):
        elliptic_split(x(1, 2), HYP, 0)
    with pytest.raises(ValidationError):
        hyperbolic_split(x(1, 2), ELL, 0)
    with pytest.raises(ValidationError):
        focus_average(x(1, 2), ELL, 0)


def _single_split(system, g, index):
    comp = system.components[index]
    if comp.kind == "elliptic":
        res = elliptic_split(g, system, index)
    else:
        res = hyperbolic_split(g, system, index)
    return res.kernel_part, res.potential, system.X[comp.field_indices[0]]


@pytest.mark.parametrize("system,index", [(ELL, 0), (HYP, 0)])
def test_single_field_split_properties(system, index):
    rng = rand_rng(41 + index)
    n = system.n
    for _ in range(40):
        g = random_poly(rng, n, 6)
        kernel, potential, X = _single_split(system, g, index)
        # reconstruction and kernel soundness, exactly
        assert kernel + X.apply(potential) == g
        assert X.apply(kernel).is_zero
        # idempotence
        k2, p2, _ = _single_split(system, kernel, index)
        assert k2 == kernel and p2.is_zero
        # canonicity: the potential carries no invariant component
        pk, _, _ = _single_split(system, potential, index)
        assert pk.is_zero


@pytest.mark.parametrize("system,index", [(ELL, 0), (HYP, 0)])
def test_single_field_split_linearity(system, index):
    rng = rand_rng(43)
    n = system.n
    for _ in range(10):
        a = random_poly(rng, n, 5)
        b = random_poly(rng, n, 5)
        c = F(rng.randint(-5, 5) or 1, rng.randint(1, 3))
        ka, pa, _ = _single_split(system, a, index)
        kb, pb, _ = _single_split(system, b, index)
        kc, pc, _ = _single_split(system, a.scale(c) + b, index)
        assert kc == ka.scale(c) + kb
        assert pc == pa.scale(c) + pb


def test_kernel_part_unique_modulo_image():
    # adding an exact image X(h) never changes the kernel part
    rng = rand_rng(47)
    for system, index in [(ELL, 0), (HYP, 0)]:
        n = system.n
        X = system.X[system.components[index].field_indices[0]]
        for _ in range(10):
            g = random_poly(rng, n, 5)
            h = random_poly(rng, n, 5)
            k1, _, _ = _single_split(system, g, index)
            k2, _, _ = _single_split(system, g + X.apply(h), index)
            assert k1 == k2


def test_spectator_equivariance():
    # X_j(g) = 0 for a different model field j forces X_j of both outputs
    # to vanish; generate such g as kernel elements of j times anything in
    # the remaining variables.
    system = standard_basis(WilliamsonType(1, 1, 0, 3))
    rng = rand_rng(53)
    n = system.n
    for _ in range(25):
        # invariant under the hyperbolic field X_2: combine q_2 powers with
        # polynomials in the other variables
        other = Poly(n, {m: c for m, c in random_poly(rng, n, 4).terms.items()
                         if m[2] == 0 and m[3] == 0})
        g = other * system.q[1] ** rng.randint(0, 2)
        assert system.X[1].apply(g).is_zero
        res = elliptic_split(g, system, 0)
        assert system.X[1].apply(res.kernel_part).is_zero
        assert system.X[1].apply(res.potential).is_zero

    sysf = standard_basis(WilliamsonType(1, 0, 1, 4))
    for _ in range(10):
        other = Poly(4, {m: c for m, c in random_poly(rng, 4, 4).terms.items()
                         if m[0] == 0 and m[1] == 0})
        scale = sysf.q[0] ** rng.randint(0, 1)
        g1 = sysf.X[1].apply(other) * scale
        g2 = sysf.X[2].apply(other) * scale
        assert sysf.X[0].apply(g1).is_zero and sysf.X[0].apply(g2).is_zero
        res = focus_split(g1, g2, sysf, 1)
        for p in (res.f1, res.f2, res.F):
            assert sysf.X[0].apply(p).is_zero


def test_focus_split_properties():
    rng = rand_rng(59)
    n = FOC.n
    for _ in range(25):
        H = random_poly(rng, n, 5)
        k1 = FOC.q[0] ** rng.randint(0, 1) * FOC.q[1] ** rng.randint(0, 1)
        k2 = FOC.q[1] ** rng.randint(0, 2)
        g1 = k1 + FOC.X[0].apply(H)
        g2 = k2 + FOC.X[1].apply(H)
        res = focus_split(g1, g2, FOC, 0)
        assert g1 == res.f1 + FOC.X[0].apply(res.F)
        assert g2 == res.f2 + FOC.X[1].apply(res.F)
        for f in (res.f1, res.f2):
            assert FOC.X[0].apply(f).is_zero
            assert FOC.X[1].apply(f).is_zero
        # canonical: F has no joint-kernel component
        assert joint_kernel_projection(res.F, FOC).is_zero
