"""Main solver: induction, canonical outputs, kernel ops, the linear oracle."""

import itertools
from fractions import Fraction

import pytest

from germsplit import (CocycleData, CocycleError, Decomposition, Poly,
                       ValidationError, WilliamsonType, check_cocycle,
                       joint_kernel_basis, joint_kernel_projection,
                       kernel_rewrite, oracle_solve, solve, standard_basis,
                       x, y)
from germsplit.oracles import random_instance, random_kernel_element, random_poly
from helpers import rand_rng

F = Fraction

MIX = standard_basis(WilliamsonType(1, 1, 0, 2))
FOC = standard_basis(WilliamsonType(0, 0, 1, 2))


def test_check_cocycle_forward_and_kernel():
    rng = rand_rng(61)
    for _ in range(10):
        H = random_poly(rng, 2, 5)
        data = CocycleData(MIX, [X.apply(H) for X in MIX.X])
        assert check_cocycle(data).ok
    data = CocycleData(MIX, list(MIX.q))
    assert check_cocycle(data).ok


def test_check_cocycle_failure_example():
    # g1 = x2, g2 = 0 with X_1 elliptic, X_2 hyperbolic: X_2(x2) = -x2 != 0
    data = CocycleData(MIX, [x(2, 2), Poly.zero(2)])
    report = check_cocycle(data)
    assert not report.ok
    assert report.residuals[(0, 1)] == x(2, 2)
    with pytest.raises(CocycleError):
        solve(data)
    with pytest.raises(CocycleError):
        oracle_solve(data)


def test_solve_kernel_inputs():
    dec = solve(CocycleData(MIX, list(MIX.q)))
    assert dec.f == tuple(MIX.q)
    assert dec.G.is_zero


def test_solve_forward_example_mixed_type():
    H = x(1, 2) * x(2, 2)
    g = [MIX.X[0].apply(H), MIX.X[1].apply(H)]
    assert g[0] == y(1, 2).scale(-2) * x(2, 2)
    assert g[1] == -x(1, 2) * x(2, 2)
    dec = solve(CocycleData(MIX, g))
    assert all(fi.is_zero for fi in dec.f)
    assert dec.G == H


def test_solve_focus_degree_one():
    dec = solve(CocycleData(FOC, [x(1, 2), -x(2, 2)]))
    assert all(fi.is_zero for fi in dec.f)
    assert dec.G == -x(1, 2)


def test_joint_kernel_projection_examples():
    p = MIX.q[0] * MIX.q[1]
    assert joint_kernel_projection(p, MIX) == p
    assert joint_kernel_projection(x(1, 2), MIX).is_zero
    ell = standard_basis(WilliamsonType(1, 0, 0, 2))
    mixed = ell.q[0] + x(1, 2) * y(2, 2)
    assert joint_kernel_projection(mixed, ell) == ell.q[0]


def test_joint_kernel_projection_is_projection():
    rng = rand_rng(67)
    for system in (MIX, FOC, standard_basis(WilliamsonType(1, 0, 1, 4))):
        for _ in range(8):
            p = random_poly(rng, system.n, 5)
            proj = joint_kernel_projection(p, system)
            assert joint_kernel_projection(proj, system) == proj
            for X in system.X:
                assert X.apply(proj).is_zero


def test_kernel_rewrite_examples():
    ell = standard_basis(WilliamsonType(1, 0, 0, 1))
    expr = kernel_rewrite(ell.q[0] ** 2, ell)
    assert expr.render() == "1*Q1^2"

    focp = standard_basis(WilliamsonType(0, 0, 1, 3))
    k = focp.q[0] * focp.q[1] + x(3, 3)
    expr = kernel_rewrite(k, focp)
    assert expr.render() == "1*Q1*Q2 + 1*x3"
    assert expr.substitute(focp) == k

    with pytest.raises(ValidationError):
        kernel_rewrite(x(1, 1), ell)


def test_kernel_rewrite_random_roundtrip():
    rng = rand_rng(71)
    for system in (MIX, standard_basis(WilliamsonType(1, 0, 1, 4))):
        for _ in range(12):
            k = random_kernel_element(rng, system, 6)
            expr = kernel_rewrite(k, system)
            assert expr.substitute(system) == k


def test_joint_kernel_basis_generators_annihilated():
    basis = joint_kernel_basis(MIX, 4)
    assert basis.generators
    seen = set()
    for gen in basis.generators:
        key = (gen.q_exponents, gen.spectator)
        assert key not in seen
        seen.add(key)
        assert gen.poly.degree() <= 4
        for X in MIX.X:
            assert X.apply(gen.poly).is_zero
    # no spectators here: n = r, so generators are exactly the q-products
    assert all(gen.spectator == (0, 0, 0, 0) for gen in basis.generators)


def test_round_trip_recovery():
    rng = rand_rng(73)
    for system in (MIX, FOC):
        for _ in range(15):
            H = random_poly(rng, system.n, 6)
            ks = [random_kernel_element(rng, system, 6)
                  for _ in range(system.r)]
            g = [k + system.X[i].apply(H) for i, k in enumerate(ks)]
            dec = solve(CocycleData(system, g))
            assert list(dec.f) == ks
            assert dec.G == H - joint_kernel_projection(H, system)


def test_solve_is_linear():
    rng = rand_rng(79)
    system = MIX
    for _ in range(6):
        d1, _ = random_instance(system, 5, rng.randint(0, 10 ** 6))
        d2, _ = random_instance(system, 5, rng.randint(0, 10 ** 6))
        c = F(rng.randint(-4, 4) or 1, rng.randint(1, 3))
        combo = CocycleData(system, [a.scale(c) + b
                                     for a, b in zip(d1.g, d2.g)])
        s1, s2, sc = solve(d1), solve(d2), solve(combo)
        assert sc.G == s1.G.scale(c) + s2.G
        for i in range(system.r):
            assert sc.f[i] == s1.f[i].scale(c) + s2.f[i]


def test_order_independence():
    system = standard_basis(WilliamsonType(1, 1, 1, 4))
    data, _ = random_instance(system, 5, 99)
    reference = solve(data)
    for order in itertools.permutations(range(len(system.components))):
        dec = solve(data, order=list(order))
        assert dec == reference
    with pytest.raises(ValidationError):
        solve(data, order=[0, 0, 1])


def test_oracle_matches_solve_on_random_instances():
    rng = rand_rng(83)
    systems = [MIX, FOC, standard_basis(WilliamsonType(1, 0, 1, 4)),
               standard_basis(WilliamsonType(0, 2, 0, 3))]
    for system in systems:
        for _ in range(25):
            data, truth = random_instance(system, 6, rng.randint(0, 10 ** 9))
            dec = solve(data)
            other = oracle_solve(data)
            assert dec == other
            assert dec.f == truth.f and dec.G == truth.G


def test_oracle_zero_input():
    dec = oracle_solve(CocycleData(MIX, [Poly.zero(2), Poly.zero(2)]))
    assert all(fi.is_zero for fi in dec.f) and dec.G.is_zero


def test_oracle_degree_bound_too_small():
    H = x(1, 2) * x(2, 2)
    g = [MIX.X[0].apply(H), MIX.X[1].apply(H)]
    with pytest.raises(CocycleError):
        oracle_solve(CocycleData(MIX, g), degree=1)


def test_cocycle_data_validates_shape():
    with pytest.raises(ValidationError):
        CocycleData(MIX, [x(1, 2)])
    with pytest.raises(ValidationError):
        CocycleData(MIX, [x(1, 1), y(1, 1)])


def test_canonicity_f_is_projection_of_g():
    rng = rand_rng(89)
    for system in (MIX, FOC):
        for _ in range(10):
            data, _ = random_instance(system, 5, rng.randint(0, 10 ** 6))
            dec = solve(data)
            for i in range(system.r):
                assert dec.f[i] == joint_kernel_projection(data.g[i], system)
            assert joint_kernel_projection(dec.G, system).is_zero
