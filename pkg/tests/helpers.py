"""Shared test utilities: independent sympy oracles and random builders."""

import random
from fractions import Fraction

import sympy

from germsplit import Poly
from germsplit.oracles import random_poly

__all__ = ["random_poly", "rand_rng", "to_sympy", "from_sympy",
            "sympy_vars", "random_fraction"]


def rand_rng(seed):
    return random.Random(seed)


def random_fraction(rng):
    num = rng.randint(-9, 9) or 1
    return Fraction(num, rng.randint(1, 4))


def sympy_vars(n):
    vs = []
    for i in range(1, n + 1):
        vs.append(sympy.Symbol(f"x{i}"))
        vs.append(sympy.Symbol(f"y{i}"))
    return vs


def to_sympy(p: Poly):
    vs = sympy_vars(p.n)
    expr = sympy.Integer(0)
    for mono, coeff in p.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for v, e in zip(vs, mono):
            if e:
                term *= v ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, n: int) -> Poly:
    vs = sympy_vars(n)
    poly = sympy.Poly(sympy.expand(expr), *vs)
    terms = {}
    for mono, coeff in poly.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Fraction(int(q.p), int(q.q))
    return Poly(n, terms)
