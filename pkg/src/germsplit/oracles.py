"""Numeric cross-checks along explicit flows, plus instance generation.

The algebraic splits are exact; these checks tie them back to the flow
integral formulas they replace: the elliptic kernel part is the average
over the component's periodic flow, the circle average of a focus pair is
the average over its S^1 flow, and the hyperbolic potential solves the
transport equation recovered here by a flow integral up to the hitting
time T = (1/2) ln|x/y| plus finite differencing.  Composite Simpson on
smooth integrands makes the comparison a safety net, not the computation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ToleranceError, ValidationError
from .poincare import CocycleData, Decomposition, joint_kernel_projection
from .poly import Poly
from .splitters import elliptic_split, focus_average, hyperbolic_obstruction
from .williamson import ELLIPTIC, FOCUS, HYPERBOLIC, ModelSystem


@dataclass
class QuadratureConfig:
    """Composite Simpson settings; panel count must be even and >= 2."""

    panels: int = 256
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.panels < 2 or self.panels % 2:
            raise ValidationError("panel count must be even and >= 2")


def simpson(f, a: float, b: float, panels: int) -> float:
    """Composite Simpson rule with the given number of panels."""
    if panels < 2 or panels % 2:
        raise ValidationError("panel count must be even and >= 2")
    if a == b:
        return 0.0
    h = (b - a) / panels
    total = f(a) + f(b)
    for k in range(1, panels):
        total += f(a + k * h) * (4 if k % 2 else 2)
    return total * h / 3.0


class FlowSpec:
    """Closed-form linear flow of one model field.

    kind/index identify the component; for a focus pair `field` selects the
    hyperbolic (0) or circle (1) flow.  `apply(t, point)` maps a point, and
    `velocity(point)` evaluates the vector field itself for derivative
    checks.
    """

    def __init__(self, system: ModelSystem, index: int, field: int = 0):
        comp = system.components[index]
        if comp.kind != FOCUS and field != 0:
            raise ValidationError("only focus pairs carry a second field")
        self.system = system
        self.comp = comp
        self.field = field
        self.field_index = comp.field_indices[field]

    def apply(self, t: float, point):
        p = [float(v) for v in point]
        v = self.comp.var_indices
        if self.comp.kind == ELLIPTIC:
            u0, u1 = v
            c, s = math.cos(2 * t), math.sin(2 * t)
            p[u0], p[u1] = c * p[u0] - s * p[u1], s * p[u0] + c * p[u1]
        elif self.comp.kind == HYPERBOLIC:
            u0, u1 = v
            p[u0] *= math.exp(-t)
            p[u1] *= math.exp(t)
        elif self.field == 0:
            u1, v1, u2, v2 = v
            em, ep = math.exp(-t), math.exp(t)
            p[u1] *= em
            p[u2] *= em
            p[v1] *= ep
            p[v2] *= ep
        else:
            # multiplication of (z1, z2) by e^{-it}
            u1, v1, u2, v2 = v
            c, s = math.cos(t), math.sin(t)
            p[u1], p[u2] = c * p[u1] + s * p[u2], -s * p[u1] + c * p[u2]
            p[v1], p[v2] = c * p[v1] + s * p[v2], -s * p[v1] + c * p[v2]
        return tuple(p)

    def velocity(self, point):
        """The vector field at a point, from the exact derivation rows."""
        rows = self.system.X[self.field_index].rows
        out = [0.0] * len(point)
        for k, row in enumerate(rows):
            out[k] = sum(float(c) * float(point[l]) for l, c in row)
        return tuple(out)


@dataclass
class CheckRow:
    point: tuple
    expected: float
    actual: float

    @property
    def residual(self) -> float:
        return abs(self.expected - self.actual)


@dataclass
class CheckReport:
    """Per-point residual table for one quadrature cross-check."""

    label: str
    rows: list
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def require(self):
        if not self.passed:
            raise ToleranceError(
                f"{self.label}: max residual {self.max_residual:.3e} exceeds "
                f"tolerance {self.tolerance:.3e}")
        return self


def halton_points(n: int, count: int, skip: int = 1, avoid_vars=(),
                  floor: float = 0.125):
    """Deterministic low-discrepancy points in [-1, 1]^(2n).

    Coordinates listed in `avoid_vars` are kept at absolute value >= floor
    by rejection (used to stay off the hyperbolic singular set).
    """
    primes = (2, 3, 5, 7, 11, 13, 17, 19)
    if 2 * n > len(primes):
        raise ValidationError("sampling supports up to n = 4")

    def halton(i, base):
        f, r = 1.0, 0.0
        while i > 0:
            f /= base
            r += f * (i % base)
            i //= base
        return r

    points = []
    i = skip
    while len(points) < count:
        pt = tuple(2.0 * halton(i, primes[k]) - 1.0 for k in range(2 * n))
        i += 1
        if any(abs(pt[k]) < floor for k in avoid_vars):
            continue
        points.append(pt)
    return points


def elliptic_average_check(g: Poly, system: ModelSystem, index: int,
                           points, config: QuadratureConfig | None = None
                           ) -> CheckReport:
    """Average of g over the elliptic flow vs the algebraic kernel part.

    The flow rotates at angular speed 2, so one full turn is t in [0, pi];
    agreement is within config.tolerance at every sample point.
    """
    config = config or QuadratureConfig()
    comp = system.components[index]
    if comp.kind != ELLIPTIC:
        raise ValidationError(f"component {index} is not elliptic")
    flow = FlowSpec(system, index)
    kernel = elliptic_split(g, system, index).kernel_part
    rows = []
    for pt in points:
        avg = simpson(lambda t: g.evaluate(flow.apply(t, pt)),
                      0.0, math.pi, config.panels) / math.pi
        rows.append(CheckRow(pt, kernel.evaluate(pt), avg))
    return CheckReport("elliptic average", rows, config.tolerance)


def s1_average_check(g2: Poly, system: ModelSystem, index: int,
                     points, config: QuadratureConfig | None = None
                     ) -> CheckReport:
    """Circle average of g2 over a focus pair's S^1 flow vs focus_average."""
    config = config or QuadratureConfig()
    comp = system.components[index]
    if comp.kind != FOCUS:
        raise ValidationError(f"component {index} is not a focus pair")
    flow = FlowSpec(system, index, field=1)
    f2, _ = focus_average(g2, system, index)
    rows = []
    for pt in points:
        avg = simpson(lambda t: g2.evaluate(flow.apply(t, pt)),
                      0.0, 2 * math.pi, config.panels) / (2 * math.pi)
        rows.append(CheckRow(pt, f2.evaluate(pt), avg))
    return CheckReport("circle average", rows, config.tolerance)


def hyperbolic_hitting_time(point, comp) -> float:
    """T = (1/2) ln(x/y) for xy > 0 and (1/2) ln(-x/y) for xy < 0; both
    branches equal (1/2) ln|x/y|, defined off the set {x = 0} u {y = 0}."""
    u, v = comp.var_indices[0], comp.var_indices[1]
    xv, yv = float(point[u]), float(point[v])
    if xv == 0.0 or yv == 0.0:
        raise ValidationError("point lies on the singular set")
    return 0.5 * math.log(abs(xv / yv))


def hyperbolic_flow_integral_check(g: Poly, system: ModelSystem, index: int,
                                   points,
                                   config: QuadratureConfig | None = None,
                                   tolerance: float = 1e-6,
                                   diff_step: float = 1e-4) -> CheckReport:
    """Check X(f) = g for the flow-integral solution f = -int_0^T g(flow).

    Requires the diagonal obstruction of g to vanish; the directional
    derivative of f along the flow is formed by central differences and
    compared with g itself.  The integral solution may differ from the
    algebraic potential by a flow invariant, so only the defining equation
    is checked.
    """
    config = config or QuadratureConfig()
    comp = system.components[index]
    if comp.kind != HYPERBOLIC:
        raise ValidationError(f"component {index} is not hyperbolic")
    if not hyperbolic_obstruction(g, system, index).is_zero:
        raise ValidationError(
            "flow integral check requires a vanishing diagonal obstruction")
    flow = FlowSpec(system, index)

    def f_num(pt):
        T = hyperbolic_hitting_time(pt, comp)
        return -simpson(lambda t: g.evaluate(flow.apply(t, pt)),
                        0.0, T, config.panels)

    rows = []
    for pt in points:
        ahead = f_num(flow.apply(diff_step, pt))
        behind = f_num(flow.apply(-diff_step, pt))
        derivative = (ahead - behind) / (2 * diff_step)
        rows.append(CheckRow(pt, g.evaluate(pt), derivative))
    return CheckReport("hyperbolic transport", rows, tolerance)


# -- randomized instance generation -------------------------------------------


def _random_fraction(rng) -> Fraction:
    num = rng.randint(-9, 9)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 4))


def _random_monomial(rng, n: int, max_degree: int):
    mono = [0] * (2 * n)
    degree = rng.randint(0, max_degree)
    for _ in range(degree):
        mono[rng.randrange(2 * n)] += 1
    return tuple(mono)


def random_poly(rng, n: int, max_degree: int, max_terms: int = 8) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_random_monomial(rng, n, max_degree)] = _random_fraction(rng)
    return Poly(n, terms)


def random_kernel_element(rng, system: ModelSystem, max_degree: int,
                          max_terms: int = 4) -> Poly:
    """Random element of the joint kernel: a combination of products of the
    basis quadratics and spectator monomials."""
    n, r = system.n, system.r
    out = Poly.zero(n)
    for _ in range(rng.randint(0, max_terms)):
        budget = rng.randint(0, max_degree)
        piece = Poly.constant(n, _random_fraction(rng))
        for i in range(r):
            if budget < 2:
                break
            a = rng.randint(0, budget // 2)
            if a:
                piece = piece * system.q[i] ** a
                budget -= 2 * a
        if system.spectator_vars and budget:
            spec = [0] * (2 * n)
            for _ in range(rng.randint(0, budget)):
                spec[rng.choice(system.spectator_vars)] += 1
            piece = piece * Poly.monomial(n, spec)
        out = out + piece
    return out


def random_instance(system: ModelSystem, degree: int, seed,
                    h_terms: int = 8, kernel_terms: int = 4):
    """Forward-generated instance with known ground truth.

    Draws kernel elements k_i and a potential H deterministically from the
    seed and emits g_i = k_i + X_i(H); the canonical answer is f_i = k_i
    and G = H minus its joint-kernel part.  The construction guarantees the
    commutation hypothesis.
    """
    rng = random.Random(f"{system.wtype}|{degree}|{seed}")
    H = random_poly(rng, system.n, degree, h_terms)
    ks = [random_kernel_element(rng, system, degree, kernel_terms)
          for _ in range(system.r)]
    g = [k + system.X[i].apply(H) for i, k in enumerate(ks)]
    truth = Decomposition(tuple(ks), H - joint_kernel_projection(H, system))
    return CocycleData(system, g), truth
