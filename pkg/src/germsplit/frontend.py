"""Expression parser, problem/result text formats, and command runners.

Problem files are plain text with a strict versioned first line, a short
"key: value" header, and bracketed sections of "name = expression" lines:

    germsplit problem v1
    n: 2
    type: (1,1,0)@2
    degree: 6
    [g]
    g1 = -2*y1*x2
    g2 = -1*x1*x2
    [expected]
    f1 = 0
    f2 = 0
    G = 1*x1*x2

Expression grammar (whitespace-insensitive, variables 1-based):

    expr     := ('+'|'-')? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | var | '(' expr ')'
    var      := ('x'|'y') uint(1..n)
    rational := int ('/' uint)?

Result documents mirror the same shape and are byte-deterministic for
identical inputs and seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import Cochain, h1_witness, is_cocycle
from .errors import (CocycleError, ParseError, ToleranceError,
                     ValidationError)
from .oracles import (QuadratureConfig, elliptic_average_check, halton_points,
                      hyperbolic_flow_integral_check, hyperbolic_obstruction,
                      random_instance, s1_average_check)
from .poincare import (CocycleData, check_cocycle, kernel_rewrite,
                       oracle_solve, solve)
from .poly import Poly, poisson
from .williamson import (ELLIPTIC, FOCUS, HYPERBOLIC, WilliamsonType,
                         classify_family, standard_basis)

PROBLEM_MAGIC = "germsplit problem v1"
RESULT_MAGIC = "germsplit result v1"


# -- expression parsing --------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < size and text[j].isdigit():
                j += 1
            tokens.append(("uint", text[i:j], i))
            i = j
            continue
        if ch in "xy":
            j = i + 1
            while j < size and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"variable {ch!r} needs an index", position=i)
            tokens.append(("var", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", position=i)
    tokens.append(("end", "", size))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.n = n

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}",
                             position=tok[2])
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", position=tok[2])
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        total = self.term()
        if sign < 0:
            total = -total
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            total = total - rhs if op == "-" else total + rhs
        return total

    def term(self) -> Poly:
        total = self.factor()
        while self.peek()[0] == "*":
            self.take()
            total = total * self.factor()
        return total

    def factor(self) -> Poly:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("uint")
            base = base ** int(tok[1])
        return base

    def base(self) -> Poly:
        tok = self.take()
        if tok[0] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            num = self.expect("uint")
            return self._rational(sign * int(num[1]))
        if tok[0] == "uint":
            return self._rational(int(tok[1]))
        if tok[0] == "var":
            name = tok[1]
            index = int(name[1:])
            if not 1 <= index <= self.n:
                raise ValidationError(
                    f"variable {name} out of range for n = {self.n} "
                    "(indices are 1-based)")
            k = 2 * (index - 1) + (0 if name[0] == "x" else 1)
            return Poly.variable(self.n, k)
        raise ParseError(f"expected a value, found {tok[1] or 'end of input'!r}",
                         position=tok[2])

    def _rational(self, numerator: int) -> Poly:
        if self.peek()[0] == "/":
            self.take()
            den = self.expect("uint")
            if int(den[1]) == 0:
                raise ParseError("zero denominator", position=den[2])
            return Poly.constant(self.n, Fraction(numerator, int(den[1])))
        return Poly.constant(self.n, Fraction(numerator))


def parse_poly(text: str, n: int) -> Poly:
    """Parse the canonical polynomial grammar into an exact Poly."""
    return _Parser(text, n).parse()


# -- problem files -------------------------------------------------------------


@dataclass
class ProblemFile:
    """Parsed problem file: header fields plus raw expression sections."""

    n: int
    wtype: WilliamsonType | None = None
    degree: int | None = None
    seed: int | None = None
    sections: dict = field(default_factory=dict)

    def section(self, name: str) -> dict:
        return self.sections.get(name, {})

    def parse_section(self, name: str) -> dict:
        return {key: parse_poly(expr, self.n)
                for key, expr in self.section(name).items()}

    def require_named(self, section: str, names) -> list:
        entries = self.section(section)
        missing = [np for np in names if np not in entries]
        extra = [key for key in entries if key not in names]
        if missing or extra:
            raise ValidationError(
                f"section [{section}] must define exactly {', '.join(names)}")
        return [parse_poly(entries[np], self.n) for np in names]


def load_problem(text: str) -> ProblemFile:
    lines = text.splitlines()
    if not lines or lines[0].strip() != PROBLEM_MAGIC:
        raise ParseError(f"first line must be {PROBLEM_MAGIC!r}", line=1)
    header = {}
    sections = {}
    current = None
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current in sections:
                raise ParseError(f"duplicate section [{current}]", line=lineno)
            sections[current] = {}
            continue
        if current is None:
            if ":" not in line:
                raise ParseError("expected 'key: value' in header", line=lineno)
            key, _, value = line.partition(":")
            key = key.strip()
            if key in header:
                raise ParseError(f"duplicate header key {key!r}", line=lineno)
            header[key] = value.strip()
        else:
            if "=" not in line:
                raise ParseError("expected 'name = expression'", line=lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            if key in sections[current]:
                raise ParseError(f"duplicate entry {key!r} in [{current}]",
                                 line=lineno)
            sections[current][key] = value.strip()

    unknown = set(header) - {"n", "type", "degree", "seed"}
    if unknown:
        raise ParseError(f"unknown header keys: {', '.join(sorted(unknown))}")
    if "n" not in header:
        raise ParseError("header must declare n")
    try:
        n = int(header["n"])
        degree = int(header["degree"]) if "degree" in header else None
        seed = int(header["seed"]) if "seed" in header else None
    except ValueError as exc:
        raise ParseError(f"bad integer in header: {exc}") from None
    wtype = WilliamsonType.parse(header["type"]) if "type" in header else None
    if wtype is not None and wtype.n != n:
        raise ValidationError(
            f"header n = {n} disagrees with type {wtype}")
    return ProblemFile(n=n, wtype=wtype, degree=degree, seed=seed,
                       sections=sections)


def dump_problem(problem: ProblemFile) -> str:
    lines = [PROBLEM_MAGIC, f"n: {problem.n}"]
    if problem.wtype is not None:
        lines.append(f"type: {problem.wtype}")
    if problem.degree is not None:
        lines.append(f"degree: {problem.degree}")
    if problem.seed is not None:
        lines.append(f"seed: {problem.seed}")
    for name, entries in problem.sections.items():
        lines.append(f"[{name}]")
        for key, expr in entries.items():
            lines.append(f"{key} = {expr}")
    return "\n".join(lines) + "\n"


# -- result documents ----------------------------------------------------------


class ResultDocument:
    """Deterministic text report; `status` doubles as the CLI exit code."""

    def __init__(self, command: str):
        self.lines = [RESULT_MAGIC, f"command: {command}"]
        self.status = 0

    def add(self, line: str = ""):
        self.lines.append(line)

    def section(self, name: str):
        self.lines.append(f"[{name}]")

    def fail(self, status: int):
        self.status = max(self.status, status)

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _require_type(problem: ProblemFile) -> WilliamsonType:
    if problem.wtype is None:
        raise ValidationError("this command needs a 'type:' header")
    return problem.wtype


def _load_g(problem: ProblemFile, system) -> list:
    names = [f"g{i + 1}" for i in range(system.r)]
    gs = problem.require_named("g", names)
    if problem.degree is not None:
        for name, g in zip(names, gs):
            if g.degree() > problem.degree:
                raise ValidationError(
                    f"{name} has degree {g.degree()} above the declared bound "
                    f"{problem.degree}")
    return gs


def run_split(problem: ProblemFile, use_oracle: bool = True,
              degree: int | None = None) -> ResultDocument:
    """Decompose the g section: cocycle check, solve, exact verification,
    optional independent oracle comparison."""
    wtype = _require_type(problem)
    system = standard_basis(wtype)
    g = _load_g(problem, system)
    doc = ResultDocument("split")
    doc.add(f"type: {wtype}")
    doc.section("input")
    for i, gi in enumerate(g):
        doc.add(f"g{i + 1} = {gi.render()}")

    data = CocycleData(system, g)
    report = check_cocycle(data)
    doc.section("cocycle")
    for (i, j), res in sorted(report.residuals.items()):
        status = "pass" if res.is_zero else "FAIL"
        doc.add(f"pair ({i + 1},{j + 1}): {status} residual = {res.render()}")
    if not report.ok:
        doc.add("result: cocycle violation")
        doc.fail(CocycleError.exit_code)
        return doc

    dec = solve(data)
    doc.section("decomposition")
    for i, fi in enumerate(dec.f):
        doc.add(f"f{i + 1} = {fi.render()}")
    doc.add(f"G = {dec.G.render()}")
    doc.section("kernel forms")
    for i, fi in enumerate(dec.f):
        doc.add(f"f{i + 1} = {kernel_rewrite(fi, system).render()}")
    doc.section("residuals")
    for i, fi in enumerate(dec.f):
        recon = g[i] - fi - system.X[i].apply(dec.G)
        doc.add(f"reconstruction g{i + 1}: {recon.render()}")
    kernel_ok = all(system.X[j].apply(fi).is_zero
                    for fi in dec.f for j in range(system.r))
    doc.add(f"kernel check: {'pass' if kernel_ok else 'FAIL'}")
    if not kernel_ok:
        doc.fail(ValidationError.exit_code)

    if use_oracle:
        doc.section("oracle")
        other = oracle_solve(data, degree=degree)
        match = other.f == dec.f and other.G == dec.G
        doc.add(f"independent linear solve: {'match' if match else 'MISMATCH'}")
        if not match:
            doc.fail(ValidationError.exit_code)

    expected = problem.section("expected")
    if expected:
        doc.section("expected")
        ok = True
        for i in range(system.r):
            name = f"f{i + 1}"
            if name in expected:
                want = parse_poly(expected[name], problem.n)
                good = want == dec.f[i]
                ok = ok and good
                doc.add(f"{name}: {'match' if good else 'MISMATCH'}")
        if "G" in expected:
            want = parse_poly(expected["G"], problem.n)
            good = want == dec.G
            ok = ok and good
            doc.add(f"G: {'match' if good else 'MISMATCH'}")
        if not ok:
            doc.fail(ValidationError.exit_code)
    return doc


def run_classify(problem: ProblemFile) -> ResultDocument:
    entries = problem.section("q")
    if not entries:
        raise ValidationError("classify needs a [q] section")
    names = [f"q{i + 1}" for i in range(len(entries))]
    quads = problem.require_named("q", names)
    wtype = classify_family(quads)
    doc = ResultDocument("classify")
    doc.section("input")
    for name, q in zip(names, quads):
        doc.add(f"{name} = {q.render()}")
    doc.section("classification")
    doc.add(f"type: {wtype}")
    return doc


def run_cohomology(problem: ProblemFile) -> ResultDocument:
    wtype = _require_type(problem)
    if wtype.r != wtype.n:
        raise ValidationError("cohomology needs a full system (r = n)")
    system = standard_basis(wtype)
    names = [f"a{i + 1}" for i in range(system.n)]
    values = problem.require_named("alpha", names)
    alpha = Cochain.from_polys(system, values)
    doc = ResultDocument("cohomology")
    doc.add(f"type: {wtype}")
    doc.section("input")
    for name, p in zip(names, values):
        doc.add(f"{name} = {p.render()}")
    report = is_cocycle(alpha)
    doc.section("cocycle")
    for (i, j), res in sorted(report.residuals.items()):
        status = "pass" if res.is_zero else "FAIL"
        doc.add(f"pair ({i + 1},{j + 1}): {status} residual = {res.render()}")
    if not report.ok:
        doc.add("result: not a cocycle")
        doc.fail(CocycleError.exit_code)
        return doc
    h, f = h1_witness(alpha)
    doc.section("witness")
    doc.add(f"h = {h.render()}")
    for i, fi in enumerate(f):
        doc.add(f"f{i + 1} = {fi.render()}")
    doc.section("reassembly")
    ok = True
    for i in range(system.n):
        residual = values[i] - f[i] - poisson(h, system.q[i])
        good = residual.is_zero
        ok = ok and good
        doc.add(f"a{i + 1} - f{i + 1} - {{h, q{i + 1}}}: {residual.render()}")
    doc.add(f"coboundary witness: {'pass' if ok else 'FAIL'}")
    if not ok:
        doc.fail(ValidationError.exit_code)
    return doc


def run_verify(problem: ProblemFile, tolerance: float | None = None,
               panels: int = 256, points: int = 50) -> ResultDocument:
    """Quadrature cross-checks for every component of the declared system."""
    wtype = _require_type(problem)
    system = standard_basis(wtype)
    g = _load_g(problem, system)
    config = QuadratureConfig(panels=panels,
                              tolerance=1e-8 if tolerance is None else tolerance)
    hyp_tol = 1e-6 if tolerance is None else tolerance
    doc = ResultDocument("verify")
    doc.add(f"type: {wtype}")
    doc.add(f"panels: {panels}")
    doc.add(f"points: {points}")
    doc.section("checks")
    failed = False
    for comp in system.components:
        if comp.kind == ELLIPTIC:
            i = comp.field_indices[0]
            pts = halton_points(system.n, points)
            rep = elliptic_average_check(g[i], system, comp.index, pts, config)
            doc.add(f"component {comp.index + 1} elliptic average: "
                    f"max residual {rep.max_residual:.3e} "
                    f"[{'pass' if rep.passed else 'FAIL'}]")
            failed = failed or not rep.passed
        elif comp.kind == HYPERBOLIC:
            i = comp.field_indices[0]
            solvable = g[i] - hyperbolic_obstruction(g[i], system, comp.index)
            pts = halton_points(system.n, points, avoid_vars=comp.var_indices)
            rep = hyperbolic_flow_integral_check(
                solvable, system, comp.index, pts, config, tolerance=hyp_tol)
            doc.add(f"component {comp.index + 1} hyperbolic transport "
                    f"(off-diagonal part): max residual {rep.max_residual:.3e} "
                    f"[{'pass' if rep.passed else 'FAIL'}]")
            failed = failed or not rep.passed
        else:
            i2 = comp.field_indices[1]
            pts = halton_points(system.n, points)
            rep = s1_average_check(g[i2], system, comp.index, pts, config)
            doc.add(f"component {comp.index + 1} circle average: "
                    f"max residual {rep.max_residual:.3e} "
                    f"[{'pass' if rep.passed else 'FAIL'}]")
            failed = failed or not rep.passed
    doc.add(f"result: {'FAIL' if failed else 'pass'}")
    if failed:
        doc.fail(ToleranceError.exit_code)
    return doc


def run_gen(wtype: WilliamsonType, degree: int, seed: int) -> str:
    """Emit a forward-generated problem file with its expected answer."""
    system = standard_basis(wtype)
    data, truth = random_instance(system, degree, seed)
    problem = ProblemFile(n=wtype.n, wtype=wtype, degree=degree, seed=seed)
    problem.sections["g"] = {
        f"g{i + 1}": gi.render() for i, gi in enumerate(data.g)}
    problem.sections["expected"] = {
        f"f{i + 1}": fi.render() for i, fi in enumerate(truth.f)}
    problem.sections["expected"]["G"] = truth.G.render()
    return dump_problem(problem)
