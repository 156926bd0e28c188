"""Parser, problem files, result documents, and the CLI."""

from fractions import Fraction

import pytest

from germsplit import (ParseError, Poly, ValidationError, WilliamsonType, x, y)
from germsplit.cli import main
from germsplit.frontend import (ProblemFile, dump_problem, load_problem,
                                parse_poly, run_classify, run_cohomology,
                                run_gen, run_split, run_verify)
from helpers import random_poly, rand_rng

F = Fraction


def test_parse_examples():
    assert parse_poly("x1^2 + y1^2", 1) == x(1, 1) ** 2 + y(1, 1) ** 2
    p = parse_poly("3/2*x1*y2 - y1", 2)
    assert p == x(1, 2).scale(F(3, 2)) * y(2, 2) - y(1, 2)
    assert parse_poly("0", 1).is_zero
    assert parse_poly("(x1+y1)^2", 1) == (x(1, 1) + y(1, 1)) ** 2
    assert parse_poly("-x1 + y1", 1) == -x(1, 1) + y(1, 1)
    assert parse_poly("  2 * x1 ^ 3 ", 1) == (x(1, 1) ** 3).scale(2)


def test_parse_variable_range_is_validation():
    with pytest.raises(ValidationError):
        parse_poly("x0", 1)
    with pytest.raises(ValidationError):
        parse_poly("y3", 2)


def test_parse_syntax_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_poly("x1 + ", 1)
    assert err.value.position is not None
    with pytest.raises(ParseError):
        parse_poly("x1 & y1", 1)
    with pytest.raises(ParseError):
        parse_poly("x", 1)
    with pytest.raises(ParseError):
        parse_poly("1/0", 1)
    with pytest.raises(ParseError):
        parse_poly("x1 y1", 1)          # implicit products are not allowed
    with pytest.raises(ParseError):
        parse_poly("x1^-2", 1)


def test_parse_render_roundtrip_random():
    rng = rand_rng(97)
    for n in (1, 2, 3, 4):
        for _ in range(30):
            p = random_poly(rng, n, 8, max_terms=10)
            assert parse_poly(p.render(), n) == p


def test_problem_file_roundtrip():
    text = (
        "germsplit problem v1\n"
        "n: 2\n"
        "type: (1,1,0)@2\n"
        "degree: 6\n"
        "# a comment line\n"
        "[g]\n"
        "g1 = -2*y1*x2   # inline comment\n"
        "g2 = -1*x1*x2\n"
    )
    problem = load_problem(text)
    assert problem.n == 2
    assert problem.wtype == WilliamsonType(1, 1, 0, 2)
    assert problem.degree == 6
    assert problem.section("g")["g1"] == "-2*y1*x2"
    dumped = dump_problem(problem)
    assert load_problem(dumped).sections == problem.sections


def test_problem_file_errors():
    with pytest.raises(ParseError):
        load_problem("not a problem file\n")
    with pytest.raises(ParseError):
        load_problem("germsplit problem v1\nn: 2\nwhat: 3\n")
    with pytest.raises(ParseError):
        load_problem("germsplit problem v1\n[g]\ng1 = x1\n")   # n missing
    with pytest.raises(ParseError):
        load_problem("germsplit problem v1\nn: 2\nn: 3\n")
    with pytest.raises(ValidationError):
        load_problem("germsplit problem v1\nn: 3\ntype: (1,1,0)@2\n")


SPLIT_TEXT = (
    "germsplit problem v1\n"
    "n: 2\n"
    "type: (1,1,0)@2\n"
    "[g]\n"
    "g1 = -2*y1*x2\n"
    "g2 = -1*x1*x2\n"
    "[expected]\n"
    "f1 = 0\n"
    "f2 = 0\n"
    "G = x1*x2\n"
)


def test_run_split_mixed_example():
    doc = run_split(load_problem(SPLIT_TEXT))
    assert doc.status == 0
    assert "G = 1*x1*x2" in doc.text
    assert "independent linear solve: match" in doc.text
    assert "G: match" in doc.text


def test_result_document_reconstruction_reparses():
    doc = run_split(load_problem(SPLIT_TEXT))
    lines = doc.text.splitlines()
    start = lines.index("[decomposition]")
    parsed = {}
    for line in lines[start + 1:]:
        if line.startswith("["):
            break
        name, _, expr = line.partition(" = ")
        parsed[name] = parse_poly(expr, 2)
    from germsplit import standard_basis, CocycleData
    system = standard_basis(WilliamsonType(1, 1, 0, 2))
    g = [parse_poly("-2*y1*x2", 2), parse_poly("-1*x1*x2", 2)]
    for i in range(2):
        recon = g[i] - parsed[f"f{i + 1}"] - system.X[i].apply(parsed["G"])
        assert recon.is_zero


def test_run_split_cocycle_violation_status():
    text = ("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n"
            "[g]\ng1 = x2\ng2 = 0\n")
    doc = run_split(load_problem(text))
    assert doc.status == 4
    assert "cocycle violation" in doc.text


def test_run_split_validates_sections_and_degree():
    text = "germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n[g]\ng1 = x1\n"
    with pytest.raises(ValidationError):
        run_split(load_problem(text))
    text = ("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\ndegree: 1\n"
            "[g]\ng1 = x1^2\ng2 = 0\n")
    with pytest.raises(ValidationError):
        run_split(load_problem(text))


def test_run_classify_examples():
    text = "germsplit problem v1\nn: 1\n[q]\nq1 = x1^2 + y1^2\n"
    doc = run_classify(load_problem(text))
    assert "type: (1,0,0)@1" in doc.text
    text = "germsplit problem v1\nn: 1\n[q]\nq1 = x1*y1\n"
    assert "type: (0,1,0)@1" in run_classify(load_problem(text)).text
    text = ("germsplit problem v1\nn: 2\n[q]\n"
            "q1 = x1*y1 + x2*y2\nq2 = x1*y2 - x2*y1\n")
    assert "type: (0,0,1)@2" in run_classify(load_problem(text)).text


def test_run_cohomology_coboundary_file():
    text = ("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n"
            "[alpha]\na1 = 2*y1*x2\na2 = x1*x2\n")
    doc = run_cohomology(load_problem(text))
    assert doc.status == 0
    assert "h = 1*x1*x2" in doc.text
    assert "coboundary witness: pass" in doc.text


def test_run_cohomology_kernel_cochain():
    text = ("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n"
            "[alpha]\na1 = x1^2 + y1^2\na2 = x2*y2\n")
    doc = run_cohomology(load_problem(text))
    assert "h = 0" in doc.text


def test_run_cohomology_non_cocycle():
    text = ("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n"
            "[alpha]\na1 = x2\na2 = 0\n")
    doc = run_cohomology(load_problem(text))
    assert doc.status == 4


def test_run_verify_passes_on_split_example():
    doc = run_verify(load_problem(SPLIT_TEXT), points=10)
    assert doc.status == 0
    assert "elliptic average" in doc.text
    assert "hyperbolic transport" in doc.text


def test_run_gen_roundtrip_and_determinism():
    wtype = WilliamsonType.parse("(0,0,1)@2")
    text1 = run_gen(wtype, 5, 11)
    text2 = run_gen(wtype, 5, 11)
    assert text1 == text2
    problem = load_problem(text1)
    doc1 = run_split(problem)
    doc2 = run_split(problem)
    assert doc1.status == 0
    assert doc1.text == doc2.text
    assert "G: match" in doc1.text


def test_cli_exit_codes(tmp_path, capsys):
    prob = tmp_path / "p.txt"
    prob.write_text(SPLIT_TEXT)
    assert main(["split", str(prob)]) == 0
    out = capsys.readouterr().out
    assert "germsplit result v1" in out

    assert main(["split", str(tmp_path / "missing.txt")]) == 3

    bad = tmp_path / "bad.txt"
    bad.write_text("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n[g]\ng1 = x2\ng2 = 0\n")
    assert main(["split", str(bad)]) == 4

    syntax = tmp_path / "syntax.txt"
    syntax.write_text("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n[g]\ng1 = x1 +\ng2 = 0\n")
    assert main(["split", str(syntax)]) == 2

    rng = tmp_path / "range.txt"
    rng.write_text("germsplit problem v1\nn: 2\ntype: (1,1,0)@2\n[g]\ng1 = x9\ng2 = 0\n")
    assert main(["split", str(rng)]) == 3


def test_cli_gen_and_output_file(tmp_path):
    out = tmp_path / "gen.txt"
    assert main(["gen", "--type", "(1,0,0)@2", "--degree", "4",
                 "--seed", "9", "-o", str(out)]) == 0
    problem = load_problem(out.read_text())
    assert problem.seed == 9
    report = tmp_path / "report.txt"
    assert main(["split", str(out), "-o", str(report)]) == 0
    assert "independent linear solve: match" in report.read_text()


def test_cli_verify_tolerance_exceeded(tmp_path):
    prob = tmp_path / "p.txt"
    prob.write_text(SPLIT_TEXT)
    assert main(["verify", str(prob), "--points", "5",
                 "--tolerance", "1e-30"]) == 5
