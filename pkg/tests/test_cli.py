import json

import pytest

import main
from constants import EXIT_ERROR, EXIT_OK, EXIT_PARSE_ERROR

DIAGONAL_P = "prime { monoid: cone{rays=[[-1,-1]]}; matrix: [[1, r2, r3]] }"
DIAGONAL_PPRIME = "prime { monoid: cone{rays=[[-1,-1]]}; matrix: [[1, 0, r3-r2]] }"
TORUS_P = "prime { monoid: ZZ^1; gamma: QQ; matrix: [[1, 0]] }"
TORUS_FINE = "prime { monoid: ZZ^1; matrix: [[1, 1], [0, 1]] }"
TORUS_REFINED = "prime { monoid: ZZ^1; matrix: [[1, 0], [0, 1]] }"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def run(capsys, *argv):
    code = main.main(["--quiet", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_crown_on_the_diagonal_cone(write, capsys):
    p, pprime = write("p1.prime", DIAGONAL_P), write("p2.prime", DIAGONAL_PPRIME)
    code, out = run(capsys, "crown", "--p", p, "--pprime", pprime)
    assert code == EXIT_OK
    assert out == {"v": 1, "verdict": True}


def test_crown_rejection_carries_a_witness(write, capsys):
    p, pprime = write("p.prime", TORUS_P), write("fine.prime", TORUS_FINE)
    code, out = run(capsys, "crown", "--p", p, "--pprime", pprime)
    assert code == EXIT_OK
    assert out["verdict"] is False
    assert out["witness"]["text"] == "t^-1*x1^2"


def test_cont_check(write, capsys):
    code, out = run(capsys, "cont-check", "--p", write("q.prime", "prime { monoid: ZZ^1; matrix: [[0, 1], [1, 0]] }"))
    assert code == EXIT_OK
    assert out == {"v": 1, "verdict": False}


def test_series_dist(write, capsys):
    write("p.prime", TORUS_P)
    f = write("f.series", "series { prime: p.prime; terms: t^0; precision: exact }")
    g = write("g.series", "series { prime: p.prime; terms: t^0 + t^-5*x1^5; precision: exact }")
    code, out = run(capsys, "series-dist", "--f", f, "--g", g)
    assert code == EXIT_OK
    assert out == {"v": 1, "outcome": "exact", "value": {"q": ["-5", "0", "0", "0"]}}


def test_output_is_byte_identical(write, capsys):
    p = write("p.prime", DIAGONAL_P)
    main.main(["--quiet", "dim", "--p", p])
    first = capsys.readouterr().out
    main.main(["--quiet", "dim", "--p", p])
    assert capsys.readouterr().out == first


def test_contains_reports_a_witness(write, capsys):
    p, refined = write("p.prime", TORUS_P), write("refined.prime", TORUS_REFINED)
    code, out = run(capsys, "contains", "--pprime", refined, "--p", p)
    assert (code, out["verdict"]) == (EXIT_OK, True)
    code, out = run(capsys, "contains", "--pprime", p, "--p", refined)
    assert (code, out["verdict"]) == (EXIT_OK, False)
    assert len(out["witness"]) == 2
    fine = write("fine.prime", TORUS_FINE)
    code, out = run(capsys, "contains", "--pprime", fine, "--p", p)
    assert out["verdict"] is False


def test_compare_and_normalize(write, capsys):
    p = write("p.prime", "prime { monoid: ZZ^1; matrix: [[1, 1r2]] }")
    code, out = run(capsys, "compare", "--p", p, "--m1", "t^-3*x1^2", "--m2", "t^0")
    assert out["order"] == "<"
    scaled = write("s.prime", "prime { monoid: ZZ^1; matrix: [[2, 4]] }")
    code, out = run(capsys, "normalize", "--p", scaled)
    assert out["prime"]["matrix"] == [[{"q": ["1", "0", "0", "0"]}, {"q": ["2", "0", "0", "0"]}]]


def test_dimension_verbs(write, capsys):
    p = write("p.prime", "prime { monoid: ZZ^1; matrix: [[1, 0]] }")
    code, out = run(capsys, "height", "--p", p)
    assert out["height"] == 1
    code, out = run(capsys, "chain", "--p", p)
    assert len(out["chain"]) == 2
    code, out = run(capsys, "dim", "--p", p)
    assert out["reason"] in ("T_COEFFS", "FULL_DIM_CONE", "BOUNDS_MEET", "BOUNDS_ONLY")
    assert out["dim_top_lower"] <= out["dim_top_upper"]


def test_trdeg(capsys):
    code, out = run(capsys, "trdeg", "--gen", "[r2]", "--gen", "[1+r2]", "--gen", "[r3]")
    assert code == EXIT_OK
    assert out["trdeg"] == 2 and out["basis"] == [0, 2]


def test_hilbert_and_strata(capsys):
    code, out = run(capsys, "hilbert", "--monoid", "NN^2")
    assert sorted(out["generators"]) == [[0, 1], [1, 0]]
    code, out = run(capsys, "strata", "--monoid", "NN^1")
    assert len(out["faces"]) == 2


def test_stream_verbs(write, capsys):
    p = write("p.prime", TORUS_P)
    s = write("s.stream", "stream { coeff0: 0; coeff_step: -1; exp0: [0]; exp_step: [1]; cert: {N: 0, ratio: t^-1*x1} }")
    code, out = run(capsys, "series-converges", "--stream", s, "--p", p)
    assert out["verdict"] == "certified"
    code, out = run(capsys, "partial-sum", "--stream", s, "--p", p, "--threshold", "-2")
    assert out["text"] == "t^0 + t^-1*x1^1 + t^-2*x1^2"


def test_parse_errors_exit_two(write, capsys):
    bad = write("bad.prime", "prime { monoid: ZZ^1; matrix: [[1, a]] }")
    code, out = run(capsys, "cont-check", "--p", bad)
    assert code == EXIT_PARSE_ERROR
    assert out["error"]["code"] == "parse_error"
    code, out = run(capsys, "cont-check", "--p", "/nonexistent.prime")
    assert code == EXIT_PARSE_ERROR


def test_domain_errors_exit_one(write, capsys):
    z1, z2 = write("z1.prime", TORUS_P), write("z2.prime", "prime { monoid: ZZ^2; matrix: [[1, 0, 0]] }")
    code, out = run(capsys, "contains", "--pprime", z1, "--p", z2)
    assert code == EXIT_ERROR
    assert out["error"]["code"] == "monoid_mismatch"
    kernel = write("k.prime", "prime { monoid: NN^1; matrix: [[0, 1], [1, 0]] }")
    code, out = run(capsys, "maximal-above", "--p", kernel)
    assert (code, out["error"]["code"]) == (EXIT_ERROR, "not_in_cont")


def test_plot_writes_svg(write, tmp_path, capsys):
    pytest.importorskip("matplotlib")
    p = write("p.prime", DIAGONAL_P)
    pprime = write("q.prime", DIAGONAL_PPRIME)
    out_path = tmp_path / "region.svg"
    code, out = run(capsys, "plot", "--p", p, "--pprime", pprime, "--out", str(out_path))
    assert code == EXIT_OK
    assert out_path.read_text().lstrip().startswith("<?xml")
    assert out["samples"][0]["admissible"] is True


def test_series_mul_text_reloads(write, capsys):
    write("p.prime", TORUS_P)
    f = write("f.series", "series { prime: p.prime; terms: t^0 + x1; precision: -3 }")
    g = write("g.series", "series { prime: p.prime; terms: t^1; precision: exact }")
    code, out = run(capsys, "series-mul", "--f", f, "--g", g)
    assert code == EXIT_OK
    assert out["text"].endswith("precision: (-2) }")
    product = write("fg.series", out["text"])
    code, again = run(capsys, "series-dist", "--f", product, "--g", product)
    assert (code, again["outcome"]) == (EXIT_OK, "below_precision")
    assert again["value"] == {"q": ["-2", "0", "0", "0"]}
