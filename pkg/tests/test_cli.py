import io
import json

import pytest

from bimatroids.bimatroid import Bimatroid
from bimatroids.cli import main
from bimatroids.exactnum import FieldMatrix
from bimatroids.matroid import Matroid, uniform
from bimatroids.morphism import MatroidMorphism, to_point
from bimatroids.polynomial import MultiPoly


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return p


@pytest.fixture
def files(tmp_path):
    ident = FieldMatrix.identity(2).to_json()
    return {
        "ident": write(tmp_path, "ident.json", ident),
        # a 2x2 minor with no 1x1 minors violates the axioms
        "bad": write(tmp_path, "bad.json", {"rows": ["e0", "e1"], "cols": ["f0", "f1"],
                                            "regular_minors": [{"I": [], "J": []},
                                                               {"I": ["e0", "e1"], "J": ["f0", "f1"]}]}),
        "rel": write(tmp_path, "rel.json", {"rows": ["e0", "e1"], "cols": ["f0"],
                                            "pairs": [["e0", "f0"], ["e1", "f0"]]}),
        "map": write(tmp_path, "map.json", {"domain": ["a", "b"], "codomain": ["x"],
                                            "map": {"a": "x", "b": "x"}}),
        "u23": write(tmp_path, "u23.json", uniform(2, 3).to_json()),
        "point": write(tmp_path, "point.json", to_point(uniform(2, 3)).to_json()),
        "x2y2": write(tmp_path, "x2y2.json", MultiPoly(("x", "y"), {(2, 0): 1, (0, 2): 1}).to_json()),
        "col": write(tmp_path, "col.json", FieldMatrix.from_rows([[1], [1]]).to_json()),
        "row": write(tmp_path, "row.json", FieldMatrix.from_rows([[1, -1]]).to_json()),
        "garbage": write(tmp_path, "garbage.json", "{not json"),
        "schema": write(tmp_path, "schema.json", {"something": 1}),
    }


def test_validate(files):
    code, out = run("validate", files["ident"])
    assert code == 0 and json.loads(out)["valid"] is True
    code, out = run("validate", files["bad"])
    data = json.loads(out)
    assert code == 0 and data["valid"] is False


def test_constructors_round_trip(files, tmp_path):
    code, out = run("from-matrix", files["ident"])
    assert code == 0
    B = Bimatroid.from_json(json.loads(out))
    assert len(B.minors) == 4
    code, out = run("from-relation", files["rel"])
    assert code == 0 and len(json.loads(out)["regular_minors"]) == 3
    code, out = run("from-map", files["map"])
    assert code == 0 and Bimatroid.from_json(json.loads(out)).m == 1
    code, out = run("bond", files["u23"], "--basis", "0,1")
    assert code == 0 and Bimatroid.from_json(json.loads(out)).n == 3


@pytest.mark.parametrize("view", ["minors", "extended", "rank-table", "rectangles"])
def test_convert_views_reparse(files, tmp_path, view):
    code, out = run("convert", files["ident"], "--view", view)
    assert code == 0
    p = write(tmp_path, "view.json", out)
    code, back = run("convert", p, "--view", "minors")
    assert code == 0
    code, orig = run("from-matrix", files["ident"])
    assert Bimatroid.from_json(json.loads(back)) == Bimatroid.from_json(json.loads(orig))


def test_product_and_checks(files, tmp_path):
    code, out = run("from-matrix", files["ident"])
    assert run("product", write(tmp_path, "e.json", out), tmp_path / "e.json")[0] == 2
    m = dict(FieldMatrix.identity(2).to_json(), row_labels=["a", "b"], col_labels=["a", "b"])
    code, out = run("from-matrix", write(tmp_path, "m.json", m))
    b = write(tmp_path, "b.json", out)
    code, out = run("product", b, b)
    assert code == 0 and json.loads(out) == json.loads(b.read_text())
    assert run("frenk-check", b, b)[0] == 0
    code, out = run("cauchy-binet", files["col"], files["row"])
    assert code == 0 and json.loads(out)["inclusion"] is True


def test_morphism_commands(files):
    code, out = run("morphism", "check", files["point"])
    assert code == 0 and json.loads(out)["morphism"] is True
    code, out = run("morphism", "bases", files["point"])
    assert code == 0 and json.loads(out)["counts"] == [1, 3, 3]
    code, out = run("morphism", "tilde", files["point"])
    data = json.loads(out)
    assert code == 0 and data["valid"] and Matroid.from_json(data["matroid"]).n == 5


def test_morphism_check_reports_non_morphism(tmp_path):
    data = {"source": Matroid(["x"], [0]).to_json(), "target": uniform(1, 1, ["a"]).to_json(),
            "map": {"x": "a"}}
    code, out = run("morphism", "check", write(tmp_path, "nm.json", data))
    assert code == 0 and json.loads(out)["morphism"] is False
    assert run("morphism", "bases", tmp_path / "nm.json")[0] == 2


@pytest.mark.parametrize("kind", ["basis", "independent-homogenized"])
def test_poly_matroid(files, kind):
    code, out = run("poly", kind, files["u23"])
    assert code == 0 and MultiPoly.from_json(json.loads(out))


@pytest.mark.parametrize("kind", ["weak-basis", "homogeneous-basis"])
def test_poly_morphism(files, kind):
    code, out = run("poly", kind, files["point"])
    assert code == 0 and MultiPoly.from_json(json.loads(out)).is_homogeneous()
    assert run("poly", "weak-basis", files["point"], "--alpha", "1")[0] == 2


def test_poly_regular_minor(files):
    code, out = run("poly", "regular-minor", files["ident"])
    assert code == 0 and len(json.loads(out)["terms"]) == 4


def test_check_lorentzian(files):
    code, out = run("check-lorentzian", files["x2y2"])
    data = json.loads(out)
    assert code == 0 and data["lorentzian"] is False and data["strict"] is False


def test_exit_codes(files, tmp_path):
    assert run("validate", tmp_path / "missing.json")[0] == 1
    assert run("validate", files["garbage"])[0] == 1
    assert run("validate", files["schema"])[0] == 1
    assert run("bond", files["u23"], "--basis", "0")[0] == 2
    assert run("theorem", "A")[0] == 2


def test_theorem_random_example():
    code, out = run("theorem", "A", "--random", 10, "--seed", 42, "--max-rows", 4,
                    "--max-cols", 4, "--field", "Fp")
    data = json.loads(out)
    assert code == 0 and len(data["reports"]) == 10 and data["verdict"]


@pytest.mark.parametrize("theorem", ["B", "C", "mason", "c-pipeline", "e-lorentzian"])
def test_theorem_random_all(theorem):
    code, out = run("theorem", theorem, "--random", 4, "--seed", 1)
    assert code == 0 and json.loads(out)["verdict"]


def test_theorem_on_instance(files):
    code, out = run("theorem", "mason", files["u23"])
    data = json.loads(out)
    assert code == 0 and data["reports"][0]["sequences"]["B"] == [1, 3, 3]
    code, out = run("theorem", "e-lorentzian", files["point"], "--alpha", "2")
    assert code == 0 and json.loads(out)["reports"][0]["verdict"]


def test_determinism_and_jobs():
    args = ("theorem", "B", "--random", 6, "--seed", 9, "--field", "Q")
    a, b = run(*args), run(*args)
    c = run(*args, "--jobs", 2)
    assert a == b == c


def test_csv_and_report(tmp_path):
    code, out = run("theorem", "A", "--random", 3, "--seed", 5)
    saved = write(tmp_path, "bundle.json", out)
    code, csv_out = run("theorem", "A", "--random", 3, "--seed", 5, "--format", "csv")
    lines = csv_out.splitlines()
    assert code == 0 and lines[0].startswith("theorem,seed,trial")
    n_checks = sum(len(r["checks"]) for r in json.loads(out)["reports"])
    assert len(lines) == 1 + n_checks
    code, again = run("report", saved, "--format", "csv")
    assert code == 0 and again == csv_out
    code, again = run("report", saved)
    assert code == 0 and again == out


def test_report_alarm(tmp_path):
    bundle = {"theorem": "A", "seed": 1, "verdict": False,
              "reports": [{"theorem": "A", "checks": [], "verdict": False}]}
    assert run("report", write(tmp_path, "bad.json", bundle))[0] == 3
