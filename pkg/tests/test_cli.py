import json
from fractions import Fraction

import pytest

from freydcat import QQ, ZZ, Matrix, ResourceError, UsageError, Zmod
from freydcat import cli
from freydcat.cli import EXIT_NO, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main, run
from freydcat.formats import (FunctorSpec, MorphismSpec, SystemSpec, loads, matrix_from_json, matrix_to_json,
                              presentation_from_json, presentation_to_json)

M = Matrix.from_rows


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def write(name, obj):
        (tmp_path / name).write_text(json.dumps(obj))
        return name

    return write


def report(argv):
    text, code = run(argv)
    return json.loads(text), code


# --- mod ---------------------------------------------------------------------------------

def test_invariants_of_bare_matrix(files):
    files("rel.json", [[2, 0], [0, 3]])
    out, code = report(["mod", "invariants", "--ring", "Z", "rel.json"])
    assert code == EXIT_OK
    assert out["pretty"] == "Z/6"
    assert out["invariants"] == {"free_rank": 0, "torsion": [6]}
    assert out["command"] == "mod invariants" and out["version"] == 1


@pytest.mark.parametrize("op,extra,pretty", [
    ("hom", [], "Z/2"),
    ("tensor", [], "Z/2"),
    ("ext", ["--i", "1"], "Z/2"),
    ("ext", ["--i", "0"], "Z/2"),
    ("ext", ["--i", "2"], "0"),
    ("tor", [], "Z/2"),
])
def test_two_module_ops(files, op, extra, pretty):
    files("A.json", {"ring": "Z", "relations": [[4]]})
    files("B.json", {"ring": "Z", "relations": [[6]]})
    out, code = report(["mod", op, *extra, "A.json", "B.json"])
    assert (out["pretty"], code) == (pretty, EXIT_OK)


def test_kernel_and_cokernel(files):
    files("f.json", {"ring": "Z", "source": [[4]], "target": [[2]], "datum": [[1]]})
    assert report(["mod", "kernel", "f.json"])[0]["pretty"] == "Z/2"
    assert report(["mod", "cokernel", "f.json"])[0]["pretty"] == "0"


def test_zero_row_presentation_is_free(files):
    files("free.json", {"ring": "Z", "relations": {"rows": 0, "cols": 2, "entries": []}})
    assert report(["mod", "invariants", "free.json"])[0]["pretty"] == "Z^2"


def test_modular_ring_tag(files):
    files("m.json", {"ring": {"Zmod": 4}, "relations": [[2]]})
    out, _ = report(["mod", "invariants", "m.json"])
    assert out["ring"] == {"Zmod": 4} and out["pretty"] == "Z/2"


def test_text_format(files):
    files("rel.json", [[2, 0], [0, 3]])
    text, code = run(["mod", "invariants", "--ring", "Z", "--format", "text", "rel.json"])
    assert code == EXIT_OK
    assert text.splitlines()[:3] == ["Z/6", "free_rank: 0", "torsion: 6"]


def test_output_is_deterministic(files):
    files("A.json", {"ring": "Z", "relations": [[4, 2], [0, 6]]})
    files("B.json", {"ring": "Z", "relations": [[6]]})
    argv = ["mod", "hom", "A.json", "B.json"]
    assert run(argv) == run(argv)


# --- functor ---------------------------------------------------------------------------------

def test_left_exact_representable(files):
    files("F.json", {"descriptor": ["FREYD", "FREYD", "ROWS"], "ring": "Z", "kind": "representable",
                     "module": [[4]]})
    out, code = report(["functor", "left-exact", "--ring", "Z", "F.json"])
    assert (out["pretty"], out["decision"], code) == ("left exact: yes", True, EXIT_OK)


def test_left_exact_no(files):
    files("F.json", {"descriptor": ["FREYD", "FREYD", "ROWS"], "ring": "Z", "range": [[0]],
                     "relation_object": [[0]], "datum": [[2]]})
    out, code = report(["functor", "left-exact", "F.json"])
    assert (out["pretty"], code) == ("left exact: no", EXIT_NO)


@pytest.mark.parametrize("kind,extra,want,code", [
    ("tensor", {}, "right exact: yes", EXIT_OK),
    ("representable", {}, "right exact: no", EXIT_NO),
    ("ext", {"index": 1}, "right exact: yes", EXIT_OK),
    ("tor", {"index": 1}, "right exact: no", EXIT_NO),
])
def test_right_exact(files, kind, extra, want, code):
    files("F.json", {"descriptor": ["FREYD", "OP", "FREYD", "ROWS"], "ring": "Z", "kind": kind,
                     "module": [[2]], **extra})
    out, got = report(["functor", "right-exact", "F.json"])
    assert (out["pretty"], got) == (want, code)


def test_inject_reports_embedding(files):
    files("F.json", {"descriptor": ["FREYD", "OP", "FREYD", "ROWS"], "ring": "Z", "kind": "representable",
                     "module": [[2]]})
    out, code = report(["functor", "inject", "F.json"])
    assert (out["pretty"], code) == ("monomorphism: yes", EXIT_OK)
    assert set(out["embedding"]) == {"injective_range", "injective_relation_object", "injective_datum",
                                     "datum", "witness"}
    text, _ = run(["functor", "inject", "--format", "text", "F.json"])
    assert "embedding:" in text


def test_nat_hom_yoneda(files):
    cov = ["FREYD", "OP", "FREYD", "ROWS"]
    files("F.json", {"descriptor": cov, "ring": "Z", "kind": "representable", "module": [[2]]})
    files("G.json", {"descriptor": cov, "ring": "Z", "kind": "representable", "module": [[4]]})
    assert report(["functor", "nat-hom", "F.json", "G.json"])[0]["pretty"] == "Z/2"


# --- solve -------------------------------------------------------------------------------------

def _system(ring, a, b, g):
    return {"ring": ring, "unknowns": [[1, 1]], "left": [[[[a]]]], "right": [[[[b]]]], "rhs": [[[g]]]}


def test_solve_yes_and_no(files):
    files("yes.json", _system("Z", 2, 3, 12))
    out, code = report(["solve", "yes.json"])
    assert (out["pretty"], code) == ("solvable: yes", EXIT_OK)
    assert out["solution"][0]["entries"] == [["2"]]
    files("no.json", _system("Z", 2, 1, 3))
    out, code = report(["solve", "no.json"])
    assert (out["pretty"], out["solution"], code) == ("solvable: no", None, EXIT_NO)


def test_solve_modular(files):
    files("s.json", _system({"Zmod": 6}, 5, 1, 1))
    out, _ = report(["solve", "s.json"])
    assert out["solution"][0]["entries"] == [["5"]]


# --- errors and exit codes ------------------------------------------------------------------------

def test_main_writes_out_file(files, tmp_path, capsys):
    files("rel.json", [[2]])
    assert main(["mod", "invariants", "--ring", "Z", "--out", "r.json", "rel.json"]) == EXIT_OK
    assert json.loads((tmp_path / "r.json").read_text())["pretty"] == "Z/2"
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("doc,ring,needle", [
    ({"ring": "Z", "relations": [[2]]}, "Q", "conflicts"),
    ({"ring": "Z/0", "relations": [[2]]}, None, "ring"),
    ({"version": 2, "ring": "Z", "relations": [[2]]}, None, "version"),
    ({"ring": "Z", "relations": [["x"]]}, None, "entries[0][0]"),
    ([[1, 2], [3]], "Z", "entries[1]"),
    ([[1]], None, "needs a ring"),
])
def test_usage_errors(files, capsys, doc, ring, needle):
    files("bad.json", doc)
    argv = ["mod", "invariants", "bad.json"] + (["--ring", ring] if ring else [])
    assert main(argv) == EXIT_USAGE
    assert needle in capsys.readouterr().err


def test_missing_file_and_bad_json(files, tmp_path, capsys):
    assert main(["mod", "invariants", "--ring", "Z", "nope.json"]) == EXIT_USAGE
    assert "cannot read" in capsys.readouterr().err
    (tmp_path / "x.json").write_text("{not json")
    assert main(["mod", "invariants", "x.json"]) == EXIT_USAGE
    assert "invalid JSON" in capsys.readouterr().err


def test_wrong_arity_and_ill_defined_morphism(files, capsys):
    files("A.json", {"ring": "Z", "relations": [[4]]})
    assert main(["mod", "hom", "A.json"]) == EXIT_USAGE
    files("f.json", {"ring": "Z", "source": [[2]], "target": [[4]], "datum": [[1]]})
    assert main(["mod", "kernel", "f.json"]) == EXIT_USAGE
    assert "does not respect" in capsys.readouterr().err


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as e:
        main(["mod", "frobnicate", "x.json"])
    assert e.value.code == 2


def test_resource_limit_exit_code(files, monkeypatch, capsys):
    def boom(args):
        raise ResourceError("too big")

    monkeypatch.setitem(cli.__dict__, "cmd_mod", boom)
    files("rel.json", [[2]])
    assert main(["mod", "invariants", "--ring", "Z", "rel.json"]) == EXIT_RESOURCE
    assert "resource limit" in capsys.readouterr().err


# --- formats -------------------------------------------------------------------------------------

@pytest.mark.parametrize("m", [
    M(ZZ, [[10 ** 40, -3], [0, 7]]),
    Matrix.zero(ZZ, 0, 3),
    Matrix.zero(Zmod(6), 2, 0),
])
def test_matrix_round_trip(m):
    assert matrix_from_json(loads(json.dumps(matrix_to_json(m)))) == m


def test_rational_entries():
    m = matrix_from_json({"ring": "Q", "entries": [["1/2", "-3"]]})
    assert m == M(QQ, [[Fraction(1, 2), -3]])
    assert matrix_to_json(m)["entries"] == [["1/2", "-3"]]


def test_presentation_and_spec_round_trips():
    rel = M(Zmod(4), [[2, 1]])
    assert presentation_from_json(presentation_to_json(rel)) == rel
    spec = MorphismSpec(M(ZZ, [[4]]), M(ZZ, [[2]]), M(ZZ, [[1]]))
    assert MorphismSpec.from_json(spec.to_json()) == spec
    f = FunctorSpec(("FREYD", "OP", "FREYD", "ROWS"), ZZ, "ext", module=M(ZZ, [[3]]), index=1)
    assert FunctorSpec.from_json(f.to_json()) == f
    s = SystemSpec(ZZ, ((1, 1),), ((None,),), ((None,),), (M(ZZ, [[0]]),))
    assert SystemSpec.from_json(s.to_json()) == s


@pytest.mark.parametrize("doc", [
    {"descriptor": ["FREYD", "ROWS"], "ring": "Z", "kind": "representable", "module": [[2]]},
    {"descriptor": ["FREYD", "FREYD", "ROWS"], "ring": "Z", "kind": "tensor", "module": [[2]]},
    {"descriptor": ["FREYD", "OP", "FREYD", "ROWS"], "ring": "Z", "kind": "ext", "module": [[2]], "index": 0},
    {"descriptor": ["FREYD", "OP", "FREYD", "ROWS"], "ring": "Z", "range": [[2]]},
    {"descriptor": ["FREYD", "OP", "FREYD", "ROWS"], "kind": "representable", "module": [[2]]},
])
def test_functor_spec_rejects(doc):
    with pytest.raises(UsageError):
        FunctorSpec.from_json(doc)
