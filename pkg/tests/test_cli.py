"""End-to-end CLI runs through main(argv): exit codes, output bytes,
error JSON, and seed determinism."""

import json
from fractions import Fraction
from itertools import combinations

import pytest

from tropls import cli, core
from tropls.matroid import uniform
from tropls.plucker import (
    Point,
    corank_vector,
    dualize,
    hyperplane,
    minor,
    pair_sum_lift,
    stable_intersection,
    standard,
    translate,
    tree_plucker,
)
from tropls.sptree import BLACK, WHITE, ColoredTree, caterpillar, weighted_from_shape


def _quartet():
    vals = [Fraction(0)] * 6
    p = standard(4, 2, vals)
    vals = [Fraction(1) if s == (3, 4) else Fraction(0) for s in p.subsets()]
    return standard(4, 2, vals)


def _bad_quartet():
    p = standard(4, 2, [0] * 6)
    vals = [Fraction(-1) if s == (3, 4) else Fraction(0) for s in p.subsets()]
    return standard(4, 2, vals)


def _colored_quartet():
    return ColoredTree(
        [("L1", "v1"), ("L2", "v1"), ("v1", "v2"), ("L3", "v2"), ("L4", "v2")],
        {"v1": BLACK, "v2": WHITE})


def _save(tmp_path, name, value):
    path = tmp_path / name
    path.write_text(core.serialize(value), encoding="utf-8")
    return str(path)


def _caterpillar_vector(n, d):
    return pair_sum_lift(tree_plucker(weighted_from_shape(caterpillar(n), 1)), d)


class TestValidate:
    def test_valid_vector(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _quartet())
        assert cli.main(["validate", path]) == 0
        assert json.loads(capsys.readouterr().out) == {"valid": True}

    def test_invalid_vector_exits_two_with_witness(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _bad_quartet())
        assert cli.main(["validate", path]) == 2
        data = json.loads(capsys.readouterr().out)
        assert data["valid"] is False
        assert data["witness"]["support"] == []
        assert data["witness"]["quad"] == [1, 2, 3, 4]
        assert data["witness"]["sums"] == ["-1", "0", "0"]

    def test_missing_file(self, tmp_path, capsys):
        assert cli.main(["validate", str(tmp_path / "nope.json")]) == 1
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "FileNotFoundError"

    def test_wrong_payload_type(self, tmp_path, capsys):
        path = _save(tmp_path, "m.json", uniform(2, 4))
        assert cli.main(["validate", path]) == 1
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "InvalidArgumentError"


class TestSubdivide:
    def test_quartet_structure(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _quartet())
        assert cli.main(["subdivide", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["f_bounded"] == [2, 1]
        assert len(data["facets"]) == 2
        assert sorted(data["dual_vertices"]) == ["0", "1"]
        assert len(data["interior"]) == 3


class TestFvector:
    def test_tight_tree_space_line(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _caterpillar_vector(6, 3))
        assert cli.main(["fvector", path]) == 0
        assert capsys.readouterr().out == "f=[6,6,1] bound=[6,6,1] tight=true\n"

    def test_total_flag_adds_loop_free_line(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _caterpillar_vector(6, 2))
        assert cli.main(["fvector", path, "--total"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "f=[4,3] bound=[4,3] tight=true"
        assert lines[1] == "g=[4,9] bound=[4,9] tight=true"

    def test_slack_vector_reports_false(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", standard(4, 2, [0] * 6))
        assert cli.main(["fvector", path]) == 0
        assert capsys.readouterr().out == "f=[1,0] bound=[2,1] tight=false\n"


class TestTransforms:
    def test_dual_roundtrip(self, tmp_path, capsys):
        p = _caterpillar_vector(5, 2)
        path = _save(tmp_path, "p.json", p)
        assert cli.main(["dual", path]) == 0
        assert core.deserialize(capsys.readouterr().out) == dualize(p)

    def test_minor_delete_and_contract(self, tmp_path, capsys):
        p = _caterpillar_vector(6, 3)
        path = _save(tmp_path, "p.json", p)
        assert cli.main(["minor", path, "--delete", "6", "--contract", "1"]) == 0
        assert core.deserialize(capsys.readouterr().out) == minor(p, (6,), (1,))

    def test_translate(self, tmp_path, capsys):
        p = _quartet()
        path = _save(tmp_path, "p.json", p)
        assert cli.main(["translate", path, "--v", "1,-2/3,5,0"]) == 0
        want = translate(p, Point((1, Fraction(-2, 3), 5, 0)))
        assert core.deserialize(capsys.readouterr().out) == want

    def test_translate_length_mismatch(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _quartet())
        assert cli.main(["translate", path, "--v", "1,2"]) == 1
        assert json.loads(capsys.readouterr().err)["error"] == "InvalidArgumentError"

    def test_translate_junk_coordinate(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _quartet())
        assert cli.main(["translate", path, "--v", "1,2,x,4"]) == 1
        assert json.loads(capsys.readouterr().err)["error"] == "ParseError"


class TestStableIntersect:
    def test_plain(self, tmp_path, capsys):
        a = _caterpillar_vector(5, 2)
        h = hyperplane([1, 3, 9, 27, 81])
        pa = _save(tmp_path, "a.json", a)
        ph = _save(tmp_path, "h.json", h)
        assert cli.main(["stable-intersect", pa, ph]) == 0
        assert core.deserialize(capsys.readouterr().out) == stable_intersection(a, h)

    def test_generic_is_deterministic(self, tmp_path, capsys):
        a = _caterpillar_vector(5, 2)
        h = hyperplane([1, 3, 9, 27, 81])
        pa = _save(tmp_path, "a.json", a)
        ph = _save(tmp_path, "h.json", h)
        assert cli.main(["stable-intersect", pa, ph, "--generic", "--seed", "3"]) == 0
        first = capsys.readouterr().out
        assert cli.main(["stable-intersect", pa, ph, "--generic", "--seed", "3"]) == 0
        assert capsys.readouterr().out == first
        data = json.loads(first)
        assert data["seed"] == 3
        assert data["pairs_checked"] >= 1
        v = core.deserialize(json.dumps(data["v"]))
        q = core.deserialize(json.dumps(data["q"]))
        assert q == stable_intersection(a, translate(h, v))

    def test_rank_guard(self, tmp_path, capsys):
        a = _caterpillar_vector(5, 2)
        pa = _save(tmp_path, "a.json", a)
        assert cli.main(["stable-intersect", pa, pa]) == 1
        assert json.loads(capsys.readouterr().err)["error"] == "InvalidArgumentError"


class TestGenerators:
    def test_hyperplane(self, capsys):
        assert cli.main(["hyperplane", "--c", "0,1,3"]) == 0
        assert core.deserialize(capsys.readouterr().out) == hyperplane([0, 1, 3])

    def test_corank(self, tmp_path, capsys):
        M = uniform(2, 4)
        path = _save(tmp_path, "m.json", M)
        assert cli.main(["corank", path]) == 0
        assert core.deserialize(capsys.readouterr().out) == corank_vector(M)

    def test_treespace_from_weighted(self, tmp_path, capsys):
        w = weighted_from_shape(caterpillar(5), internal_length=2)
        path = _save(tmp_path, "t.json", w)
        assert cli.main(["treespace", path, "--d", "3"]) == 0
        want = pair_sum_lift(tree_plucker(w), 3)
        assert core.deserialize(capsys.readouterr().out) == want

    def test_treespace_from_shape(self, tmp_path, capsys):
        t = _colored_quartet()
        path = _save(tmp_path, "t.json", t)
        assert cli.main(["treespace", path, "--d", "2"]) == 0
        want = pair_sum_lift(tree_plucker(weighted_from_shape(t)), 2)
        assert core.deserialize(capsys.readouterr().out) == want

    def test_treespace_rank_out_of_range(self, tmp_path, capsys):
        path = _save(tmp_path, "t.json", _colored_quartet())
        assert cli.main(["treespace", path, "--d", "3"]) == 1
        assert json.loads(capsys.readouterr().err)["error"] == "InvalidArgumentError"

    def test_sp_matroid(self, tmp_path, capsys):
        path = _save(tmp_path, "t.json", _colored_quartet())
        assert cli.main(["sp-matroid", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["beta"] == 1
        M = core.deserialize(json.dumps(data["matroid"]))
        bases = {s for s in combinations(range(1, 5), 2) if s != (3, 4)}
        assert {tuple(b) for b in M.bases_sets()} == bases


class TestTutte:
    def test_uniform_three_six(self, tmp_path, capsys):
        path = _save(tmp_path, "m.json", uniform(3, 6))
        assert cli.main(["tutte", path]) == 0
        assert capsys.readouterr().out == "6z+6w+3z^2+3w^2+z^3+w^3\n"

    def test_lemma_residual_vanishes(self, tmp_path, capsys):
        path = _save(tmp_path, "p.json", _caterpillar_vector(5, 2))
        assert cli.main(["tutte-lemma", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True


class TestConjectureScan:
    def test_tree_family_clean_scan(self, capsys):
        argv = ["conjecture-scan", "--family", "tree", "--n", "6", "--d", "2",
                "--seed", "1", "--count", "4"]
        assert cli.main(argv) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "seed=1"
        assert lines[-1] == "violations=0"
        body = lines[1:-1]
        assert len(body) == 4
        for i, line in enumerate(body):
            assert line.startswith(f"i={i} f=")
            assert line.endswith("ok=true")
            assert "bound=[4,3]" in line

    def test_corank_family(self, capsys):
        argv = ["conjecture-scan", "--family", "corank", "--n", "5", "--d", "2",
                "--seed", "7", "--count", "3"]
        assert cli.main(argv) == 0
        assert capsys.readouterr().out.splitlines()[-1] == "violations=0"

    def test_constructible_family(self, capsys):
        argv = ["conjecture-scan", "--family", "constructible", "--n", "4", "--d", "2",
                "--seed", "5", "--count", "2"]
        assert cli.main(argv) == 0
        assert capsys.readouterr().out.splitlines()[-1] == "violations=0"

    def test_seed_determinism(self, capsys):
        argv = ["conjecture-scan", "--family", "tree", "--n", "5", "--d", "2",
                "--seed", "11", "--count", "3"]
        assert cli.main(argv) == 0
        first = capsys.readouterr().out
        assert cli.main(argv) == 0
        assert capsys.readouterr().out == first

    def test_worker_count_does_not_change_bytes(self, capsys, monkeypatch):
        argv = ["conjecture-scan", "--family", "tree", "--n", "5", "--d", "2",
                "--seed", "13", "--count", "4"]
        assert cli.main(argv) == 0
        serial = capsys.readouterr().out
        monkeypatch.setenv("TROPLS_THREADS", "4")
        assert cli.main(argv) == 0
        assert capsys.readouterr().out == serial

    def test_bad_count(self, capsys):
        argv = ["conjecture-scan", "--family", "tree", "--n", "5", "--d", "2",
                "--count", "0"]
        assert cli.main(argv) == 1
        assert json.loads(capsys.readouterr().err)["error"] == "InvalidArgumentError"
