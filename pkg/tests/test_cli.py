from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from multinets.cli import main
from multinets.documents import dumps, load_schema, parse_document, reserialize

GOLDEN = "1,-(z+1),-z^3,z^3+z"


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBuild:
    def test_coordinate_plane(self, capsys):
        code, out, _ = run(capsys, ["build", "--n", "4", "--N", "4", "--plane", "1,0,0,0"])
        doc = json.loads(out)
        assert code == 0
        assert doc["reports"]["classification"]["verdict"] == "heavy"
        assert [e["mult"] for b in doc["blocks"] for e in b].count(4) == 3
        assert doc["raw_blocks"] == doc["blocks"] and doc["fixed_components"] == []

    def test_golden(self, capsys):
        code, out, _ = run(capsys, ["build", "--n", "8", "--N", "8", "--plane", GOLDEN])
        doc = json.loads(out)
        assert code == 0 and doc["kind"] == "induced" and doc["pivot"] == 0
        assert doc["reports"]["classification"]["verdict"] == "light"
        assert sum(1 for p in doc["base_points"] if p["mult"] == 2) == 8
        assert doc["plane"] == ["1", "-1 - z", "-z^3", "z + z^3"]

    def test_plane_in_qn(self, capsys):
        code, out, err = run(capsys, ["build", "--n", "4", "--N", "4", "--plane", "1,-1,0,0"])
        assert code == 2 and out == "" and "Q_4" in err

    def test_fixed_components_recorded(self, capsys):
        code, out, _ = run(capsys, ["build", "--n", "5", "--plane", "3,-2,-1,0"])
        doc = json.loads(out)
        assert code == 0 and doc["d"] == 9 and doc["fixed_components"] == [["1", "-1", "0"]]
        assert all(sum(e["mult"] for e in b) == 10 for b in doc["raw_blocks"])

    @pytest.mark.parametrize(
        "argv",
        [
            ["build", "--n", "4", "--plane", "1,2"],
            ["build", "--n", "3", "--N", "4", "--plane", "1,2,3,5"],
            ["build", "--n", "4", "--plane", "1,2,z^,5"],
            ["build", "--n", "4", "--plane", "0,0,0,0"],
            ["build", "--n", "4", "--plane", "0,1,2,3", "--pivot", "0"],
            ["build", "--n", "4", "--plane", "1,2,3,5", "--pivot", "7"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, out, err = run(capsys, argv)
        assert code == 1 and out == "" and err

    def test_argparse_errors_exit_1(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["build", "--plane", "1,2,3,5"])
        assert e.value.code == 1


def catalog_text(capsys, *args):
    code, out, _ = run(capsys, ["catalog", *args])
    assert code == 0
    return out


class TestDocuments:
    def test_hasse_verify(self, capsys, monkeypatch):
        text = catalog_text(capsys, "hasse")
        code, out, _ = run(capsys, ["verify"], stdin=text, monkeypatch=monkeypatch)
        rep = json.loads(out)
        assert code == 0 and rep["summary"] == "net, k=4, d=3, all identities pass" and rep["ok"]

    def test_monomial_classify(self, capsys, monkeypatch):
        text = catalog_text(capsys, "monomial", "2")
        code, out, _ = run(capsys, ["classify", "-"], stdin=text, monkeypatch=monkeypatch)
        rep = json.loads(out)
        assert rep["verdict"] == "heavy"
        assert rep["line_histogram"] == [[1, 6], [2, 3]] and rep["point_histogram"] == [[1, 4], [2, 3]]

    def test_broken_block_sum(self, capsys, monkeypatch):
        doc = json.loads(catalog_text(capsys, "hasse"))
        doc["blocks"][1][0]["mult"] = 2
        code, out, _ = run(capsys, ["verify"], stdin=json.dumps(doc), monkeypatch=monkeypatch)
        rep = json.loads(out)
        assert code == 0 and not rep["ok"] and not rep["identities"]["1"]
        assert any(f.startswith("identity (1)") for f in rep["failures"])

    @pytest.mark.parametrize(
        "edit,path",
        [
            (lambda d: d["blocks"][2][1]["line"].__setitem__(0, 5), "/blocks/2/1/line/0"),
            (lambda d: d.__setitem__("schema_version", "2"), "/schema_version"),
            (lambda d: d["blocks"][0][0].__setitem__("mult", 0), "/blocks/0/0/mult"),
            (lambda d: d["blocks"][0][0]["line"].__setitem__(1, "1/(0)"), "/blocks/0/0/line/1"),
            (lambda d: d.pop("reports"), "/"),
        ],
    )
    def test_schema_errors(self, capsys, monkeypatch, edit, path):
        doc = json.loads(catalog_text(capsys, "hasse"))
        edit(doc)
        code, out, err = run(capsys, ["verify"], stdin=json.dumps(doc), monkeypatch=monkeypatch)
        assert code == 1 and out == ""
        assert err.startswith(f"schema error at {path}:")

    def test_invalid_json(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["classify"], stdin="{", monkeypatch=monkeypatch)
        assert code == 1 and "invalid JSON" in err

    def test_latin(self, capsys, monkeypatch):
        text = catalog_text(capsys, "hasse")
        code, out, _ = run(capsys, ["latin"], stdin=text, monkeypatch=monkeypatch)
        rep = json.loads(out)
        assert code == 0 and rep["mutually_orthogonal"] and len(rep["squares"]) == 2

    def test_latin_rejects_heavy(self, capsys, monkeypatch):
        text = catalog_text(capsys, "monomial", "2")
        code, _, err = run(capsys, ["latin"], stdin=text, monkeypatch=monkeypatch)
        assert code == 1 and "not a net" in err

    def test_provenance(self, capsys, monkeypatch):
        _, out, _ = run(capsys, ["build", "--n", "4", "--plane", "1,2,3,5"])
        doc = json.loads(out)
        code, rep, _ = run(capsys, ["verify"], stdin=out, monkeypatch=monkeypatch)
        assert json.loads(rep)["provenance_ok"] is True
        doc["plane"] = ["1", "2", "3", "7"]
        _, rep, _ = run(capsys, ["verify"], stdin=json.dumps(doc), monkeypatch=monkeypatch)
        assert json.loads(rep)["provenance_ok"] is False

    def test_schema_is_valid(self):
        import jsonschema

        jsonschema.Draft202012Validator.check_schema(load_schema())


class TestCanonical:
    @pytest.mark.parametrize(
        "argv",
        [
            ["build", "--n", "8", "--plane", GOLDEN],
            ["build", "--n", "5", "--plane", "1,-(z+1),z,0"],
            ["build", "--n", "4", "--N", "8", "--plane", "1,z,z^2,z^3"],
            ["catalog", "hasse"],
            ["catalog", "monomial", "3"],
            ["catalog", "local", "4"],
        ],
    )
    def test_round_trip(self, capsys, argv):
        _, out, _ = run(capsys, argv)
        again = dumps(reserialize(parse_document(json.loads(out))))
        assert again == out

    def test_byte_identical(self, capsys):
        outs = [run(capsys, ["build", "--n", "6", "--plane", "1,2,-3,z"])[1] for _ in range(2)]
        assert outs[0] == outs[1]

    def test_expressions_reparse(self, capsys):
        from multinets.cyclo import format_elem, make_field, parse_elem

        _, out, _ = run(capsys, ["build", "--n", "8", "--plane", GOLDEN])
        doc = json.loads(out)
        f = make_field(8)
        strings = [s for b in doc["blocks"] for e in b for s in e["line"]] + [s for p in doc["base_points"] for s in p["point"]]
        assert all(format_elem(parse_elem(s, f)) == s for s in strings)


class TestOtherCommands:
    def test_census(self, capsys):
        code, out, _ = run(capsys, ["census", "--n", "8", "--plane", GOLDEN])
        rep = json.loads(out)
        assert code == 0 and rep["count"] == 8 and rep["agrees_with_base_locus"] is True
        assert ["1", "1", "1", "1"] in rep["double_points"]

    def test_census_rejects_qn_plane(self, capsys):
        assert run(capsys, ["census", "--n", "4", "--plane", "1,-1,0,0"])[0] == 2

    def test_search_json_lines(self, capsys):
        code, out, _ = run(capsys, ["search", "--n", "5", "--top", "2", "--json-lines"])
        lines = [json.loads(l) for l in out.splitlines()]
        assert code == 0 and len(lines) == 3
        assert [l["double_point_count"] for l in lines[:2]] == [6, 6]
        assert lines[-1]["command"] == "search" and lines[-1]["exhausted"]

    def test_search_file_list(self, capsys, tmp_path):
        p = tmp_path / "planes.txt"
        p.write_text(f"# golden\n{GOLDEN}\n1,2,3,5\n")
        code, out, _ = run(capsys, ["search", "--n", "8", "--strategy", "file-list", "--planes-file", str(p)])
        rep = json.loads(out)
        assert code == 0 and rep["max_count"] == 8 and len(rep["results"]) == 1

    def test_search_flags(self, capsys):
        code, out, _ = run(capsys, ["search", "--n", "4", "--top", "3", "--no-forbid-fixed", "--no-forbid-mult-n", "--no-require-light"])
        assert code == 0 and json.loads(out)["results"]

    def test_search_file_list_needs_file(self, capsys):
        assert run(capsys, ["search", "--n", "4", "--strategy", "file-list"])[0] == 1

    def test_reproduce(self, capsys):
        code, out, _ = run(capsys, ["reproduce-46"])
        rep = json.loads(out)
        assert code == 0 and rep["golden"] == "pass" and rep["double_point_count"] == 8


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "multinets", "catalog", "local", "3"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["reports"]["verification"]["summary"] == "net, k=3, d=1, all identities pass"
