"""
End-to-end tests for the facemagic command line.
"""

import orjson
import pytest

from facemagic import cli
from facemagic.models import Dims
from facemagic.schemas.documents import LabelingDocument, parse_csv, parse_document, render_document
from facemagic.services import labeling
from facemagic.services.transform import ColumnPairPermutation, permute_column_pairs


def _report(capsys):
    return orjson.loads(capsys.readouterr().out)


def _write_doc(tmp_path, L, name="in.txt", order="bottom-up", **meta):
    path = tmp_path / name
    path.write_text(render_document(LabelingDocument.from_labeling(L, **meta), order), encoding="utf-8")
    return str(path)


# ============================================================
# construct
# ============================================================

def test_construct_hbbl_5x5(capsys, hbbl_5x5):
    assert cli.main(["construct", "--orientation", "horizontal", "--sequence", "5,5"]) == cli.EXIT_OK
    doc = parse_document(capsys.readouterr().out)
    assert doc.to_labeling() == hbbl_5x5
    assert (doc.S, doc.generator, doc.sequence) == (53, "hbbl", "5,5")


def test_construct_9x9_top_down(tmp_path, hbbl_9x9):
    out = tmp_path / "t1.txt"
    code = cli.main([
        "construct", "--sequence", "3,3,3,3", "--file-order", "top-down", "--output", str(out),
    ])
    assert code == cli.EXIT_OK
    doc = parse_document(out.read_text(), "top-down")
    assert doc.to_labeling() == hbbl_9x9
    assert doc.S == 165


def test_construct_vertical(capsys):
    assert cli.main(["construct", "--orientation", "vertical", "--sequence", "3,3,3,1"]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert (doc.m, doc.n, doc.S, doc.generator) == (3, 9, 57, "vbbl")


def test_construct_invalid_sequence(capsys):
    assert cli.main(["construct", "--sequence", "3,4"]) == cli.EXIT_VALIDATION
    assert "error:" in capsys.readouterr().err


# ============================================================
# verify
# ============================================================

def test_verify_hbbl_5x5(tmp_path, capsys, hbbl_5x5):
    path = _write_doc(tmp_path, hbbl_5x5, S=53)
    assert cli.main(["verify", path]) == cli.EXIT_OK
    report = _report(capsys)
    result = report["result"]
    assert report["verdict"] == "magic"
    assert result["S"] == 53
    assert (result["D1"], result["D2"]) == (14, 14)
    assert result["value_class"] == "S_plus"
    assert result["bicentrally_balanced"] is True
    assert result["standard"] is True
    assert result["center_label"] == 7
    assert result["row_pair_sums"] == [24, 29]


def test_verify_15x5_top_down(tmp_path, capsys, sum_15x5):
    path = _write_doc(tmp_path, sum_15x5, order="top-down")
    assert cli.main(["verify", path, "--file-order", "top-down"]) == 0
    assert _report(capsys)["result"]["S"] == 153


def test_verify_csv(tmp_path, capsys):
    path = tmp_path / "l.csv"
    path.write_text("1,9,2\n8,3,7\n4,6,5\n")
    assert cli.main(["verify", str(path)]) == 0
    assert _report(capsys)["result"]["S"] == 21


def test_verify_declared_value_mismatch(tmp_path, capsys, hbbl_5x5):
    path = _write_doc(tmp_path, hbbl_5x5, S=52)
    assert cli.main(["verify", path]) == cli.EXIT_VALIDATION
    assert _report(capsys)["verdict"] == "declared-S-mismatch"


def test_verify_non_magic(tmp_path, capsys):
    path = _write_doc(tmp_path, labeling.identity_labeling(Dims(3, 3)))
    assert cli.main(["verify", path]) == 0
    report = _report(capsys)
    assert report["verdict"] == "not-magic"
    assert report["result"]["bicentrally_balanced"] is False


def test_verify_duplicate_label(tmp_path, capsys):
    path = tmp_path / "dup.txt"
    path.write_text("m=2\nn=2\nsurface=projective\n\n1 2\n2 4\n")
    assert cli.main(["verify", str(path)]) == cli.EXIT_VALIDATION
    assert "duplicated" in capsys.readouterr().err


def test_verify_malformed_document(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n=2\nsurface=projective\n\n1 2\n3 4\n")
    assert cli.main(["verify", str(path)]) == cli.EXIT_PARSE
    assert "field 'm'" in capsys.readouterr().err


def test_verify_missing_file(tmp_path):
    assert cli.main(["verify", str(tmp_path / "absent.txt")]) == cli.EXIT_PARSE


# ============================================================
# transform
# ============================================================

def test_transform_complement(tmp_path, capsys, hbbl_5x5):
    path = _write_doc(tmp_path, hbbl_5x5)
    assert cli.main(["transform", path, "--complement"]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc.S == 51
    assert doc.to_labeling() == labeling.complement(hbbl_5x5)


def test_transform_standardize(tmp_path, capsys, hbbl_9x9):
    moved = permute_column_pairs(hbbl_9x9, ColumnPairPermutation((3, 2, 1, 4)))
    path = _write_doc(tmp_path, moved)
    assert cli.main(["transform", path, "--standardize"]) == 0
    assert parse_document(capsys.readouterr().out).to_labeling() == hbbl_9x9


def test_transform_masks_and_symmetries(tmp_path, capsys, hbbl_5x5):
    path = _write_doc(tmp_path, hbbl_5x5)
    assert cli.main(["transform", path, "--swap-cols", "11"]) == 0
    swapped = parse_document(capsys.readouterr().out).to_labeling()
    assert cli.main(["transform", path, "--symmetry", "V"]) == 0
    reflected = parse_document(capsys.readouterr().out).to_labeling()
    assert swapped == reflected


def test_transform_errors(tmp_path, capsys, hbbl_5x5, sum_15x5):
    path = _write_doc(tmp_path, hbbl_5x5)
    assert cli.main(["transform", path, "--perm-cols", "2,1"]) == cli.EXIT_VALIDATION
    with pytest.raises(SystemExit) as exc:
        cli.main(["transform", path, "--standardize", "--complement"])
    assert exc.value.code == cli.EXIT_USAGE
    rect = _write_doc(tmp_path, sum_15x5, name="t2.txt")
    assert cli.main(["transform", rect, "--symmetry", "R90"]) == cli.EXIT_VALIDATION
    comp = _write_doc(tmp_path, labeling.complement(hbbl_5x5), name="c.txt")
    assert cli.main(["transform", comp, "--standardize"]) == cli.EXIT_VALIDATION


# ============================================================
# enumerate / count / census / conjecture
# ============================================================

def test_enumerate_3x3_value(capsys):
    assert cli.main(["enumerate", "--m", "3", "--n", "3", "--value", "20"]) == 0
    report = _report(capsys)
    assert report["verdict"] == "complete"
    assert report["result"]["counts"] == {"20": 1}


def test_enumerate_raw_counts_pair_up(capsys):
    code = cli.main([
        "enumerate", "--m", "3", "--n", "5", "--pruning", "lemma", "--no-up-to-symmetry",
    ])
    assert code == 0
    counts = _report(capsys)["result"]["counts"]
    assert counts["31"] == counts["33"]


def test_enumerate_emit_dir(tmp_path, capsys):
    out = tmp_path / "reps"
    assert cli.main(["enumerate", "--m", "3", "--n", "3", "--value", "21", "--emit-dir", str(out)]) == 0
    classes = _report(capsys)["result"]["counts"]["21"]
    files = sorted(out.iterdir())
    assert len(files) == classes
    assert files[0].name == "S21_00001.txt"
    assert parse_document(files[0].read_text()).S == 21


def test_enumerate_budget_exit_code(capsys):
    assert cli.main(["enumerate", "--m", "3", "--n", "3", "--max-nodes", "50"]) == cli.EXIT_BUDGET
    report = _report(capsys)
    assert report["verdict"] == "incomplete"
    assert report["result"]["complete"] is False


def test_enumerate_lemma_on_mixed_parity(capsys):
    assert cli.main(["enumerate", "--m", "2", "--n", "3", "--pruning", "lemma"]) == cli.EXIT_VALIDATION


def test_enumerate_bad_value_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["enumerate", "--m", "3", "--n", "3", "--value", "many"])
    assert exc.value.code == cli.EXIT_USAGE


def test_count(capsys):
    assert cli.main(["count", "--m", "9", "--n", "9"]) == 0
    result = _report(capsys)["result"]
    assert result["tau_mn"] == 3
    assert result["count_value_mid"] == 110592
    assert result["lower_bound_value_plus"] == 3072
    assert cli.main(["count", "--m", "4", "--n", "4"]) == cli.EXIT_VALIDATION


def test_census_constructed(capsys):
    assert cli.main(["census", "--m", "3", "--n", "5", "--source", "constructed"]) == 0
    result = _report(capsys)["result"]
    assert result["expected_class_size"] == 8
    assert all(e["rect_quotient"] == 2 for e in result["entries"])


def test_conjecture_3x3(capsys):
    assert cli.main(["conjecture", "--m", "3", "--n", "3"]) == 0
    assert _report(capsys)["verdict"] in ("equal", "enumerated-strictly-larger")


# ============================================================
# render
# ============================================================

def test_render_formats(tmp_path, capsys, hbbl_5x5, hbbl_9x9):
    path = _write_doc(tmp_path, hbbl_5x5)
    assert cli.main(["render", path]) == 0
    assert capsys.readouterr().out.splitlines()[0].split() == ["11", "15", "12", "14", "13"]

    assert cli.main(["render", path, "--format", "table"]) == 0
    assert capsys.readouterr().out.startswith("+----+")

    t1 = _write_doc(tmp_path, hbbl_9x9, name="t1.txt")
    out = tmp_path / "t1.csv"
    assert cli.main(["render", t1, "--format", "csv", "--output", str(out)]) == 0
    assert parse_csv(out.read_text()) == hbbl_9x9
