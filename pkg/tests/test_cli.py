import json

import pytest

from paramedial.affine import is_simple
from paramedial.cli import CACHE_ENV, form_from_dict, main, record_to_dict
from paramedial.enum_gl2 import enumerate_gl2


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_by_order(capsys):
    code, out, _ = run(capsys, "count", "--order", "9")
    assert code == 0 and out.strip() == "50"


def test_count_cyclic_group(capsys):
    code, out, _ = run(capsys, "count", "--group", "cyclic", "2", "4")
    assert code == 0 and out.strip() == "32"


def test_count_elem2_group(capsys):
    code, out, _ = run(capsys, "count", "--group", "elem2", "5")
    assert code == 0 and out.strip() == "98"


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--order", "12", "--json")
    assert code == 0
    assert json.loads(out) == {"command": "count", "order": 12, "count": 55}


def test_count_unsupported_order(capsys):
    code, _, err = run(capsys, "count", "--order", "27")
    assert code == 2
    assert "Z_3 x Z_9" in err and "rank >= 3" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--group", "cyclic", "4", "1"])
    assert exc.value.code == 2


def test_enumerate_json_record_count(tmp_path, capsys):
    out_file = tmp_path / "classes.json"
    code, _, _ = run(capsys, "enumerate", "--group", "elem2", "3", "--out", str(out_file))
    assert code == 0
    records = json.loads(out_file.read_text())
    assert len(records) == 34
    assert records[0]["group"] == {"kind": "elem2", "p": 3}
    assert {"group", "phi", "psi", "c", "simple", "case"} == set(records[0])


def test_enumerate_simple_only(tmp_path, capsys):
    out_file = tmp_path / "simple.json"
    code, _, _ = run(
        capsys, "enumerate", "--group", "elem2", "3", "--simple-only", "--out", str(out_file)
    )
    assert code == 0
    records = json.loads(out_file.read_text())
    assert len(records) == 9
    assert all(r["simple"] for r in records)


def test_enumerate_tables_format(tmp_path, capsys):
    out_file = tmp_path / "tables.txt"
    code, _, _ = run(
        capsys, "enumerate", "--group", "cyclic", "3", "1", "--format", "tables",
        "--out", str(out_file),
    )
    assert code == 0
    text = out_file.read_text()
    assert text.count("order 3") == 5
    # each block is a latin square of order 3
    for block in text.strip().split("\n\n"):
        lines = [ln for ln in block.splitlines() if not ln.startswith("#")][1:]
        rows = [ln.split() for ln in lines]
        assert all(sorted(r) == ["0", "1", "2"] for r in rows)


def test_enumerate_csv_layout(tmp_path, capsys):
    out_file = tmp_path / "classes.csv"
    code, _, _ = run(
        capsys, "enumerate", "--group", "cyclic", "3", "2", "--format", "csv",
        "--out", str(out_file),
    )
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "group,phi,psi,c,simple,case"
    assert len(lines) == 1 + 16


def test_enumerate_deterministic_and_cached(tmp_path, capsys, monkeypatch):
    cache_dir = tmp_path / "cache"
    monkeypatch.setenv(CACHE_ENV, str(cache_dir))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "enumerate", "--group", "elem2", "3", "--out", str(a))[0] == 0
    assert list(cache_dir.iterdir())  # cold run populated the cache
    assert run(capsys, "enumerate", "--group", "elem2", "3", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()

    # cold run without the cache is byte-identical as well
    monkeypatch.delenv(CACHE_ENV)
    c = tmp_path / "c.json"
    assert run(capsys, "enumerate", "--group", "elem2", "3", "--out", str(c))[0] == 0
    assert a.read_bytes() == c.read_bytes()


def test_manifest_carries_digest(tmp_path, capsys):
    out_file = tmp_path / "out.json"
    manifest_file = tmp_path / "manifest.json"
    code, _, _ = run(
        capsys, "enumerate", "--group", "cyclic", "2", "3",
        "--out", str(out_file), "--manifest", str(manifest_file),
    )
    assert code == 0
    manifest = json.loads(manifest_file.read_text())
    import hashlib

    digest = "sha256:" + hashlib.sha256(out_file.read_bytes()).hexdigest()
    assert manifest["output_digest"] == digest
    assert manifest["command"] == "enumerate"
    assert "timestamp" in manifest


def test_enumerate_io_error(tmp_path, capsys):
    code, _, err = run(
        capsys, "enumerate", "--group", "cyclic", "3", "1",
        "--out", str(tmp_path / "missing" / "x.json"),
    )
    assert code == 2
    assert "missing" in err


def test_json_round_trip():
    records = enumerate_gl2(3).records()
    for rec in records:
        rebuilt = form_from_dict(json.loads(json.dumps(record_to_dict(rec))))
        assert rebuilt == rec.form
        assert is_simple(rebuilt) == rec.simple


def test_verify_fast_cyclic(capsys):
    code, out, _ = run(capsys, "verify", "--group", "cyclic", "5", "2", "--level", "fast")
    assert code == 0
    assert "closed form 46" in out
    assert "all checks passed" in out


def test_verify_oracle_elem2(capsys):
    code, out, _ = run(capsys, "verify", "--group", "elem2", "2", "--level", "oracle")
    assert code == 0
    assert "oracle orbit count equals 7" in out


def test_verify_oracle_bound(capsys):
    code, _, err = run(capsys, "verify", "--group", "elem2", "7", "--level", "oracle")
    assert code == 3
    assert "bounded" in err
