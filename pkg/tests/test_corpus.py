import json
from pathlib import Path

import pytest

from monogenic.cli import main
from monogenic.corpus import corpus_files, load_document, reverify

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
FILES = corpus_files(CORPUS)


def test_corpus_nonempty():
    names = [f.name for f in FILES]
    assert any(n.startswith("monogenic") for n in names)
    assert any(n.startswith("non-monogenic") for n in names)


@pytest.mark.parametrize("path", FILES, ids=lambda p: p.name)
def test_reverifies(path):
    result = reverify(load_document(path), path)
    assert result.matches, result.differing_keys
    expected = path.name.split("-q")[0].split("-p")[0]
    assert result.verdict == expected


@pytest.mark.parametrize("path", FILES, ids=lambda p: p.name)
def test_cli_certificate_roundtrip(path, capsys):
    doc = load_document(path)
    command = "verify-monogenic" if doc["kind"] == "monogenicity-certificate" else "non-monogenic"
    code = main([command, "--certificate", str(path)])
    out = json.loads(capsys.readouterr().out)
    assert out["matches"] is True
    assert code == (3 if out["verdict"] == "inconclusive" else 0)


def test_tampered_certificate_detected(tmp_path, capsys):
    source = CORPUS / "monogenic-q7-d2-m11-q2_13-p19.json"
    doc = load_document(source)
    doc["F"][0] = str(int(doc["F"][0]) + 1)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code = main(["verify-monogenic", "--certificate", str(bad)])
    out = json.loads(capsys.readouterr().out)
    assert code == 3 and out["matches"] is False and out["differing_keys"] == ["F"]


def test_unknown_kind(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "nonsense"}))
    assert main(["verify-monogenic", "--certificate", str(bad)]) == 64
