import copy
import json

import pytest

from hocohom.errors import InputError
from hocohom.finite import symmetric3
from hocohom.fixtures import (
    FINITE_NAMES,
    FUCHSIAN_NAMES,
    MODULAR_NAMES,
    checksum,
    load_fixture,
    shipped_documents,
    validate,
)


def write(tmp_path, doc, name="fx.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def resealed(doc):
    doc["checksum"] = checksum(doc["payload"])
    return doc


@pytest.mark.parametrize("name", FUCHSIAN_NAMES + FINITE_NAMES + MODULAR_NAMES)
def test_shipped_fixtures_load(name):
    fx = load_fixture(name)
    assert fx.name == name


def test_shipped_files_match_builder():
    for name, doc in shipped_documents().items():
        with open(load_fixture(name).source, encoding="utf-8") as fh:
            on_disk = json.load(fh)
        assert on_disk == doc


def test_g1s1_rank():
    assert load_fixture("g1s1").signature().r == 2


def test_det_zero_is_named(tmp_path):
    doc = copy.deepcopy(shipped_documents()["gamma0_11"])
    doc["payload"]["generators"][1]["matrix"] = [[1, 2], [2, 4]]
    with pytest.raises(InputError, match="matrix g2 .* determinant 0"):
        load_fixture(str(write(tmp_path, resealed(doc))))


def test_non_normal_sigma_rejected(tmp_path):
    doc = copy.deepcopy(shipped_documents()["s3"])
    gp = symmetric3()
    t = next(a for a in range(1, 6) if gp.mul(a, a) == 0)
    doc["payload"]["sigma"] = [0, t]
    with pytest.raises(InputError, match="not normal"):
        load_fixture(str(write(tmp_path, resealed(doc))))


def test_checksum_mismatch(tmp_path):
    doc = copy.deepcopy(shipped_documents()["g1s1"])
    doc["payload"]["s"] = 2
    problems = validate(doc)
    assert any("checksum" in p for p in problems)


def test_wrong_relation_rejected(tmp_path):
    doc = copy.deepcopy(shipped_documents()["gamma0_11"])
    doc["payload"]["generators"][0]["matrix"] = [[1, 0], [11, 1]]
    problems = validate(resealed(doc))
    assert any("relation" in p for p in problems)


def test_a_head_checked():
    doc = copy.deepcopy(shipped_documents()["gamma0_11"])
    doc["payload"]["form"]["a_head"][1] = 5
    assert any("a_head" in p for p in validate(resealed(doc)))


def test_missing_and_bad_schema(tmp_path):
    with pytest.raises(InputError):
        load_fixture("no_such_fixture")
    doc = copy.deepcopy(shipped_documents()["g1s1"])
    doc["schema_version"] = 99
    assert any("schema_version" in p for p in validate(doc))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_fixture(str(bad))


def test_env_override(tmp_path, monkeypatch):
    doc = shipped_documents()["z3"]
    write(tmp_path, doc, "mine.json")
    monkeypatch.setenv("HOCOHOM_FIXTURES", str(tmp_path))
    assert load_fixture("mine").name == "z3"
