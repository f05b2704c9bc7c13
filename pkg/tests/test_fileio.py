import json

import pytest

from chernflat.constructions import catalog
from chernflat.fileio import (
    CoefficientError,
    FieldTagError,
    IndexOrderError,
    IndexRangeError,
    JacobiFormatError,
    ModelFormatError,
    ParseError,
    StructureShapeError,
    StructureSquareError,
    UnknownCatalogError,
    dump_model,
    dumps_model,
    load_metric_matrix,
    load_model,
    loads_model,
    resolve_model,
)
from chernflat.scalars import GaussianRational, gaussian


def heisenberg_doc():
    return {
        "dim": 3,
        "field": "Q",
        "brackets": [{"i": 1, "j": 2, "out": [{"k": 3, "coeff": "1"}]}],
    }


def test_round_trip_through_text():
    for name in ("iwasawa_j3", "dim4_model", "heisenberg3", "centro1_model(2)"):
        entry = catalog(name)
        text = dumps_model(entry.algebra, entry.acs)
        g, acs = loads_model(text)
        assert g == entry.algebra
        assert acs == entry.acs


def test_round_trip_through_file(tmp_path):
    entry = catalog("iwasawa_j3")
    path = tmp_path / "model.json"
    dump_model(str(path), entry.algebra, entry.acs)
    g, acs = load_model(str(path))
    assert g == entry.algebra
    assert acs == entry.acs


def test_basic_document_loads():
    g, acs = loads_model(json.dumps(heisenberg_doc()))
    assert g.dim == 3
    assert acs is None
    assert g.brackets == {(0, 1): {2: gaussian(1)}}


def test_coefficients_accumulate_and_gaussian_field():
    doc = {
        "dim": 3,
        "field": "Qi",
        "brackets": [
            {"i": 1, "j": 2, "out": [{"k": 3, "coeff": "1/2+i"}, {"k": 3, "coeff": "1/2-i"}]}
        ],
    }
    g, _ = loads_model(json.dumps(doc))
    assert g.brackets == {(0, 1): {2: gaussian(1)}}
    assert g.field == "Qi"


def test_parse_error_code():
    with pytest.raises(ParseError) as exc:
        loads_model("{not json")
    assert exc.value.code == "parse"
    for doc in ([1, 2], {"field": "Q"}, {"dim": 0}, {"dim": 2, "brackets": 5}):
        with pytest.raises(ParseError):
            loads_model(json.dumps(doc))


def test_field_error_code():
    doc = heisenberg_doc()
    doc["field"] = "R"
    with pytest.raises(FieldTagError) as exc:
        loads_model(json.dumps(doc))
    assert exc.value.code == "field"


def test_index_order_and_range_codes():
    doc = heisenberg_doc()
    doc["brackets"][0]["i"], doc["brackets"][0]["j"] = 2, 1
    with pytest.raises(IndexOrderError) as exc:
        loads_model(json.dumps(doc))
    assert exc.value.code == "index-order"

    doc = heisenberg_doc()
    doc["brackets"][0]["j"] = 4
    with pytest.raises(IndexRangeError) as exc:
        loads_model(json.dumps(doc))
    assert exc.value.code == "index-range"

    doc = heisenberg_doc()
    doc["brackets"][0]["out"][0]["k"] = 9
    with pytest.raises(IndexRangeError):
        loads_model(json.dumps(doc))


def test_coefficient_error_code():
    for bad in ("1.5", "x", 3):
        doc = heisenberg_doc()
        doc["brackets"][0]["out"][0]["coeff"] = bad
        with pytest.raises(CoefficientError) as exc:
            loads_model(json.dumps(doc))
        assert exc.value.code == "coeff"
    doc = heisenberg_doc()
    doc["brackets"][0]["out"][0]["coeff"] = "i"
    with pytest.raises(CoefficientError):
        loads_model(json.dumps(doc))


def test_jacobi_error_code_with_defects():
    doc = {
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "out": [{"k": 3, "coeff": "1"}]},
            {"i": 1, "j": 3, "out": [{"k": 1, "coeff": "1"}]},
        ],
    }
    with pytest.raises(JacobiFormatError) as exc:
        loads_model(json.dumps(doc))
    assert exc.value.code == "jacobi"
    assert exc.value.defects


def test_structure_shape_and_square_codes():
    doc = heisenberg_doc()
    doc["dim"] = 4
    doc["J"] = [["0", "1"], ["-1", "0"]]
    with pytest.raises(StructureShapeError) as exc:
        loads_model(json.dumps(doc))
    assert exc.value.code == "j-shape"

    doc = heisenberg_doc()
    doc["dim"] = 2
    doc["brackets"] = []
    doc["J"] = [["1", "0"], ["0", "1"]]
    with pytest.raises(StructureSquareError) as exc:
        loads_model(json.dumps(doc))
    assert exc.value.code == "j-square"

    doc["J"] = [["i", "0"], ["0", "i"]]
    with pytest.raises(StructureShapeError):
        loads_model(json.dumps(doc))

    doc = heisenberg_doc()
    doc["field"] = "Qi"
    doc["J"] = [["0"] * 3 for _ in range(3)]
    with pytest.raises(FieldTagError):
        loads_model(json.dumps(doc))


def test_resolve_model_catalog_and_path(tmp_path):
    g, acs, label = resolve_model("@iwasawa_j3")
    assert label == "iwasawa_j3"
    assert g.dim == 6 and acs is not None

    with pytest.raises(UnknownCatalogError) as exc:
        resolve_model("@missing_thing")
    assert exc.value.code == "unknown-catalog"

    path = tmp_path / "h3.json"
    path.write_text(json.dumps(heisenberg_doc()))
    g2, acs2, label2 = resolve_model(str(path))
    assert g2.dim == 3 and acs2 is None and label2 == str(path)

    with pytest.raises(ParseError):
        resolve_model(str(tmp_path / "absent.json"))


def test_all_codes_are_model_format_errors():
    for cls in (
        ParseError,
        FieldTagError,
        IndexOrderError,
        IndexRangeError,
        CoefficientError,
        JacobiFormatError,
        StructureShapeError,
        StructureSquareError,
        UnknownCatalogError,
    ):
        assert issubclass(cls, ModelFormatError)
        assert cls.code != ModelFormatError.code


def test_load_metric_matrix(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(json.dumps([["2", "i"], ["-i", "3"]]))
    mat = load_metric_matrix(str(path), 2)
    assert mat.entry(0, 0) == gaussian(2)
    assert mat.entry(0, 1) == GaussianRational(0, 1)
    path.write_text(json.dumps({"h": [["1", "0"], ["0", "1"]]}))
    mat = load_metric_matrix(str(path), 2)
    assert mat.rows == 2

    path.write_text(json.dumps([["1"]]))
    with pytest.raises(StructureShapeError):
        load_metric_matrix(str(path), 2)
    path.write_text(json.dumps([["1", "x"], ["0", "1"]]))
    with pytest.raises(CoefficientError):
        load_metric_matrix(str(path), 2)
