import json

import pytest

from fibcalc import serialize
from fibcalc.errors import SchemaError
from fibcalc.fibered import catalog_knot
from fibcalc.mcg import catalog_names, curated_payload
from fibcalc.ribbon_disk import disk_twist, half_spin
from fibcalc.two_knot import spin, torus_surgery_plan


def roundtrip(obj):
    text = serialize.dumps(obj)
    back = serialize.loads(text)
    assert back == obj
    assert serialize.dumps(back) == text
    return back


def test_full_catalog_roundtrip():
    for name in catalog_names():
        roundtrip(curated_payload(name))
        entry = curated_payload(name)
        from fibcalc.mcg import SurfaceMonodromy
        if isinstance(entry, SurfaceMonodromy):
            roundtrip(catalog_knot(name))


def test_derived_object_roundtrips():
    k = catalog_knot("trefoil_R")
    d = half_spin(k)
    roundtrip(d)
    c1 = curated_payload("square_knot_stallings_c1")
    roundtrip(disk_twist(d, c1, 2))
    roundtrip(spin(k))
    roundtrip(torus_surgery_plan(k, catalog_knot("figure8")))
    from fibcalc.fibered import knot_group
    roundtrip(knot_group(k))
    from fibcalc.two_knot import FillingDescriptor
    roundtrip(FillingDescriptor("Y", (-1, 3)))


def test_labels_survive_roundtrip():
    k = catalog_knot("trefoil_R")
    assert serialize.loads(serialize.dumps(k)).label == "trefoil_R"


def test_unknown_schema_version():
    k = catalog_knot("unknot")
    data = serialize.serialize(k)
    data["schema_version"] = 99
    with pytest.raises(SchemaError) as err:
        serialize.deserialize(data)
    assert "schema_version" in str(err.value)


def test_ragged_matrix_path():
    data = {"schema_version": 1,
            "object": {"kind": "int_matrix", "rows": 2, "cols": 2,
                       "entries": [[1, 0], [1]]}}
    with pytest.raises(SchemaError) as err:
        serialize.deserialize(data)
    assert "entries[1]" in str(err.value)


def test_unknown_kind_and_missing_key():
    with pytest.raises(SchemaError):
        serialize.deserialize({"schema_version": 1, "object": {"kind": "mystery"}})
    with pytest.raises(SchemaError) as err:
        serialize.deserialize({"schema_version": 1, "object": {"kind": "int_matrix"}})
    assert "rows" in str(err.value)


def test_canonical_bytes_are_stable():
    k = catalog_knot("square_knot")
    assert serialize.dumps(k) == serialize.dumps(catalog_knot("square_knot"))
    parsed = json.loads(serialize.dumps(k))
    assert parsed["schema_version"] == 1
    assert parsed["object"]["kind"] == "fibered_knot"
