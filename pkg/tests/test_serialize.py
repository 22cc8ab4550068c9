import json

import pytest

from addcomp.catalog import catalog_ids, default_window, named_sets
from addcomp.functions import IntPolynomial
from addcomp.moderation import ball_moderation
from addcomp.serialize import (
    DescriptorError,
    bound_from_json,
    dumps,
    function_from_json,
    load_set,
    set_from_json,
    set_to_json,
)
from addcomp.sets import enumerate_in_window


@pytest.mark.parametrize("cid", catalog_ids())
def test_catalog_round_trip(cid):
    S = named_sets(cid)
    T = set_from_json(json.loads(dumps(set_to_json(S))))
    w = default_window(S, 3)
    assert enumerate_in_window(S, w) == enumerate_in_window(T, w)


def test_function_round_trip():
    f = IntPolynomial.power_sum(2, 3, -1)
    g = function_from_json(json.loads(dumps(f.to_json())))
    assert g((2, 3)) == f((2, 3))
    v, b = ball_moderation(IntPolynomial.univariate([0, 0, 1]))
    v2 = function_from_json(v.to_json())
    assert [v2((t,)) for t in range(-4, 5)] == [v((t,)) for t in range(-4, 5)]
    assert bound_from_json(b.recipe)((3,)) == b((3,))


def test_catalog_node_and_build_wrapper(tmp_path):
    S = set_from_json({"kind": "catalog", "id": "cor4.8-M"})
    assert S.contains((2, -8))
    p = tmp_path / "built.json"
    p.write_text(dumps({"recipe": "graph", "result": set_to_json(S)}))
    assert load_set(str(p)).contains((2, -8))
    assert load_set("cor4.8-W").contains((0, 99))


@pytest.mark.parametrize("bad", [{}, {"kind": "nope"}, {"kind": "finite"}, {"kind": "catalog", "id": "x"},
                                 {"kind": "spiked", "base": {"kind": "full", "group": {"rank": 1}}, "u": {"z": 1}}])
def test_bad_descriptors(bad):
    with pytest.raises(DescriptorError):
        set_from_json(bad)


def test_dumps_is_stable():
    obj = {"b": [1, (2, 3)], "a": {"y": 1, "x": 2}}
    assert dumps(obj) == dumps(json.loads(dumps(obj)))
