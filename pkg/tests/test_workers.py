import json

import pytest

from spinhecke.rootdata import fixture_document
from spinhecke.workers import DatumSource, WeightTask, gram_task, relations_task, run_ordered


def test_run_ordered_keeps_the_order():
    source = DatumSource(builtin="osp12")
    tasks = [WeightTask(source, f"i:{n}", 4) for n in (1, 2, 3)]
    serial = run_ordered(gram_task, tasks)
    assert [r["weight"] for r in serial] == [{"i": 1}, {"i": 2}, {"i": 3}]
    assert run_ordered(gram_task, tasks, jobs=2) == serial


def test_relations_task():
    report = relations_task(WeightTask(DatumSource(builtin="b01"), "even:1,odd:1", 4))
    assert report["failures"] == []
    assert report["grading_failures"] == []


def test_datum_source_needs_a_name_or_path():
    with pytest.raises(ValueError):
        DatumSource().load()


def test_datum_source_from_a_file(tmp_path):
    path = tmp_path / "quiver.json"
    path.write_text(json.dumps(fixture_document("b01")))
    assert DatumSource(path=str(path)).load().nodes == ("even", "odd")
