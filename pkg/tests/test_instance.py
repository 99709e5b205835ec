import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from ordrep.cone import is_pointed
from ordrep.exactla import rank
from ordrep.instance import (InputError, fixture_names, generate_instance, instance_to_data, load_fixture,
                             load_instance, parse_instance, parse_space, same_space, serialize_instance,
                             serialize_space)

DATA = Path(__file__).parent / "data"

WEDGE_TEXT = """{
  "format": 1,
  "dim": 2,
  "cone": {"generators": [["4", "1"], ["8", "1"]]},
  "seminorms": [{"name": "sup", "rows": [["1", "0"], ["0", "1"]]}]
}"""


def with_changes(**changes):
    data = json.loads(WEDGE_TEXT)
    data.update(changes)
    return json.dumps(data)


def test_parses_wedge_space():
    s = parse_space(WEDGE_TEXT)
    assert s.dim == 2 and s.cone.generators == ((4, 1), (8, 1))
    assert s.seminorms[0].rows == ((1, 0), (0, 1))


def test_rejects_cone_with_a_line():
    with pytest.raises(InputError) as exc:
        parse_space(with_changes(cone={"generators": [["1", "0"], ["-1", "0"]]}))
    assert exc.value.path == "$.cone.generators"
    assert "['1', '0']" in str(exc.value)


def test_rejects_non_separating_rows():
    with pytest.raises(InputError) as exc:
        parse_space(with_changes(seminorms=[{"name": "p", "rows": [["1", "0"], ["2", "0"]]}]))
    assert exc.value.path == "$.seminorms"
    assert "1" in str(exc.value) and "2" in str(exc.value)


@pytest.mark.parametrize("text,path", [
    ('{"format": 1, "dim": 2, "seminorms": [{"rows": [[1.5, 0]]}]}', "$"),
    ('{"format": 1, "dim": 2, "seminorms": [{"rows": [["1/0", "0"]]}]}', "$.seminorms[0].rows[0][0]"),
    ('{"format": 1, "dim": 2, "seminorms": [{"rows": [["1", "0", "3"]]}]}', "$.seminorms[0].rows[0]"),
    ('{"format": 1, "dim": 0, "seminorms": []}', "$.dim"),
    ('{"format": 2, "dim": 2}', "$.format"),
    ('{"format": 1, "dim": 2, "seminorms": []}', "$.seminorms"),
    ('[1, 2]', "$"),
    ('{"format": 1,\n "dim": 2,,}', "line 2 column 11"),
    ('{"format": 1, "dim": 2, "seminorms": [{"rows": [["x", "0"]]}]}', "$.seminorms[0].rows[0][0]"),
    ('{"format": 1, "dim": 2, "seminorms": [{"rows": [[true, "0"]]}]}', "$.seminorms[0].rows[0][0]"),
])
def test_input_errors_name_their_location(text, path):
    with pytest.raises(InputError) as exc:
        parse_instance(text)
    assert exc.value.path == path


def test_notes_survive_round_trip():
    inst = load_fixture("l1_not_full")
    assert "unit sphere" in inst.notes
    assert parse_instance(serialize_instance(inst)).notes == inst.notes
    with pytest.raises(InputError) as exc:
        parse_instance(with_changes(notes=["x"]))
    assert exc.value.path == "$.notes"


def test_float_literals_are_rejected_anywhere():
    with pytest.raises(InputError, match="float"):
        parse_instance(with_changes(functionals={"f": [0.5, "1"]}))


def test_fixture_corpus_loads():
    names = fixture_names()
    assert len(names) == 9
    for name in names:
        assert load_fixture(name).name == name


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_round_trip(name):
    inst = load_fixture(name)
    again = parse_instance(serialize_instance(inst))
    assert same_space(inst.space, again.space)
    assert instance_to_data(again) == instance_to_data(inst)


def test_load_instance_reads_files(tmp_path):
    path = tmp_path / "w.json"
    path.write_text(WEDGE_TEXT)
    assert same_space(load_instance(str(path)).space, parse_space(WEDGE_TEXT))


def test_serialize_space_round_trips():
    s = parse_space(WEDGE_TEXT)
    assert same_space(parse_space(serialize_space(s, "w")), s)


def test_strings_with_commas_survive_serialization():
    inst = parse_instance(with_changes(name='a, "b", [c]'))
    assert parse_instance(serialize_instance(inst)).name == 'a, "b", [c]'


def test_seed_zero_is_pinned():
    assert serialize_instance(generate_instance(0)) == (DATA / "gen_seed0.json").read_text()


def test_generation_is_deterministic():
    assert serialize_instance(generate_instance(0)) == serialize_instance(generate_instance(0))
    assert serialize_instance(generate_instance(5, dim=3)) == serialize_instance(generate_instance(5, dim=3))


def test_hundred_seeds_are_valid_and_round_trip():
    for seed in range(100):
        inst = generate_instance(seed)
        s = inst.space
        assert s.dim <= 3
        assert is_pointed(s.cone)
        assert rank([r for p in s.seminorms for r in p.rows]) == s.dim
        assert all(abs(a) <= 9 for g in s.cone.generators for a in g)
        assert all(abs(a) <= 9 for p in s.seminorms for r in p.rows for a in r)
        assert same_space(parse_instance(serialize_instance(inst)).space, s)


@given(st.integers(0, 10**6))
def test_rank_deficient_generation(seed):
    s = generate_instance(seed, rank_deficient=True).space
    assert any(rank(p.rows) < s.dim for p in s.seminorms)
