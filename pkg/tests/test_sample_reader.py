import pytest

from domain.models import WeightedSample
from domain.errors import CountNotPositiveError, SampleParseError
from dataio.sample_reader import SampleReader, parse_observation, parse_observation_list


@pytest.fixture
def reader() -> SampleReader:
    return SampleReader()


def _write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_one_value_per_line(reader, tmp_path):
    sample = reader.read(_write(tmp_path, "s.csv", "1\n2\n3\n"))
    assert sample == WeightedSample.of(1, 2, 3)


def test_value_count_lines_merge(reader, tmp_path):
    sample = reader.read(_write(tmp_path, "s.csv", "1,2\n4,1\n1\n"))
    assert sample == WeightedSample.from_counts({1: 3, 4: 1})
    assert sample.size == 4


def test_comments_and_blank_lines_are_skipped(reader):
    assert reader.parse_csv("# header\n\n2.5\n") == {2.5: 1}


def test_count_is_checked_before_value(reader):
    with pytest.raises(CountNotPositiveError) as info:
        reader.parse_csv("x,0\n")
    assert info.value.line == 1


def test_non_integer_count(reader):
    with pytest.raises(SampleParseError) as info:
        reader.parse_csv("1\n2,1.5\n")
    assert info.value.line == 2
    assert not isinstance(info.value, CountNotPositiveError)


def test_too_many_fields(reader):
    with pytest.raises(SampleParseError):
        reader.parse_csv("1,2,3\n")


@pytest.mark.parametrize("token", ["nan", "inf", "-inf", "abc"])
def test_rejected_numeric_tokens(token):
    with pytest.raises(SampleParseError):
        parse_observation(token)


def test_symbols_need_permission(tmp_path):
    path = _write(tmp_path, "s.csv", "a\nb,2\n")
    with pytest.raises(SampleParseError):
        SampleReader().read(path)
    sample = SampleReader(allow_symbols=True).read(path)
    assert sample == WeightedSample.from_counts({"a": 1, "b": 2})


def test_observation_types():
    assert parse_observation("7") == 7
    assert isinstance(parse_observation("7"), int)
    assert parse_observation(" 0.5 ") == 0.5
    assert parse_observation("1e3") == 1000.0
    assert parse_observation_list("1,2.5,,3") == [1, 2.5, 3]


def test_empty_observation_list():
    with pytest.raises(SampleParseError):
        parse_observation_list(" , ")


def test_empty_file(reader, tmp_path):
    with pytest.raises(SampleParseError):
        reader.read(_write(tmp_path, "s.csv", "# nothing\n"))


def test_missing_file(reader, tmp_path):
    with pytest.raises(SampleParseError):
        reader.read(str(tmp_path / "absent.csv"))


def test_json_forms(reader, tmp_path):
    plain = reader.read(_write(tmp_path, "a.json", "[1, 2, 2]"))
    assert plain == WeightedSample.from_counts({1: 1, 2: 2})
    records = reader.read(_write(tmp_path, "b.json", '[{"value": 3, "count": 2}, {"value": 0.5}]'))
    assert records == WeightedSample.from_counts({3: 2, 0.5: 1})
    wrapped = reader.read(_write(tmp_path, "c.json", '{"entries": [{"value": 1, "count": 4}]}'))
    assert wrapped == WeightedSample.from_counts({1: 4})


def test_json_format_override(reader, tmp_path):
    path = _write(tmp_path, "sample.txt", "[5, 6]")
    assert reader.read(path, fmt="json") == WeightedSample.of(5, 6)


@pytest.mark.parametrize("text", ["{", '{"a": 1}', '[{"count": 2}]', '[{"value": 1, "count": -1}]'])
def test_malformed_json(reader, text):
    with pytest.raises(SampleParseError):
        reader.parse_json(text)
