import json
import logging
import math
import re
from pathlib import Path
from typing import Any, Optional

from interfaces.dataio import ISampleReader
from domain.models import Observation, WeightedSample
from domain.errors import CountNotPositiveError, SampleParseError

_INTEGER = re.compile(r"[+-]?\d+")
_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


def parse_observation(text: str, allow_symbols: bool = False, line: Optional[int] = None) -> Observation:
    """정수 → 실수 → (허용 시) 기호 순으로 해석 (로케일 무관, 점 구분)"""
    token = text.strip()
    if _INTEGER.fullmatch(token):
        return int(token)
    try:
        value = float(token)
    except ValueError:
        value = None
    if value is not None:
        if math.isnan(value) or math.isinf(value):
            raise SampleParseError(f"non-finite observation {token!r}", line)
        return value
    if allow_symbols and _SYMBOL.fullmatch(token):
        return token
    raise SampleParseError(f"cannot parse observation {token!r}", line)


def parse_observation_list(text: str, allow_symbols: bool = False) -> list[Observation]:
    """'a,b,c' 형식의 CLI 인자"""
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise SampleParseError(f"empty observation list {text!r}")
    return [parse_observation(item, allow_symbols) for item in items]


def _parse_count(token: str, line: Optional[int]) -> int:
    token = token.strip()
    if not _INTEGER.fullmatch(token):
        raise SampleParseError(f"count must be an integer, got {token!r}", line)
    count = int(token)
    if count <= 0:
        raise CountNotPositiveError(f"count must be positive, got {count}", line)
    return count


class SampleReader(ISampleReader):
    """표본 파일 읽기 구현체

    CSV: 한 줄에 관측값 하나, 또는 'value,count'. JSON: 값 배열 또는 {value, count} 레코드 배열.
    같은 관측값은 중복도로 합쳐진다.
    """

    def __init__(self, allow_symbols: bool = False):
        self._allow_symbols = allow_symbols
        self._logger = logging.getLogger("sample_reader")

    def read(self, path: str, fmt: Optional[str] = None) -> WeightedSample:
        file = Path(path)
        try:
            text = file.read_text(encoding="utf-8")
        except OSError as e:
            raise SampleParseError(f"cannot read {path}: {e}") from e

        fmt = fmt or ("json" if file.suffix.lower() == ".json" else "csv")
        counts = self.parse_json(text) if fmt == "json" else self.parse_csv(text)
        if not counts:
            raise SampleParseError(f"{path} contains no observations")
        sample = WeightedSample.from_counts(counts)
        self._logger.info(f"read {sample.size} observations ({len(counts)} distinct) from {path}")
        return sample

    def parse_csv(self, text: str) -> dict[Observation, int]:
        counts: dict[Observation, int] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if len(fields) > 2:
                raise SampleParseError(f"expected 'value' or 'value,count', got {line!r}", number)
            # 중복도를 먼저 검사
            count = _parse_count(fields[1], number) if len(fields) == 2 else 1
            value = parse_observation(fields[0], self._allow_symbols, number)
            counts[value] = counts.get(value, 0) + count
        return counts

    def parse_json(self, text: str) -> dict[Observation, int]:
        try:
            data: Any = json.loads(text)
        except json.JSONDecodeError as e:
            raise SampleParseError(f"invalid JSON: {e.msg}", e.lineno) from e
        if isinstance(data, dict) and "entries" in data:
            data = data["entries"]
        if not isinstance(data, list):
            raise SampleParseError("JSON sample must be an array")

        counts: dict[Observation, int] = {}
        for index, record in enumerate(data, start=1):
            if isinstance(record, dict):
                if "value" not in record:
                    raise SampleParseError("record without 'value'", index)
                count = _parse_count(str(record.get("count", 1)), index)
                value = parse_observation(str(record["value"]), self._allow_symbols, index)
            else:
                count = 1
                value = parse_observation(str(record), self._allow_symbols, index)
            counts[value] = counts.get(value, 0) + count
        return counts
