import json
import logging
from pathlib import Path

from interfaces.dataio import IPsiTableStore
from domain.models import ParameterInterval, PsiTable, observation_to_json
from domain.errors import TableFormatError
from dataio.sample_reader import parse_observation

FORMAT_NAME = "psi-table"
FORMAT_VERSION = 1
ORIENTATION_NOTE = (
    "decreasing-type: score sums are positive left of the estimate and negative right of it; "
    "LP coefficients are stored without sign change"
)


class PsiTableStore(IPsiTableStore):
    """PsiTable JSON 파일 입출력

    헤더 {alphabet, theta_grid, orientation, boundary_tol} 다음에 관측값별 행렬이 온다.
    """

    def __init__(self):
        self._logger = logging.getLogger("psi_table_store")

    def to_document(self, table: PsiTable) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "orientation": table.orientation,
            "orientation_note": ORIENTATION_NOTE,
            "boundary_tol": table.boundary_tol,
            "max_size": table.max_size,
            "domain": table.domain.to_dict(),
            "alphabet": [observation_to_json(x) for x in table.observations],
            "theta_grid": list(table.theta_grid),
            "margins": list(table.margins),
            "values": [list(row) for row in table.values],
        }

    def save(self, table: PsiTable, path: str) -> None:
        text = json.dumps(self.to_document(table), indent=2, sort_keys=True)
        Path(path).write_text(text + "\n", encoding="utf-8")
        self._logger.info(f"wrote psi table to {path}")

    def load(self, path: str) -> PsiTable:
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise TableFormatError(f"{path}: invalid JSON ({e.msg})") from e
        return self.from_document(document, source=path)

    def from_document(self, document: dict, source: str = "<memory>") -> PsiTable:
        if not isinstance(document, dict) or document.get("format") != FORMAT_NAME:
            raise TableFormatError(f"{source}: not a {FORMAT_NAME} document")
        if document.get("orientation") != "decreasing-type":
            raise TableFormatError(f"{source}: unsupported orientation {document.get('orientation')!r}")
        try:
            alphabet = tuple(
                parse_observation(str(x), allow_symbols=True) for x in document["alphabet"]
            )
            table = PsiTable(
                observations=alphabet,
                theta_grid=tuple(float(t) for t in document["theta_grid"]),
                values=tuple(tuple(float(v) for v in row) for row in document["values"]),
                margins=tuple(float(m) for m in document["margins"]),
                domain=ParameterInterval.from_dict(document["domain"]),
                boundary_tol=float(document["boundary_tol"]),
                max_size=int(document.get("max_size", 0)),
            )
        except KeyError as e:
            raise TableFormatError(f"{source}: missing field {e}") from e
        except (TypeError, ValueError) as e:
            raise TableFormatError(f"{source}: {e}") from e
        if len(set(table.observations)) != len(table.observations):
            raise TableFormatError(f"{source}: duplicate alphabet symbols")
        return table
