"""
Emissão de relatórios: JSON, JSON-lines, CSV (pandas) e texto
"""
import json
import logging
import sys
from typing import List, Optional, Sequence, Union

import pandas as pd
from pydantic import BaseModel

logger = logging.getLogger(__name__)

Reports = Union[BaseModel, Sequence[BaseModel]]


def _as_list(reports: Reports) -> List[BaseModel]:
    if isinstance(reports, BaseModel):
        return [reports]
    return list(reports)


def _flat_row(model: BaseModel) -> dict:
    """Listas viram 'a|b'; dicionários e modelos aninhados viram JSON compacto"""
    row = {}
    for key, value in model.model_dump(mode="json").items():
        if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
            row[key] = "|".join(str(v) for v in value)
        elif isinstance(value, (dict, list)):
            row[key] = json.dumps(value, separators=(";", ":"), sort_keys=True)
        else:
            row[key] = value
    return row


def to_dataframe(reports: Reports) -> pd.DataFrame:
    items = _as_list(reports)
    if not items:
        return pd.DataFrame()
    return pd.DataFrame([_flat_row(m) for m in items], columns=list(type(items[0]).model_fields))


def render(reports: Reports, output_format: str) -> str:
    items = _as_list(reports)
    if output_format == "json":
        if isinstance(reports, BaseModel):
            return reports.model_dump_json(indent=2) + "\n"
        return "[" + ",".join(m.model_dump_json() for m in items) + "]\n"
    if output_format == "jsonl":
        return "".join(m.model_dump_json() + "\n" for m in items)
    if output_format == "csv":
        return to_dataframe(items).to_csv(index=False, lineterminator="\n")
    if output_format == "text":
        return to_dataframe(items).to_string(index=False) + "\n"
    raise ValueError(f"Formato de saida desconhecido: {output_format}")


def emit(reports: Reports, output_format: str, path: Optional[str] = None) -> str:
    text = render(reports, output_format)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        logger.info(f"Relatorio gravado em {path}")
    else:
        sys.stdout.write(text)
    return text
