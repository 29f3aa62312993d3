"""
Codec textual de elementos de corpo

Entrada: inteiro (valor do corpo primo, negativos reduzidos mod p) ou lista
de coeficientes sobre F_p separados por vírgula ou ponto e vírgula, grau
baixo primeiro. Saída canônica: inteiro quando o elemento está em F_p, senão
coeficientes separados por ';' (CSV usa vírgula como delimitador).
"""
import re
from typing import List

from app.services.ffcore import BaseFieldCtx, FieldElement
from app.utils.errors import ElementParseError

_TOKEN = re.compile(r"^[+-]?\d+$")


def parse_int_list(text: str) -> List[int]:
    if text is None or not str(text).strip():
        raise ElementParseError("Texto de elemento vazio")
    parts = re.split(r"[;,]", str(text).strip().strip("[]()"))
    values = []
    for part in parts:
        token = part.strip()
        if not _TOKEN.match(token):
            raise ElementParseError(f"Coeficiente invalido: '{token}' em '{text}'")
        values.append(int(token))
    return values


def parse_element(ctx: BaseFieldCtx, text: str) -> FieldElement:
    values = parse_int_list(text)
    if len(values) > ctx.degree:
        raise ElementParseError(f"'{text}' tem {len(values)} coeficientes; {ctx} tem grau {ctx.degree}")
    return ctx.from_coeffs(values)


def format_element(x: FieldElement) -> str:
    if not any(x.coeffs[1:]):
        return str(x.coeffs[0])
    return ";".join(str(c) for c in x.coeffs)


def parse_int_set(text: str) -> List[int]:
    """Listas de inteiros da CLI, como '1,2,3'"""
    return parse_int_list(text)
