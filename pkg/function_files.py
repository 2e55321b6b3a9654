# function_files.py
"""
Formatos JSON de entrada e saída:

  FunctionFile:  {"n": 4, "k": 2, "values": [{"set": [1, 2], "value": "1/2"}, ...]}
  ExpansionFile: {"n": 4, "k": 2, "coeffs": [{"top_set": [2], "value": "1/2"}, ...]}

Racionais são strings "p/q" ou inteiros, sempre em termos mínimos na saída.
Índices são 1-based.
"""
import json
import logging
import re
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from combinatorics import TopSet, is_top_set, top_set_key
from errors import InputFileError
from expansion import SliceFunction, YoungExpansion, slice_points
from friedgut import JuntaReport
from operators import RealExpansion


RATIONAL_PATTERN = re.compile(r"^-?\d+(/\d+)?$")
PathLike = Union[str, Path]


# ---------------------------------------------
# Racionais
# ---------------------------------------------
def parse_rational(raw: Any, record: Optional[int] = None) -> Fraction:
    """Aceita "p/q", "p" ou um inteiro JSON; floats e strings soltas são rejeitados."""
    if isinstance(raw, bool):
        raise InputFileError(f"Valor booleano não é racional: {raw!r}", record)
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str) or not RATIONAL_PATTERN.match(raw.strip()):
        raise InputFileError(f"Racional malformado: {raw!r}", record)
    if "/" in raw and int(raw.split("/")[1]) == 0:
        raise InputFileError(f"Denominador zero: {raw!r}", record)
    return Fraction(raw.strip())


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_real(value: float, digits: int = 15) -> float:
    return float(format(value, f".{digits}g"))


# ---------------------------------------------
# Leitura
# ---------------------------------------------
def _read_json(source: PathLike) -> Dict[str, Any]:
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputFileError(f"JSON inválido em {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise InputFileError(f"{path} não está em UTF-8: {e}") from e
    except OSError as e:
        raise InputFileError(f"Não foi possível ler {path}: {e}") from e
    if not isinstance(data, dict):
        raise InputFileError(f"{path}: o documento deve ser um objeto JSON")
    return data


def _read_slice(data: Dict[str, Any]) -> Tuple[int, int]:
    n, k = data.get("n"), data.get("k")
    if not isinstance(n, int) or not isinstance(k, int) or isinstance(n, bool) or isinstance(k, bool):
        raise InputFileError(f"Campos 'n' e 'k' devem ser inteiros (recebidos {n!r}, {k!r})")
    if n < 2 or not 1 <= k <= n // 2:
        raise InputFileError(f"Fatia inválida: exige 1 <= k <= n/2 (n={n}, k={k})")
    return n, k


def _read_records(data: Dict[str, Any], key: str) -> List[Dict[str, Any]]:
    records = data.get(key)
    if not isinstance(records, list):
        raise InputFileError(f"Campo '{key}' ausente ou não é uma lista")
    for index, record in enumerate(records):
        if not isinstance(record, dict):
            raise InputFileError("Registro não é um objeto", index)
    return records


def _read_index_list(raw: Any, field_name: str, record: int) -> tuple:
    if not isinstance(raw, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in raw):
        raise InputFileError(f"'{field_name}' deve ser uma lista de inteiros (recebido {raw!r})", record)
    entries = tuple(raw)
    if any(a >= b for a, b in zip(entries, entries[1:])):
        raise InputFileError(f"'{field_name}' deve estar ordenado e sem repetições: {list(entries)}", record)
    return entries


def function_from_dict(data: Dict[str, Any]) -> SliceFunction:
    n, k = _read_slice(data)
    values = {}
    for index, record in enumerate(_read_records(data, "values")):
        subset = _read_index_list(record.get("set"), "set", index)
        if len(subset) != k or (subset and not (subset[0] >= 1 and subset[-1] <= n)):
            raise InputFileError(f"{list(subset)} não é um {k}-subconjunto de [{n}]", index)
        if subset in values:
            raise InputFileError(f"Conjunto repetido: {list(subset)}", index)
        values[subset] = parse_rational(record.get("value"), index)
    if len(values) != comb(n, k):
        raise InputFileError(f"Esperados {comb(n, k)} registros na fatia ({n},{k}), recebidos {len(values)}")
    return SliceFunction(n, k, values)


def expansion_from_dict(data: Dict[str, Any]) -> YoungExpansion:
    n, k = _read_slice(data)
    coefficients = {}
    for index, record in enumerate(_read_records(data, "coeffs")):
        entries = _read_index_list(record.get("top_set"), "top_set", index)
        if (entries and not (entries[0] >= 1 and entries[-1] <= n)) or not is_top_set(entries, n):
            raise InputFileError(f"{list(entries)} não é um top set em [{n}]", index)
        if len(entries) > k:
            raise InputFileError(f"|B| = {len(entries)} excede k = {k}", index)
        B = TopSet(entries, n)
        if B in coefficients:
            raise InputFileError(f"Top set repetido: {list(entries)}", index)
        coefficients[B] = parse_rational(record.get("value"), index)
    return YoungExpansion(n, k, coefficients)


def load_function(source: PathLike) -> SliceFunction:
    f = function_from_dict(_read_json(source))
    logging.info(f"📁 Função carregada de {source}: fatia ({f.n},{f.k})")
    return f


def load_expansion(source: PathLike) -> YoungExpansion:
    e = expansion_from_dict(_read_json(source))
    logging.info(f"📁 Expansão carregada de {source}: {len(e.coefficients)} coeficientes")
    return e


# ---------------------------------------------
# Escrita
# ---------------------------------------------
def _records_of(values: Dict[tuple, Fraction]) -> List[Dict[str, Any]]:
    return [{"set": list(S), "value": format_rational(v)} for S, v in values.items()]


def function_to_dict(f: SliceFunction) -> Dict[str, Any]:
    return {"n": f.n, "k": f.k, "values": _records_of(f.values)}


def expansion_to_dict(e: YoungExpansion) -> Dict[str, Any]:
    return {
        "n": e.n,
        "k": e.k,
        "coeffs": [
            {"top_set": list(B.entries), "value": format_rational(c)}
            for B, c in sorted(e.coefficients.items(), key=lambda item: top_set_key(item[0]))
        ],
    }


def noise_to_dict(e: RealExpansion, t: float, digits: int = 15) -> Dict[str, Any]:
    """Única saída com floats: coeficientes e valores de H_t f com `digits` algarismos."""
    values = e.evaluate()
    return {
        "n": e.n,
        "k": e.k,
        "t": t,
        "coeffs": [
            {"top_set": list(B.entries), "value": format_real(c, digits)}
            for B, c in sorted(e.coefficients.items(), key=lambda item: top_set_key(item[0]))
        ],
        "values": [{"set": list(S), "value": format_real(values[S], digits)} for S in slice_points(e.n, e.k)],
    }


def junta_to_dict(report: JuntaReport) -> Dict[str, Any]:
    return {
        "n": report.junta.n,
        "k": report.junta.k,
        "tau": format_rational(report.tau),
        "important_set": list(report.important_set),
        "coordinate_count": report.coordinate_count,
        "distance": format_rational(report.distance),
        "rounding_bound": format_rational(report.rounding_bound),
        "total_influence": format_rational(report.total_influence),
        "matching": [list(edge) for edge in report.matching],
        "permutation": [[old, new] for old, new in sorted(report.permutation.items())],
        "values": _records_of(report.junta.values),
    }


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def write_document(document: Dict[str, Any], target: Optional[PathLike] = None) -> str:
    """Serializa; grava em target se houver e devolve o texto."""
    text = dumps(document)
    if target is not None:
        Path(target).write_text(text, encoding="utf-8")
        logging.info(f"💾 Resultado salvo em {target}")
    return text
