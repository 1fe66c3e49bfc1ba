"""
Serialization Service - JSON форматы матриц, алгебр, семейств и отчётов.

Matrix JSON: {"dim": n, "entries": [[re, im], ...]} row-major, length n².
Projections may be given as {"dim": n, "range_basis": [vector, ...]}.
Algebra JSON: {"block_dims": [...], "blocks": [matrix JSON, ...]}.
Morphism JSON: {"assignment": [{"source_block": i, "unitary": matrix JSON}, ...]}.
Family JSON: {"family": "badpq" | "pomega" | "custom", "N": int, "custom_blocks_path": optional}.
"""

import dataclasses
import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Tuple

import numpy as np

from modules.algebra import AlgebraElement, BlockAlgebra, Morphism
from modules.calkin import badpq_family, custom_family, pomega_family
from modules.calkin.families import FamilyPair
from modules.errors import ArgumentError, NumericInputError
from modules.spectra import DEFAULT_TOLERANCES, HermitianOperator, Projection, ToleranceConfig
from modules.spectra.subspaces import check_finite

logger = logging.getLogger(__name__)

FAMILIES = ("badpq", "pomega", "custom")


def _require(doc: Any, key: str, what: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise NumericInputError(f"{what}: missing key '{key}'")
    return doc[key]


def _complex(value: Any, what: str) -> complex:
    """A number or an [re, im] pair."""
    if isinstance(value, bool):
        raise NumericInputError(f"{what}: expected a number or [re, im], got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
        return complex(value[0], value[1])
    raise NumericInputError(f"{what}: expected a number or [re, im], got {value!r}")


def _pair(z: complex) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


class SerializationService:
    """Сервис чтения и записи JSON-документов инструментария."""

    # ----- low level ---------------------------------------------------

    @staticmethod
    def loads(text: str, source: str = "<input>") -> Any:
        """
        Разбирает JSON-текст.

        Raises:
            NumericInputError: с номером строки и столбца при ошибке синтаксиса
        """
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise NumericInputError(f"{source}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e

    @staticmethod
    def load_file(path: str) -> Any:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ArgumentError(f"cannot read {path}: {e.strerror}") from e
        return SerializationService.loads(text, source=path)

    @staticmethod
    def dumps(obj: Any) -> str:
        """Детерминированный JSON: sorted keys, indent 2."""
        return json.dumps(SerializationService.to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)

    @staticmethod
    def to_jsonable(obj: Any) -> Any:
        """
        Переводит отчёты (dataclasses), проекции, операторы и массивы numpy
        в JSON-совместимые значения.
        """
        to = SerializationService.to_jsonable
        if isinstance(obj, (Projection, HermitianOperator)):
            return SerializationService.matrix_to_json(obj.matrix)
        if isinstance(obj, AlgebraElement):
            return SerializationService.element_to_json(obj)
        if isinstance(obj, Morphism):
            return SerializationService.morphism_to_json(obj)
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return {f.name: to(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        if isinstance(obj, np.ndarray):
            if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
                return SerializationService.matrix_to_json(obj)
            if obj.ndim == 1 and np.iscomplexobj(obj):
                return [_pair(z) for z in obj]
            return to(obj.tolist())
        if isinstance(obj, dict):
            return {str(k): to(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [to(x) for x in obj]
        if isinstance(obj, (bool, np.bool_)):
            return bool(obj)
        if isinstance(obj, (int, np.integer)):
            return int(obj)
        if isinstance(obj, (complex, np.complexfloating)):
            return _pair(obj)
        if isinstance(obj, (float, np.floating, Fraction)):
            value = float(obj)
            if math.isnan(value) or math.isinf(value):
                return str(value)
            return value
        return obj

    # ----- matrices ----------------------------------------------------

    @staticmethod
    def matrix_to_json(m) -> dict:
        arr = np.asarray(m, dtype=complex)
        return {"dim": int(arr.shape[0]), "entries": [_pair(z) for z in arr.reshape(-1)]}

    @staticmethod
    def matrix_from_json(doc: Any, what: str = "matrix") -> np.ndarray:
        dim = _require(doc, "dim", what)
        if not isinstance(dim, int) or isinstance(dim, bool) or dim <= 0:
            raise NumericInputError(f"{what}: 'dim' must be a positive integer, got {dim!r}")
        entries = _require(doc, "entries", what)
        if not isinstance(entries, list) or len(entries) != dim * dim:
            raise NumericInputError(f"{what}: expected {dim * dim} entries")
        arr = np.array([_complex(x, what) for x in entries], dtype=complex).reshape(dim, dim)
        check_finite(arr, what)
        return arr

    @staticmethod
    def hermitian_from_json(doc: Any, cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                            what: str = "operator") -> HermitianOperator:
        return HermitianOperator.from_matrix(SerializationService.matrix_from_json(doc, what), cfg)

    @staticmethod
    def projection_from_json(doc: Any, cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                             what: str = "projection") -> Projection:
        """Проекция из матрицы или из {"dim", "range_basis"}."""
        if isinstance(doc, dict) and "range_basis" in doc:
            dim = _require(doc, "dim", what)
            vectors = doc["range_basis"]
            if not isinstance(dim, int) or dim <= 0 or not isinstance(vectors, list):
                raise NumericInputError(f"{what}: malformed range_basis document")
            columns = []
            for v in vectors:
                if not isinstance(v, list) or len(v) != dim:
                    raise NumericInputError(f"{what}: every basis vector needs {dim} entries")
                columns.append([_complex(x, what) for x in v])
            if not columns:
                return Projection.zero(dim)
            return Projection.from_basis(np.array(columns, dtype=complex).T, dim=dim, cfg=cfg)
        return Projection.from_matrix(SerializationService.matrix_from_json(doc, what), cfg)

    @staticmethod
    def projection_list_from_json(doc: Any, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> List[Projection]:
        """
        Семейство проекций: список, {"projections": [...]} или {"P": ..., "Q": ...}.
        """
        if isinstance(doc, dict) and "projections" in doc:
            doc = doc["projections"]
        elif isinstance(doc, dict) and "P" in doc:
            doc = [doc[k] for k in ("P", "Q") if k in doc]
        if not isinstance(doc, list) or not doc:
            raise NumericInputError("expected a non-empty list of projections")
        return [SerializationService.projection_from_json(x, cfg, f"projection {i}") for i, x in enumerate(doc)]

    # ----- block algebras ----------------------------------------------

    @staticmethod
    def algebra_from_json(doc: Any) -> BlockAlgebra:
        dims = _require(doc, "block_dims", "algebra")
        if not isinstance(dims, list):
            raise NumericInputError("algebra: 'block_dims' must be a list")
        return BlockAlgebra.of(dims)

    @staticmethod
    def element_to_json(x: AlgebraElement) -> dict:
        return {
            "block_dims": list(x.algebra.block_dims),
            "blocks": [SerializationService.matrix_to_json(b) for b in x.blocks],
        }

    @staticmethod
    def element_from_json(doc: Any, algebra: Optional[BlockAlgebra] = None,
                          what: str = "element") -> AlgebraElement:
        own = SerializationService.algebra_from_json(doc)
        if algebra is not None and own != algebra:
            raise ArgumentError(f"{what}: lives in {own.block_dims}, expected {algebra.block_dims}")
        blocks = _require(doc, "blocks", what)
        if not isinstance(blocks, list):
            raise NumericInputError(f"{what}: 'blocks' must be a list")
        return own.element([SerializationService.matrix_from_json(b, f"{what} block {i}")
                            for i, b in enumerate(blocks)])

    @staticmethod
    def morphism_to_json(m: Morphism) -> dict:
        return {
            "source": {"block_dims": list(m.source.block_dims)},
            "assignment": [{"source_block": s, "unitary": SerializationService.matrix_to_json(U)}
                           for s, U in m.assignment],
        }

    @staticmethod
    def morphism_from_json(doc: Any, source: Optional[BlockAlgebra] = None) -> Morphism:
        if source is None:
            source = SerializationService.algebra_from_json(_require(doc, "source", "morphism"))
        entries = _require(doc, "assignment", "morphism")
        if not isinstance(entries, list):
            raise NumericInputError("morphism: 'assignment' must be a list")
        assignment: List[Tuple[int, np.ndarray]] = []
        for j, entry in enumerate(entries):
            s = _require(entry, "source_block", f"assignment {j}")
            if not isinstance(s, int) or isinstance(s, bool):
                raise NumericInputError(f"assignment {j}: 'source_block' must be an integer")
            assignment.append((s, SerializationService.matrix_from_json(_require(entry, "unitary", f"assignment {j}"),
                                                                       f"assignment {j} unitary")))
        return Morphism.from_assignment(source, assignment)

    # ----- calkin families ---------------------------------------------

    @staticmethod
    def family_from_json(doc: Any, base_dir: Optional[str] = None) -> FamilyPair:
        """Пара (P, Q) по описанию семейства; custom-блоки читаются из custom_blocks_path."""
        name = _require(doc, "family", "family document")
        N = _require(doc, "N", "family document")
        if not isinstance(N, int) or isinstance(N, bool):
            raise NumericInputError("family document: 'N' must be an integer")
        return SerializationService.build_family(name, N, doc.get("custom_blocks_path"), base_dir)

    @staticmethod
    def build_family(name: str, N: int, custom_blocks_path: Optional[str] = None,
                     base_dir: Optional[str] = None) -> FamilyPair:
        if name == "badpq":
            return badpq_family(N)
        if name == "pomega":
            return pomega_family(N)
        if name == "custom":
            if not custom_blocks_path:
                raise ArgumentError("custom family needs custom_blocks_path")
            path = Path(custom_blocks_path)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            blocks = SerializationService.load_file(str(path))
            p_blocks = _require(blocks, "P", "custom blocks")
            q_blocks = _require(blocks, "Q", "custom blocks")
            if not isinstance(p_blocks, list) or not isinstance(q_blocks, list):
                raise NumericInputError("custom blocks: 'P' and 'Q' must be lists")
            to_matrix = SerializationService.matrix_from_json
            return custom_family([to_matrix(b, f"P block {i}") for i, b in enumerate(p_blocks)],
                                 [to_matrix(b, f"Q block {i}") for i, b in enumerate(q_blocks)], N)
        raise ArgumentError(f"unknown family {name!r}; expected one of {FAMILIES}")
