#!/usr/bin/env python3
"""
JSON scenario documents

A complex entry is a two-element array ``[re, im]`` and a matrix is an array
of rows. POVMs are either ``{"effects": [...], "labels": [...]}`` or a bare
list of effect matrices. Example::

    {
      "name": "stern-gerlach",
      "d1": 2, "d2": 2,
      "rho": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]],
      "kraus": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]],
      "povm_a": {"effects": [...], "labels": ["Z1↑", "Z1↓"]},
      "povm_b": {"effects": [...], "labels": ["Z2↑", "Z2↓"]}
    }
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .config import DEFAULT_TOLERANCES, Tolerances
from .core import build_scenario, validate_channel, validate_povm, validate_state
from .errors import CausalRelativityError, DimensionError, ParseError
from .models import Povm, Scenario

logger = logging.getLogger(__name__)

PRESET_PREFIX = "preset:"

MatrixDoc = List[List[Tuple[float, float]]]


class PovmDoc(BaseModel):
    """POVM section of a scenario document"""

    model_config = ConfigDict(extra="forbid")

    effects: List[MatrixDoc] = Field(..., description="Effect matrices in outcome order")
    labels: Optional[List[str]] = Field(default=None, description="Outcome labels")


class ScenarioDoc(BaseModel):
    """Schema of a scenario document"""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Scenario name")
    d1: int = Field(..., description="Dimension of S1")
    d2: int = Field(..., description="Dimension of S2")
    rho: MatrixDoc = Field(..., description="State on S1")
    kraus: List[MatrixDoc] = Field(..., description="Kraus operators S1 -> S2", min_length=1)
    povm_a: Union[PovmDoc, List[MatrixDoc]] = Field(..., description="Measurement A on S1")
    povm_b: Union[PovmDoc, List[MatrixDoc]] = Field(..., description="Measurement B on S2")
    povm_a_alt: Optional[Union[PovmDoc, List[MatrixDoc]]] = Field(default=None, description="Alternative measurement on S1")
    pure_fallback: bool = Field(default=False, description="The state is pure; use the conditional route")
    description: Optional[str] = Field(default=None, description="Free-form metadata")


def _location(loc: Sequence[Union[str, int]]) -> Optional[str]:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        elif part == "PovmDoc" or "[" in part:
            continue
        else:
            path += f".{part}" if path else str(part)
    return path or None


def _matrix(rows: MatrixDoc) -> np.ndarray:
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise DimensionError(f"rows have different lengths {sorted(widths)}")
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


def _povm(doc: Union[PovmDoc, List[MatrixDoc]], dim: int, prefix: str, field: str, tolerances: Tolerances) -> Povm:
    if isinstance(doc, PovmDoc):
        effects, labels = doc.effects, doc.labels
    else:
        effects, labels = doc, None
    try:
        mats = []
        for i, effect in enumerate(effects):
            try:
                mats.append(_matrix(effect))
            except CausalRelativityError as e:
                raise e.with_field(f"effects[{i}]")
        povm = validate_povm(mats, labels, prefix, tolerances)
        if povm.dim != dim:
            raise DimensionError(f"effects act on dimension {povm.dim}, expected {dim}")
    except CausalRelativityError as e:
        raise e.with_field(field)
    return povm


def parse_scenario(text: str, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Scenario:
    """
    Parse and validate a scenario document

    Raises:
        ParseError: malformed JSON or schema violation
        CausalRelativityError: any validation error, located by ``field``
    """
    try:
        doc = ScenarioDoc.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        raise ParseError(first["msg"], field=_location(first["loc"])) from e

    for field, value in (("d1", doc.d1), ("d2", doc.d2)):
        if value < 2:
            raise DimensionError(f"dimension must be >= 2, got {value}", field=field)

    try:
        rho = validate_state(_matrix(doc.rho), tolerances)
        if rho.dim != doc.d1:
            raise DimensionError(f"state has dimension {rho.dim}, d1 is {doc.d1}")
    except CausalRelativityError as e:
        raise e.with_field("rho")

    kraus = []
    for m, op in enumerate(doc.kraus):
        try:
            kraus.append(_matrix(op))
        except CausalRelativityError as e:
            raise e.with_field(f"kraus[{m}]")
    channel = validate_channel(kraus, doc.d1, doc.d2, tolerances)

    povm_a = _povm(doc.povm_a, doc.d1, "a", "povm_a", tolerances)
    povm_b = _povm(doc.povm_b, doc.d2, "b", "povm_b", tolerances)
    povm_a_alt = None
    if doc.povm_a_alt is not None:
        povm_a_alt = _povm(doc.povm_a_alt, doc.d1, "a", "povm_a_alt", tolerances)

    scenario = build_scenario(
        name=doc.name,
        rho=rho,
        channel=channel,
        povm_a=povm_a,
        povm_b=povm_b,
        povm_a_alt=povm_a_alt,
        pure_fallback=doc.pure_fallback,
        description=doc.description,
    )
    logger.debug("Parsed scenario %s (d1=%d, d2=%d)", scenario.name, doc.d1, doc.d2)
    return scenario


def _matrix_doc(mat: np.ndarray) -> MatrixDoc:
    return [[(float(z.real), float(z.imag)) for z in row] for row in mat]


def _povm_doc(povm: Povm) -> PovmDoc:
    return PovmDoc(effects=[_matrix_doc(e) for e in povm.effects], labels=list(povm.labels))


def serialize_scenario(scenario: Scenario) -> str:
    """Scenario document that ``parse_scenario`` turns back into an equal Scenario"""
    doc = ScenarioDoc(
        name=scenario.name,
        d1=scenario.dims.d1,
        d2=scenario.dims.d2,
        rho=_matrix_doc(scenario.rho.mat),
        kraus=[_matrix_doc(op) for op in scenario.channel.kraus],
        povm_a=_povm_doc(scenario.povm_a),
        povm_b=_povm_doc(scenario.povm_b),
        povm_a_alt=_povm_doc(scenario.povm_a_alt) if scenario.povm_a_alt is not None else None,
        pure_fallback=scenario.pure_fallback,
        description=scenario.description,
    )
    return doc.model_dump_json(indent=2, exclude_none=True)


def load_scenario(source: Union[str, Path], tolerances: Tolerances = DEFAULT_TOLERANCES) -> Scenario:
    """Load a scenario file, or a bundled preset given as ``preset:<name>``"""
    source = str(source)
    if source.startswith(PRESET_PREFIX):
        from .presets import preset

        return preset(source[len(PRESET_PREFIX):], tolerances)
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {source}: {e.strerror or e}") from e
    return parse_scenario(text, tolerances)
