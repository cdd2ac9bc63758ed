#!/usr/bin/env python3
"""
Bundled example scenarios shipped as JSON under ``causal_relativity/data``
"""

from importlib.resources import files
from typing import Dict

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import UnknownPresetError
from .models import Scenario
from .scenario_files import parse_scenario

PRESETS: Dict[str, str] = {
    "stern-gerlach": "Z measurements on a maximally mixed qubit, identity channel",
    "depolarizing": "Z measurements around a completely depolarizing channel",
    "bell": "stern-gerlach with an X-basis alternative POVM on S1",
    "pure-spin-up": "pure spin-up state through a Hadamard (conditional route)",
}


def preset_text(name: str) -> str:
    """Raw JSON document of a preset"""
    if name not in PRESETS:
        raise UnknownPresetError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return (files("causal_relativity") / "data" / f"{name}.json").read_text(encoding="utf-8")


def preset(name: str, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Scenario:
    return parse_scenario(preset_text(name), tolerances)


def list_presets() -> Dict[str, str]:
    return dict(PRESETS)
