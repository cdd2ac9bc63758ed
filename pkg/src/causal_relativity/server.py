#!/usr/bin/env python3
"""
MCP server exposing the verification checks as tools over stdio

``run_tool`` is the plain dispatcher; the MCP handlers only wrap its JSON
result in text content.
"""

import json
import logging
from typing import Any, Dict, List

from pydantic import ValidationError

from . import __version__
from .config import DEFAULT_TOLERANCES, BatchConfig
from .errors import CausalRelativityError
from .models import Scenario
from .presets import list_presets, preset
from .scenario_files import parse_scenario
from .verification import batch_verify, verify_frame_equality, verify_no_signalling, verify_pure_fallback

logger = logging.getLogger(__name__)

_SCENARIO_PROPERTIES = {
    "scenario": {
        "type": "string",
        "description": "Scenario document (JSON text); complex entries are [re, im] pairs",
    },
    "preset": {
        "type": "string",
        "description": "Name of a bundled preset, used when no scenario is given",
    },
    "tol": {
        "type": "number",
        "description": "Tolerance for every deviation (default 1e-10)",
    },
}

TOOL_SPECS: List[Dict[str, Any]] = [
    {
        "name": "verify_frames",
        "description": "Compute the joint outcome distribution in all three causal frames and check they agree",
        "inputSchema": {"type": "object", "properties": _SCENARIO_PROPERTIES},
    },
    {
        "name": "verify_no_signalling",
        "description": "Check that the outcome statistics on S2 do not depend on the measurement choice on S1",
        "inputSchema": {"type": "object", "properties": _SCENARIO_PROPERTIES},
    },
    {
        "name": "batch_verify",
        "description": "Run frame-equality checks on seeded random scenarios",
        "inputSchema": {
            "type": "object",
            "properties": {
                "d1_values": {"type": "array", "items": {"type": "integer"}, "description": "Dimensions of S1"},
                "d2_values": {"type": "array", "items": {"type": "integer"}, "description": "Dimensions of S2"},
                "kraus_counts": {"type": "array", "items": {"type": "integer"}, "description": "Kraus operator counts"},
                "outcome_counts": {"type": "array", "items": {"type": "integer"}, "description": "POVM outcome counts"},
                "n_trials": {"type": "integer", "description": "Number of trials (default 100)"},
                "base_seed": {"type": "integer", "description": "Trial i uses seed base_seed + i"},
                "tol": {"type": "number", "description": "Pass tolerance"},
                "max_workers": {"type": "integer", "description": "Worker threads"},
            },
        },
    },
    {
        "name": "list_presets",
        "description": "List the bundled example scenarios",
        "inputSchema": {"type": "object", "properties": {}},
    },
]


def _scenario_from(arguments: Dict[str, Any]) -> Scenario:
    if arguments.get("scenario"):
        return parse_scenario(arguments["scenario"])
    return preset(arguments.get("preset", "stern-gerlach"))


def run_tool(name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Run one tool and return a JSON-ready result; failures come back as {"error": ...}"""
    logger.info("Tool call %s", name)
    arguments = arguments or {}
    try:
        if name == "verify_frames":
            scenario = _scenario_from(arguments)
            tol = float(arguments.get("tol", DEFAULT_TOLERANCES.frame_equality))
            if scenario.pure_fallback:
                report = verify_pure_fallback(scenario, tol)
                return {"passed": report.passed, "pure_fallback": report.to_dict()}
            report = verify_frame_equality(scenario, tol)
            return {"passed": report.passed, "frames": report.to_dict()}

        elif name == "verify_no_signalling":
            tol = float(arguments.get("tol", DEFAULT_TOLERANCES.frame_equality))
            report = verify_no_signalling(_scenario_from(arguments), tol)
            return {"passed": report.passed, "no_signalling": report.to_dict()}

        elif name == "batch_verify":
            options = {"n_trials": 100, **arguments}
            config = BatchConfig(**options)
            report = batch_verify(config)
            return {"passed": report.all_passed, "batch": report.to_dict()}

        elif name == "list_presets":
            return {"presets": list_presets(), "tool_version": __version__}

        return {"error": f"Unknown tool: {name}"}

    except CausalRelativityError as e:
        return {"error": str(e), "error_type": type(e).__name__, "field": e.field}
    except ValidationError as e:
        return {"error": f"Invalid arguments: {e.errors()[0]['msg']}", "error_type": "ValidationError"}
    except Exception as e:
        logger.exception("Tool %s failed", name)
        return {"error": f"Verification failed: {e}", "error_type": type(e).__name__}


# MCP Server Implementation
try:
    import mcp.server.stdio
    import mcp.types as types
    from mcp.server import Server
    MCP_AVAILABLE = True
except ImportError:
    MCP_AVAILABLE = False

if MCP_AVAILABLE:
    server = Server("causal-relativity")

    @server.list_tools()
    async def handle_list_tools() -> list[types.Tool]:
        """List available verification tools"""
        return [types.Tool(**spec) for spec in TOOL_SPECS]

    @server.call_tool()
    async def handle_call_tool(name: str, arguments: dict) -> list[types.TextContent]:
        """Handle tool calls for verification"""
        result = run_tool(name, arguments)
        return [types.TextContent(type="text", text=json.dumps(result, indent=2))]

    async def main() -> None:
        """MCP server main function"""
        async with mcp.server.stdio.stdio_server() as (read_stream, write_stream):
            await server.run(read_stream, write_stream, server.create_initialization_options())

else:

    async def main() -> None:
        raise ImportError("MCP not available. Install with: pip install mcp")
