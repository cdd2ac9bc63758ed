#!/usr/bin/env python3
"""
MCP integration tests for the causal-relativity server.

These tests validate the tool dispatcher and, when the mcp package is
installed, the protocol handlers wrapped around it.
"""

import asyncio
import json

import pytest

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from causal_relativity import __version__
from causal_relativity.core import random_scenario
from causal_relativity.presets import PRESETS
from causal_relativity.scenario_files import serialize_scenario
from causal_relativity.server import MCP_AVAILABLE, TOOL_SPECS, run_tool


@pytest.mark.mcp
class TestToolDiscovery:
    """Test MCP tool discovery and registration."""

    def test_expected_tools(self):
        """Test every verification tool is registered."""
        names = {spec["name"] for spec in TOOL_SPECS}
        assert names == {"verify_frames", "verify_no_signalling", "batch_verify", "list_presets"}

    def test_tool_schemas_valid(self):
        """Test every tool has a description and an object schema."""
        for spec in TOOL_SPECS:
            assert spec["description"]
            assert spec["inputSchema"]["type"] == "object"
            assert isinstance(spec["inputSchema"]["properties"], dict)


@pytest.mark.mcp
class TestRunTool:
    """Test tool calls through the dispatcher."""

    def test_verify_frames_preset(self):
        """
        Given: The depolarizing preset
        When: verify_frames is called
        Then: The frame report passes with a uniform alpha table
        """
        result = run_tool("verify_frames", {"preset": "depolarizing"})
        assert result["passed"]
        assert result["frames"]["alpha"]["probabilities"] == pytest.approx([[0.25, 0.25], [0.25, 0.25]])

    def test_verify_frames_document(self):
        """
        Given: A serialized random scenario
        When: verify_frames is called with it
        Then: The report names the scenario and passes
        """
        result = run_tool("verify_frames", {"scenario": serialize_scenario(random_scenario(5, 3, 3, 2))})
        assert result["passed"]
        assert result["frames"]["scenario_name"] == "random-5"
        json.dumps(result)

    def test_verify_frames_pure_state(self):
        """
        Given: The pure-spin-up preset
        When: verify_frames is called
        Then: The conditional route is reported
        """
        result = run_tool("verify_frames", {"preset": "pure-spin-up"})
        assert result["passed"]
        assert "pure_fallback" in result

    def test_no_signalling(self):
        """
        Given: The bell preset
        When: verify_no_signalling is called
        Then: The check passes
        """
        result = run_tool("verify_no_signalling", {"preset": "bell"})
        assert result["passed"]
        assert result["no_signalling"]["labels_b"] == ["Z2↑", "Z2↓"]

    def test_batch(self):
        """
        Given: A small batch
        When: batch_verify is called
        Then: Every trial passes and the result is JSON-ready
        """
        result = run_tool("batch_verify", {"n_trials": 6, "base_seed": 1, "d1_values": [2], "d2_values": [2, 3]})
        assert result["passed"]
        assert result["batch"]["n_trials"] == 6
        json.dumps(result)

    def test_list_presets(self):
        """Test presets are listed with the tool version."""
        result = run_tool("list_presets", {})
        assert result["presets"] == PRESETS
        assert result["tool_version"] == __version__

    def test_validation_error_located(self):
        """
        Given: A scenario document with a non-positive state
        When: verify_frames is called
        Then: The error names its class and field
        """
        doc = json.loads(serialize_scenario(random_scenario(2, 2, 2, 1)))
        doc["rho"] = [[[1.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]
        result = run_tool("verify_frames", {"scenario": json.dumps(doc)})
        assert result["error_type"] == "NegativityError"
        assert result["field"] == "rho"

    def test_missing_alternative(self):
        """Test no-signalling on a preset without POVM A' reports the field."""
        result = run_tool("verify_no_signalling", {"preset": "stern-gerlach"})
        assert result["error_type"] == "MissingAltPovmError"
        assert result["field"] == "povm_a_alt"

    def test_invalid_batch_arguments(self):
        """Test bad batch arguments come back as a validation error."""
        result = run_tool("batch_verify", {"n_trials": 0})
        assert result["error_type"] == "ValidationError"

    def test_unknown_tool(self):
        """Test an unknown tool name is reported."""
        assert run_tool("nope", {}) == {"error": "Unknown tool: nope"}


@pytest.mark.mcp
@pytest.mark.skipif(not MCP_AVAILABLE, reason="mcp package not installed")
class TestMCPHandlers:
    """Test the protocol handlers when the mcp package is available."""

    def test_list_tools(self):
        """Test tools are exposed as MCP Tool objects."""
        from causal_relativity.server import handle_list_tools

        tools = asyncio.run(handle_list_tools())
        assert {tool.name for tool in tools} == {spec["name"] for spec in TOOL_SPECS}

    def test_call_tool_returns_json_text(self):
        """Test a tool call returns its result as JSON text content."""
        from causal_relativity.server import handle_call_tool

        content = asyncio.run(handle_call_tool("verify_frames", {"preset": "stern-gerlach"}))
        assert content[0].type == "text"
        assert json.loads(content[0].text)["passed"] is True
