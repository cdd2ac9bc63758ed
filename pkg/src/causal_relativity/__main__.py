#!/usr/bin/env python3
"""
Main entry point for causal-relativity
Supports two modes: CLI and MCP server
"""

import sys


def main():
    """Main entry point with mode detection"""

    if len(sys.argv) > 1 and sys.argv[1].lower() == "server":
        try:
            import asyncio

            from .server import main as mcp_main

            asyncio.run(mcp_main())
        except ImportError:
            print("❌ MCP not available. Install with: pip install mcp", file=sys.stderr)
            sys.exit(1)
        return

    from .cli import cli_main

    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
