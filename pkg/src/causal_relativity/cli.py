#!/usr/bin/env python3
"""
Command-line interface for causal-structure verification

Exit codes: 0 when every check passes, 1 when a check fails, 2 for unreadable,
malformed or invalid input (and command-line usage errors).
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
from pydantic import ValidationError
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from . import __version__
from .config import DEFAULT_TOLERANCES, BatchConfig
from .errors import CausalRelativityError, InternalInvariantError
from .log import configure_logging
from .models import BatchReport, FrameReport, NoSignallingReport, PureFallbackReport, RunReport, Scenario
from .presets import PRESETS, preset_text
from .scenario_files import load_scenario
from .verification import batch_verify, verify_frame_equality, verify_no_signalling, verify_pure_fallback

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _prob(value: float) -> str:
    return f"{value:.6f}"


def _dev(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.2e}"


def _verdict(passed: bool) -> str:
    return "[bold green]✅ PASS[/bold green]" if passed else "[bold red]❌ FAIL[/bold red]"


class VerificationCLI:
    """Renders verification reports with rich"""

    def __init__(self):
        self.console = Console()

    def display_scenario(self, scenario: Scenario):
        rho = scenario.rho
        text = f"""
📁 Scenario: {scenario.name}
📐 Dimensions: d1={scenario.dims.d1}, d2={scenario.dims.d2}
🧪 State: min eigenvalue {rho.min_eigenvalue:.3e}, full rank {rho.is_full_rank}, pure {rho.is_pure}
🔀 Channel: {len(scenario.channel.kraus)} Kraus operator(s)
📏 POVM A: {', '.join(scenario.povm_a.labels)}
📏 POVM B: {', '.join(scenario.povm_b.labels)}
📏 POVM A': {', '.join(scenario.povm_a_alt.labels) if scenario.povm_a_alt else 'none'}
        """
        if scenario.description:
            text += f"\n📝 {scenario.description}"
        self.console.print(Panel(text.strip(), title="📋 Valid scenario", border_style="blue"))

    def display_frames(self, report: FrameReport):
        table = Table(title=f"🔍 Joint distributions: {report.scenario_name}", box=box.ROUNDED)
        table.add_column("a", style="cyan")
        table.add_column("b", style="cyan")
        table.add_column("p_alpha (A→B)", justify="right")
        table.add_column("p_beta (B→A)", justify="right")
        table.add_column("p_gamma (space-like)", justify="right")
        for i, label_a in enumerate(report.alpha.labels_a):
            for j, label_b in enumerate(report.alpha.labels_b):
                table.add_row(
                    label_a,
                    label_b,
                    _prob(report.alpha.probabilities[i][j]),
                    _prob(report.beta.probabilities[i][j]),
                    _prob(report.gamma.probabilities[i][j]),
                )
        self.console.print(table)
        self._display_deviations(report.deviations(), report.tolerance)
        self.console.print(f"Frame equality: {_verdict(report.passed)}")

    def _display_deviations(self, deviations: Dict[str, float], tol: float):
        table = Table(title=f"📊 Deviations (tolerance {_dev(tol)})", box=box.SIMPLE)
        table.add_column("Check", style="bold")
        table.add_column("Max deviation", justify="right")
        table.add_column("Status", justify="center")
        for name, value in deviations.items():
            table.add_row(name.replace("_", " "), _dev(value), "✅" if value <= tol else "❌")
        self.console.print(table)

    def display_no_signalling(self, report: NoSignallingReport):
        table = Table(title=f"📡 B-marginals: {report.scenario_name}", box=box.ROUNDED)
        table.add_column("b", style="cyan")
        table.add_column("under A", justify="right")
        table.add_column("under A'", justify="right")
        table.add_column("expected", justify="right")
        for j, label in enumerate(report.labels_b):
            table.add_row(
                label,
                _prob(report.marginal_under_a[j]),
                _prob(report.marginal_under_a_alt[j]),
                _prob(report.expected_marginal[j]),
            )
        self.console.print(table)
        self.console.print(f"Max deviation {_dev(report.max_deviation)} (tolerance {_dev(report.tolerance)})")
        self.console.print(f"No-signalling: {_verdict(report.passed)}")

    def display_pure_fallback(self, report: PureFallbackReport, labels_b: List[str]):
        table = Table(title=f"🎯 Conditional probabilities p(b|a): {report.scenario_name}", box=box.ROUNDED)
        table.add_column("b", style="cyan")
        table.add_column("direct", justify="right")
        for frame in report.conditionals:
            table.add_column(frame, justify="right")
        for j, label in enumerate(labels_b):
            row = [label, _prob(report.direct[j])]
            row += [_prob(values[j]) for values in report.conditionals.values()]
            table.add_row(*row)
        self.console.print(table)
        self.console.print(f"Max deviation {_dev(report.max_deviation)} (tolerance {_dev(report.tolerance)})")
        self.console.print(f"Conditional route: {_verdict(report.passed)}")

    def display_batch(self, report: BatchReport):
        worst = report.worst_trial
        worst_text = "n/a"
        if worst is not None:
            worst_text = f"{_dev(worst.worst_deviation)} (trial {worst.index}, seed {worst.seed}, d1={worst.d1}, d2={worst.d2}, kraus={worst.n_kraus})"
        text = f"""
🎲 Trials: {report.n_trials} (base seed {report.config.base_seed})
✅ Passed: {report.passed}
❌ Failed: {report.failed}
💥 Errors: {report.errored} {report.error_counts or ''}
📈 Worst deviation: {worst_text}
📡 Worst no-signalling deviation: {_dev(report.worst_no_signalling_deviation)}
⏱️ Time: {report.timing.total_seconds:.2f}s total, {report.timing.mean_seconds * 1000:.1f}ms mean
        """
        self.console.print(Panel(text.strip(), title="📋 Batch summary", border_style="blue"))

        if report.failures:
            table = Table(title="🔍 Failing trials", box=box.ROUNDED)
            for column in ("trial", "seed", "dims", "status", "deviation", "error"):
                table.add_column(column)
            for trial in report.failures[:20]:
                table.add_row(
                    str(trial.index),
                    str(trial.seed),
                    f"{trial.d1}x{trial.d2} k={trial.n_kraus}",
                    trial.status,
                    _dev(trial.worst_deviation),
                    escape(trial.error or ""),
                )
            self.console.print(table)
        self.console.print(f"Batch: {_verdict(report.all_passed)}")


def _write_report(path: Optional[str], report: RunReport):
    if path:
        Path(path).write_text(report.to_json(), encoding="utf-8")


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.pass_context
def cli(ctx, verbose: bool):
    """🔬 Causal Relativity - verify that observers in different causal frames agree"""
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["cli_tool"] = VerificationCLI()


@cli.command()
@click.argument("scenario_file")
@click.pass_context
def validate(ctx, scenario_file: str) -> int:
    """Parse and validate a scenario file (or preset:<name>)"""
    scenario = load_scenario(scenario_file)
    ctx.obj["cli_tool"].display_scenario(scenario)
    return EXIT_OK


@cli.command()
@click.argument("scenario_file")
@click.option("--tol", default=DEFAULT_TOLERANCES.frame_equality, show_default=True, type=float, help="Tolerance for every deviation")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="Write a JSON report to this file")
@click.pass_context
def frames(ctx, scenario_file: str, tol: float, json_out: Optional[str]) -> int:
    """Compute p_alpha, p_beta and p_gamma and check they agree"""
    cli_tool = ctx.obj["cli_tool"]
    scenario = load_scenario(scenario_file)
    config = {"scenario": scenario_file, "tol": tol}

    if scenario.pure_fallback:
        fallback = verify_pure_fallback(scenario, tol)
        cli_tool.display_pure_fallback(fallback, list(scenario.povm_b.labels))
        _write_report(json_out, RunReport(tool_version=__version__, command="frames", config=config,
                                          pure_fallback=fallback, passed=fallback.passed))
        return EXIT_OK if fallback.passed else EXIT_CHECK_FAILED

    report = verify_frame_equality(scenario, tol)
    cli_tool.display_frames(report)
    _write_report(json_out, RunReport(tool_version=__version__, command="frames", config=config,
                                      frames=report, passed=report.passed))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


@cli.command()
@click.argument("scenario_file")
@click.option("--tol", default=DEFAULT_TOLERANCES.frame_equality, show_default=True, type=float, help="Tolerance for the marginal deviation")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="Write a JSON report to this file")
@click.pass_context
def nosignal(ctx, scenario_file: str, tol: float, json_out: Optional[str]) -> int:
    """Check B-marginals do not depend on the choice between POVM A and A'"""
    scenario = load_scenario(scenario_file)
    report = verify_no_signalling(scenario, tol)
    ctx.obj["cli_tool"].display_no_signalling(report)
    _write_report(json_out, RunReport(tool_version=__version__, command="nosignal",
                                      config={"scenario": scenario_file, "tol": tol},
                                      no_signalling=report, passed=report.passed))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


@cli.command()
@click.option("--d1", "d1_values", multiple=True, type=int, help="Dimension of S1 (repeatable) [default: 2 3 4]")
@click.option("--d2", "d2_values", multiple=True, type=int, help="Dimension of S2 (repeatable) [default: 2 3 4]")
@click.option("--kraus", "kraus_counts", multiple=True, type=int, help="Kraus operator count (repeatable) [default: 1 2 4]")
@click.option("--outcomes", "outcome_counts", multiple=True, type=int, help="POVM outcome count (repeatable) [default: 2 3]")
@click.option("--trials", default=1000, show_default=True, type=int, help="Number of random scenarios")
@click.option("--seed", default=0, show_default=True, type=int, help="Base seed; trial i uses seed + i")
@click.option("--tol", default=DEFAULT_TOLERANCES.frame_equality, show_default=True, type=float, help="Pass tolerance")
@click.option("--workers", default=1, show_default=True, type=int, help="Worker threads")
@click.option("--no-signalling/--skip-no-signalling", default=True, help="Also check no-signalling per trial")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="Write a JSON report to this file")
@click.pass_context
def random(ctx, d1_values, d2_values, kraus_counts, outcome_counts, trials: int, seed: int,
           tol: float, workers: int, no_signalling: bool, json_out: Optional[str]) -> int:
    """Verify frame equality on seeded random scenarios"""
    options: Dict[str, Any] = {
        "n_trials": trials,
        "base_seed": seed,
        "tol": tol,
        "max_workers": workers,
        "check_no_signalling": no_signalling,
    }
    for key, values in (("d1_values", d1_values), ("d2_values", d2_values),
                        ("kraus_counts", kraus_counts), ("outcome_counts", outcome_counts)):
        if values:
            options[key] = list(values)
    config = BatchConfig(**options)

    report = batch_verify(config)
    ctx.obj["cli_tool"].display_batch(report)
    _write_report(json_out, RunReport(tool_version=__version__, command="random",
                                      config=config.to_dict(), batch=report, passed=report.all_passed))
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


@cli.command()
@click.argument("name", required=False)
@click.option("--emit", type=click.Path(dir_okay=False), help="Write the preset scenario file here")
@click.pass_context
def preset(ctx, name: Optional[str], emit: Optional[str]) -> int:
    """Show the bundled presets, print one, or write it to a file"""
    console = ctx.obj["cli_tool"].console
    if name is None:
        table = Table(title="📦 Presets", box=box.ROUNDED)
        table.add_column("Name", style="cyan")
        table.add_column("Description")
        for preset_name, description in PRESETS.items():
            table.add_row(preset_name, description)
        console.print(table)
        return EXIT_OK

    text = preset_text(name)
    if emit:
        Path(emit).write_text(text, encoding="utf-8")
        console.print(f"✅ Wrote preset {name} to {emit}")
    else:
        click.echo(text)
    return EXIT_OK


@cli.command()
def server() -> int:
    """Start the MCP server on stdio"""
    import asyncio

    from .server import main as mcp_main

    asyncio.run(mcp_main())
    return EXIT_OK


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting"""
    err_console = Console(stderr=True)
    try:
        result = cli.main(args=list(argv) if argv is not None else None,
                          prog_name="causal-relativity", standalone_mode=False)
    except click.exceptions.ClickException as e:
        e.show()
        return EXIT_INPUT_ERROR
    except click.exceptions.Abort:
        err_console.print("Aborted", style="bold red")
        return EXIT_CHECK_FAILED
    except InternalInvariantError as e:
        err_console.print(f"❌ Internal invariant violated: {escape(str(e))}", style="bold red")
        return EXIT_CHECK_FAILED
    except CausalRelativityError as e:
        err_console.print(f"❌ {type(e).__name__}: {escape(str(e))}", style="bold red")
        return EXIT_INPUT_ERROR
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        err_console.print(f"❌ Invalid option {field}: {escape(first['msg'])}", style="bold red")
        return EXIT_INPUT_ERROR
    return result if isinstance(result, int) else EXIT_OK


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
