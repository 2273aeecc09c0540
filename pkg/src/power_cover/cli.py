"""
Command-line interface for power-cover.
"""

import logging
import sys
from pathlib import Path
from typing import NoReturn, Optional

import click
from rich.console import Console
from rich.table import Table

from power_cover.commands import gen_command, solve_command, sweep_command
from power_cover.core.instance import (
    DpvcInstance,
    format_instance,
    format_solution,
    parse_instance,
    parse_solution,
    uncovered_edges,
)
from power_cover.core.state import TraceEntry
from power_cover.lp.rpvc import check_semi_integrality, lp_lower_bound, solve_rpvc
from power_cover.solvers.kernel import kernelize
from power_cover.treewidth.decomposition import read_pace_td
from power_cover.utils import ENGINES, Config

logger = logging.getLogger(__name__)
console = Console()


def _fail(error: Exception, pretty: bool) -> NoReturn:
    """Report ``error`` and exit 3 for internal disagreements, 2 for bad input."""
    if pretty:
        console.print(f"[bold red]Error: {error}[/bold red]")
    else:
        click.echo(f"error={error}")
    sys.exit(3 if isinstance(error, RuntimeError) else 2)


def _read_instance(path: str) -> DpvcInstance:
    return parse_instance(Path(path).read_text())


def _format_trace(entry: TraceEntry) -> str:
    if entry.op == "reweight":
        return (
            f"t reweight {entry.u + 1} {entry.v + 1} {entry.old_uv} {entry.old_vu} "
            f"{entry.new_uv} {entry.new_vu}"
        )
    return f"t {entry.op} {entry.u + 1} {entry.amount}"


@click.group()
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True),
    help="Path to configuration file",
)
@click.option(
    "--debug",
    is_flag=True,
    help="Enable debug logging",
)
@click.pass_context
def cli(ctx: click.Context, config: Optional[str], debug: bool) -> None:
    """Power Cover - exact and approximate solvers for (directed) power vertex cover."""

    cfg = Config(config_file=config, log_level="DEBUG" if debug else None)

    ctx.ensure_object(dict)
    ctx.obj["config"] = cfg


@cli.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--engine",
    "-e",
    type=click.Choice(ENGINES),
    help="Solver engine (defaults to the configured one)",
)
@click.option("--P", "P", type=int, help="Decide total power at most P")
@click.option("--k", "k", type=int, help="Decide support at most k")
@click.option("--eps", type=str, help="Accuracy for tw-approx as a rational, e.g. 1/2")
@click.option(
    "--td",
    type=click.Path(exists=True, dir_okay=False),
    help="PACE .td decomposition for the tw engines",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the witness here")
@click.option("--pretty", is_flag=True, help="Human-readable table output")
@click.pass_context
def solve(
    ctx: click.Context,
    instance: str,
    engine: Optional[str],
    P: Optional[int],
    k: Optional[int],
    eps: Optional[str],
    td: Optional[str],
    output: Optional[str],
    pretty: bool,
) -> None:
    """Solve an instance with one engine."""

    config = ctx.obj["config"]
    engine = engine or config.default_engine

    try:
        inst = _read_instance(instance)
        decomposition = None
        if td:
            if not engine.startswith("tw-"):
                raise ValueError(f"--td applies to the tw engines, not {engine}")
            decomposition = read_pace_td(Path(td).read_text(), inst)
        accuracy = None
        if engine == "tw-approx":
            accuracy = solve_command.parse_eps(eps or config.get("default_eps", "1/2"))
        report = solve_command.run_solve(
            inst,
            engine,
            P=P,
            k=k,
            eps=accuracy,
            td=decomposition,
            edge_limit=config.oracle_edge_limit,
            instance_id=Path(instance).name,
        )
    except (ValueError, RuntimeError) as e:
        _fail(e, pretty)

    if output and report.witness is not None:
        Path(output).write_text(format_solution(report.witness))
        report.witness_path = output
        logger.info(f"Wrote witness to {output}")

    if pretty:
        table = Table(title=f"{report.engine} on {report.instance}")
        table.add_column("Metric", style="cyan")
        table.add_column("Value", style="white")
        table.add_row("Mode", report.mode)
        if report.parameter:
            table.add_row("Parameter", report.parameter)
        if report.answer is not None:
            answer = "[green]YES[/green]" if report.answer else "[red]NO[/red]"
            table.add_row("Answer", answer)
        if report.value is not None:
            table.add_row("Value", str(report.value))
        if report.support is not None:
            table.add_row("Support", str(report.support))
        table.add_row("Search nodes", str(report.nodes))
        table.add_row("Duration", f"{report.wall_time:.3f}s")
        console.print(table)
    else:
        for line in report.lines():
            click.echo(line)
        if report.witness is not None and not output:
            click.echo(format_solution(report.witness), nl=False)

    if report.answer is False:
        sys.exit(1)


@cli.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.argument("solution", type=click.Path(exists=True, dir_okay=False))
@click.option("--pretty", is_flag=True, help="Human-readable output")
def verify(instance: str, solution: str, pretty: bool) -> None:
    """Check that a solution covers every edge of an instance."""

    try:
        inst = _read_instance(instance)
        assignment = parse_solution(Path(solution).read_text())
        outside = [v + 1 for v in assignment.p if v >= inst.n]
        if outside:
            raise ValueError(f"solution powers vertices {outside} beyond n={inst.n}")
    except ValueError as e:
        _fail(e, pretty)

    missed = uncovered_edges(inst, assignment)
    if pretty:
        status = "[green]feasible[/green]" if not missed else "[red]infeasible[/red]"
        console.print(
            f"{status}: value {assignment.value}, support {assignment.support}"
        )
        for edge in missed:
            console.print(f"  • uncovered edge {edge.u + 1}-{edge.v + 1}")
    else:
        click.echo(f"feasible={'true' if not missed else 'false'}")
        click.echo(f"value={assignment.value}")
        click.echo(f"support={assignment.support}")
        for edge in missed:
            click.echo(f"uncovered={edge.u + 1} {edge.v + 1}")

    if missed:
        sys.exit(1)


@cli.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", type=int, required=True, help="Support budget")
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    help="Write the reduced instance here, and its trace to <output>.trace",
)
def kernel(instance: str, k: int, output: Optional[str]) -> None:
    """Reduce an instance to a small kernel for support budget k."""

    try:
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        inst = _read_instance(instance)
        outcome = kernelize(inst, k)
    except ValueError as e:
        _fail(e, False)

    click.echo(f"status={outcome.status.value}")
    if not outcome.reduced or outcome.instance is None:
        sys.exit(1)

    reduced = outcome.instance
    click.echo(f"n={reduced.n}")
    click.echo(f"m={reduced.m}")
    click.echo(f"k_remaining={outcome.k_remaining}")
    if outcome.marked:
        click.echo(f"marked={' '.join(str(v + 1) for v in outcome.marked)}")

    text = format_instance(reduced, comment=f"kernel of {Path(instance).name} for k={k}")
    if not output:
        click.echo(text, nl=False)
        return

    Path(output).write_text(text)
    trace = [_format_trace(entry) for entry in outcome.trace]
    trace.extend(f"m {i + 1} {v + 1}" for i, v in enumerate(outcome.vertex_map))
    trace.append(f"k {outcome.k_remaining}")
    Path(f"{output}.trace").write_text("\n".join(trace) + "\n")
    click.echo(f"output={output}")


@cli.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--check-half", is_flag=True, help="Check that 2x is integral everywhere")
@click.option("--pretty", is_flag=True, help="Human-readable table output")
def lp(instance: str, check_half: bool, pretty: bool) -> None:
    """Solve the linear relaxation of a symmetric instance exactly."""

    try:
        inst = _read_instance(instance)
        solution = solve_rpvc(inst)
        bound = lp_lower_bound(inst)
    except (ValueError, RuntimeError) as e:
        _fail(e, pretty)

    half = check_semi_integrality(solution) if check_half else None
    if pretty:
        table = Table(title=f"Relaxation of {Path(instance).name}")
        table.add_column("Vertex", style="cyan")
        table.add_column("x", style="white")
        for v in range(inst.n):
            table.add_row(str(v + 1), str(solution.x[v]))
        console.print(table)
        console.print(f"Value {solution.value}, lower bound {bound}")
        if half is not None:
            console.print("Half-integral" if half else "[red]Not half-integral[/red]")
    else:
        click.echo(f"value={solution.value}")
        click.echo(f"lower_bound={bound}")
        click.echo(f"pivots={solution.pivots}")
        for v in range(inst.n):
            click.echo(f"x {v + 1} {solution.x[v]}")
        if half is not None:
            click.echo(f"half_integral={'true' if half else 'false'}")

    if half is False:
        sys.exit(1)


@cli.command()
@click.argument("family", type=click.Choice(gen_command.FAMILIES))
@click.option(
    "--n", "n", type=int, default=6, help="Vertices, or part size for tw-hardness"
)
@click.option("--m", "m", type=int, default=6, help="Edges, or cross edges for tw-hardness")
@click.option("--w-max", type=int, default=5, help="Largest random demand")
@click.option("--directed", is_flag=True, help="Independent demands per side")
@click.option("--seed", type=int, help="Random seed")
@click.option(
    "--K", "K", type=int, default=2, help="Weight on source edges in the clique reduction"
)
@click.option("--apx", is_flag=True, help="Clique reduction with K = n^2")
@click.option("--parts", type=int, default=2, help="Number of parts for tw-hardness")
@click.option(
    "--strict", is_flag=True, help="tw-hardness variant whose optimum meets the target exactly"
)
@click.option("--cross-edge", multiple=True, help="tw-hardness edge c:i-d:j; repeatable")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Output file")
def gen(
    family: str,
    n: int,
    m: int,
    w_max: int,
    directed: bool,
    seed: Optional[int],
    K: int,
    apx: bool,
    parts: int,
    strict: bool,
    cross_edge: tuple,
    output: Optional[str],
) -> None:
    """Generate an instance of one family."""

    try:
        request = gen_command.GenRequest(
            family=family,
            n=n,
            m=m,
            w_max=w_max,
            directed=directed,
            seed=seed,
            K=K,
            apx=apx,
            parts=parts,
            strict=strict,
            cross_edges=list(cross_edge),
        )
        generated = gen_command.generate(request)
    except ValueError as e:
        _fail(e, False)

    text = format_instance(generated.instance, comment=generated.comment)
    if output:
        Path(output).write_text(text)
        click.echo(f"output={output}")
        click.echo(f"n={generated.instance.n}")
        click.echo(f"m={generated.instance.m}")
        if generated.target is not None:
            click.echo(f"target={generated.target}")
    else:
        click.echo(text, nl=False)


@cli.command()
@click.option("--family", type=click.Choice(["pvc", "dpvc"]), default="pvc", help="Instance family")
@click.option("--count", type=int, help="Number of instances (100; 200 for fptas, 500 for lp)")
@click.option("--n", "n", type=int, default=8, help="Largest vertex count")
@click.option("--m", "m", type=int, default=12, help="Largest edge count")
@click.option("--w-max", type=int, default=5, help="Largest demand")
@click.option("--seed", type=int, default=0, help="Corpus seed")
@click.option(
    "--mode",
    type=click.Choice(list(sweep_command.MODE_ENGINES)),
    default="power",
    help="Optimum compared, or the guarantee checked (fptas ratio, lp half-integrality)",
)
@click.option("--engine", "-e", "engines", multiple=True, help="Engine to compare; repeatable")
@click.option("--eps", "eps", multiple=True, help="Accuracy for the fptas sweep; repeatable")
@click.option("--workers", type=int, help="Worker processes (defaults to the configured count)")
@click.option(
    "--dump-dir", type=click.Path(file_okay=False), help="Write disagreeing instances here"
)
@click.option("--pretty", is_flag=True, help="Human-readable table output")
@click.pass_context
def sweep(
    ctx: click.Context,
    family: str,
    count: Optional[int],
    n: int,
    m: int,
    w_max: int,
    seed: int,
    mode: str,
    engines: tuple,
    eps: tuple,
    workers: Optional[int],
    dump_dir: Optional[str],
    pretty: bool,
) -> None:
    """Cross-check engines on a seeded random corpus."""

    config = ctx.obj["config"]
    if not engines:
        engines = tuple(sweep_command.DEFAULT_ENGINES[mode])
    if count is None:
        count = sweep_command.DEFAULT_COUNTS[mode]

    try:
        plan = sweep_command.SweepPlan(
            family=family,
            count=count,
            n=n,
            m=m,
            w_max=w_max,
            seed=seed,
            mode=mode,
            engines=list(engines),
            edge_limit=config.oracle_edge_limit,
            **({"eps": list(eps)} if eps else {}),
        )
        result = sweep_command.run_sweep(
            plan,
            workers=workers or config.get("sweep_workers", 1),
            parallel=bool(workers and workers > 1) or config.get("parallel_sweep", False),
        )
    except (ValueError, RuntimeError) as e:
        _fail(e, pretty)

    if dump_dir:
        folder = Path(dump_dir)
        folder.mkdir(parents=True, exist_ok=True)
        for case in result.disagreements:
            (folder / f"disagreement-{case.index}.gr").write_text(case.instance)

    if pretty:
        table = Table(title=f"Sweep ({mode}, {family}, seed {seed})")
        table.add_column("Metric", style="cyan")
        table.add_column("Value", style="white")
        table.add_row("Engines", ", ".join(plan.engines))
        table.add_row("Instances", str(count))
        table.add_row("Agreed", f"[green]{result.agreed}[/green]")
        table.add_row("Disagreed", f"[red]{len(result.disagreements)}[/red]")
        console.print(table)
        for case in result.disagreements:
            console.print(f"  • instance {case.index}: {case.values}")
    else:
        click.echo(f"instances={count}")
        click.echo(f"engines={','.join(plan.engines)}")
        click.echo(f"agreed={result.agreed}")
        click.echo(f"disagreed={len(result.disagreements)}")
        for case in result.disagreements:
            values = " ".join(f"{name}={value}" for name, value in sorted(case.values.items()))
            click.echo(f"disagreement={case.index} {values}")
            if not dump_dir:
                click.echo(case.instance, nl=False)

    if not result.ok:
        sys.exit(3)


def main() -> None:
    """Main entry point for the CLI."""
    cli(obj={})


if __name__ == "__main__":
    main()
