import logging
from datetime import datetime

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from servers.elliptic.ratpoly import RatPoly
from servers.exact import to_rational
from workbench.errors import WorkbenchError
from workbench.host import K3Workbench, run_selftest
from workbench.reports import Report
from workbench.settings import WorkbenchSettings

# Setup rich console and logging; logs go to stderr so --json output stays clean
console = Console()
logging.basicConfig(
    level=logging.INFO,
    format="%(message)s",
    handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
)
logger = logging.getLogger(__name__)


def show_report(report: Report):
    """Render a report as panels and a check table"""
    status = "[bold green]PASS[/bold green]" if report.passed else "[bold red]FAIL[/bold red]"
    console.print(Panel.fit(f"{report.command}  {status}", style="bold blue"))

    table = Table(title="Checks")
    table.add_column("Check", style="cyan")
    table.add_column("Status", style="magenta")
    for check in report.checks:
        table.add_row(check.name, "✅ pass" if check.passed else "❌ fail")
    if report.checks:
        console.print(table)

    for key, value in sorted(report.results.items()):
        if key in ("explanation",):
            console.print(Panel(str(value), title=key, style="cyan"))
        elif not isinstance(value, (dict, list)):
            console.print(f"[bold]{key}:[/bold] {value}")

    if report.citations:
        console.print("\n[bold]Citations[/bold]")
        for citation in report.citations:
            console.print(f"  • {citation}", highlight=False)


def show_check_log(log_entries):
    """Show the check call log"""
    if not log_entries:
        console.print("No check calls logged yet", style="yellow")
        return

    table = Table(title="Check Call Log")
    table.add_column("Time", style="cyan")
    table.add_column("Server", style="green")
    table.add_column("Tool", style="blue")
    table.add_column("Latency", style="yellow")
    table.add_column("Status", style="magenta")

    for entry in log_entries[-10:]:  # Show last 10 entries
        timestamp = datetime.fromisoformat(entry["timestamp"]).strftime("%H:%M:%S")
        latency = f"{entry['latency_seconds']:.2f}s"
        status = "✅ Success" if entry["success"] else "❌ Failed"
        table.add_row(timestamp, entry["server"], entry["tool"], latency, status)

    Console(stderr=True).print(table)


def emit(ctx: click.Context, build, as_json: bool):
    """Run a report-building callable and exit 0 iff the report passes"""
    if as_json:
        logging.getLogger().setLevel(max(logging.WARNING, logging.getLogger().level))
    try:
        workbench = ctx.obj.get("workbench") if ctx.obj else None
        report = build(workbench)
    except WorkbenchError as e:
        click.echo(f"error: {e.name}: {e}", err=True)
        ctx.exit(1)

    if as_json:
        click.echo(report.to_json())
    else:
        show_report(report)
    if ctx.obj and ctx.obj.get("show_log") and workbench is not None:
        show_check_log(workbench.get_call_log())
    ctx.exit(0 if report.passed else 1)


def _coefficients(ctx, param, value):
    try:
        RatPoly.parse(value)
    except ValueError as e:
        raise click.BadParameter(str(e))
    return value


def _exact(ctx, param, value):
    try:
        to_rational(value)
    except ValueError as e:
        raise click.BadParameter(str(e))
    return value


json_option = click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")


@click.group()
@click.option("--debug", is_flag=True, help="Enable debug logging")
@click.option("--show-log", is_flag=True, help="Print the check call log after the report")
@click.pass_context
def main(ctx, debug, show_log):
    """K3 motive workbench - exact checks of lattice, fibration and motive identities"""
    settings = WorkbenchSettings.from_env()
    logging.getLogger().setLevel(logging.DEBUG if debug else settings.log_level)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings
    ctx.obj["show_log"] = show_log
    if ctx.invoked_subcommand != "selftest":
        ctx.obj["workbench"] = K3Workbench(settings)


@main.command()
@click.option("--name", "names", multiple=True, default=["U"], show_default=True, help="U, E8, E8_MINUS_1 or RANK1")
@click.option("--two-d", type=int, help="L^2 for RANK1")
@click.option("--twist", type=int, help="Multiply the form by m")
@click.option("--literal", help='Gram literal, e.g. \'{"rank": 1, "gram": [[2]]}\'')
@json_option
@click.pass_context
def lattice(ctx, names, two_d, twist, literal, as_json):
    """Invariants and discriminant group of a lattice"""
    emit(ctx, lambda wb: wb.lattice(list(names), two_d, twist, literal), as_json)


@main.group()
def nikulin():
    """Nikulin involutions on the K3 lattice"""


@nikulin.command()
@json_option
@click.pass_context
def verify(ctx, as_json):
    """Verify the H^2 model, the swap involution and the Euler balance"""
    emit(ctx, lambda wb: wb.nikulin_verify(), as_json)


@nikulin.command()
@click.option("--e-x", type=int, default=24, show_default=True)
@click.option("--t", type=int, default=6, show_default=True)
@click.option("--k", type=int, default=8, show_default=True)
@json_option
@click.pass_context
def balance(ctx, e_x, t, k, as_json):
    """Solve e(X) + t + 2 + 2k = 2e(Y)"""
    emit(ctx, lambda wb: wb.run("nikulin balance", "nikulin", "euler_balance", e_X=e_x, t=t, k=k), as_json)


@nikulin.command()
@click.option("--rho", type=int, required=True)
@json_option
@click.pass_context
def trace(ctx, rho, as_json):
    """Split the trace of the involution between NS(X) and T_X"""
    emit(ctx, lambda wb: wb.run("nikulin trace", "nikulin", "ns_trace", rho=rho), as_json)


@main.group()
def ns():
    """Neron-Severi lattices of rank 9"""


@ns.command()
@click.option("--d", "d", type=int, required=True, help="L^2 = 2d")
@json_option
@click.pass_context
def classify(ctx, d, as_json):
    """Candidate Neron-Severi lattices for L^2 = 2d"""
    emit(ctx, lambda wb: wb.ns_classify(d), as_json)


@ns.command()
@click.option("--d", "d", type=int, default=2, show_default=True)
@json_option
@click.pass_context
def pencils(ctx, d, as_json):
    """Elliptic pencils (L + v)/2 and (L - v)/2"""
    emit(ctx, lambda wb: wb.ns_pencils(d), as_json)


@main.group()
def elliptic():
    """Elliptic K3 surfaces with a 2-torsion section"""


@elliptic.command()
@click.option("--a", "a", required=True, callback=_coefficients, help="Ascending rationals, e.g. 0,0,0,0,1")
@click.option("--b", "b", required=True, callback=_coefficients, help="Ascending rationals, e.g. 1,0,0,0,0,0,0,0,1")
@click.option("--quotient", is_flag=True, help="Also analyze the 2-isogeny quotient")
@json_option
@click.pass_context
def analyze(ctx, a, b, quotient, as_json):
    """Fiber table and Shioda-Tate rank of y^2 = x(x^2 + a(t)x + b(t))"""
    emit(ctx, lambda wb: wb.elliptic_analyze(a, b, quotient), as_json)


@elliptic.command()
@click.option("--count", type=int, help="Number of seeded random models (default from settings)")
@json_option
@click.pass_context
def sweep(ctx, count, as_json):
    """Analyze seeded random generic models and their quotients"""
    emit(ctx, lambda wb: wb.elliptic_sweep(count), as_json)


@main.command()
@click.option("--rho", type=int, default=9, show_default=True)
@click.option(
    "--v-gamma", default="-1", show_default=True, callback=_exact, help="Valence of the graph of the involution"
)
@click.option("--p-g", type=int, default=1, show_default=True)
@click.option("--finite-dimensional", is_flag=True, help="Assume h(X) is finite dimensional")
@json_option
@click.pass_context
def motive(ctx, rho, v_gamma, p_g, finite_dimensional, as_json):
    """Chow-Kunneth decomposition, involution algebra and valence outcome"""
    emit(ctx, lambda wb: wb.motive(rho, v_gamma, p_g, finite_dimensional), as_json)


@main.command(name="classify")
@click.option("--descriptor", type=click.Path(exists=True, dir_okay=False), required=True)
@json_option
@click.pass_context
def classify_surface(ctx, descriptor, as_json):
    """Derive conclusions for a surface descriptor (JSON file)"""
    with open(descriptor, encoding="utf-8") as handle:
        payload = handle.read()
    emit(ctx, lambda wb: wb.classify(payload), as_json)


@main.command()
@json_option
@click.pass_context
def selftest(ctx, as_json):
    """Run the full acceptance suite"""
    emit(ctx, lambda _: run_selftest(ctx.obj["settings"]), as_json)


if __name__ == "__main__":
    main()
