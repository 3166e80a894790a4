import re
import sys
from typing import Sequence

import click
from loguru import logger

from floerhp.config import get_knot_db_path, get_log_level, get_selftest_config_path, set_log_level
from floerhp.constants import DEFAULT_PROTECTED_WINDOW, EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from floerhp.errors import FloerHPError
from floerhp.models.casson import casson_invariant, hp_small_knot, hp_two_bridge
from floerhp.models.census import TANGENT_DIMENSIONS, Family, family_census
from floerhp.models.floer import TriangleVerdict, consecutive_triangle_sweep, family_apoly, hp_closed_form, \
    hp_consistency, hp_sharp, limit_rank, limit_rank_sharp, triangle_check
from floerhp.models.graded import GradedGroup
from floerhp.models.knot import KnotDatabase, KnotRecord
from floerhp.models.polys import newton_slopes
from floerhp.models.selftest import run_selftest
from floerhp.models.slope import Slope
from floerhp.utils.enum import EnumFromInput
from floerhp.utils.math import fraction_to_str
from floerhp.utils.serialization import dump_json

LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]
_RANGE_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*$")


class Command(EnumFromInput):
    CASSON = "casson"
    HP = "hp"
    HPSHARP = "hpsharp"
    CENSUS = "census"
    APOLY = "apoly"
    TRIANGLE = "triangle"
    LIMIT = "limit"
    CONSISTENCY = "consistency"
    SELFTEST = "selftest"


class OutputFormat(EnumFromInput):
    TABLE = "table"
    JSON = "json"


class IntegerRange(click.ParamType):
    """
    Inclusive integer range written a..b.
    """
    name = "a..b"

    def convert(self, value, param, ctx):
        if isinstance(value, range):
            return value
        match = _RANGE_PATTERN.match(str(value))
        if match is None:
            self.fail(f"{value!r} is not a range a..b", param, ctx)
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            self.fail(f"empty range {value!r}", param, ctx)
        return range(low, high + 1)


class FloerHPGroup(click.Group):
    """
    Command group translating package errors into exit codes: usage errors exit 64, precondition errors 2, knot
    data errors 3 and internal inconsistencies 4. Structured errors are printed as JSON on stderr.
    """
    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
            code = rv if isinstance(rv, int) else EXIT_OK
        except click.UsageError as e:
            e.show()
            code = EXIT_USAGE
        except click.ClickException as e:
            e.show()
            code = e.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = EXIT_FAILURE
        except FloerHPError as e:
            click.echo(dump_json(e.to_dict()), err=True)
            code = e.exit_code
        if standalone_mode:
            sys.exit(code)
        return code


def _configure_logging(level: str):
    logger.remove()
    logger.add(lambda message: click.echo(message, err=True, nl=False), level=level)


def _emit(output_format: str, data: dict, table: str):
    if OutputFormat.from_input(output_format) == OutputFormat.JSON:
        click.echo(dump_json(data))
    else:
        click.echo(table)


def _load_knot(name: str, db: str | None) -> KnotRecord:
    return KnotDatabase.from_file(db or get_knot_db_path()).get(name)


def _one_of(knot: str | None, family: str | None) -> str:
    if (knot is None) == (family is None):
        raise click.UsageError("Pass exactly one of --knot and --family")
    return "knot" if knot is not None else "family"


def _group_table(g: GradedGroup) -> str:
    if g.is_zero():
        return f"coeff {g.coeff.value}\n(zero group)"
    lines = [f"coeff {g.coeff.value}", f"{'degree':>6}  {'rank':>5}  torsion"]
    for degree in g.degrees:
        torsion = " ".join(f"Z/{order}" for order in g.torsion_at(degree)) or "-"
        lines.append(f"{degree:>6}  {g.rank_at(degree):>5}  {torsion}")
    return "\n".join(lines)


def _verdict_table(verdict: TriangleVerdict) -> str:
    if verdict.compatible:
        return "compatible"
    return "obstructed in degree(s) " + ", ".join(str(d) for d in sorted(verdict.obstruction_degrees, reverse=True))


format_option = click.option(
    "--format", "output_format", type=click.Choice([f.value for f in OutputFormat], case_sensitive=False),
    default=OutputFormat.TABLE.value, show_default=True, help="Output format."
)
db_option = click.option("--db", type=click.Path(dir_okay=False), default=None,
                         help="Knot database (JSON). Defaults to $FLOERHP_DB.")
knot_option = click.option("--knot", default=None, help="Knot name (built-in: trefoil-r, trefoil-l).")
family_option = click.option("--family", type=click.Choice([f.value for f in Family], case_sensitive=False),
                             default=None, help="Connected-sum family.")
slope_option = click.option("--slope", "slope_text", required=True, help="Surgery slope p/q.")


@click.group(cls=FloerHPGroup)
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Diagnostic level on stderr. Defaults to $FLOERHP_LOG_LEVEL.")
def cli(log_level):
    """
    SL(2,C) Casson invariants and sheaf-theoretic Floer cohomology of Dehn surgeries.
    """
    if log_level:
        set_log_level(log_level)
    _configure_logging(get_log_level())


@cli.command(Command.CASSON.value)
@knot_option
@slope_option
@db_option
@format_option
def casson(knot, slope_text, db, output_format):
    """SL(2,C) Casson invariant of a surgery."""
    if knot is None:
        raise click.UsageError("--knot is required")
    s = Slope.from_string(slope_text)
    value = casson_invariant(_load_knot(knot, db), s)
    _emit(output_format, {"knot": knot, "slope": str(s), "casson": value}, str(value))


@cli.command(Command.HP.value)
@knot_option
@family_option
@slope_option
@db_option
@format_option
def hp(knot, family, slope_text, db, output_format):
    """HP of a surgery: over Z for small or two-bridge knots, over F2 for the granny and square families."""
    kind = _one_of(knot, family)
    s = Slope.from_string(slope_text)
    if kind == "family":
        group = hp_closed_form(family, s)
    else:
        record = _load_knot(knot, db)
        group = hp_small_knot(record, s) if record.small or record.two_bridge is None else hp_two_bridge(record, s)
    _emit(output_format, group.to_dict(), _group_table(group))


@cli.command(Command.HPSHARP.value)
@knot_option
@slope_option
@db_option
@format_option
def hpsharp(knot, slope_text, db, output_format):
    """Framed Floer cohomology HP# of a surgery."""
    if knot is None:
        raise click.UsageError("--knot is required")
    group = hp_sharp(_load_knot(knot, db), Slope.from_string(slope_text))
    _emit(output_format, group.to_dict(), _group_table(group))


@cli.command(Command.CENSUS.value)
@family_option
@slope_option
@format_option
def census(family, slope_text, output_format):
    """Components of the character scheme of a granny or square surgery."""
    if family is None:
        raise click.UsageError("--family is required")
    result = family_census(family, Slope.from_string(slope_text))
    lines = [f"{'component':<16}  {'count':>5}  {'dim':>3}  {'tangent':>7}"]
    for component, count in result.counts.items():
        lines.append(f"{component.value:<16}  {count:>5}  {component.dimension:>3}  {TANGENT_DIMENSIONS[component]:>7}")
    _emit(output_format, result.to_dict(), "\n".join(lines))


@cli.command(Command.APOLY.value)
@family_option
@format_option
def apoly(family, output_format):
    """Factored A-polynomial of the granny or square knot, with its Newton-polygon slopes."""
    if family is None:
        raise click.UsageError("--family is required")
    result = family_apoly(family)
    slopes = [fraction_to_str(v) for v in sorted(newton_slopes(result))]
    data = result.to_dict()
    data["newton_slopes"] = slopes
    table = "\n".join([f"A = {result}", f"A_irr = {''.join(f'({f})' for f in result.irreducible)}",
                       f"Newton slopes: {', '.join(slopes)}"])
    _emit(output_format, data, table)


@cli.command(Command.TRIANGLE.value)
@knot_option
@click.option("--slope", "slope_texts", multiple=True, help="Two surgery slopes, lower first.")
@click.option("--window", type=IntegerRange(), default=None, help="Protected degrees a..b (default -1..1).")
@click.option("--sweep", type=IntegerRange(), default=None, help="Check every consecutive pair p, p+1 for p in a..b.")
@db_option
@format_option
def triangle(knot, slope_texts, window, sweep, db, output_format):
    """Rank obstruction to a surgery exact triangle between HP# groups."""
    if knot is None:
        raise click.UsageError("--knot is required")
    if (sweep is None) == (len(slope_texts) == 0) or (slope_texts and len(slope_texts) != 2):
        raise click.UsageError("Pass either two --slope values or --sweep a..b")
    protected = tuple(window) if window is not None else DEFAULT_PROTECTED_WINDOW
    record = _load_knot(knot, db)
    if sweep is not None:
        verdicts = consecutive_triangle_sweep(record, sweep, protected)
        data = {"knot": knot, "pairs": [dict(p=p, **verdict.to_dict()) for p, verdict in verdicts]}
        table = "\n".join(f"{p}/1 -> {p + 1}/1: {_verdict_table(verdict)}" for p, verdict in verdicts)
        _emit(output_format, data, table or "no admissible pair")
        return
    low, high = (Slope.from_string(text) for text in slope_texts)
    verdict = triangle_check(hp_sharp(record, low), hp_sharp(record, high), protected)
    _emit(output_format, verdict.to_dict(), _verdict_table(verdict))


@cli.command(Command.LIMIT.value)
@knot_option
@family_option
@click.option("--degree", type=int, required=True, help="Cohomological degree.")
@click.option("--p", "p", type=int, required=True, help="Fixed surgery numerator.")
@db_option
@format_option
def limit(knot, family, degree, p, db, output_format):
    """Limit of rank/q as q grows with p fixed."""
    if _one_of(knot, family) == "family":
        value = limit_rank(family, degree, p)
    else:
        value = limit_rank_sharp(_load_knot(knot, db), degree, p)
    text = fraction_to_str(value)
    _emit(output_format, {"degree": degree, "p": p, "limit": text}, text)


@cli.command(Command.CONSISTENCY.value)
@family_option
@slope_option
@format_option
def consistency(family, slope_text, output_format):
    """Closed-form HP against the census assembly, with the per-degree difference."""
    if family is None:
        raise click.UsageError("--family is required")
    report = hp_consistency(family, Slope.from_string(slope_text))
    delta = report.nonzero_delta()
    lines = ["closed:", _group_table(report.closed), "assembled:", _group_table(report.assembled),
             "delta: " + (", ".join(f"{d}: {v:+d}" for d, v in sorted(delta.items(), reverse=True)) or "none")]
    _emit(output_format, report.to_dict(), "\n".join(lines))


@cli.command(Command.SELFTEST.value)
@click.option("--quick", is_flag=True, help="Reduced sweep ranges.")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="YAML override of the sweep ranges. Defaults to $FLOERHP_SELFTEST_CONFIG.")
@format_option
def selftest(quick, config_path, output_format):
    """Run every acceptance sweep; exits nonzero on any failure."""
    report = run_selftest(quick=quick, config_filepath=config_path or get_selftest_config_path())
    lines = []
    for suite in report.suites:
        lines.append(f"{'PASS' if suite.passed else 'FAIL'}  {suite.name} ({suite.checked} checks)")
        lines.extend(f"      {failure}" for failure in suite.failures[:10])
        lines.extend(f"      {note}" for note in suite.notes)
    _emit(output_format, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILURE


def run(argv: Sequence[str]) -> int:
    """
    Run the command line on an argument list.

    Returns:
        the exit code.
    """
    return cli.main(args=list(argv), prog_name="floerhp", standalone_mode=False)


def main():
    sys.exit(run(sys.argv[1:]))
