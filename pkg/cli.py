# cli.py
"""
Linha de comando: base de Young, expansão/síntese, influências, espectros,
ruído, juntas e as suítes de verificação.

    python cli.py expand --slice 4 2 --input data/x1_4_2.json
"""
import logging
import os
import sys
import traceback
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

import click
import polars as pl

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from combinatorics import c_coefficient, companion_sequence, enumerate_top_sets
from config import Settings, load_settings
from errors import InvalidInputError, VerificationError
from expansion import SliceFunction, expand, synthesize
from friedgut import junta_approximate, junta_for_epsilon
from function_files import (
    expansion_to_dict,
    format_rational,
    function_to_dict,
    junta_to_dict,
    load_expansion,
    load_function,
    noise_to_dict,
    parse_rational,
    write_document,
)
from operators import (
    IntersectionProfile,
    influence_pair,
    influence_spectral,
    noise,
    scheme_spectrum,
    total_influence_m,
)
from poly import chi_top
from verification import SUITES, VerificationRunner

FORMATS = ("table", "csv", "json")
PROFILES = {
    "johnson": IntersectionProfile.johnson,
    "kneser": IntersectionProfile.kneser,
    "identity": IntersectionProfile.identity,
    "transpositions": IntersectionProfile.transpositions,
}


def handle_error(error: Exception, debug: bool) -> None:
    """Erros de entrada saem com código 2; falhas de verificação e o resto, com 1."""
    if debug:
        traceback.print_exc()
    else:
        click.echo(f"❌ {error}", err=True)
    sys.exit(2 if isinstance(error, InvalidInputError) else 1)


def render_frame(frame: pl.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return frame.write_csv()
    if fmt == "json":
        return frame.write_json()
    with pl.Config(tbl_rows=-1, tbl_cols=-1, fmt_str_lengths=200):
        return str(frame)


def emit(text: str, output: Optional[Path]):
    if output is None:
        click.echo(text, nl=False)
    else:
        click.echo(f"💾 Resultado salvo em {output}", err=True)


def _check_slice(f, expected: Optional[Tuple[int, int]]):
    if expected and (f.n, f.k) != tuple(expected):
        raise InvalidInputError(f"Arquivo na fatia ({f.n},{f.k}), mas --slice pede {expected[0]} {expected[1]}")


def _rational(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_rational(value)
    except InvalidInputError as e:
        raise click.BadParameter(str(e)) from e


# ---------------------------------------------
# Grupo
# ---------------------------------------------
@click.group()
@click.option("--debug", is_flag=True, help="Mostra o traceback completo em caso de erro")
@click.pass_context
def cli(ctx: click.Context, debug: bool):
    """Base ortogonal de Young para funções na fatia do hipercubo."""
    ctx.ensure_object(dict)
    try:
        settings = load_settings()
    except InvalidInputError as e:
        handle_error(e, debug)
    logging.basicConfig(
        level="DEBUG" if debug else settings.log_level,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
        force=True,
    )
    ctx.obj["debug"] = debug
    ctx.obj["settings"] = settings


# ---------------------------------------------
# Comandos
# ---------------------------------------------
@cli.command()
@click.option("--n", "n", required=True, type=click.IntRange(min=1))
@click.option("--d", "d", required=True, type=click.IntRange(min=0))
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True)
@click.option("--polynomials", is_flag=True, help="Inclui χ_B expandido")
def basis(n: int, d: int, fmt: str, polynomials: bool):
    """Lista ℬ_{n,d} com φ(B) e c_B."""
    if 2 * d > n:
        raise click.BadParameter(f"d = {d} excede n/2 = {n / 2}", param_hint="--d")
    rows = []
    for B in enumerate_top_sets(n, d):
        row = {"top_set": str(B), "companion": str(companion_sequence(B)), "c_B": format_rational(c_coefficient(B))}
        if polynomials:
            row["chi_B"] = str(chi_top(B))
        rows.append(row)
    columns = ["top_set", "companion", "c_B"] + (["chi_B"] if polynomials else [])
    frame = pl.DataFrame(rows, schema={c: pl.Utf8 for c in columns})
    click.echo(render_frame(frame, fmt).rstrip("\n"))


@cli.command("expand")
@click.option("--slice", "slice_", nargs=2, type=int, default=None, help="N K esperados no arquivo")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def expand_command(ctx: click.Context, slice_, input_path: Path, output: Optional[Path]):
    """FunctionFile -> ExpansionFile."""
    try:
        f = load_function(input_path)
        _check_slice(f, slice_)
        emit(write_document(expansion_to_dict(expand(f)), output), output)
    except Exception as e:
        handle_error(e, ctx.obj["debug"])


@cli.command("synthesize")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def synthesize_command(ctx: click.Context, input_path: Path, output: Optional[Path]):
    """ExpansionFile -> FunctionFile."""
    try:
        expansion = load_expansion(input_path)
        emit(write_document(function_to_dict(synthesize(expansion)), output), output)
    except Exception as e:
        handle_error(e, ctx.obj["debug"])


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--m", "m", type=int, default=None, help="Influência total Inf^m (padrão: m = n)")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def influence(ctx: click.Context, input_path: Path, m: Optional[int], output: Optional[Path]):
    """Influências Inf_ij, Inf^m combinatória e espectral."""
    try:
        f = load_function(input_path)
        m = f.n if m is None else m
        pairs = [
            {"i": i, "j": j, "value": format_rational(influence_pair(f, i, j))}
            for i in range(1, f.n + 1)
            for j in range(i + 1, f.n + 1)
        ]
        combinatorial = total_influence_m(f, m)
        spectral = influence_spectral(expand(f), m)
        if combinatorial != spectral:
            raise VerificationError(f"Inf^{m} combinatória {combinatorial} ≠ espectral {spectral}")
        document = {
            "n": f.n,
            "k": f.k,
            "m": m,
            "pairs": pairs,
            "total_influence": format_rational(combinatorial),
        }
        emit(write_document(document, output), output)
    except Exception as e:
        handle_error(e, ctx.obj["debug"])


def _parse_profile(n: int, k: int, raw: str) -> IntersectionProfile:
    name = raw.strip().lower()
    if name in PROFILES:
        return PROFILES[name](n, k)
    return IntersectionProfile(n, k, tuple(parse_rational(w.strip()) for w in raw.split(",")))


@cli.command()
@click.option("--slice", "slice_", nargs=2, type=int, required=True, help="N K")
@click.option("--profile", required=True, help="w0,...,wk ou johnson|kneser|identity|transpositions")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True)
@click.pass_context
def spectrum(ctx: click.Context, slice_, profile: str, fmt: str):
    """Autovalores por grau de uma matriz da álgebra de Bose–Mesner."""
    try:
        n, k = slice_
        rows = scheme_spectrum(_parse_profile(n, k, profile), check_all=True)
        frame = pl.DataFrame(
            {
                "degree": [r.degree for r in rows],
                "eigenvalue": [format_rational(r.eigenvalue) for r in rows],
                "multiplicity": [r.multiplicity for r in rows],
            }
        )
        click.echo(render_frame(frame, fmt).rstrip("\n"))
    except Exception as e:
        handle_error(e, ctx.obj["debug"])


@cli.command("noise")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--t", "t", required=True, type=float)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def noise_command(ctx: click.Context, input_path: Path, t: float, output: Optional[Path]):
    """H_t f (saída em ponto flutuante)."""
    try:
        settings: Settings = ctx.obj["settings"]
        f = load_function(input_path)
        document = noise_to_dict(noise(expand(f), t), t, settings.noise_digits)
        emit(write_document(document, output), output)
    except Exception as e:
        handle_error(e, ctx.obj["debug"])


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--tau", callback=_rational, help="Limiar τ (racional)")
@click.option("--eps", callback=_rational, help="Distância alvo ε; varre τ")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def junta(ctx: click.Context, input_path: Path, tau: Optional[Fraction], eps: Optional[Fraction], output: Optional[Path]):
    """Aproxima f booleana por uma junta."""
    if (tau is None) == (eps is None):
        raise click.UsageError("Informe exatamente um entre --tau e --eps")
    try:
        settings: Settings = ctx.obj["settings"]
        f: SliceFunction = load_function(input_path)
        if tau is not None:
            report = junta_approximate(f, tau)
        else:
            report = junta_for_epsilon(f, eps, settings.junta_tau_ratio, settings.junta_tau_steps)
        emit(write_document(junta_to_dict(report), output), output)
    except Exception as e:
        handle_error(e, ctx.obj["debug"])


@cli.command()
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@click.option("--max-n", "max_n", type=click.IntRange(min=2), default=None, help="Padrão: YOUNG_VERIFY_MAX_N")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True)
@click.option("--progress/--no-progress", default=True)
@click.pass_context
def verify(ctx: click.Context, suite: str, max_n: Optional[int], fmt: str, progress: bool):
    """Roda as suítes de verificação; código 1 se alguma propriedade falhar."""
    settings: Settings = ctx.obj["settings"]
    try:
        runner = VerificationRunner(
            max_n=max_n or settings.verify_max_n,
            seed=settings.seed,
            random_functions=settings.random_functions,
            boolean_functions=settings.boolean_functions,
            show_progress=progress,
        )
        frame = runner.run(SUITES if suite == "all" else (suite,))
    except Exception as e:
        handle_error(e, ctx.obj["debug"])
    click.echo(render_frame(frame, fmt).rstrip("\n"))
    if not runner.all_passed:
        click.echo(f"❌ {frame.filter(~pl.col('passed')).height} propriedade(s) falharam", err=True)
        sys.exit(1)
    click.echo("✅ Todas as propriedades confirmadas", err=True)


if __name__ == "__main__":
    cli()
