"""Command-line entry point.

Exit codes: 0 ok, 2 parse error, 3 missing data, 4 precision exhausted,
5 precondition violated, 6 internal consistency check failed. Every option can
also be set through an environment variable ``SIEGELSIGNS_<OPTION>`` (group
options) or ``SIEGELSIGNS_<COMMAND>_<OPTION>`` (command options).
"""

from __future__ import annotations

import functools
import sys
from fractions import Fraction

import click

from . import report
from .eigenform import load_eigenform, serialize_eigenform
from .errors import ParseError, SiegelSignsError
from .fourier import RayIndex
from .pairs import ZeroPolicy
from .report import RunConfig
from .spinor import SpinorForm
from .synthetic import build_synthetic_eigenform, sk_lift

ENV_PREFIX = "SIEGELSIGNS"


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SiegelSignsError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)

    return wrapper


def _load(path):
    try:
        return load_eigenform(path)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _emit(ctx: click.Context, text: str) -> None:
    out = ctx.obj["out"]
    if out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


@click.group(context_settings={"auto_envvar_prefix": ENV_PREFIX})
@click.option("--precision", type=click.IntRange(min=64), default=192, show_default=True,
              help="Mantissa bits for all analytic computations.")
@click.option("--tol-roundtrip", type=float, default=1e-20, show_default=True)
@click.option("--tol-classify", type=float, default=1e-12, show_default=True)
@click.option("--tol-degree", type=float, default=1e-18, show_default=True)
@click.option("--seed", type=int, default=None, help="RNG seed (required by synth).")
@click.option("--out", default="-", show_default=True, help="Output path; '-' for stdout.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes for per-prime jobs.")
@click.pass_context
def main(ctx, precision, tol_roundtrip, tol_classify, tol_degree, seed, out, jobs):
    """Hecke eigenvalue, Satake parameter and sign analytics for degree-2 Siegel eigenforms."""
    for name, tol in (("tol-roundtrip", tol_roundtrip), ("tol-classify", tol_classify),
                      ("tol-degree", tol_degree)):
        if not tol > 0:
            raise click.BadParameter("must be positive", param_hint=f"--{name}")
    ctx.obj = {
        "config": RunConfig(precision, tol_roundtrip, tol_classify, tol_degree, seed, jobs),
        "out": out,
    }


@main.command()
@click.argument("form", type=click.Path(exists=True, dir_okay=False))
@click.option("--prime", "-p", "primes", type=int, multiple=True,
              help="Prime(s) to solve at; default all primes in the file.")
@click.pass_context
@_handle_errors
def satake(ctx, form, primes):
    """Satake parameters, classification and residuals per prime."""
    cfg: RunConfig = ctx.obj["config"]
    data = _load(form)
    plist = report.local_primes(data, primes)
    jobs = [(data, p, cfg.ctx) for p in plist]
    for p in plist:
        if p not in data:
            SpinorForm(data, cfg.ctx).satake(p)  # raises MissingPrimeError
    rows = [row for block in report.ordered_map(report.satake_rows, jobs, cfg.jobs) for row in block]
    echo = cfg.echo("satake", form=data.label, primes=";".join(map(str, plist)))
    _emit(ctx, report.render_csv(echo, report.SATAKE_COLUMNS, rows))


@main.command()
@click.argument("form_f", type=click.Path(exists=True, dir_okay=False))
@click.argument("form_g", type=click.Path(exists=True, dir_okay=False))
@click.option("--prime", "-p", "primes", type=int, multiple=True, required=True)
@click.option("--depth", "-R", type=click.IntRange(min=32), default=64, show_default=True)
@click.pass_context
@_handle_errors
def pair(ctx, form_f, form_g, primes, depth):
    """Hadamard local series, g_p numerator, distinctness and sign changes."""
    cfg: RunConfig = ctx.obj["config"]
    F, G = _load(form_f), _load(form_g)
    for p in primes:
        SpinorForm(F, cfg.ctx).satake(p)
        SpinorForm(G, cfg.ctx).satake(p)
    jobs = [(F, G, p, depth, cfg.ctx) for p in primes]
    rows = [row for block in report.ordered_map(report.pair_rows, jobs, cfg.jobs) for row in block]
    echo = cfg.echo("pair", F=F.label, G=G.label, primes=";".join(map(str, primes)), depth=depth)
    _emit(ctx, report.render_csv(echo, report.PAIR_COLUMNS, rows))


@main.command()
@click.argument("form_f", type=click.Path(exists=True, dir_okay=False))
@click.argument("form_g", type=click.Path(exists=True, dir_okay=False))
@click.option("--x", "X", type=click.IntRange(min=1), required=True)
@click.option("--zero-policy", type=click.Choice([z.value for z in ZeroPolicy]),
              default=ZeroPolicy.STRICT.value, show_default=True)
@click.pass_context
@_handle_errors
def density(ctx, form_f, form_g, X, zero_policy):
    """Proportion of n <= X where the signs of lambda_F(n) and lambda_G(n) differ."""
    cfg: RunConfig = ctx.obj["config"]
    F, G = SpinorForm(_load(form_f), cfg.ctx), SpinorForm(_load(form_g), cfg.ctx)
    rows = report.density_rows(F, G, X, ZeroPolicy(zero_policy))
    echo = cfg.echo("density", F=F.label, G=G.label, X=X, zero_policy=zero_policy)
    _emit(ctx, report.render_csv(echo, report.DENSITY_COLUMNS, rows))


@main.command()
@click.argument("forms", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["squares", "exceptional"]), default="squares",
              show_default=True)
@click.option("--bound", "P", type=click.IntRange(min=2), required=True,
              help="Prime bound for the elements of B.")
@click.option("--x", "x", type=click.IntRange(min=1), required=True)
@click.option("--p0", type=int, default=None, help="Excluded prime (exceptional mode).")
@click.option("--depth", type=click.IntRange(min=1), default=20, show_default=True,
              help="Largest exponent t searched for a negative product.")
@click.pass_context
@_handle_errors
def bfree(ctx, forms, mode, P, x, p0, depth):
    """Sieve B-free numbers: prime squares, or the exceptional set of a pair."""
    cfg: RunConfig = ctx.obj["config"]
    if mode == "squares":
        if forms:
            raise click.UsageError("squares mode takes no forms")
        rows = report.bfree_squares_rows(P, x)
        echo = cfg.echo("bfree", mode=mode, bound=P, x=x)
    else:
        if len(forms) != 2:
            raise click.UsageError("exceptional mode needs exactly two forms")
        F, G = (SpinorForm(_load(f), cfg.ctx) for f in forms)
        rows = report.bfree_exceptional_rows(F, G, P, x, p0, depth)
        echo = cfg.echo("bfree", mode=mode, F=F.label, G=G.label, bound=P, x=x,
                        p0=p0, depth=depth)
    _emit(ctx, report.render_csv(echo, report.BFREE_COLUMNS, rows))


@main.command()
@click.option("--weight", "-k", type=click.IntRange(min=4), required=True)
@click.option("--bound", "P", type=click.IntRange(min=2), required=True)
@click.option("--min-gap", type=click.FloatRange(min=0), default=0.0, show_default=True)
@click.option("--label", default=None)
@click.pass_context
@_handle_errors
def synth(ctx, weight, P, min_gap, label):
    """Write a synthetic tempered eigenform file."""
    cfg: RunConfig = ctx.obj["config"]
    if cfg.seed is None:
        raise click.UsageError("synth requires --seed")
    data = build_synthetic_eigenform(cfg.seed, weight, P, min_gap, cfg.ctx, label)
    _emit(ctx, serialize_eigenform(data))


@main.command("sk-lift")
@click.option("--weight", "-k", type=int, required=True,
              help="Siegel weight k; lifts the weight 2k-2 elliptic eigenform.")
@click.option("--bound", "P", type=click.IntRange(min=2), required=True)
@click.option("--label", default=None)
@click.pass_context
@_handle_errors
def sk_lift_cmd(ctx, weight, P, label):
    """Write the Saito-Kurokawa lift eigenform file."""
    _emit(ctx, serialize_eigenform(sk_lift(weight, P, label)))


@main.command()
@click.argument("form_f", type=click.Path(exists=True, dir_okay=False))
@click.argument("form_g", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--t0", nargs=3, type=int, required=True, metavar="A B C",
              help="T0 = [[A, B/2], [B/2, C]].")
@click.option("--x", "X", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--a-t0", "a_t0", default="1", show_default=True,
              help="A(T0) as an exact rational.")
@click.option("--prime", "-p", type=int, default=None, help="Prime for the pair report.")
@click.option("--depth", "-R", type=click.IntRange(min=0), default=64, show_default=True)
@click.pass_context
@_handle_errors
def ray(ctx, form_f, form_g, t0, X, a_t0, prime, depth):
    """Fourier coefficients A(nT0), or with a second form the sign report along p^r T0."""
    cfg: RunConfig = ctx.obj["config"]
    idx = RayIndex(*t0)
    F = SpinorForm(_load(form_f), cfg.ctx)
    if form_g is None:
        try:
            a = Fraction(a_t0)
        except (ValueError, ZeroDivisionError):
            raise click.BadParameter(f"not a rational: {a_t0!r}", param_hint="--a-t0")
        rows = report.ray_rows(F, idx, X, a)
        echo = cfg.echo("ray", F=F.label, t0="{} {} {}".format(*t0), X=X, a_t0=a_t0)
        _emit(ctx, report.render_csv(echo, report.RAY_COLUMNS, rows))
        return
    if prime is None:
        raise click.UsageError("a pair ray report needs --prime")
    G = SpinorForm(_load(form_g), cfg.ctx)
    rows = report.ray_pair_rows(F, G, idx, prime, depth)
    echo = cfg.echo("ray", F=F.label, G=G.label, t0="{} {} {}".format(*t0), p=prime, depth=depth)
    _emit(ctx, report.render_csv(echo, report.RAY_PAIR_COLUMNS, rows))


if __name__ == "__main__":
    main()
