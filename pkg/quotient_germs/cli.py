#!/usr/bin/env python3
"""
CLI interface for quotient_germs.
"""

import sys

import click

from . import __version__
from .config import CONFIG_FILES, OUTPUT_FORMATS, Config, RunConfig
from .core import EXIT_FAILED, EXIT_INPUT, run
from .logger import reset_logger, set_log_level, setup_logger
from .quotient_catalog import Family


@click.group()
@click.version_option(version=__version__)
@click.option('--config', '-c', type=click.Path(exists=True), help='Path to a YAML configuration file')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), default=None,
              help='human tables or machine JSON')
@click.option('--jobs', '-j', type=click.IntRange(min=1), default=None, help='Worker processes for sweeps')
@click.option('--seed', type=int, default=None, help='Seed for random boundaries and property checks')
@click.pass_context
def cli(ctx, config, verbose, output_format, jobs, seed):
    """quotient-germs - fundamental cycles and log discrepancies of quotient surface germs."""
    ctx.ensure_object(dict)
    reset_logger()
    setup_logger(verbose=verbose)
    loaded = Config.load(config)
    level = loaded.get_nested('logging.level')
    if level and not verbose:
        set_log_level(level)
    ctx.obj['config'] = loaded
    ctx.obj['verbose'] = verbose
    ctx.obj['overrides'] = {'output_format': output_format, 'jobs': jobs, 'seed': seed}


def _dispatch(ctx, subcommand, inputs=(), options=None, **settings):
    """Build the RunConfig for one subcommand, run it and exit with its status."""
    overrides = dict(ctx.obj['overrides'])
    overrides.update(settings)
    try:
        run_config = RunConfig.from_sources(
            ctx.obj['config'], subcommand=subcommand, inputs=list(inputs), options=options or {}, **overrides
        )
    except ValueError as e:
        click.echo(f"❌ {subcommand}: InvalidConfig: {e}", err=True)
        sys.exit(EXIT_INPUT)
    sys.exit(run(run_config))


def sweep_options(func):
    func = click.option('--max-b', type=click.IntRange(min=2), default=None, help='Largest central weight b')(func)
    func = click.option('--max-n', type=click.IntRange(min=2), default=None, help='Largest n for cyclic and dihedral germs')(func)
    return func


@cli.command()
@click.argument('family', type=click.Choice([f.value for f in Family]))
@click.option('--n', type=int, default=None, help='n for cyclic and dihedral germs')
@click.option('--q', type=int, default=None, help='q for cyclic and dihedral germs')
@click.option('--m', type=int, default=None, help='m for tetrahedral, octahedral and icosahedral germs')
@click.option('--output', '-o', type=click.Path(), default=None, help='Also write the graph file here')
@click.pass_context
def catalog(ctx, family, n, q, m, output):
    """Build the resolution graph of a catalog germ."""
    _dispatch(ctx, 'catalog', options={'family': family, 'n': n, 'q': q, 'm': m, 'output': output})


@cli.command()
@click.argument('graph_file', type=click.Path())
@click.option('--oracle', is_flag=True, help='Use the brute-force minimum instead of Laufer')
@click.option('--bound', type=click.IntRange(min=1), default=None, help='Coefficient bound for --oracle')
@click.option('--policy', default='lowest', help='lowest, highest or random:<seed>')
@click.option('--start', type=int, default=None, help='Start vertex for Laufer')
@click.pass_context
def fundcycle(ctx, graph_file, oracle, bound, policy, start):
    """Fundamental cycle of a graph file."""
    _dispatch(ctx, 'fundcycle', [graph_file],
              {'oracle': oracle, 'bound': bound, 'policy': policy, 'start': start})


@cli.command('sweep-6e')
@sweep_options
@click.pass_context
def sweep_6e(ctx, max_n, max_b):
    """Largest fundamental-cycle coefficient across the catalog."""
    _dispatch(ctx, 'sweep-6e', max_n=max_n, max_b=max_b)


@cli.command('verify-tables')
@click.pass_context
def verify_tables(ctx):
    """Compare computed fundamental cycles with the transcribed tables."""
    _dispatch(ctx, 'verify-tables')


@cli.command()
@click.argument('germ_file', type=click.Path())
@click.pass_context
def discrepancy(ctx, germ_file):
    """Log pullback coefficients and log discrepancies of a germ file."""
    _dispatch(ctx, 'discrepancy', [germ_file])


@cli.command()
@click.argument('germ_file', type=click.Path())
@click.pass_context
def mld(ctx, germ_file):
    """Minimal log discrepancy over the point."""
    _dispatch(ctx, 'mld', [germ_file])


@cli.command('lct-max-ideal')
@click.argument('germ_file', type=click.Path())
@click.pass_context
def lct_max_ideal(ctx, germ_file):
    """lc threshold of the maximal ideal."""
    _dispatch(ctx, 'lct-max-ideal', [germ_file])


@cli.command('check-surface-bound')
@click.argument('germ_file', type=click.Path(), required=False)
@click.option('--sweep', is_flag=True, help='Sweep the catalog with random lc boundaries')
@click.option('--samples', type=click.IntRange(min=0), default=None, help='Random boundaries per germ')
@sweep_options
@click.pass_context
def check_surface_bound(ctx, germ_file, sweep, samples, max_n, max_b):
    """Check lct(m) >= mld^2/24 on a germ file or across the catalog."""
    if not sweep and not germ_file:
        click.echo("❌ check-surface-bound needs a germ file or --sweep", err=True)
        sys.exit(EXIT_INPUT)
    _dispatch(ctx, 'check-surface-bound', [germ_file] if germ_file else [], {'sweep': sweep},
              samples=samples, max_n=max_n, max_b=max_b)


@cli.command('monomial-mld')
@click.option('--lambda', 'lam', required=True, help='Coefficient as p/q')
@click.option('--exponents', required=True, help='Monomials as "a,b;a,b;..."')
@click.pass_context
def monomial_mld(ctx, lam, exponents):
    """mld at the origin of the plane with a monomial boundary."""
    _dispatch(ctx, 'monomial-mld', options={'lambda': lam, 'exponents': exponents})


@cli.command('monomial-lct')
@click.option('--exponents', required=True, help='Monomials as "a,b;a,b;..."')
@click.pass_context
def monomial_lct(ctx, exponents):
    """lc threshold of a monomial curve."""
    _dispatch(ctx, 'monomial-lct', options={'exponents': exponents})


@cli.command()
@click.option('--m', type=click.IntRange(min=1), default=None, help='A single member of the family')
@click.option('--max-m', type=click.IntRange(min=1), default=None, help='Run m = 1..max-m')
@click.pass_context
def example18(ctx, m, max_m):
    """mld and the 1/m^2 threshold for x^m + y^(m+1) with coefficient (2m-1)/m^2."""
    _dispatch(ctx, 'example18', options={'m': m}, max_m=max_m)


@cli.command('property-suite')
@sweep_options
@click.option('--max-m', type=click.IntRange(min=1), default=None, help='Largest m of the sharpness family')
@click.option('--oracle-max-n', type=click.IntRange(min=2), default=None,
              help='Largest n for oracle comparisons (default: --max-n)')
@click.pass_context
def property_suite(ctx, max_n, max_b, max_m, oracle_max_n):
    """Seeded property checks against brute force and exact identities."""
    _dispatch(ctx, 'property-suite', options={'oracle_max_n': oracle_max_n},
              max_n=max_n, max_b=max_b, max_m=max_m)


@cli.command('init-config')
@click.argument('path', type=click.Path(), default=CONFIG_FILES[0])
@click.pass_context
def init_config(ctx, path):
    """Write a configuration file holding every default."""
    if not ctx.obj['config'].create_default_config(path):
        sys.exit(EXIT_FAILED)
    click.echo(f"✅ Wrote {path}")


if __name__ == '__main__':
    cli()
