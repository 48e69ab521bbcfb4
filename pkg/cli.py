"""
Command Line Interface for smoothed Pareto-set experiments.

Author: Grigor Crandon
"""

import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import click

from src.bounds.estimator import DEFAULT_TRIALS, constant_box, estimate_hypercube_prob, random_full_rank, step_box
from src.checks.detector import CheckContext, CheckManager
from src.checks.properties import default_checks
from src.data.generator import FAMILIES, InstanceFamily, InstanceGenerator
from src.densities.perturbation import DENSITY_FAMILIES, make_density
from src.errors import ConfigError, InvariantViolation, ModelError, ParetoSmoothError
from src.experiments.config import FORMATS, ExperimentConfig
from src.experiments.moments import sample_counts
from src.experiments.path_trade import path_trade_experiment
from src.experiments.sweep import bound_variants, sweep as run_sweep
from src.experiments.tail import concentration_tail
from src.model.instance import Instance
from src.pareto.counting import ENGINES, pareto_set
from src.reporting.export import write_report
from src.reporting.stats import CellSummary, ExperimentReport, run_metadata
from src.reporting.violations import ViolationSummary
from src.solutions.paths import ASGraph
from src.utils.seeds import trial_rng

EXIT_INVARIANT = 2
EXIT_CONFIG = 3
EXIT_ERROR = 1


class ParetoSmoothGroup(click.Group):
    """Maps package errors to exit codes: 2 invariant violation, 3 config error, 1 anything else."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except InvariantViolation as exc:
            click.echo(f"Invariant violation: {exc}", err=True)
            ctx.exit(EXIT_INVARIANT)
        except ConfigError as exc:
            click.echo(f"Configuration error: {exc}", err=True)
            ctx.exit(EXIT_CONFIG)
        except ParetoSmoothError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(EXIT_ERROR)


def _parse_ints(text: Optional[str]) -> Optional[list]:
    if text is None:
        return None
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _parse_floats(text: Optional[str]) -> Optional[list]:
    if text is None:
        return None
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _read_json(path: str) -> Dict[str, Any]:
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path} is not valid JSON: {exc}") from None


def load_instance(path: str) -> Tuple[Instance, Optional[list]]:
    """Instance and partition from a `generate` output file or a bare instance description."""
    data = _read_json(path)
    partition = None
    if 'instance' in data:
        partition = data.get('partition')
        data = data['instance']
    return Instance.from_dict(data), partition


def _emit(ctx: click.Context, text: str):
    """Write to --out when given, echo otherwise."""
    out = ctx.obj['config'].out
    if out:
        target = Path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding='utf-8')
        click.echo(f"Saved to {out}")
    else:
        click.echo(text)


def _export(ctx: click.Context, report):
    cfg = ctx.obj['config']
    click.echo(report.format_report())
    if cfg.out:
        write_report(report, cfg.out, cfg.format)
        click.echo(f"\n{report.kind} report saved to {cfg.out}")


@click.group(cls=ParetoSmoothGroup)
@click.option('--seed', type=int, default=None, help='Master seed (default: config value, 0)')
@click.option('--trials', type=int, default=None, help='Trials per cell')
@click.option('--engine', type=click.Choice(ENGINES), default=None, help='Pareto engine')
@click.option('--out', type=str, default=None, help='Output file')
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default=None, help='Report format')
@click.option('--config', 'config_path', type=str, default=None, help='YAML/JSON experiment configuration')
@click.option('-v', '--verbose', is_flag=True, help='Debug logging')
@click.pass_context
def cli(ctx, seed, trials, engine, out, fmt, config_path, verbose):
    """Smoothed analysis toolkit for multiobjective Pareto sets."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    base = ExperimentConfig.from_file(config_path) if config_path else ExperimentConfig()
    ctx.ensure_object(dict)
    ctx.obj['config'] = base.with_overrides(seed=seed, trials=trials, engine=engine, out=out, format=fmt)
    ctx.obj['trials_given'] = trials is not None


@cli.command()
@click.option('--family', type=click.Choice(FAMILIES), default=None, help='Instance family')
@click.option('-n', 'n', type=int, default=None, help='Number of variables')
@click.option('-d', 'd', type=int, default=None, help='Number of perturbed objectives')
@click.option('--density', type=click.Choice(DENSITY_FAMILIES), default=None)
@click.option('--phi', type=float, default=None, help='Density bound')
@click.option('-m', 'm', type=int, default=None, help='Solutions of explicit families')
@click.option('--block-sizes', type=str, default=None, help='Comma-separated |P_k| for zp families')
@click.option('--trial', type=int, default=0, help='Trial index of the draw')
@click.pass_context
def generate(ctx, family, n, d, density, phi, m, block_sizes, trial):
    """Emit one seeded instance as JSON."""
    cfg = ctx.obj['config']
    spec = InstanceFamily(name=family or cfg.family, n=n or cfg.n_values[0], d=d or cfg.d,
                          density=density or cfg.density, phi=phi or cfg.phi_values[0],
                          m=m if m is not None else cfg.m,
                          block_sizes=_parse_ints(block_sizes) or cfg.block_sizes,
                          max_resamples=cfg.max_resamples)
    generated = InstanceGenerator(spec).generate(cfg.seed, 0, trial)
    payload = generated.to_dict()
    payload['metadata'].update({'seed': cfg.seed, 'trial': trial, 'family_config': spec.to_dict()})
    _emit(ctx, json.dumps(payload, indent=2))


@cli.command()
@click.argument('instance_file')
@click.pass_context
def pareto(ctx, instance_file):
    """Enumerate and count the Pareto set of one instance."""
    cfg = ctx.obj['config']
    instance, _ = load_instance(instance_file)
    front = pareto_set(instance, engine=cfg.engine, workers=cfg.workers, cap=cfg.cap)
    click.echo(f"PO = {front.count}")
    if cfg.format == 'json':
        text = json.dumps({'count': front.count,
                           'members': [{'solution': str(s), 'objectives': v.to_dict()} for s, v in front]},
                          indent=2)
    else:
        text = front.to_dataframe().to_csv(index=False, float_format='%.17g')
    _emit(ctx, text)


@cli.command('witness-check')
@click.argument('instance_file')
@click.option('--partition', type=str, default=None,
              help='JSON list of blocks; zero-preserving checks run when a partition is known')
@click.option('--eps', type=float, default=None, help='Grid width (default: working epsilon)')
@click.pass_context
def witness_check(ctx, instance_file, partition, eps):
    """Run the witness property checks on one instance; exit 2 on any violation."""
    cfg = ctx.obj['config']
    instance, stored = load_instance(instance_file)
    if partition is not None:
        try:
            stored = json.loads(partition)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--partition is not valid JSON: {exc}") from None
    context = CheckContext(instance, partition=stored, eps=eps, seed=cfg.seed, engine=cfg.engine)
    manager = CheckManager(default_checks(zero_preserving=context.partition is not None))
    manager.run(context)
    summary = ViolationSummary(manager.results)
    summary.add_violations(manager.get_all_violations())
    click.echo(f"Pareto-optimal solutions checked: {len(context.pareto)}  (eps = {context.eps:g})")
    click.echo(summary.format_summary())
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps(summary.generate_summary(), indent=2), encoding='utf-8')
    manager.raise_for_violations()


@cli.command()
@click.option('-n', 'n', type=int, default=None)
@click.option('--phi', type=float, default=None)
@click.option('-c', 'c', type=int, default=None, help='Moment order')
@click.pass_context
def moments(ctx, n, phi, c):
    """Estimate E[PO^c] for one (n, phi) cell."""
    cfg = ctx.obj['config'].with_overrides(c=c)
    started = time.time()
    n = n or cfg.n_values[0]
    phi = phi or cfg.phi_values[0]
    estimate = sample_counts(cfg, n, phi)
    first, moment = bound_variants(cfg)
    cell = CellSummary.from_estimate(estimate, cfg.c, cfg.d, first, moment)
    _export(ctx, ExperimentReport('moments', [cell], [], run_metadata(cfg.to_dict(), started)))


@cli.command()
@click.option('--n-values', type=str, default=None, help='Comma-separated n grid')
@click.option('--phi-values', type=str, default=None, help='Comma-separated phi grid')
@click.pass_context
def sweep(ctx, n_values, phi_values):
    """Evaluate an (n, phi) grid and fit growth exponents."""
    cfg = ctx.obj['config'].with_overrides(n_values=_parse_ints(n_values),
                                           phi_values=_parse_floats(phi_values))
    _export(ctx, run_sweep(cfg))


@cli.command('prob-check')
@click.option('-n', 'n', type=int, default=3, help='Number of variables')
@click.option('-m', 'm', type=int, default=None, help='Rows of A (default n)')
@click.option('-k', 'k', type=int, default=1, help='Located combinations')
@click.option('--phi', type=float, default=2.0)
@click.option('--eps', type=float, default=0.1)
@click.option('--density', type=click.Choice(DENSITY_FAMILIES), default='uniform')
@click.option('--box', type=click.Choice(['constant', 'step']), default='step', help='Corner map')
@click.pass_context
def prob_check(ctx, n, m, k, phi, eps, density, box):
    """Monte-Carlo check of the box probability bound; exit 2 when the estimate exceeds it."""
    cfg = ctx.obj['config']
    trials = cfg.trials if ctx.obj['trials_given'] else DEFAULT_TRIALS
    rng = trial_rng(cfg.seed, 0)
    A = random_full_rank(m or n, n, rng)
    densities = [make_density(density, phi, rng) for _ in range(n)]
    corner = constant_box([0.0] * k) if box == 'constant' else step_box(eps)
    result = estimate_hypercube_prob(A, densities, k, corner, eps, trials=trials, seed=cfg.seed,
                                     workers=cfg.workers, confidence=cfg.confidence)
    click.echo(f"Pr estimate: {result.estimate:.6f}  CI [{result.ci_low:.6f}, {result.ci_high:.6f}]")
    click.echo(f"Bound ({'quasiconcave' if result.quasiconcave else 'general'}): {result.bound:.6g}")
    if cfg.out:
        write_report(result, cfg.out, cfg.format)
    if not result.within_bound():
        raise InvariantViolation(f"estimate {result.estimate:.6g} exceeds bound {result.bound:.6g}")


@cli.command('path-trade')
@click.argument('graph_file', required=False)
@click.option('--phi', type=float, default=None)
@click.option('--density', type=click.Choice(DENSITY_FAMILIES), default=None)
@click.pass_context
def path_trade(ctx, graph_file, phi, density):
    """Mean number of Pareto-optimal valid paths of an AS graph."""
    cfg = ctx.obj['config']
    source = graph_file or cfg.graph
    if not source:
        raise ConfigError("path-trade needs a graph file (argument or `graph` in the configuration)")
    graph = ASGraph.from_dict(_read_json(source))
    report = path_trade_experiment(graph, phi or cfg.phi_values[0], cfg.trials, seed=cfg.seed,
                                   density=density or cfg.density, confidence=cfg.confidence)
    _export(ctx, report)


@cli.command()
@click.option('--threshold', 'thresholds', type=float, multiple=True,
              help='Threshold (repeatable); multiples of s_1 unless --absolute')
@click.option('--absolute', is_flag=True, help="Thresholds are PO values")
@click.pass_context
def tail(ctx, thresholds, absolute):
    """Empirical Pr[PO >= theta] against the concentration bound."""
    cfg = ctx.obj['config'].with_overrides(thresholds=list(thresholds) or None,
                                           absolute_thresholds=absolute or None)
    _export(ctx, concentration_tail(cfg))


def main(argv: Optional[Sequence[str]] = None):
    cli.main(args=argv, prog_name='pareto-smooth', obj={})


if __name__ == '__main__':
    main(sys.argv[1:])
