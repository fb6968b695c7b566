"""periodic-cnn command line.

Every subcommand prints JSON to stdout. Precondition violations exit 1 with
the error message; usage errors exit 2.
"""

import functools
import json

import click
import pyarrow as pa

from pcnn_utils import debug, join, load_config, load_json, save_csv, save_json, validate_environment
from periodic_cnn import (
    PcnnError, RidgeSpec, build_knots, build_ridge_network, evaluate, factorize,
    lattice_from_supports, lower_bound, make_profile, member, ridge_range, verify_relu_closure,
)
from periodic_cnn.codec import (
    decode_filter, decode_network, decode_ridge, encode_closure, encode_error_report,
    encode_factorization, encode_knots, encode_lattice, encode_network,
)
from periodic_cnn.constants import COUNTEREXAMPLE_D, COUNTEREXAMPLE_GRID, FACTOR_TOL
from experiments import EXPERIMENTS, emit_outputs, run_counterexample
from experiments.convergence import draw_direction


def _echo_json(data) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _int_list(value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return tuple(int(v) for v in value.replace(" ", "").split(",") if v)
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'") from e


def _float_list(value: str) -> list[float]:
    try:
        return [float(v) for v in value.replace(" ", "").split(",") if v]
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated numbers, got '{value}'") from e


def _read_input(path: str | None, inline: str | None, what: str):
    """JSON from a file path or an inline --json string."""
    if inline is not None:
        try:
            return json.loads(inline)
        except json.JSONDecodeError as e:
            raise click.BadParameter(f"invalid inline {what} JSON: {e}") from e
    if path is None:
        raise click.UsageError(f"provide the {what} as a file or with --json")
    return load_json(path)


def command(fn):
    """Map library and I/O errors to a nonzero exit and log the run."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        name = click.get_current_context().info_name
        debug.log_run_start(name)
        try:
            result = fn(*args, **kwargs)
        except (PcnnError, OSError, json.JSONDecodeError) as e:
            debug.log_run_end(name, status="failed", error=e)
            raise click.ClickException(str(e)) from e
        debug.log_run_end(name)
        return result
    return wrapper


def experiment_options(fn):
    for option in reversed([
        click.option("--config", "config_path", type=click.Path(), default=None, help="JSON experiment config"),
        click.option("--seed", type=int, default=None, help="Random seed (required if not in config)"),
        click.option("--out", "out_dir", default=None, help="Output directory (default $PCNN_OUT or results)"),
        click.option("--d", type=int, default=None, help="Width / input dimension"),
        click.option("--s", type=int, default=None, help="Filter edge width"),
        click.option("--knots", default=None, help="Comma-separated knot counts, e.g. 8,16,32,64"),
        click.option("--grid", type=int, default=None, help="Torus grid points per axis"),
    ]):
        fn = option(fn)
    return fn


def _config(config_path, seed, out_dir, d, s, knots, grid, **extra):
    return load_config(config_path, {
        "seed": seed, "out_dir": out_dir, "d": d, "s": s, "knots": _int_list(knots), "grid": grid, **extra,
    })


@click.group()
def cli():
    """Periodic CNNs: ridge constructions and frequency-lattice lower bounds."""
    try:
        validate_environment()
    except PcnnError as e:
        raise click.ClickException(str(e)) from e


@cli.command("factorize")
@click.argument("filter_path", required=False)
@click.option("--json", "inline", default=None, help="Inline filter JSON")
@click.option("--s", type=int, default=2, show_default=True, help="Maximum factor degree")
@click.option("--tolerance", type=float, default=FACTOR_TOL, show_default=True)
@command
def factorize_cmd(filter_path, inline, s, tolerance):
    """Factor a filter into short filters."""
    W = decode_filter(_read_input(filter_path, inline, "filter"))
    result = factorize(W, s, tolerance)
    debug.log("factorize", f"M={W.degree} s={s} -> J={result.depth} residual={result.residual:.2e}")
    _echo_json(encode_factorization(result))


@cli.command("build-ridge-net")
@experiment_options
@click.option("--direction", default=None, help="Comma-separated integer direction a")
@command
def build_ridge_net(config_path, seed, out_dir, d, s, knots, grid, direction):
    """Build the ridge network for the config profile with the largest knot count.

    Writes network.json, error_report.json and knots.json to the output directory.
    """
    config = _config(config_path, seed, out_dir, d, s, knots, grid, direction=_int_list(direction))
    a = draw_direction(config)
    spec = RidgeSpec(a, make_profile(config.profile, **config.profile_params))
    n = max(config.knots)
    net, report = build_ridge_network(spec, config.s, n, config.box, config.n_samples, config.seed)
    debug.log("build-ridge-net", f"a={list(a)} n={n} depth={net.depth} sup={report.sup_error:.3e}")
    save_json(join(config.out_dir, "network.json"), encode_network(net))
    save_json(join(config.out_dir, "error_report.json"), encode_error_report(report))
    # the same knots the builder used, for plotting the one-dimensional interpolant
    knots = build_knots(spec.profile.with_domain(*ridge_range(a, config.box)), n)
    save_json(join(config.out_dir, "knots.json"), encode_knots(knots))
    _echo_json({"direction": list(a), "n_knots": n, "depth": net.depth, **encode_error_report(report)})


@cli.command("eval-net")
@click.argument("net_path", required=False)
@click.option("--json", "inline", default=None, help="Inline network JSON")
@click.option("--x", "point", default=None, help="Comma-separated input vector")
@click.option("--points", "points_path", default=None, help="JSON file with a list of input vectors")
@command
def eval_net(net_path, inline, point, points_path):
    """Evaluate a network at one or more points."""
    net = decode_network(_read_input(net_path, inline, "network"))
    if point is not None:
        points = [_float_list(point)]
    elif points_path is not None:
        points = load_json(points_path)
    else:
        raise click.UsageError("provide --x or --points")
    _echo_json([evaluate(net, x) for x in points])


@cli.command("lattice-check")
@click.option("--generators", required=True, help='JSON list of integer vectors, e.g. "[[1,0,0]]"')
@click.option("--u", "u", required=True, help="Comma-separated integer vector")
@command
def lattice_check(generators, u):
    """Decide u in <generators> and print the Hermite normal form basis."""
    lattice = lattice_from_supports([_read_input(None, generators, "generators")])
    vec = _int_list(u)
    _echo_json({"member": member(lattice, vec), "u": list(vec), **encode_lattice(lattice)})


@cli.command("lower-bound")
@click.argument("ridge_path", required=False)
@click.option("--json", "inline", default=None, help="Inline ridge JSON")
@click.option("--generators", required=True, help="JSON list of integer vectors")
@command
def lower_bound_cmd(ridge_path, inline, generators):
    """L2 floor of the ridge against every network with spectrum in the lattice."""
    ridge = decode_ridge(_read_input(ridge_path, inline, "ridge"))
    lattice = lattice_from_supports([_read_input(None, generators, "generators")])
    _echo_json({"epsilon": lower_bound(ridge, lattice), "member": member(lattice, ridge.direction)})


@cli.command("counterexample")
@click.option("--d", type=int, default=COUNTEREXAMPLE_D, show_default=True)
@click.option("--grid", type=int, default=COUNTEREXAMPLE_GRID, show_default=True)
@command
def counterexample(d, grid):
    """Reproduce the blocked ridge: epsilon = 1 and its grid cross-check."""
    _echo_json(run_counterexample(d, grid))


@cli.command("relu-closure")
@click.argument("net_path", required=False)
@click.option("--json", "inline", default=None, help="Inline network JSON")
@click.option("--generators", required=True, help="JSON list of integer vectors")
@click.option("--modes", required=True, help="JSON list of integer input modes")
@click.option("--grid", type=int, default=64, show_default=True)
@click.option("--out", "out_dir", default=None, help="Also write closure.csv here")
@command
def relu_closure(net_path, inline, generators, modes, grid, out_dir):
    """Per-layer spectral energy outside the lattice."""
    net = decode_network(_read_input(net_path, inline, "network"))
    lattice = lattice_from_supports([_read_input(None, generators, "generators")])
    report = verify_relu_closure(net, lattice, grid, _read_input(None, modes, "modes"))
    if out_dir:
        save_csv(join(out_dir, "closure.csv"), pa.table({
            "layer": pa.array([l.layer for l in report.layers], type=pa.int64()),
            "fraction": pa.array([l.off_fraction for l in report.layers], type=pa.float64()),
        }))
    _echo_json(encode_closure(report))


def _run_experiment(name, config_path, seed, out_dir, d, s, knots, grid):
    config = _config(config_path, seed, out_dir, d, s, knots, grid)
    rows = EXPERIMENTS[name](config)
    written = emit_outputs(rows, config.out_dir)
    _echo_json({"experiment": name, "rows": len(rows), "files": written})


@cli.command("convergence")
@experiment_options
@command
def convergence(**kwargs):
    """Sup/mean error of ridge networks across knot counts."""
    _run_experiment("convergence", **kwargs)


@cli.command("dichotomy")
@experiment_options
@command
def dichotomy(**kwargs):
    """Approachable versus blocked ridge directions."""
    _run_experiment("dichotomy", **kwargs)


if __name__ == "__main__":
    cli()
