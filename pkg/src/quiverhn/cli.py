# -*- coding: utf-8 -*-
"""
Command line entry point

Every subcommand reads an instance as JSON (a path or "-" for stdin) and
writes one JSON document to stdout.  Exit codes:

    0   success
    1   malformed or unsupported input
    2   a randomized search or a certificate check failed
    3   an internal consistency check failed
"""

import sys
import json
import logging
from typing import IO, Any, Dict, Optional
from dataclasses import field, dataclass

import click

from . import gen, hn, disc, kempf, errors, shrunk, oracles, __version__
from .quiver import Weight, Representation, slope, theta_d, weight_of, load_instance, dump_instance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VALIDATION = 2
EXIT_INVARIANT = 3

INPUT_ERRORS = (
    errors.InstanceFormatError,
    errors.DimensionError,
    errors.AcyclicityError,
    errors.WeightError,
    errors.UnsupportedInstance,
    errors.ZeroRepresentationError,
    errors.SubrepresentationError,
)


@dataclass
class RunConfig:
    """
    subcommand:     one of check, disc, hn, kempf, verify-certificate, oracle, gen
    input:          instance path, "-" for stdin
    seed:           the only source of randomness
    budget:         samples per blow-up degree
    convention:     limit convention for kempf, t0 or tinf
    verbose:        log at DEBUG
    options:        subcommand specific flags
    """

    subcommand: str
    input: str = "-"
    seed: int = 0
    budget: int = shrunk.DEFAULT_RETRY_BUDGET
    convention: str = kempf.DEFAULT_CONVENTION
    verbose: bool = False
    options: Dict[str, Any] = field(default_factory=dict)


def _open(path: str) -> IO[str]:
    if path == "-":
        return sys.stdin
    try:
        return open(path, "r", encoding="utf-8")
    except OSError as e:
        raise errors.InstanceFormatError("cannot read {}: {}".format(path, e.strerror))


def _load(path: str):
    fh = _open(path)
    try:
        return load_instance(fh)
    finally:
        if fh is not sys.stdin:
            fh.close()


def _disc_weight(m: Representation, theta: Weight, kappa: Weight, use_theta_d: bool) -> Weight:
    return theta_d(theta, kappa, m.dims) if use_theta_d else theta


def _check(config: RunConfig) -> Dict[str, Any]:
    m, theta, kappa = _load(config.input)
    found = disc.destabilizer(m, theta, kappa, config.seed, config.budget)
    doc: Dict[str, Any] = {"semistable": found.value == 0, "G": found.value}
    if not m.is_zero():
        doc["slope"] = str(slope(theta, kappa, m))
    return doc


def _disc(config: RunConfig) -> Dict[str, Any]:
    m, theta, kappa = _load(config.input)
    weight = _disc_weight(m, theta, kappa, config.options.get("theta_d", False))
    found = disc.disc_witness(m, weight, config.seed, config.budget)
    return found.to_json()


def _hn(config: RunConfig) -> Dict[str, Any]:
    m, theta, kappa = _load(config.input)
    f = hn.hn_filtration(m, theta, kappa, config.seed, config.budget)
    report = hn.verify_hn(f, theta, kappa, config.seed, config.budget)
    if not report.ok:
        raise errors.InvariantError("HN filtration failed its own checks: {}".format(report.violations))
    doc = f.to_json()
    doc["verify"] = report.to_json()
    return doc


def _kempf(config: RunConfig) -> Dict[str, Any]:
    m, theta, kappa = _load(config.input)
    f = hn.hn_filtration(m, theta, kappa, config.seed, config.budget)
    result = kempf.kempf_ops(f, theta, kappa)
    point = kempf.primitive_lattice_point(result.ops)
    ok, constraints = kempf.limit_exists(result.ops, m, config.convention)
    check = kempf.kempf_function_check(result.u, f.kappa_values, config.options.get("samples", kempf.DEFAULT_SAMPLES), config.seed)
    order = m.quiver.vertices
    return {
        "u": [str(x) for x in result.u],
        "ray": [str(x) for x in result.ops.flat(order)],
        "primitive": [int(x) for x in point.flat(order)],
        "instability_sq": str(result.instability_sq),
        "adapted_bases": {v: b.to_json() for v, b in result.ops.bases.items()},
        "diagonal": {v: x.to_json() for v, x in kempf.diagonal_matrices(point).items()},
        "convention": config.convention,
        "limit_exists": ok,
        "constraints": [c.to_json() for c in constraints],
        "kempf_function_check": check.to_json(),
    }


def _verify_certificate(config: RunConfig) -> Dict[str, Any]:
    m, theta, kappa = _load(config.input)
    weight = _disc_weight(m, theta, kappa, config.options.get("theta_d", False))
    fh = _open(config.options["certificate"])
    try:
        doc = json.load(fh)
    except ValueError as e:
        raise errors.InstanceFormatError("malformed certificate JSON: {}".format(e))
    finally:
        if fh is not sys.stdin:
            fh.close()
    if isinstance(doc, dict) and "certificate" in doc:
        doc = doc["certificate"]
    if doc is None:
        raise errors.InstanceFormatError("no certificate in the document")
    cert = shrunk.ShrunkCertificate.from_json(doc)
    reduced, _ = disc.reduced_weight(m, weight)
    space, _ = disc.build_matrix_space(m, reduced)
    report = shrunk.verify_certificate(space, cert)
    if not report.ok:
        raise errors.ValidationError("certificate rejected: {}".format("; ".join(report.violations)))
    return {"ok": True, "c": cert.c, "n": cert.n}


def _oracle(config: RunConfig) -> Dict[str, Any]:
    m, theta, kappa = _load(config.input)
    doc: Dict[str, Any] = {}
    expected = oracles.bipartite_disc_oracle(m, theta)
    doc["oracle_disc"] = expected
    best, _ = oracles.slope_brute(m, theta, kappa)
    doc["oracle_slope"] = str(best)
    top = hn.scss(m, theta, kappa, config.seed, config.budget)
    doc["scss_slope"] = str(slope(theta, kappa, top))
    agree = slope(theta, kappa, top) == best
    if weight_of(theta, m) == 0:
        value = disc.disc_witness(m, theta, config.seed, config.budget).value
        doc["disc"] = value
        agree = agree and value == expected
    doc["agree"] = agree
    if not agree:
        raise errors.InvariantError("oracle disagreement: {}".format(doc))
    return doc


def _gen(config: RunConfig) -> Dict[str, Any]:
    opts = config.options
    spec = gen.GenSpec(
        seed=config.seed,
        max_vertices=opts.get("max_vertices", 5),
        max_dim=opts.get("max_dim", 4),
        density=opts.get("density", 0.5),
        weight_bound=opts.get("weight_bound", 5),
        kappa_bound=opts.get("kappa_bound", 3),
        kind=opts.get("kind", gen.GENERAL),
        balanced=opts.get("balanced", False),
    )
    m, theta, kappa = gen.gen_instance(spec, opts.get("index", 0))
    return dump_instance(m, theta, kappa)


COMMANDS = {
    "check": _check,
    "disc": _disc,
    "hn": _hn,
    "kempf": _kempf,
    "verify-certificate": _verify_certificate,
    "oracle": _oracle,
    "gen": _gen,
}


def render(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def run(config: RunConfig, out: Optional[IO[str]] = None) -> int:
    """
    Execute one subcommand and return its exit code.
    """
    handler = COMMANDS.get(config.subcommand)
    if handler is None:
        click.echo("unknown subcommand {}".format(config.subcommand), err=True)
        return EXIT_INPUT
    try:
        doc = handler(config)
    except INPUT_ERRORS as e:
        click.echo("error: {}: {}".format(type(e).__name__, e), err=True)
        return EXIT_INPUT
    except errors.ValidationError as e:
        click.echo("validation failed: {}".format(e), err=True)
        return EXIT_VALIDATION
    except errors.InvariantError as e:
        click.echo("internal check failed: {}".format(e), err=True)
        return EXIT_INVARIANT
    click.echo(render(doc), file=out)
    return EXIT_OK


def _setup_logging(verbose: bool):
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")


def _finish(ctx: click.Context, subcommand: str, input: str, seed: int, budget: int, **options):
    config = RunConfig(
        subcommand=subcommand,
        input=input,
        seed=seed,
        budget=budget,
        convention=options.pop("convention", kempf.DEFAULT_CONVENTION),
        verbose=ctx.obj.get("verbose", False),
        options=options,
    )
    ctx.exit(run(config))


def _common(fn):
    fn = click.option("--budget", default=shrunk.DEFAULT_RETRY_BUDGET, show_default=True, type=click.IntRange(min=1), help="Random samples per blow-up degree.")(fn)
    fn = click.option("--seed", default=0, show_default=True, type=click.IntRange(min=0), help="Seed for every random choice.")(fn)
    fn = click.argument("input", default="-")(fn)
    return fn


@click.group()
@click.version_option(__version__)
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG to stderr.")
@click.pass_context
def main(ctx: click.Context, verbose: bool):
    """Stability of acyclic quiver representations over the rationals."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    _setup_logging(verbose)


@main.command()
@_common
@click.pass_context
def check(ctx: click.Context, input: str, seed: int, budget: int):
    """Report whether the instance is slope semistable, with G."""
    _finish(ctx, "check", input, seed, budget)


@main.command("disc")
@_common
@click.option("--theta-d", "use_theta_d", is_flag=True, help="Use theta_d instead of Theta.")
@click.pass_context
def disc_command(ctx: click.Context, input: str, seed: int, budget: int, use_theta_d: bool):
    """Discrepancy with witness and shrunk-subspace certificate."""
    _finish(ctx, "disc", input, seed, budget, theta_d=use_theta_d)


@main.command("hn")
@_common
@click.pass_context
def hn_command(ctx: click.Context, input: str, seed: int, budget: int):
    """Harder-Narasimhan filtration and its verification report."""
    _finish(ctx, "hn", input, seed, budget)


@main.command("kempf")
@_common
@click.option("--convention", type=click.Choice([kempf.LIMIT_AT_ZERO, kempf.LIMIT_AT_INFINITY]), default=kempf.DEFAULT_CONVENTION, show_default=True)
@click.option("--samples", default=kempf.DEFAULT_SAMPLES, show_default=True, type=click.IntRange(min=0))
@click.pass_context
def kempf_command(ctx: click.Context, input: str, seed: int, budget: int, convention: str, samples: int):
    """Maximally destabilizing one-parameter subgroup."""
    _finish(ctx, "kempf", input, seed, budget, convention=convention, samples=samples)


@main.command("verify-certificate")
@_common
@click.option("--certificate", "certificate", required=True, help="Certificate JSON, or the output of `disc`.")
@click.option("--theta-d", "use_theta_d", is_flag=True, help="The certificate was made for theta_d.")
@click.pass_context
def verify_certificate_command(ctx: click.Context, input: str, seed: int, budget: int, certificate: str, use_theta_d: bool):
    """Re-check a shrunk-subspace certificate exactly."""
    _finish(ctx, "verify-certificate", input, seed, budget, certificate=certificate, theta_d=use_theta_d)


@main.command("oracle")
@_common
@click.pass_context
def oracle_command(ctx: click.Context, input: str, seed: int, budget: int):
    """Cross-check disc and scss against exhaustive search."""
    _finish(ctx, "oracle", input, seed, budget)


@main.command("gen")
@click.option("--seed", default=0, show_default=True, type=click.IntRange(min=0))
@click.option("--index", default=0, show_default=True, type=click.IntRange(min=0))
@click.option("--kind", type=click.Choice([gen.GENERAL, gen.BIPARTITE]), default=gen.GENERAL, show_default=True)
@click.option("--balanced", is_flag=True, help="Force Theta(M) = 0.")
@click.option("--max-vertices", default=5, show_default=True, type=click.IntRange(min=1))
@click.option("--max-dim", default=4, show_default=True, type=click.IntRange(min=1))
@click.option("--density", default=0.5, show_default=True, type=click.FloatRange(0, 1))
@click.pass_context
def gen_command(ctx: click.Context, seed: int, index: int, kind: str, balanced: bool, max_vertices: int, max_dim: int, density: float):
    """Emit a random instance."""
    _finish(
        ctx, "gen", "-", seed, shrunk.DEFAULT_RETRY_BUDGET,
        index=index, kind=kind, balanced=balanced, max_vertices=max_vertices, max_dim=max_dim, density=density,
    )


if __name__ == "__main__":
    main()
