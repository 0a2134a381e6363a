"""Command line front end of permnmf.

Subcommands:

    factorize   Fit a factorization of a CSV matrix and cluster its samples.
    rank-scan   Compute the volume of every candidate rank (scree data).
    cluster     Cluster the samples of a score matrix W.
    synth       Generate a synthetic dataset from a JSON spec.

Every subcommand writes a ``report.json`` manifest next to its outputs. It
holds the full resolved configuration (all defaults materialized), the
SHA-256 digest of the input file, the seed and the tool version, so two
runs with equal manifests produce identical files.

Exit status: 0 on success, 1 on invalid input or arguments, 2 if a fit
becomes numerically non-finite. A component that collapsed to zero is a
valid result, its factorization is written with volume 0.
"""

import argparse
import logging
import os
import sys
from enum import Enum
import pandas as pd
from jsonschema import ValidationError
from permnmf import __version__
from permnmf.elastic import ClusterRule, cluster
from permnmf.factor_model import ScalingScheme, relative_error, rescale
from permnmf.matrix_io import (file_digest, load_csv, save_csv, save_frame,
                               save_json)
from permnmf.monitors import ProgressMonitor
from permnmf.permute import PermuteConfig, permuted_fit
from permnmf.rank_scan import (DEFAULT_MIN_SHARE, DegenerateComponentError,
                               Output, component_volume, scan)
from permnmf.scree_plot import plot_scree
from permnmf.solver import Algorithm, Initialization, SolverConfig, fit
from permnmf.synth import generate, load_synth_spec

logger = logging.getLogger(__name__)

# Arguments that do not influence any output file
NON_MANIFEST_ARGS = ('out', 'verbose', 'progress', 'handler')

EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 1
EXIT_NUMERIC_ERROR = 2


def _manifest(args, input_path):
    """Return the run manifest of a subcommand."""
    manifest = {
        key: value.value if isinstance(value, Enum) else value
        for key, value in vars(args).items() if key not in NON_MANIFEST_ARGS
    }
    manifest['input_digest'] = file_digest(input_path)
    manifest['version'] = __version__
    return manifest


def _solver_config(args):
    """Build the solver configuration from the parsed arguments."""
    return SolverConfig(max_outer_iterations=args.max_iter,
                        tolerance=args.tol,
                        seed=args.seed,
                        init=args.init,
                        algorithm=args.algorithm,
                        inner_iterations=args.inner_iterations)


def _permute_config(args):
    """Build the permutation configuration (None without ``--permute``)."""
    if not args.permute:
        return None
    return PermuteConfig(max_sweeps=args.max_sweeps, every=args.permute_every)


def _component_names(rank):
    return ["a{}".format(component) for component in range(rank)]


def run_factorize(args):
    """Fit, rescale and cluster; write W, H, clusters and the report."""
    x, row_ids, col_names = load_csv(args.input)

    solver_config = _solver_config(args)
    permute_config = _permute_config(args)
    monitor = ProgressMonitor() if args.progress else None

    if permute_config is not None:
        report = permuted_fit(x, args.rank, solver_config, permute_config,
                              monitor)
    else:
        report = fit(x, args.rank, solver_config, monitor=monitor)

    model = rescale(report.model, ScalingScheme(args.scaling))
    try:
        volume = component_volume(model)
    except DegenerateComponentError as error:
        logger.warning("%s, volume recorded as 0", error)
        volume = 0.0

    clusters = pd.DataFrame(
        {
            rule.value: cluster(model.w, rule).labels
            for rule in (ClusterRule.ARGMAX_WEIGHT, ClusterRule.MIN_ELASTIC)
        },
        index=row_ids)

    components = _component_names(model.rank)
    os.makedirs(args.out, exist_ok=True)
    save_csv(os.path.join(args.out, "W.csv"), model.w, row_ids, components)
    save_csv(os.path.join(args.out, "H.csv"), model.h, components, col_names,
             index_label="archetype")
    save_frame(os.path.join(args.out, "clusters.csv"), clusters)

    result = _manifest(args, args.input)
    result.update({
        'iterations_run': report.iterations_run,
        'converged': report.converged,
        'final_error': report.final_error,
        'relative_error': relative_error(x, model),
        'error_trace': list(report.error_trace),
        'sweep_trace': list(report.sweep_trace),
        'stabilized_trace': list(report.stabilized_trace),
        'volume': volume,
    })
    save_json(os.path.join(args.out, "report.json"), result)

    print("Rank {} fit: {} iterations ({}), relative error {:.4g}, volume "
          "{:.4g}".format(args.rank, report.iterations_run,
                          "converged" if report.converged else "not converged",
                          result['relative_error'], volume))


def run_rank_scan(args):
    """Scan the rank range; write volumes, scree plot and the report."""
    x, _, _ = load_csv(args.input)

    report = scan(x,
                  args.rank_min,
                  args.rank_max,
                  solver_config=_solver_config(args),
                  permute_config=_permute_config(args),
                  drop_threshold=args.drop_threshold,
                  processes=args.processes,
                  output=Output.TQDM if args.progress else Output.NO_OUTPUT,
                  min_share=args.min_share)

    volumes = pd.DataFrame(
        {
            'volume': report.volumes,
            'drop_ratio': (float('nan'), ) + report.drop_ratios,
            'error': report.errors,
        },
        index=pd.Index(report.ranks, name='rank'))

    os.makedirs(args.out, exist_ok=True)
    save_frame(os.path.join(args.out, "volumes.csv"), volumes,
               index_label="rank")
    plot_scree(report, os.path.join(args.out, "scree.svg"))

    result = _manifest(args, args.input)
    result.update({
        'ranks': list(report.ranks),
        'volumes': list(report.volumes),
        'drop_ratios': list(report.drop_ratios),
        'errors': list(report.errors),
        'suggested_rank': report.suggested_rank,
    })
    save_json(os.path.join(args.out, "report.json"), result)

    print("Rank scan [{}, {}]: suggested rank {}".format(
        args.rank_min, args.rank_max, report.suggested_rank))


def run_cluster(args):
    """Cluster the samples of a score matrix with one rule."""
    w, row_ids, _ = load_csv(args.w)
    assignment = cluster(w, ClusterRule(args.rule))

    clusters = pd.DataFrame({assignment.rule.value: assignment.labels},
                            index=row_ids)

    os.makedirs(args.out, exist_ok=True)
    save_frame(os.path.join(args.out, "clusters.csv"), clusters)
    save_json(os.path.join(args.out, "report.json"), _manifest(args, args.w))

    print("Clustered {} samples by {}".format(len(row_ids), args.rule))


def run_synth(args):
    """Generate a synthetic dataset; write X, the truth and the spec echo."""
    spec = load_synth_spec(args.spec)
    dataset = generate(spec)

    truth = pd.DataFrame({'label': dataset.true_labels},
                         index=list(dataset.sample_ids))

    os.makedirs(args.out, exist_ok=True)
    save_csv(os.path.join(args.out, "X.csv"), dataset.x, dataset.sample_ids,
             dataset.variable_names)
    save_frame(os.path.join(args.out, "truth.csv"), truth)
    save_json(os.path.join(args.out, "spec.json"), spec.to_dict())

    result = _manifest(args, args.spec)
    result['seed'] = spec.seed
    save_json(os.path.join(args.out, "report.json"), result)

    print("Generated {} samples x {} variables with {} archetypes".format(
        dataset.x.shape[0], dataset.x.shape[1], spec.rank))


def _add_solver_arguments(parser):
    """Add the arguments shared by ``factorize`` and ``rank-scan``."""
    parser.add_argument('--input', required=True, help="data matrix (CSV)")
    parser.add_argument('--out', required=True, help="output directory")
    parser.add_argument('--seed', type=int, default=42)
    parser.add_argument('--max-iter', type=int, default=500,
                        help="maximal number of outer iterations")
    parser.add_argument('--tol', type=float, default=1e-6,
                        help="relative error change tolerance")
    parser.add_argument('--algorithm',
                        choices=[algorithm.value for algorithm in Algorithm],
                        default=Algorithm.MULTIPLICATIVE_UPDATES.value)
    parser.add_argument('--init',
                        choices=[init.value for init in Initialization],
                        default=Initialization.RANDOM_UNIFORM.value)
    parser.add_argument('--inner-iterations', type=int, default=10,
                        help="projected gradient steps per factor update")
    parser.add_argument('--permute', action='store_true',
                        help="apply the permutation step to W")
    parser.add_argument('--max-sweeps', type=int, default=50,
                        help="maximal permutation sweeps per step")
    parser.add_argument('--permute-every', type=int, default=1,
                        help="apply the permutation every N iterations")
    parser.add_argument('--progress', action='store_true',
                        help="show tqdm progress bars")


def build_parser():
    """Build the argument parser of all subcommands."""
    parser = argparse.ArgumentParser(
        prog='permnmf',
        description="Permuted non-negative matrix factorization")
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    parser.add_argument('-v', '--verbose', action='store_true',
                        help="enable debug logging")
    subparsers = parser.add_subparsers(dest='command', required=True)

    factorize = subparsers.add_parser('factorize', help=run_factorize.__doc__)
    _add_solver_arguments(factorize)
    factorize.add_argument('--rank', type=int, required=True)
    factorize.add_argument(
        '--scaling',
        choices=[ScalingScheme.MAX_WEIGHT.value,
                 ScalingScheme.SUM_OF_SQUARES.value],
        default=ScalingScheme.MAX_WEIGHT.value)
    factorize.set_defaults(handler=run_factorize)

    rank_scan = subparsers.add_parser('rank-scan', help=run_rank_scan.__doc__)
    _add_solver_arguments(rank_scan)
    rank_scan.add_argument('--rank-min', type=int, required=True)
    rank_scan.add_argument('--rank-max', type=int, required=True)
    rank_scan.add_argument('--drop-threshold', type=float, default=0.1,
                           help="volume ratio flagging an over-fitted rank")
    rank_scan.add_argument('--processes', type=int, default=None,
                           help="number of worker processes")
    rank_scan.add_argument(
        '--min-share', type=float, default=DEFAULT_MIN_SHARE,
        help="share of ||X|| below which a component is surplus (0: off)")
    rank_scan.set_defaults(handler=run_rank_scan)

    cluster_parser = subparsers.add_parser('cluster', help=run_cluster.__doc__)
    cluster_parser.add_argument('--w', required=True,
                                help="score matrix (CSV)")
    cluster_parser.add_argument('--rule',
                                choices=[rule.value for rule in ClusterRule],
                                required=True)
    cluster_parser.add_argument('--out', required=True)
    cluster_parser.set_defaults(handler=run_cluster)

    synth = subparsers.add_parser('synth', help=run_synth.__doc__)
    synth.add_argument('--spec', required=True, help="synth spec (JSON)")
    synth.add_argument('--out', required=True)
    synth.set_defaults(handler=run_synth)

    return parser


def main(argv=None):
    """Run the command line interface.

    Args:
        argv (list): The arguments (without program name). Defaults to
            ``sys.argv[1:]``.

    Returns:
        int: The exit status.

    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as request:
        # argparse exits with 0 for --help/--version and 2 on usage errors
        return EXIT_INPUT_ERROR if request.code else EXIT_SUCCESS

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")

    try:
        args.handler(args)
    except ArithmeticError as error:
        print("permnmf: numeric error: {}".format(error), file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    except ValidationError as error:
        print("permnmf: invalid spec: {}".format(error.message),
              file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ValueError, OSError) as error:
        print("permnmf: error: {}".format(error), file=sys.stderr)
        return EXIT_INPUT_ERROR

    return EXIT_SUCCESS
