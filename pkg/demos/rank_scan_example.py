"""Estimate the number of archetypes from the component volume.

Four archetypes are generated, the ranks 1 to 6 are fitted and the volume
of every fit is written to a scree plot in the working directory.
"""

from permnmf import SolverConfig, SynthSpec, generate, scan
from permnmf.rank_scan import Output
from permnmf.scree_plot import plot_scree
from permnmf.solver import Initialization


def main():
    """Run the example."""
    spec = SynthSpec(archetypes=[{
        "num_specific_vars": 5,
        "shift": shift
    } for shift in (1.0, 2.0, 3.0, 4.0)],
                     samples_per_group=5)
    x = generate(spec).x

    report = scan(x,
                  1,
                  6,
                  SolverConfig(init=Initialization.NNDSVD),
                  output=Output.TEXTUAL)

    for rank, volume, error in zip(report.ranks, report.volumes,
                                   report.errors):
        print("rank {}: volume {:.3e}, error {:.3e}".format(
            rank, volume, error))
    print("Suggested rank: {} (true rank {})".format(report.suggested_rank,
                                                     spec.rank))

    plot_scree(report, "scree.svg")


if __name__ == "__main__":
    main()
