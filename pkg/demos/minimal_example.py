"""Minimal example of a permuted factorization.

The individual steps are:
1. Describe two archetypes with disjoint variables and generate data.
2. Fit a rank-2 factorization with the permutation step.
3. Assign every sample with both clustering rules.
4. Compare the labels with the true groups.
"""

import numpy as np
from permnmf import (ClusterRule, PermuteConfig, SolverConfig, SynthSpec,
                     cluster, generate, permuted_fit)
from permnmf.monitors import ProgressMonitor


def main():
    """Run the example."""
    # Two archetypes, 20 pure samples each and three mixed samples
    spec = SynthSpec(archetypes=[{
        "num_specific_vars": 10,
        "shift": 2.0
    }, {
        "num_specific_vars": 8,
        "shift": 3.0
    }],
                     samples_per_group=20,
                     mixing=[[0.2, 0.8], [0.5, 0.5], [0.7, 0.3]],
                     noise_sigma=0.01,
                     seed=1)
    dataset = generate(spec)

    report = permuted_fit(dataset.x,
                          spec.rank,
                          SolverConfig(max_outer_iterations=300),
                          PermuteConfig(),
                          monitor=ProgressMonitor())

    print("Iterations: {}, converged: {}".format(report.iterations_run,
                                                 report.converged))
    print("Final error: {:.6f}".format(report.final_error))
    print("Permutation sweeps: {}".format(sum(report.sweep_trace)))

    for rule in ClusterRule:
        labels = cluster(report.model.w, rule).labels
        # Components come out in arbitrary order
        agreement = max(np.mean(labels == dataset.true_labels),
                        np.mean(labels == 1 - dataset.true_labels))
        print("{:>8}: {:.0%} of the samples in their true group".format(
            rule.value, agreement))


if __name__ == "__main__":
    main()
