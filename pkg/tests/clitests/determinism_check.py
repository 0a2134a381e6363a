"""Verify that the permnmf subcommands produce bitwise identical outputs."""

import argparse
from multiprocessing import Pool
from io import StringIO
import filecmp
import os
import sys
import tempfile

from termcolor import colored

from permnmf.cli import main as permnmf_main

SPEC_FILE = "tests/resources/synth_two_groups.json"
FOUR_ARCHETYPES_FILE = "tests/resources/synth_four_archetypes.json"


def run_twice(name, arguments, workdir):
    """Run a subcommand into two output directories and compare them."""
    outputs = list()
    for run in ("run1", "run2"):
        out = os.path.join(workdir, name, run)
        status = permnmf_main(arguments + ["--out", out])
        print("{} -> exit status {}".format(run.upper(), status))
        if status != 0:
            return False
        outputs.append(out)

    comparison = filecmp.dircmp(outputs[0], outputs[1])
    names = sorted(os.listdir(outputs[0]))
    _, mismatch, errors = filecmp.cmpfiles(outputs[0],
                                           outputs[1],
                                           names,
                                           shallow=False)

    if comparison.left_only or comparison.right_only:
        print("The output directories contain different files. Failure.")
        return False
    if mismatch or errors:
        print("The files {} differ between both runs. Failure.".format(
            mismatch + errors))
        return False
    return True


def check_deterministic_behaviour(name, quick):
    """Generate data, then run one subcommand twice and compare outputs."""
    output = StringIO()
    old_stdout = sys.stdout
    sys.stdout = output

    print("----------------\nTest Run for {}\n---------------".format(name))

    with tempfile.TemporaryDirectory() as workdir:
        spec = SPEC_FILE if quick or name != "rank-scan" else \
            FOUR_ARCHETYPES_FILE
        data = os.path.join(workdir, "data")
        permnmf_main(["synth", "--spec", spec, "--out", data])
        x_file = os.path.join(data, "X.csv")

        if name == "synth":
            arguments = ["synth", "--spec", spec]
        elif name == "factorize":
            arguments = [
                "factorize", "--input", x_file, "--rank", "2", "--permute"
            ]
        else:
            arguments = [
                "rank-scan", "--input", x_file, "--rank-min", "1",
                "--rank-max", "3" if quick else "5"
            ]

        success = run_twice(name, arguments, workdir)

    if success:
        print("-----\n-> Outputs of both '{}' runs are equal!\n-----".format(
            name))

    sys.stdout = old_stdout
    return (output.getvalue(), success)


# Main function
def main(args):
    # Create pool based on processor core count.
    pool = Pool(None)
    results = list()

    # Generate multiprocessing async tasks in pool
    for name in ("synth", "factorize", "rank-scan"):
        results.append(
            pool.apply_async(check_deterministic_behaviour,
                             (name, args.quick)))

    # Print multiprocessing outputs in correct order and return with
    # return code based on outcomes of multiprocessing
    return_value = 0
    for result in results:
        (output, code) = result.get()
        print(output)
        print(colored("SUCCEEDED" if code else "FAILED",
                      'green' if code else 'red'))
        if not code:
            return_value = 1

    sys.exit(return_value)


parser = argparse.ArgumentParser(
    description="permnmf command line determinism check")
parser.add_argument(
    "-q",
    "--quick",
    action='store_true',
    help="Run reduced check complexity. Helpful for quick " + "verifications.")

if __name__ == "__main__":
    main(parser.parse_args())
