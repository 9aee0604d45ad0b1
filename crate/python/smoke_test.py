#!/usr/bin/env python3
"""End-to-end smoke test for the bellviol_py extension module.

Builds the cdylib with cargo, loads it, and exercises the main types and
operations: operator spectra, GHZ eigenstates, correlation functions, the
classical bound, and the violation optimizer.

Usage: python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "bellviol-python"],
        cwd=ROOT,
        check=True,
    )
    suffix = {"linux": "so", "darwin": "dylib"}.get(sys.platform, "so")
    built = ROOT / "target" / "release" / f"libbellviol_py.{suffix}"
    stage = Path(tempfile.mkdtemp(prefix="bellviol-py-"))
    shutil.copyfile(built, stage / "bellviol_py.so")
    sys.path.insert(0, str(stage))
    import bellviol_py

    return bellviol_py


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    bv = build_and_import()
    half_pi = math.pi / 2

    # right-angle settings: extreme eigenvalues +-4, factor-2 violation
    settings = bv.Settings.uniform(3, half_pi)
    spec = bv.Spec.standard(settings)
    op = spec.operator()
    eigs = op.eigenvalues()
    approx(eigs[0], -4.0)
    approx(eigs[-1], 4.0)
    classical, _assignment = spec.lhv_max()
    approx(classical, 2.0)
    approx(op.max_abs_eigenvalue() / classical, 2.0)
    print(f"factor-2 violation: quantum 4.0 vs classical {classical}")

    # worked example: max |eigenvalue| = 2 sqrt(2 + sqrt 2)
    example = bv.Settings([0.0, 0.0, 0.0], [half_pi, half_pi, math.pi / 4])
    expected = 2.0 * math.sqrt(2.0 + math.sqrt(2.0))
    approx(example.largest_eigenvalue(), expected, 1e-12)
    approx(bv.Spec.standard(example).operator().max_abs_eigenvalue(), expected)
    print(f"worked example: max |eigenvalue| = {expected:.9f}")

    # GHZ state is the -4 eigenvector; its correlation hits +-1
    phases = [0.3, -1.1, 0.7]
    ghz = bv.State.ghz([1, 1, 1], phases, +1)
    adapted = bv.Spec.ghz_adapted(phases, [1, 1, 1])
    approx(adapted.operator().expectation(ghz), -4.0, 1e-12)
    approx(bv.correlation_closed(ghz, phases), 1.0, 1e-12)
    approx(
        bv.correlation_closed(ghz, phases),
        bv.correlation_direct(ghz, phases),
        1e-12,
    )
    form = bv.check_max_violation_form(ghz, phases)
    assert form["pass"] and form["parity_consistent"]
    print("ghz eigenstate: expectation -4, correlation +1, form check pass")

    # four-operator contradiction
    report = bv.ghz_theorem_check([0.2, 0.9, -2.0])
    assert report["pass"], report
    print(f"ghz theorem: residual {report['residual']:.2e}")

    # product states never reach the classical bound's violation range
    plus_x = 1.0 / math.sqrt(2.0)
    product = bv.State.product([(plus_x, plus_x)] * 3)
    assert abs(spec.operator().expectation(product)) <= 2.0 + 1e-12
    approx(bv.correlation_closed(product, [0.0, 0.0, 0.0]), 1.0, 1e-12)

    # cosine identity
    lhs, rhs = bv.starred_cos_identity([0.4, -0.9, 1.3, 2.2])
    approx(lhs, rhs, 1e-12)

    # optimizer reaches the maximum and returns a balanced eigenstate
    outcome = bv.optimize_violation(3, seed=7)
    assert outcome["reached_target"], outcome
    approx(outcome["value"], 4.0, 1e-6)
    assert outcome["form_pass"]
    amplitudes = outcome["state"].amplitudes
    top = sorted(abs(a) for a in amplitudes)[-2:]
    approx(top[0], plus_x, 1e-6)
    approx(top[1], plus_x, 1e-6)
    print(f"optimizer: value {outcome['value']:.9f} with balanced eigenstate")

    # state JSON round-trip
    text = ghz.to_json()
    back = bv.State.from_json(text)
    approx(ghz.distance_up_to_phase(back), 0.0, 1e-15)
    assert back.to_json() == text

    print("smoke test passed")


if __name__ == "__main__":
    main()
