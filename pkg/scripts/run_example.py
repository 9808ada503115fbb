#!/usr/bin/env python3
"""Run the worked example end to end and drop every artifact into out/.

Steps: simulate a seeded open-loop experiment on the reference plant, design
a feedback gain from the recorded data (once at the smallest achievable
contraction level, once at the fixed level 0.84), verify both certificates,
and roll the closed loop out from a vertex of the state set. Writes the
problem file, both certificate files, a trajectory CSV, and SVG plots.
"""

import argparse
from pathlib import Path

import numpy as np

from ddinv import cli, fileio, synthesis, verification
from ddinv.demo import (DEFAULT_SAMPLES, DEFAULT_SEED, demo_experiment,
                        demo_input_set, demo_plant, demo_state_set)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    state_set = demo_state_set()
    input_set = demo_input_set()
    plant = demo_plant()
    data = demo_experiment(seed=args.seed, samples=args.samples)

    print(f"experiment: {data.samples} samples, seed {args.seed}")
    problem_path = out / "problem.json"
    fileio.save_problem(fileio.ProblemSpec(
        state_rows=state_set.h_matrix, input_rows=input_set.h_matrix,
        lam=0.84,
        data={"u0t": data.u0t, "x0t": data.x0t, "x1t": data.x1t},
        meta={"seed": args.seed, "description": "reference example"}),
        problem_path)
    print(f"wrote {problem_path}")

    best = synthesis.minimize_lambda(synthesis.SynthesisProblem(
        state_set, input_set, "minimize", data))
    print(f"smallest achievable contraction level: {best.lam:.9f}")
    print(f"  gain: {np.array2string(best.gain, precision=6)}")

    reference = synthesis.minimize_lambda(synthesis.SynthesisProblem(
        state_set, input_set, "minimize", plant))
    print(f"  model-based reference level:         {reference.lam:.9f} "
          f"(gap {abs(best.lam - reference.lam):.2e})")

    for label, cert in (("min", best), ("084", None)):
        if cert is None:
            cert = synthesis.synthesize(synthesis.SynthesisProblem(
                state_set, input_set, 0.84, data))
        report = verification.verify_certificate(state_set, input_set, cert,
                                                 data=data)
        record = fileio.CertificateRecord(
            gain=cert.gain, lam=cert.lam, g_matrix=cert.g_matrix,
            p_matrix=cert.p_matrix,
            verification={"all_ok": report.all_ok(),
                          "worst_vertex_gauge": report.worst_vertex_gauge,
                          "worst_input_violation": report.worst_input_violation},
            input_digest=fileio.file_digest(problem_path))
        path = out / f"certificate_{label}.json"
        fileio.save_certificate(record, path)
        state = "verified" if report.all_ok() else "FAILED VERIFICATION"
        print(f"wrote {path} (level {cert.lam:.6f}, {state})")

    code = cli.main(["simulate", str(problem_path),
                     str(out / "certificate_084.json"),
                     "--x0", "6,-0.5", "--steps", "50",
                     "--out", str(out / "trajectory")])
    if code != 0:
        return code
    print("done")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
