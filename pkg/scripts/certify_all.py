#!/usr/bin/env python3
"""End-to-end certification run over a menu of weight families.

For each family this runs the full verification ladder (unitarity, isometry
relations, Gram orthonormality, projection weights, trace behavior, the
refinement identity) and writes plot-ready CSVs. Exit 0 only if every
check passes.
"""

import argparse
import time
from pathlib import Path

import numpy as np

from frame_lab import (
    CuntzRep,
    WeightSpec,
    bank_for_spec,
    gram_X4,
    mu3_nogo_certificate,
    parseval_trace,
    projection_weight,
    project_V,
    s_word_one,
    verify_cuntz,
    verify_ruelle,
)
from frame_lab.frames import write_trace_csv, write_weight_table
from frame_lab.words import enumerate_X4

S2 = 2**-0.5

MENU = [
    ("rho_one", WeightSpec.from_rho(1.0)),
    ("rho_i", WeightSpec.from_rho(1j)),
    ("rho_minus_one", WeightSpec.from_rho(-1.0)),
    ("pq_balanced", WeightSpec.from_pq(S2, S2)),
    ("pq_lopsided", WeightSpec.from_pq(0.6, 0.8)),
]


def certify(name: str, spec: WeightSpec, out_dir: Path, word_len: int, n_max: int) -> bool:
    t0 = time.perf_counter()
    bank = bank_for_spec(spec)
    rep = CuntzRep(bank)
    ok = bank.admissible

    cuntz = verify_cuntz(rep, level=2, trials=10, seed=99, tol=1e-10)
    ok &= cuntz.passed

    gram = gram_X4(rep, word_len)
    ok &= gram.max_dev <= 1e-8

    proj_dev = 0.0
    for w in enumerate_X4(word_len):
        got = project_V(s_word_one(rep, w))
        proj_dev = max(proj_dev, abs(got[0].weight - projection_weight(bank, w)))
    ok &= proj_dev <= 1e-10

    gamma = 0 if spec.parseval_certified else 1
    trace = parseval_trace([(gamma, 1.0)], spec, n_max)
    values = [v for _, v in trace.checkpoints]
    ok &= all(b >= a for a, b in zip(values, values[1:]))
    ok &= all(v <= trace.target * (1 + 1e-8) for v in values)

    ruelle = verify_ruelle(rep, np.linspace(-1, 0, 11), 2, 1e-9, rho=spec.rho)
    ok &= ruelle.passed

    write_weight_table(out_dir / f"weights_{name}.csv", spec, 64)
    write_trace_csv(out_dir / f"trace_{name}.csv", trace)

    dt = time.perf_counter() - t0
    print(
        f"[certify:{name}] admissible={int(bank.admissible)} "
        f"cuntz={cuntz.max_orthogonality_residual:.1e} gram={gram.max_dev:.1e} "
        f"proj={proj_dev:.1e} trace_final={values[-1]:.6f}/{trace.target:.6f} "
        f"ruelle={ruelle.max_refinement_residual:.1e} "
        f"parseval_certified={int(spec.parseval_certified)} {'OK' if ok else 'FAIL'} ({dt:.1f}s)"
    )
    return bool(ok)


def main() -> int:
    ap = argparse.ArgumentParser(description="certify the standard weight-family menu")
    ap.add_argument("--out-dir", default="out", help="directory for CSV artifacts")
    ap.add_argument("--word-len", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=4**5)
    args = ap.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    all_ok = True
    for name, spec in MENU:
        all_ok &= certify(name, spec, out_dir, args.word_len, args.n_max)

    cert = mu3_nogo_certificate()
    print(f"[certify:nogo-mu3] norm_gap={cert.norm_gap:.6f} {'OK' if cert.passed else 'FAIL'}")
    all_ok &= cert.passed

    print(f"[certify] {'ALL OK' if all_ok else 'FAILURES PRESENT'}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
