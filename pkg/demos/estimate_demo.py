"""Measure the three-term commutator estimate of Theorem 1.2 on random fields.

Run: python3 demos/estimate_demo.py

For each seed the harness draws Q and u as Gaussian random fields and forms
the ratio of the left-hand norm to the right-hand product of norms.  A bounded
ratio that does not grow under grid doubling is the numerical face of the
estimate; the paper gives no value for the constant, so only boundedness is
checked.
"""

from fracharm import commutators as C

for eid in ("T", "T_star", "CRW", "Omega_tilde_1"):
    est = C.ESTIMATES[eid]
    grids = C.DEFAULT_GRIDS[est.n]
    reports = C.estimate_ratio(eid, range(1, 11), grids)
    s = C.summarize(reports)
    row = "  ".join(f"N={N}: max {s[N]['max']:.3f} median {s[N]['median']:.3f}" for N in grids)
    print(f"{eid:14s} (n={est.n})  {row}")

print("\nTaylor machinery: degree-d partial sums of |zeta|^{3/2} - |zeta - xi|^{3/2}")
for ratio in (0.5, 0.25):
    errs = ", ".join(f"d={d}: {C.taylor_max_error(1.5, d, ratio=ratio):.1e}" for d in (3, 6, 12))
    print(f"  |xi|/|zeta| = {ratio}: {errs}")
