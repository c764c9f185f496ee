"""Run the end-to-end verify pipeline: predict, integrate, measure, compare.

`oscfract verify` chains every stage: Newton diagram and asymptotic
prediction from the phase, numerical evaluation of I(tau), curve and
reflected-graph construction, box-dimension estimation from the geometry
alone, and a pass/fail comparison of measured against predicted at the
chosen tolerance profile.  Exit code 0 means the independent measurement
agrees with the prediction.

This demo verifies the linear phase x + 2 (a fast rectifiable case) and
prints the report; heavier fractal cases live in tests/test_acceptance.py.

Run:  python3 demos/verify_pipeline.py    (artifacts land in demos/out/)
"""

import json
import os

from oscfract.cli import main as cli_main

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

cfg = {
    "phase": {"n": 1, "terms": [{"k": [1], "c": 1.0}, {"k": [0], "c": 2.0}]},
    "tau": {"min": 8.0, "max": 120.0, "count": 40},
    "eps": {"curve": {"max": 1.02e-3, "min": 4.61e-5, "count": 10}},
}
cfg_path = os.path.join(OUT, "linear.json")
with open(cfg_path, "w", encoding="utf-8") as fh:
    json.dump(cfg, fh, indent=2)

rc = cli_main(["verify", "--config", cfg_path, "--out", OUT])
print(f"\nverify exit code: {rc}")

with open(os.path.join(OUT, "report.json"), encoding="utf-8") as fh:
    report = json.load(fh)
pred, meas = report["predicted"], report["measured"]
print(f"predicted: d = {pred['curve_dim']} (rectifiable: {pred['rectifiable']})")
print(f"measured:  d = {meas['curve_dim']['d_hat']:.4f} on the curve, "
      f"{meas['reflected_re_dim']['d_hat']:.4f} / {meas['reflected_im_dim']['d_hat']:.4f} "
      "on the reflected graphs")
for name, check in report["checks"].items():
    print(f"check {name}: delta {check['delta']:+.4f} "
          f"(tol {check['tol']}) -> {'pass' if check['pass'] else 'FAIL'}")
print(f"overall: {'pass' if report['pass'] else 'FAIL'}")
