"""Exercise the estimators on synthetic curves with known answers.

Three families with dimension known in closed form calibrate the measurement
machinery independently of any integral:

  chirp    x^a sin(1/x^b) graph      d = 2 - (a+1)/(b+1)
  spiral   r = m phi^(-a)            d = 2/(1+a), content from (beta, m)
  a-string points at k^(-a)          d = 1/(1+a)  (a dust, counted unconnected)

A log factor on the chirp or spiral leaves the dimension unchanged but pushes
the Minkowski content to infinity; the rho-drift detector must flip its
verdict on the l = 1 twins while holding "nondegenerate" on l = 0.

Run:  python3 demos/synthetic_zoo.py    (one to two minutes)
The command `oscfract calibrate` runs the larger frozen version of this zoo.
"""

import math
from fractions import Fraction

from oscfract.estimators import (
    box_count,
    estimate_content,
    estimate_dimension,
    gen_astring,
    gen_chirp,
    gen_spiral,
    geometric_epsilons,
)
from oscfract.predict import content_from_coefficient

# 1. Dimensions.
print("dimension: expected vs measured")
cases = (
    ("chirp a=1/2 b=1", gen_chirp(0.5, 1.0), 1.25, (5e-3, 2e-4), True),
    ("spiral a=1/2", gen_spiral(0.5, phi_max=600.0 * math.pi), 4.0 / 3.0, (2.5e-3, 1e-4), True),
    ("a-string a=1", gen_astring(1.0), 0.5, (1e-2, 1e-4), False),
)
for name, pts, d_true, (emax, emin), connect in cases:
    eps = geometric_epsilons(emax, emin, 10)
    est = estimate_dimension(eps, box_count(pts, eps, connect=connect))
    print(f"  {name:16s} {d_true:.4f} vs {est.d_hat:.4f} ({est.d_hat - d_true:+.4f})")

# 2. Content: the spiral r = m phi^(-a) is the curve of an oscillatory
#    integral with beta = -a, |a_0| = m, f0 = 1, so the coefficient formula
#    applies verbatim.
alpha, m = 1.0 / 3.0, 0.5
m_true = content_from_coefficient(Fraction(-1, 3), m, 1.0)
spiral = gen_spiral(alpha, m, phi_max=1500.0 * math.pi)
est = estimate_content(spiral, 2.0 / (1.0 + alpha), geometric_epsilons(5e-3, 1e-3, 8))
print(f"\nspiral a=1/3 content: formula {m_true:.4f}, measured {est.M_hat:.4f} "
      f"({est.M_hat / m_true - 1.0:+.1%})")

# 3. Degeneracy: same dimension, opposite verdicts.
print("\nverdicts at d = 1.25 (chirp a=1/2 b=1):")
for l, want in ((0, "nondegenerate"), (1, "degenerate-infinity")):
    pts = 0.15 * gen_chirp(0.5, 1.0, l=l)
    est = estimate_content(pts, 1.25, geometric_epsilons(1.2e-3, 1.8e-4, 8))
    mark = "ok" if est.degenerate_verdict == want else "MISMATCH"
    print(f"  l={l}: {est.degenerate_verdict:20s} "
          f"(drift {est.log_exponent_hat:+.3f}, want {want}) {mark}")
