"""High-SNR picture: the W curve, the gain tables and the numeric estimate.

Run: python3 demos/gdof_tour.py
"""

import numpy as np

from relayic.gdof import (GdofQuery, d_if, d_sr, estimate_gdof_numeric, gdof_single,
                          gdof_sum_alpha_eq_beta, relaying_mode, table1_gain, table2_gain)

k = 0.2
print(f"sum GDoF with alpha = beta, kappa = {k}")
for a in np.round(np.arange(0.0, 2.61, 0.2), 2):
    if a == 1.0:
        continue
    d0, d = gdof_sum_alpha_eq_beta(a, 0), gdof_sum_alpha_eq_beta(a, k)
    print(f"  alpha={a:4.2f}  d={d:5.3f}  no relay={d0:5.3f}  "
          f"gain={table1_gain(a, k):5.3f}  single-link gain={table2_gain(a, k):5.3f}")

alpha, beta2, kappa1 = 0.5, 0.2, 0.5
print(f"\nsingle link, alpha={alpha}, beta2={beta2}, kappa1={kappa1}")
for b1 in (0.3, 0.6, 0.7, 0.9, 1.2):
    mode, thr = relaying_mode(alpha, b1, beta2, kappa1)
    print(f"  beta1={b1:3.1f}  d={gdof_single(alpha, b1, beta2, kappa1):4.2f}  "
          f"d_if={d_if(alpha, beta2, kappa1):4.2f}  d_sr={d_sr(alpha, b1, kappa1):4.2f}  {mode}")
print(f"  threshold beta1* = {thr:.2f}")

q = GdofQuery(0.5, 0.5, 0.2)
print("\nfinite-SNR estimate for alpha=beta=0.5, kappa=0.2 (closed form 1.4):")
for db in (60, 80, 100, 120, 160, 200):
    print(f"  {db:3d} dB  {estimate_gdof_numeric(q, db):.4f}")
