"""Walk through one weak-relay channel: regions, vertices and the gap ledger.

Run: python3 demos/gap_tour.py
"""

from relayic import polytope
from relayic.channel_model import ChannelParams, link_budget
from relayic.gap_analysis import gap_budget, gap_report
from relayic.mutual_info import mi_profile, private_powers_etw, q_default
from relayic.regions import achievable_constraints, outer_constraints

# strong direct links, moderate interference, relay heard at the interference level
p = ChannelParams(h11=100.0, h12=10.0, h21=8.0, h22=90.0, g1=9.0, g2=7.0, c1=2.0, c2=1.5)
b = link_budget(p)
print(f"SNR1={b.snr1:.0f} INR1={b.inr1:.0f} SNR_r1={b.snr_r1:.0f}  rho={b.rho:.3f}")

rho0 = 1.0
mi = mi_profile(p, private_powers_etw(p), q_default(rho0))
ach = achievable_constraints(mi, p.c1, p.c2)
out = outer_constraints(p)

print("\nachievable vertices (bits):")
for v in polytope.vertices(ach):
    print(f"  ({v.r1:7.3f}, {v.r2:7.3f})")
print("outer vertices (bits):")
for v in polytope.vertices(out):
    print(f"  ({v.r1:7.3f}, {v.r2:7.3f})")

budget = gap_budget(rho0)
print(f"\ndelta({rho0:g}) = {budget.delta:.4f} bits at q* = {budget.q_star:.4f}")
rep = gap_report(p, "two_links", rho0)
for k, g in rep.per_direction.items():
    print(f"  {k:7s} gap {g:6.3f}  budget {rep.direction_budget[k]:6.3f}")
print("\nper-constraint ledger (measured, against paired outer bound, budget):")
for c in rep.per_constraint:
    print(f"  {c.tag:10s} -> {c.outer_tags[0]:12s} {c.measured:6.3f} {c.paired:6.3f} {c.budget:6.3f}")
print(f"\nreport passed: {rep.passed}")
