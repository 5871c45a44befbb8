"""Count critical graphs by shape and look at the first obstruction.

Run with:  python demos/critical_counts.py [max_rank]
"""

import sys

from baseorder.critical import (
    build_m_delta,
    build_z_delta,
    conjecture_report,
    delta7,
    enumerate_shape,
    find_obstructions,
    shapes,
    z_delta_report,
)

top = int(sys.argv[1]) if len(sys.argv) > 1 else 7

print(" r  shape    clean  obstructed")
for r in range(3, top + 1):
    for s, t in shapes(r):
        found = enumerate_shape(s, t)
        bad = sum(find_obstructions(d)[1] is not None for d in found)
        print(f"{r:2}  K{s},{t:<5} {len(found) - bad:6} {bad:10}")

d = delta7()
print("\nthe obstructed graph on K4,4 (rows a1..a4, columns b1..b4):")
for label, row in zip(d.labels, d.orientation):
    print(" ", label, " ".join("->" if x else "<-" for x in row))
_, lo, hi = find_obstructions(d)
print("smallest obstruction:", lo.names(d), " largest:", hi.names(d))
report = z_delta_report(d)
print("union of the two flat families fails", report.axiom, "-", report.message)
z = build_z_delta(d)
m = build_m_delta(d)
ranks = dict(m.flats)
print(f"after adjoining P = {m.describe(z.p_set)} (rank {ranks[z.p_set]}) and "
      f"Q = {m.describe(z.q_set)} (rank {ranks[z.q_set]}) the presentation is valid")

print("\nchecking excluded-minor status (takes a few seconds)...")
rep = conjecture_report(d)
print("excluded minor for BO:", rep["excluded_minor_bo"],
      " for SBO:", rep["excluded_minor_sbo"])
