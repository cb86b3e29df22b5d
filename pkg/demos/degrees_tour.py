"""Tour: closed-form degree formulas for eigenvector loci.

Every degree printed here is exact integer arithmetic; several formulas are
evaluated in two independent ways and asserted equal internally.

Run:  python3 demos/degrees_tour.py
"""

from kalmanvar.chow import class_W, coeff_ctilde
from kalmanvar.enumerative import (
    deg_mu_kalman,
    discriminant_budget,
    partitions,
    sing_degrees,
)

print("== degrees of partition eigenvector loci ==")
for n, d in [(2, 2), (3, 2), (3, 3)]:
    for mu in partitions(d, n):
        print(f"  n={n} d={d} mu={mu.parts}: degree {deg_mu_kalman(n, d, mu)}")
print("  n=5 d=9 mu=(1, 2, 2, 4): degree", deg_mu_kalman(5, 9, (1, 2, 2, 4)))

print("\n== determinant degree budgets ==")
for n, d in [(2, 2), (3, 2), (3, 3)]:
    rep = discriminant_budget(n, d)
    parts = [f"{k}={v}" for k, v in rep.values.items() if k.startswith("deg_p_")]
    print(f"  n={n} d={d}: det degree {rep.values['deg_det_K_d']} = "
          f"{rep.values['deg_sqrt_Delta_d_sat']} (sqrt sat. discriminant) + "
          + " + ".join(parts))

print("\n== singular-locus degrees ==")
print("  two transversal lines in the plane:",
      sing_degrees("hyperplane_union", 3, d=2).values["degree"])
print("  a smooth plane conic:",
      sing_degrees("smooth_hypersurface", 3, d=2).values["degree"])
for d in (3, 4):
    print(f"  a smooth plane curve of degree {d}:",
          sing_degrees("smooth_hypersurface", 3, d=d).values["degree"],
          f"(= d(4d-3) = {d * (4 * d - 3)})")
print("  a smooth quadric in P^5:",
      sing_degrees("smooth_hypersurface", 6, d=2).values["degree"])

print("\n== distinct-eigenvector intersection classes ==")
print("  [W] for n = 2, s = 2:", class_W(2, 2).to_text())
for n, s in [(2, 1), (3, 2), (3, 3), (5, 2)]:
    print(f"  distinguished coefficient for n={n}, s={s}:", coeff_ctilde(n, s))
