"""Tour: the Kalman determinant and its factorization structure.

The matrices A for which some eigenvector lies on the hypersurface V(f)
satisfy det K_d(f, A) = 0, where K_d stacks the coefficient rows of f
against the degree-d symmetric power of A.  That determinant factors into
a square root of a saturated discriminant and one factor per eigenvalue
partition; the pieces are certified here by exact line-order computations
and a randomized-but-seeded audit.

Run:  python3 demos/factorization_tour.py
"""

import json
import random

from kalmanvar.enumerative import discriminant_budget
from kalmanvar.kalman import (
    KalmanInstance,
    factor_order_along_line,
    factorization_audit,
    kalman_det,
    kalman_matrix,
)
from kalmanvar.polycore import parse_polynomial, x_universe
from kalmanvar.polymatrix import PolyMatrix
from kalmanvar.witness import random_invertible, special_locus_matrix

U2 = x_universe(2)
f = parse_polynomial("x1^2 - x2^2", U2)

print("== the Kalman matrix for f = x1^2 - x2^2 (n = 2, d = 2) ==")
inst = KalmanInstance.from_form(f)
K = kalman_matrix(inst, PolyMatrix.generic(2))
for row in K.rows:
    print("  [ " + " | ".join(p.to_text() for p in row) + " ]")

det = kalman_det(f)
print(f"\n  det: {det.to_text()}")
print(f"  total degree {det.is_homogeneous()}")

print("\n== degree budget ==")
rep = discriminant_budget(2, 2)
for k, v in rep.values.items():
    print(f"  {k} = {v}")

print("\n== factor multiplicities via line orders ==")
rng = random.Random(7)
direction = random_invertible(rng, 2)
rank_def = special_locus_matrix("rank_deficient", 2, seed=1)["A"]
jordan = special_locus_matrix("repeated_eigenvalue_jordan", 2, seed=2)["A"]
print("  order of det along a line through a rank-deficient matrix:",
      factor_order_along_line("det", rank_def, direction, f=f))
print("  order of the eigenvalue discriminant at a Jordan-type matrix:",
      factor_order_along_line("delta", jordan, direction))
print("  order of the symmetric-power discriminant at the same matrix:",
      factor_order_along_line("delta_d", jordan, direction, d=2))

print("\n== seeded audit ==")
report = factorization_audit(f, trials=20, seed=0)
print(f"  status: {report['status']}")
for a in report["assertions"]:
    print(f"  {a['assertion']}: {a['status']}")
print("\nfull report is JSON-serializable, e.g.:")
print(json.dumps({"status": report["status"],
                  "assertions": [a["assertion"] for a in report["assertions"]]}))
