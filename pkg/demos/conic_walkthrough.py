"""Walkthrough: the eigenvector equation of a plane conic.

For a 3x3 matrix A and a conic f in x1, x2, x3, the matrices having an
eigenvector on V(f) form a hypersurface.  Its equation is found by
eliminating x from the eigenvector minors together with f, via a resultant
of three quadrics, which then splits into an extraneous factor g1 and the
actual equation g2.

Run:  python3 demos/conic_walkthrough.py
"""

from kalmanvar.polycore import parse_polynomial, x_universe
from kalmanvar.salmon import (
    conic_minor_quadrics,
    g1_factor,
    generic_conic,
    kalman_conic_equation,
)

U3 = x_universe(3)

print("== the two eigenvector minors (independent of the conic) ==")
q1, q2 = conic_minor_quadrics()
print(f"  minor 1: {q1.to_text()}")
print(f"  minor 2: {q2.to_text()}")

print("\n== generic conic ==")
f = generic_conic()
print(f"  f = {f.to_text()}")
g1 = g1_factor()
g2 = kalman_conic_equation()
print(f"  extraneous factor g1 = {g1.to_text()}")
print(f"  equation g2: {g2.term_count()} terms, "
      f"degree {g2.degree_in([n for n in g2.u.names if n.startswith('a')])} "
      f"in the matrix entries, "
      f"degree {g2.degree_in([n for n in g2.u.names if n.startswith('b')])} "
      f"in the conic coefficients")

print("\n== the conic f = x2^2 - x1*x3 ==")
f0 = parse_polynomial("x2^2 - x1*x3", U3)
g1s = g1_factor(f0)
g2s = kalman_conic_equation(f0)
print(f"  g1 = {g1s.to_text()}")
print(f"  g2: {g2s.term_count()} terms, total degree {g2s.is_homogeneous()}")
text = g2s.to_text()
print(f"  first terms: {text[:84]}...")
