import sys
from flint import fmpq
from qseries import *

PREC = int(sys.argv[1]) if len(sys.argv) > 1 else 140
a = [1, 1, 1, -10, -10]
f = eta_product({1: 1, 3: 1, 5: 1, 15: 1}, PREC + 2)  # f/q
# z = sum a_n q^n / n, a_n = f[n-1]
z = Laurent([fmpq(0)] + [f[n - 1] / n for n in range(1, PREC + 1)], 0, PREC + 1).normalize()
x, y = compose_wp(a, z)
print("x:", [str(x.coeff(n)) for n in range(-2, 6)])
print("y:", [str(y.coeff(n)) for n in range(-3, 6)])
# check curve equation
a1, a2, a3, a4, a6 = [fmpq(t) for t in a]
lhs = y * y + x * y * a1 + y * a3 - (x * x * x + x * x * a2 + x * a4 + a6)
print("residual nonzero coeffs:", [n for n in range(lhs.v, lhs.prec) if lhs.coeff(n) != 0][:5])

from solve_j import solve, trim
j = j_series(PREC)
for dc in range(10, 30):
    sols = solve(x, y, j, dc, dc, dc - 1)
    print(dc, len(sols))
    if sols:
        C, A, B = sols[0]
        lead = trim(C)[-1]
        for nm, P in (("C", C), ("A", A), ("B", B)):
            print(nm, [str(c / lead) for c in trim(P)])
        break


from flint import fmpq_poly
Ap, Bp, Cp = fmpq_poly(trim(A)) * (1 / lead), fmpq_poly(trim(B)) * (1 / lead), fmpq_poly(trim(C)) * (1 / lead)
# The modular parametrization puts the cusps at the negatives of the published cusp set;
# compose with P -> -P, i.e. y -> -y - x - 1.
X = fmpq_poly([0, 1])
A2 = Ap - (X + 1) * Bp
B2 = -Bp
coeffs = lambda p: [p[i] for i in range(p.degree() + 1)]
import os
os.makedirs("out", exist_ok=True)
write_jmap("out/x0_15_jmap.json", "15A1", a, coeffs(A2), coeffs(B2), coeffs(Cp))
print("written")
