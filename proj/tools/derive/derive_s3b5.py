import sys
from flint import fmpq, fmpq_poly
from qseries import *
from solve_j import solve, trim

PREC = int(sys.argv[1]) if len(sys.argv) > 1 else 200
a = [1, 1, 1, -5, 2]
f = eta_product({1: 1, 3: 1, 5: 1, 15: 1}, PREC + 2)
fs = [fmpq(0)] + f[: PREC]  # f(q) coefficients, index n -> a_n
def try_combo(c, lam, dcs):
    g = [fmpq(0)] * (PREC + 1)
    for n in range(1, PREC + 1):
        g[n] = fs[n] + (c * fs[n // 3] if n % 3 == 0 else 0)
    z = Laurent([g[n] / n * lam if n else fmpq(0) for n in range(PREC + 1)], 0, PREC + 1).normalize()
    x, y = compose_wp(a, z)
    dens = set()
    for n in range(-2, 40):
        dens.add(x.coeff(n).q)
    if max(dens) > 10**6:
        return None
    print("c", c, "lam", lam, "x", [str(x.coeff(n)) for n in range(-2, 8)])
    j = substitute_power(j_series(PREC // 3 + 2), 3)
    for dc in dcs:
        sols = solve(x, y, j, dc, dc, dc - 1)
        print(" dc", dc, len(sols))
        if sols:
            return sols[0], x, y
    return None

for c in [fmpq(3)]:
    for lam in [fmpq(1)]:
        r = try_combo(c, lam, range(26, 28))
        if r:
            (C, A, B), x, y = r
            lead = trim(C)[-1]
            print("FOUND c", c, "lam", lam)
            for nm, P in (("C", C), ("A", A), ("B", B)):
                print(nm, [str(t / lead) for t in trim(P)])
            print("C factors", fmpq_poly(trim(C)).numer().factor())
            coeffs = lambda v: [t / lead for t in trim(v)]
            import os
            os.makedirs("out", exist_ok=True)
            write_jmap("out/s3b5_jmap.json", "15A3", a, coeffs(A), coeffs(B), coeffs(C))
            sys.exit(0)
