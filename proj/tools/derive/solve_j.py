"""Find C(x) j = A(x) + B(x) y with minimal deg C, given q-series x, y, j."""
from flint import fmpq
from qseries import Laurent, nullspace


def solve(x, y, j, dc, da, db, nextra=30):
    xp = [Laurent([fmpq(1)], 0, 10**6)]
    for i in range(max(dc, da, db)):
        xp.append(xp[-1] * x)
    cols = []
    for i in range(dc + 1):
        cols.append(xp[i] * j)
    for i in range(da + 1):
        cols.append(-xp[i])
    for i in range(db + 1):
        cols.append(-(xp[i] * y))
    lo = min(c.v for c in cols)
    hi = min(c.prec for c in cols)
    ncols = len(cols)
    rows = [[c.coeff(n) for c in cols] for n in range(lo, hi)]
    print("system", len(rows), "x", ncols, file=__import__('sys').stderr)
    ns = nullspace(rows, ncols)
    out = []
    for v in ns:
        C = v[: dc + 1]
        A = v[dc + 1: dc + 1 + da + 1]
        B = v[dc + 1 + da + 1:]
        out.append((C, A, B))
    return out


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p
