"""Exact q-expansion helpers used to derive the Weierstrass-member j-maps.

Series are plain lists of flint.fmpq with an integer valuation offset.
"""
from flint import fmpq, fmpq_mat

class Laurent:
    def __init__(self, coeffs, val, prec):
        # represents sum coeffs[i] q^(val+i) + O(q^prec)
        self.c = list(coeffs)[: max(0, prec - val)]
        self.v = val
        self.prec = prec

    def coeff(self, n):
        i = n - self.v
        if 0 <= i < len(self.c):
            return self.c[i]
        return fmpq(0)

    def __add__(self, o):
        if not isinstance(o, Laurent):
            o = Laurent([fmpq(o)], 0, self.prec)
        v = min(self.v, o.v)
        prec = min(self.prec, o.prec)
        return Laurent([self.coeff(n) + o.coeff(n) for n in range(v, prec)], v, prec)

    __radd__ = __add__

    def __neg__(self):
        return Laurent([-a for a in self.c], self.v, self.prec)

    def __sub__(self, o):
        return self + (-o if isinstance(o, Laurent) else fmpq(-o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Laurent):
            return Laurent([a * o for a in self.c], self.v, self.prec)
        v = self.v + o.v
        prec = min(self.prec + o.v, o.prec + self.v)
        n = prec - v
        out = [fmpq(0)] * max(n, 0)
        for i, a in enumerate(self.c):
            if a == 0 or i >= n:
                continue
            for k, b in enumerate(o.c):
                if i + k >= n:
                    break
                out[i + k] += a * b
        return Laurent(out, v, prec)

    __rmul__ = __mul__

    def normalize(self):
        while self.c and self.c[0] == 0:
            self.c.pop(0)
            self.v += 1
        return self

    def inverse(self):
        s = Laurent(self.c, self.v, self.prec).normalize()
        n = s.prec - s.v
        a0 = s.c[0]
        inv = [fmpq(0)] * n
        inv[0] = 1 / a0
        for k in range(1, n):
            acc = fmpq(0)
            for i in range(1, min(k, len(s.c) - 1) + 1):
                acc += s.c[i] * inv[k - i]
            inv[k] = -acc / a0
        return Laurent(inv, -s.v, s.prec - 2 * s.v)

    def power(self, e):
        r = Laurent([fmpq(1)], 0, self.prec - self.v * 0 + 10**6)
        r.prec = 10**9
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        for _ in range(e):
            r = r * base
        return r


def eta_product(exponents, nterms):
    """prod_m prod_n (1 - q^{m n})^{e_m}, as a power series with nterms coefficients."""
    c = [fmpq(0)] * nterms
    c[0] = fmpq(1)
    for m, e in exponents.items():
        for n in range(1, nterms):
            step = m * n
            if step >= nterms:
                break
            for _ in range(abs(e)):
                if e > 0:
                    for k in range(nterms - 1, step - 1, -1):
                        c[k] -= c[k - step]
                else:
                    for k in range(step, nterms):
                        c[k] += c[k - step]
    return c


def sigma(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def j_series(prec):
    """j(q) = E4^3/Delta to O(q^prec)."""
    n = prec + 2
    e4 = Laurent([fmpq(1)] + [fmpq(240 * sigma(i, 3)) for i in range(1, n)], 0, n)
    delta = Laurent([fmpq(0)] + eta_product({1: 24}, n)[: n - 1], 0, n)
    return (e4 * e4 * e4) * delta.inverse()


def substitute_power(s, m):
    """f(q) -> f(q^m)."""
    c = [fmpq(0)] * (len(s.c) * m)
    for i, a in enumerate(s.c):
        c[i * m] = a
    return Laurent(c, s.v * m, s.prec * m)


def weierstrass_wp(a, prec):
    """Laurent expansion (in z) of x, y on y^2+a1xy+a3y = x^3+a2x^2+a4x+a6 with dz = invariant differential."""
    a1, a2, a3, a4, a6 = [fmpq(t) for t in a]
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    g2 = c4 / 12
    g3 = c6 / 216
    # wp(z) = z^-2 + sum_{k>=1} c_k z^{2k}
    K = prec // 2 + 2
    ck = [fmpq(0)] * (K + 1)
    if K >= 1:
        ck[1] = g2 / 20
    if K >= 2:
        ck[2] = g3 / 28
    for k in range(3, K + 1):
        s = fmpq(0)
        for m in range(1, k - 1):
            s += ck[m] * ck[k - 1 - m]
        ck[k] = 3 * s / ((2 * k + 3) * (k - 2))
    return b2, ck


def compose_wp(a, z):
    """Given z(q) (valuation 1), return x(q), y(q)."""
    a1, a2, a3, a4, a6 = [fmpq(t) for t in a]
    prec = z.prec
    b2, ck = weierstrass_wp(a, prec + 8)
    zinv = z.inverse()
    z2 = z * z
    wp = zinv * zinv
    dwp = zinv * zinv * zinv * (-2)
    zpow = Laurent([fmpq(1)], 0, prec + 10)
    for k in range(1, len(ck)):
        zpow = zpow * z2
        if zpow.v >= prec + 4:
            break
        wp = wp + zpow * ck[k]
        # d/dz of c_k z^{2k} = 2k c_k z^{2k-1}
        dwp = dwp + (zpow * zinv) * (2 * k * ck[k])
    x = wp - b2 / 12
    y = (dwp - x * a1 - a3) * fmpq(1, 2)
    return x, y


def nullspace(rows, ncols):
    m = fmpq_mat(len(rows), ncols, [v for r in rows for v in r])
    r, rank = m.rref()
    pivots = []
    row = 0
    for col in range(ncols):
        if row < rank and r[row, col] != 0:
            pivots.append(col)
            row += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [fmpq(0)] * ncols
        v[fc] = fmpq(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, fc]
        out.append(v)
    return out


def write_jmap(path, label, a, A, B, C):
    import json
    def s(v):
        return [str(t) for t in v]
    json.dump({"label": label, "weierstrass": [str(t) for t in a],
               "num_y0": s(A), "num_y1": s(B), "den": s(C)}, open(path, "w"), indent=1)
