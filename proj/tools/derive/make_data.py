"""Writes the bundled descriptor files under data/.

Run from the repository root:  python3 tools/derive/make_data.py
Needs python-flint for the factorizations of the special fibres.
"""
import json
import os
import sys

from flint import fmpq, fmpq_poly

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.normpath(os.path.join(HERE, "..", ".."))
X = fmpq_poly([0, 1])


def q(s):
    if isinstance(s, fmpq):
        return s
    s = str(s)
    if "/" in s:
        n, d = s.split("/")
        return fmpq(int(n), int(d))
    return fmpq(int(s))


def rs(v):
    v = q(v)
    return str(v.p) if v.q == 1 else "%d/%d" % (v.p, v.q)


def coeffs(P):
    return [rs(c) for c in P.coeffs()]


def qpoly(cs):
    return fmpq_poly([q(c) for c in cs])


def pt(x, y):
    return {"x": rs(x), "y": rs(y)}


O = {"inf": "O"}


def div(*terms):
    return [{"mult": m, "point": p} for p, m in terms]


def profile(deg, zero, k1728, inf):
    def f(d):
        return [{"count": c, "index": i} for i, c in sorted(d.items())]
    return {"0": f(zero), "1728": f(k1728), "degree": deg, "inf": f(inf)}


def weierstrass_norm(A, B, a):
    a1, a2, a3, a4, a6 = [q(t) for t in a]
    f = X**3 + a2 * X**2 + a4 * X + a6
    return A * A - A * B * (a1 * X + a3) - B * B * f


def factor_list(P):
    _, facs = P.factor()
    out = []
    for f, e in facs:
        f = f / f.coeffs()[-1]
        out.append({"factor": coeffs(f), "mult": int(e)})
    return sorted(out, key=lambda t: (len(t["factor"]), t["mult"], t["factor"]))


def special_fibres(N0, N1728, D):
    return {"0": factor_list(N0), "1728": factor_list(N1728), "inf": factor_list(D)}


def member_weierstrass(label, cremona, a, jfile, points, cusps, gens, shape, prof, prov):
    J = json.load(open(os.path.join(HERE, "out", jfile)))
    assert J["weierstrass"] == [str(t) for t in a]
    A, B, C = qpoly(J["num_y0"]), qpoly(J["num_y1"]), qpoly(J["den"])
    deg = prof["degree"]
    fib = special_fibres(weierstrass_norm(A, B, a), weierstrass_norm(A - 1728 * C, B, a), C)
    return {
        "schema_version": 1,
        "kind": "member",
        "label": label,
        "cremona": cremona,
        "model": {"type": "weierstrass", "a": [rs(t) for t in a]},
        "jmap": {"num0": coeffs(A), "num1": coeffs(B), "den": coeffs(C), "degree": deg},
        "bad_primes": [3, 5],
        "rational_points": [O] + [pt(*p) for p in points],
        "cusps": [O] + [pt(*p) for p in cusps],
        "non_cusps": [pt(*p) for p in points if p not in cusps],
        "mordell_weil": {
            "assumed_rank": 0,
            "rank_provenance": prov["rank"],
            "shape": shape,
            "generators": [{"divisor": div((pt(*P), 1), (O, -1)), "order": o} for P, o in gens],
            "provenance": prov["mw"],
        },
        "base_divisor": div((O, 2)),
        "belyi_profile": prof,
        "special_fibres": fib,
        "provenance": {"model": prov["model"], "jmap": prov["jmap"], "belyi_profile": prov["profile"]},
    }


def member_quartic(label, g, N, D, deg, points, gen, base, prof, prov):
    fib = special_fibres(N, N - 1728 * D, D)
    return {
        "schema_version": 1,
        "kind": "member",
        "label": label,
        "cremona": "",
        "model": {"type": "quartic", "g": coeffs(g)},
        "jmap": {"num0": coeffs(N), "num1": [], "den": coeffs(D), "degree": deg},
        "bad_primes": [2, 7],
        "rational_points": [pt(*p) for p in points],
        "cusps": [],
        "non_cusps": [pt(*p) for p in points],
        "mordell_weil": {
            "assumed_rank": 0,
            "rank_provenance": prov["rank"],
            "shape": [2],
            "generators": [{"divisor": div((pt(*gen[0]), 1), (pt(*gen[1]), -1)), "order": 2}],
            "provenance": prov["mw"],
        },
        "base_divisor": div((pt(*base), 2)),
        "belyi_profile": prof,
        "special_fibres": fib,
        "provenance": {"model": prov["model"], "jmap": prov["jmap"], "belyi_profile": prov["profile"]},
    }


def write(path, obj):
    full = os.path.join(ROOT, "data", path)
    os.makedirs(os.path.dirname(full), exist_ok=True)
    with open(full, "w") as f:
        f.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print("wrote", full)


def main():
    # X0(15) = 15A1.  The listed orders are the true ones: (-2,-2) has order 4, (-1,0) order 2.
    x0 = member_weierstrass(
        "X(b3,b5)", "15A1", [1, 1, 1, -10, -10], "x0_15_jmap.json",
        [(-1, 0), (-2, -2), (8, -27), (3, -2), ("-13/4", "9/8"), (-2, 3), (8, 18)],
        [(-1, 0), (-2, 3), (8, 18)],
        [((-1, 0), 2), ((-2, -2), 4)], [2, 4],
        profile(24, {3: 8}, {2: 12}, {1: 1, 3: 1, 5: 1, 15: 1}),
        {"rank": "published: rank 0 for 15A1",
         "mw": "published: Mordell-Weil group of 15A1 (generator orders recomputed)",
         "model": "published: Weierstrass model of X(b3,b5), Cremona 15A1",
         "jmap": "derived: tools/derive/derive_x0_15.py from q-expansions",
         "profile": "derived: cusp widths of X0(15) and Riemann-Hurwitz"})
    write("members/x0_15.json", x0)

    s3 = member_weierstrass(
        "X(s3,b5)", "15A3", [1, 1, 1, -5, 2], "s3b5_jmap.json",
        [("3/4", "-7/8"), (0, -2), (2, -4), (1, -1), (-3, 1), (0, 1), (2, 1)],
        [(0, 1), (2, -4), (-3, 1)],
        [((0, -2), 4), (("3/4", "-7/8"), 2)], [2, 4],
        profile(36, {3: 12}, {1: 4, 2: 16}, {3: 2, 15: 2}),
        {"rank": "published: rank 0 for 15A3",
         "mw": "published: Mordell-Weil group of 15A3",
         "model": "published: Weierstrass model of X(s3,b5), Cremona 15A3",
         "jmap": "derived: tools/derive/derive_s3b5.py from q-expansions",
         "profile": "derived: cusp widths and Riemann-Hurwitz"})
    write("members/s3b5.json", s3)

    gd7 = -7 * (X**4 - 10 * X**3 + 27 * X**2 - 10 * X - 27)
    Nd7 = X * (X + 1)**3 * (X**2 - 5 * X + 8)**3 * (X**2 - 5 * X + 1)**3 * (X**4 - 5 * X**3 + 8 * X**2 - 7 * X + 7)**3
    Dd7 = (X**3 - 4 * X**2 + 3 * X + 1)**7
    d7 = member_quartic(
        "X(d7)", gd7, Nd7, Dd7, 56, [("5/2", "7/4"), ("5/2", "-7/4")],
        (("5/2", "-7/4"), ("5/2", "7/4")), ("5/2", "7/4"),
        profile(56, {1: 2, 3: 18}, {2: 28}, {7: 8}),
        {"rank": "published: rank 0 for X(d7)",
         "mw": "published: Mordell-Weil group of X(d7)",
         "model": "published: quartic model of X(d7)",
         "jmap": "published: j-map of X(d7)",
         "profile": "computed: belyi_profile_quartic"})
    write("members/d7.json", d7)

    ge7 = 7 * (16 * X**4 + 68 * X**3 + 111 * X**2 + 62 * X + 11)
    Ne7 = (3 * X + 1)**3 * (4 * X**2 + 5 * X + 2)**3 * (X**2 + 3 * X + 4)**3 * (X**2 + 10 * X + 4)**3
    De7 = (X**3 + X**2 - 2 * X - 1)**7
    e7 = member_quartic(
        "X(e7)", ge7, Ne7, De7, 42, [("-1/3", "14/9"), ("-1/3", "-14/9")],
        (("-1/3", "-14/9"), ("-1/3", "14/9")), ("-1/3", "14/9"),
        profile(42, {3: 14}, {1: 2, 2: 20}, {7: 6}),
        {"rank": "published: rank 0 for X(e7)",
         "mw": "published: Mordell-Weil group of X(e7)",
         "model": "published: quartic model of X(e7)",
         "jmap": "published: j-map of X(e7)",
         "profile": "published: ramification lists for X(e7)"})
    write("members/e7.json", e7)

    pairs = [("b3b5d7", "X(b3,b5,d7)", "x0_15", "d7"),
             ("s3b5d7", "X(s3,b5,d7)", "s3b5", "d7"),
             ("b3b5e7", "X(b3,b5,e7)", "x0_15", "e7"),
             ("s3b5e7", "X(s3,b5,e7)", "s3b5", "e7")]
    for name, label, m1, m2 in pairs:
        write("pairs/%s.json" % name, {
            "schema_version": 1, "kind": "pair", "label": label,
            "member1": "../members/%s.json" % m1, "member2": "../members/%s.json" % m2,
            "primes": {"lo": 11, "hi": 99},
            "provenance": {"primes": "published: sieve primes 11 <= p < 100"}})

    write("fixtures/ns7.json", {
        "schema_version": 1, "kind": "line_fixture", "label": "X(ns7)",
        "jmap": {"num": coeffs(Ne7), "den": coeffs(De7)},
        "provenance": {"jmap": "published: the X(e7) j-map is pulled back from X(ns7) along x"}})


if __name__ == "__main__":
    sys.exit(main())
