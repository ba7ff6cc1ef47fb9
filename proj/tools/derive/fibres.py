"""Factor the special-fibre polynomials of the four member curves over Q."""
import json, sys
from flint import fmpq_poly, fmpz_poly, fmpq

def load_jmap(path):
    return json.load(open(path))

def qp(coeffs):
    return fmpq_poly([fmpq(*map(int, c.split('/'))) if '/' in c else fmpq(int(c)) for c in coeffs])

def norm_poly(A, B, a):
    a1, a2, a3, a4, a6 = [fmpq(t) for t in a]
    X = fmpq_poly([0, 1])
    f = X**3 + a2 * X**2 + a4 * X + a6
    return A * A - A * B * (a1 * X + a3) - B * B * f

def show(name, P):
    c, facs = P.numer().factor()
    print(name, "deg", P.degree(), "factor degrees:", sorted((f.degree(), e) for f, e in facs))
    return facs
