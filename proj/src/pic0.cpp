#include "fsieve/pic0.hpp"

namespace fsieve {

long pic0_order(const CurveModel & C, const FiniteField & F)
{
    return static_cast<long>(enumerate_points(C, F).size());
}

CurveModel quartic_jacobian(const Poly<Rat> & g_in, const std::string & label)
{
    if (g_in.degree() != 4 || discriminant(g_in).is_zero())
        throw UsageError("quartic Jacobian needs a squarefree quartic");
    // y -> s y turns g into s^2 g; clear denominators first
    mpz_class s = 1;
    for (const auto & c : g_in.coeffs())
        s = lcm(s, c.den());
    Rat s2 = Rat(s) * Rat(s);
    Poly<Rat> g = s2 * g_in;
    const Rat &e = g[0], &d = g[1], &c = g[2], &b = g[3], &a = g[4];
    Rat I = Rat(12) * a * e - Rat(3) * b * d + c * c;
    Rat J = Rat(72) * a * c * e + Rat(9) * b * c * d - Rat(27) * a * d * d - Rat(27) * e * b * b - Rat(2) * c * c * c;
    Rat A2 = 0, A4 = Rat(-27) * I, A6 = Rat(-27) * J;
    // x = 9 x' + r, y = 27 y' while the result stays integral
    auto integral = [](const Rat & r) { return r.is_integer(); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (long r = 0; r < 729; ++r) {
            Rat R(r);
            Rat n2 = (A2 + Rat(3) * R) / Rat(9);
            Rat n4 = (A4 + Rat(2) * A2 * R + Rat(3) * R * R) / Rat(81);
            Rat n6 = (R * R * R + A2 * R * R + A4 * R + A6) / Rat(729);
            if (integral(n2) && integral(n4) && integral(n6)) {
                A2 = n2;
                A4 = n4;
                A6 = n6;
                changed = true;
                break;
            }
        }
    }
    // cosmetic: bring a2 into {-1, 0, 1} by x -> x + r
    long shift = 0;
    {
        mpz_class a2 = A2.num();
        mpz_class q = a2 / 3;
        mpz_class rem = a2 - 3 * q;
        if (rem == 2) {
            q += 1;
        } else if (rem == -2) {
            q -= 1;
        }
        shift = -q.get_si();
    }
    if (shift) {
        Rat R(shift);
        Rat n2 = A2 + Rat(3) * R;
        Rat n4 = A4 + Rat(2) * A2 * R + Rat(3) * R * R;
        Rat n6 = R * R * R + A2 * R * R + A4 * R + A6;
        A2 = n2;
        A4 = n4;
        A6 = n6;
    }
    return CurveModel::weierstrass(label, {Rat(0), A2, Rat(0), A4, A6});
}

} // namespace fsieve
