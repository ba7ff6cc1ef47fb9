#pragma once

#include "fsieve/curve.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fsieve {

template <class K>
CurvePoint<K> ec_neg(const CurveOver<K> & C, const CurvePoint<K> & P)
{
    if (C.is_quartic())
        throw UsageError("group law needs a Weierstrass model");
    if (!P.is_affine())
        return P;
    return CurvePoint<K>::affine(P.x, -P.y - C.a[0] * P.x - C.a[2]);
}

/// Chord and tangent law on a long Weierstrass model.
template <class K>
CurvePoint<K> ec_add(const CurveOver<K> & C, const CurvePoint<K> & P, const CurvePoint<K> & Q)
{
    if (C.is_quartic())
        throw UsageError("group law needs a Weierstrass model");
    if (!P.is_affine())
        return Q;
    if (!Q.is_affine())
        return P;
    const K &a1 = C.a[0], &a2 = C.a[1], &a3 = C.a[2], &a4 = C.a[3], &a6 = C.a[4];
    K lam, nu;
    if (P.x == Q.x) {
        if (zero_p(P.y + Q.y + a1 * Q.x + a3))
            return CurvePoint<K>::w_infinity();
        K den = P.y + P.y + a1 * P.x + a3;
        K three = from_int<K>(3, P.x), two = from_int<K>(2, P.x);
        lam = (three * P.x * P.x + two * a2 * P.x + a4 - a1 * P.y) / den;
        nu = (-(P.x * P.x * P.x) + a4 * P.x + two * a6 - a3 * P.y) / den;
    } else {
        K den = Q.x - P.x;
        lam = (Q.y - P.y) / den;
        nu = (P.y * Q.x - Q.y * P.x) / den;
    }
    K x3 = lam * lam + a1 * lam - a2 - P.x - Q.x;
    K y3 = -(lam + a1) * x3 - nu - a3;
    return CurvePoint<K>::affine(x3, y3);
}

template <class K>
CurvePoint<K> ec_mul(const CurveOver<K> & C, CurvePoint<K> P, long n)
{
    if (n < 0) {
        P = ec_neg(C, P);
        n = -n;
    }
    CurvePoint<K> R = CurvePoint<K>::w_infinity();
    while (n) {
        if (n & 1)
            R = ec_add(C, R, P);
        n >>= 1;
        if (n)
            P = ec_add(C, P, P);
    }
    return R;
}

/// Exact order when it is at most `bound`, nullopt otherwise.
template <class K>
std::optional<long> ec_point_order(const CurveOver<K> & C, const CurvePoint<K> & P, long bound = 16)
{
    CurvePoint<K> R = P;
    for (long n = 1; n <= bound; ++n) {
        if (!R.is_affine())
            return n;
        R = ec_add(C, R, P);
    }
    return std::nullopt;
}

/// Subgroup generated by the given points (breadth-first closure), sorted.
template <class K>
std::vector<CurvePoint<K>> ec_span(const CurveOver<K> & C, const std::vector<CurvePoint<K>> & gens,
                                   std::size_t limit = 4096)
{
    std::vector<CurvePoint<K>> out{CurvePoint<K>::w_infinity()};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto & g : gens) {
            CurvePoint<K> s = ec_add(C, out[i], g);
            if (std::find(out.begin(), out.end(), s) == out.end()) {
                out.push_back(s);
                if (out.size() > limit)
                    throw Unsupported("generated subgroup exceeds the enumeration limit");
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Invariant factors d1 | d2 | ... of a finite abelian group.
struct AbelianGroupShape {
    std::vector<long> invariants;

    long order() const
    {
        long n = 1;
        for (long d : invariants)
            n *= d;
        return n;
    }
    std::string str() const;
    friend bool operator==(const AbelianGroupShape &, const AbelianGroupShape &) = default;

    /// Shape of a finite abelian group from the orders of all of its elements.
    static AbelianGroupShape from_element_orders(const std::vector<long> & orders);
};

/// gcd of #E(F_p) over the given odd primes of good reduction.
long torsion_gcd_bound(const CurveModel & C, const std::vector<std::uint32_t> & primes);

} // namespace fsieve
