#include "fsieve/ecgroup.hpp"

#include <numeric>

namespace fsieve {

std::string AbelianGroupShape::str() const
{
    if (invariants.empty())
        return "0";
    std::string s;
    for (long d : invariants) {
        if (!s.empty())
            s += " x ";
        s += "Z/" + std::to_string(d);
    }
    return s;
}

AbelianGroupShape AbelianGroupShape::from_element_orders(const std::vector<long> & orders)
{
    long n = static_cast<long>(orders.size());
    auto killed = [&](long m) {
        long c = 0;
        for (long o : orders)
            c += (m % o == 0);
        return c;
    };
    // per prime l: number of invariant factors with l-valuation >= k is log_l(|G[l^k]| / |G[l^(k-1)]|)
    std::map<long, std::vector<int>> lparts; // l -> valuations of factors, descending
    long m = n;
    for (long l = 2; l <= m; ++l) {
        if (m % l)
            continue;
        while (m % l == 0)
            m /= l;
        long prev = 1;
        std::vector<int> atleast;
        for (long lk = l;; lk *= l) {
            long c = killed(lk);
            long ratio = c / prev;
            int r = 0;
            while (ratio > 1) {
                ratio /= l;
                ++r;
            }
            if (r == 0)
                break;
            atleast.push_back(r);
            prev = c;
        }
        // atleast[k-1] = number of factors with valuation >= k
        int nf = atleast.empty() ? 0 : atleast[0];
        std::vector<int> vals(nf, 0);
        for (std::size_t k = 0; k < atleast.size(); ++k)
            for (int i = 0; i < atleast[k]; ++i)
                vals[i] = static_cast<int>(k) + 1;
        lparts[l] = vals;
    }
    std::size_t nf = 0;
    for (auto & [l, v] : lparts)
        nf = std::max(nf, v.size());
    std::vector<long> inv(nf, 1);
    for (auto & [l, v] : lparts)
        for (std::size_t i = 0; i < v.size(); ++i)
            for (int e = 0; e < v[i]; ++e)
                inv[nf - 1 - i] *= l;
    AbelianGroupShape s;
    for (long d : inv)
        if (d > 1)
            s.invariants.push_back(d);
    return s;
}

long torsion_gcd_bound(const CurveModel & C, const std::vector<std::uint32_t> & primes)
{
    if (primes.empty())
        throw UsageError("torsion bound needs at least one prime");
    if (C.is_quartic())
        throw UsageError("torsion bound needs a Weierstrass model");
    long g = 0;
    for (auto p : primes) {
        if (p % 2 == 0 || !is_good_reduction(C, p))
            throw UsageError("prime " + std::to_string(p) + " is not an odd prime of good reduction");
        long n = static_cast<long>(enumerate_points(C, FiniteField::get(p)).size());
        g = std::gcd(g, n);
    }
    return g;
}

} // namespace fsieve
