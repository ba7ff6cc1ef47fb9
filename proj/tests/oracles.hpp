#pragma once

// Brute-force reference computations used to cross-check the library.
// Nothing here calls the code paths being checked.

#include "fsieve/sieve.hpp"

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace fsieve;
using Pt = CurvePoint<FFElem>;
using Div = Divisor<FFElem>;

inline std::string data(const std::string & rel) { return data_dir() + "/" + rel; }

inline const MemberDescriptor & member(const std::string & name)
{
    static std::map<std::string, MemberDescriptor> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, load_member(data("members/" + name + ".json"))).first;
    return it->second;
}

inline const PairDescriptor & pair(const std::string & name)
{
    static std::map<std::string, PairDescriptor> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, load_pair(data("pairs/" + name + ".json"))).first;
    return it->second;
}

inline std::vector<std::uint32_t> sieve_primes()
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 11; p < 100; ++p) {
        bool prime = true;
        for (std::uint32_t q = 2; q * q <= p; ++q)
            prime = prime && p % q != 0;
        if (prime)
            out.push_back(p);
    }
    return out;
}

// Dense polynomial over a finite field, lowest degree first.
using FPoly = std::vector<FFElem>;

inline FFElem eval(const FPoly & f, const FFElem & x)
{
    FFElem r = x.field->zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it)
        r = r * x + *it;
    return r;
}

inline void trim(FPoly & f)
{
    while (!f.empty() && f.back().is_zero())
        f.pop_back();
}

// f / (x - r), assuming f(r) = 0.
inline FPoly deflate(const FPoly & f, const FFElem & r)
{
    FPoly q(f.size() - 1, r.field->zero());
    FFElem carry = r.field->zero();
    for (std::size_t i = f.size() - 1; i > 0; --i) {
        carry = carry * r + f[i];
        q[i - 1] = carry;
    }
    return q;
}

// Roots with multiplicity by trying every element of F.
inline std::vector<std::pair<FFElem, int>> roots_brute(FPoly f, const FiniteField & F)
{
    std::vector<std::pair<FFElem, int>> out;
    trim(f);
    for (std::uint64_t i = 0; i < F.order() && f.size() > 1; ++i) {
        FFElem r = F.from_index(i);
        int m = 0;
        while (f.size() > 1 && eval(f, r).is_zero()) {
            f = deflate(f, r);
            ++m;
        }
        if (m)
            out.emplace_back(r, m);
    }
    return out;
}

inline FPoly reduce_poly(const Poly<Rat> & g, const FiniteField & F)
{
    FPoly out;
    for (const auto & c : g.coeffs())
        out.push_back(F.from_rat(c));
    trim(out);
    return out;
}

// Points of a model over F by iterating y and solving for x by trial.
inline std::vector<Pt> points_y_first(const CurveModel & C, const FiniteField & F)
{
    std::vector<Pt> out;
    std::vector<FFElem> elems;
    for (std::uint64_t i = 0; i < F.order(); ++i)
        elems.push_back(F.from_index(i));
    if (C.is_quartic()) {
        FPoly g = reduce_poly(C.g, F);
        for (const auto & y : elems)
            for (const auto & x : elems)
                if (eval(g, x) == y * y)
                    out.push_back(Pt::affine(x, y));
        for (const auto & v : elems)
            if (v * v == g.back())
                out.push_back(Pt::q_infinity(v));
    } else {
        std::array<FFElem, 5> a;
        for (int i = 0; i < 5; ++i)
            a[i] = F.from_rat(C.a[i]);
        for (const auto & y : elems)
            for (const auto & x : elems)
                if (y * y + a[0] * x * y + a[2] * y == x * x * x + a[1] * x * x + a[3] * x + a[4])
                    out.push_back(Pt::affine(x, y));
        out.push_back(Pt::w_infinity());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Legendre-style count of a quartic over F_p: sum over x of 1 + chi(g(x)), plus infinity.
inline long quartic_count_chi(const Poly<Rat> & g0, const FiniteField & F)
{
    FPoly g = reduce_poly(g0, F);
    auto chi = [&](const FFElem & a) -> long {
        if (a.is_zero())
            return 0;
        FFElem e = a;
        std::uint64_t n = (F.order() - 1) / 2;
        FFElem r = F.one();
        while (n) {
            if (n & 1)
                r = r * e;
            e = e * e;
            n >>= 1;
        }
        return r == F.one() ? 1 : -1;
    };
    long n = 1 + chi(g.back());
    for (std::uint64_t i = 0; i < F.order(); ++i)
        n += 1 + chi(eval(g, F.from_index(i)));
    return n;
}

// Every F_p-rational effective divisor of degree 2 on a curve, as points over F_{p^2}.
inline std::vector<Div> rational_deg2(const std::vector<Pt> & pts_p2)
{
    std::vector<Div> out;
    for (std::size_t i = 0; i < pts_p2.size(); ++i) {
        const Pt & P = pts_p2[i];
        Pt Pf = frobenius(P);
        if (Pf == P) {
            for (std::size_t j = i; j < pts_p2.size(); ++j)
                if (frobenius(pts_p2[j]) == pts_p2[j])
                    out.push_back(Div({{P, 1}, {pts_p2[j], 1}}));
        } else if (P < Pf) {
            out.push_back(Div({{P, 1}, {Pf, 1}}));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Linear equivalence of degree-2 divisors on y^2 = g(x) over F_p by enumerating
// every function (a(x) + b y) / c(x), deg a <= 2, b constant, deg c <= 2.
//
// Divisors are computed by zero/pole bookkeeping: N = a^2 - b^2 g is the norm of
// a + b y, its roots locate the finite zeros, 4 - deg N zeros sit at the point at
// infinity where y/x^2 -> -a2/b, and the pole divisor of every numerator is
// 2 inf+ + 2 inf-. A function with numerator zeros Z and denominator zeros W has
// divisor Z - W, so D ~ E iff Z + E = W + D for some numerator Z and c-divisor W.
class LinEquivOracle {
  public:
    LinEquivOracle(const CurveModel & C, std::uint32_t p) : F2_(FiniteField::get(p, 2))
    {
        const FiniteField & F1 = FiniteField::get(p, 1);
        (void)F1;
        g_ = reduce_poly(C.g, F2_);
        for (std::uint64_t i = 0; i < F2_.order(); ++i) {
            FFElem v = F2_.from_index(i);
            if (v * v == g_.back())
                inf_.push_back(Pt::q_infinity(v));
        }
        std::sort(inf_.begin(), inf_.end());
        std::vector<FFElem> fp;
        for (std::uint32_t i = 0; i < p; ++i)
            fp.push_back(F2_.from_int(i));
        // numerators with b = 1
        for (const auto & a0 : fp)
            for (const auto & a1 : fp)
                for (const auto & a2 : fp)
                    if (auto Z = numerator_zeros({a0, a1, a2}))
                        zeros_.insert(*Z);
        // b = 0: monic c of degree <= 2 (these are also numerators)
        std::vector<FPoly> cs{{F2_.one()}};
        for (const auto & c0 : fp) {
            cs.push_back({c0, F2_.one()});
            for (const auto & c1 : fp)
                cs.push_back({c0, c1, F2_.one()});
        }
        for (const auto & c : cs)
            if (auto W = poly_zeros(c)) {
                den_.push_back(*W);
                zeros_.insert(*W);
            }
    }

    bool equivalent(const Div & D, const Div & E) const
    {
        for (const auto & W : den_) {
            Div Z = W + D - E;
            if (Z.is_effective() && zeros_.count(Z))
                return true;
        }
        return false;
    }

    std::size_t numerator_count() const { return zeros_.size(); }

  private:
    const FiniteField & F2_;
    FPoly g_;
    std::vector<Pt> inf_;
    std::set<Div> zeros_;
    std::vector<Div> den_;

    std::optional<Div> numerator_zeros(const std::array<FFElem, 3> & a) const
    {
        FPoly A(a.begin(), a.end());
        FPoly N(5, F2_.zero());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                N[i + j] += A[i] * A[j];
        for (std::size_t i = 0; i < g_.size(); ++i)
            N[i] -= g_[i];
        trim(N);
        std::vector<std::pair<Pt, int>> t;
        int deg = 0;
        for (const auto & [r, m] : roots_brute(N, F2_)) {
            t.emplace_back(Pt::affine(r, -eval(A, r)), m);
            deg += m;
        }
        int at_inf = 4 - (static_cast<int>(N.size()) - 1);
        if (at_inf > 0) {
            t.emplace_back(Pt::q_infinity(-a[2]), at_inf);
            deg += at_inf;
        }
        if (deg != 4)
            return std::nullopt; // some zero lies outside F_{p^2}
        return Div(std::move(t));
    }

    std::optional<Div> poly_zeros(const FPoly & c) const
    {
        std::vector<std::pair<Pt, int>> t;
        int deg = static_cast<int>(c.size()) - 1;
        for (const auto & [r, m] : roots_brute(c, F2_)) {
            FFElem gr = eval(g_, r);
            if (gr.is_zero()) {
                t.emplace_back(Pt::affine(r, gr), 2 * m);
                continue;
            }
            bool found = false;
            for (std::uint64_t i = 0; i < F2_.order() && !found; ++i) {
                FFElem s = F2_.from_index(i);
                if (s * s == gr) {
                    t.emplace_back(Pt::affine(r, s), m);
                    t.emplace_back(Pt::affine(r, -s), m);
                    found = true;
                }
            }
            if (!found)
                return std::nullopt;
        }
        for (const auto & P : inf_)
            t.emplace_back(P, 2 - deg);
        return Div(std::move(t));
    }
};

} // namespace oracle
