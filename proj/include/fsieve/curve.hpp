#pragma once

#include "fsieve/ff.hpp"
#include "fsieve/quad.hpp"
#include "fsieve/series.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <tuple>
#include <vector>

namespace fsieve {

/// Genus-one model over Q: long Weierstrass or y^2 = g(x) with deg g = 4.
struct CurveModel {
    enum class Kind { Weierstrass, Quartic };

    Kind kind = Kind::Weierstrass;
    std::string label;
    std::array<Rat, 5> a{}; // a1, a2, a3, a4, a6
    Poly<Rat> g;

    static CurveModel weierstrass(std::string label, const std::array<Rat, 5> & a);
    static CurveModel quartic(std::string label, const Poly<Rat> & g);

    bool is_quartic() const { return kind == Kind::Quartic; }
    /// Weierstrass discriminant, or disc(g) for quartics.
    Rat discriminant() const;
};

template <class K>
struct CurvePoint {
    enum class Kind : std::uint8_t { Affine, WInfinity, QInfinity };

    Kind kind = Kind::WInfinity;
    K x{}, y{}; // QInfinity keeps its branch value v (v^2 = lead g) in y

    static CurvePoint affine(const K & x, const K & y) { return {Kind::Affine, x, y}; }
    static CurvePoint w_infinity() { return {Kind::WInfinity, K{}, K{}}; }
    static CurvePoint q_infinity(const K & v) { return {Kind::QInfinity, zero_like(v), v}; }

    bool is_affine() const { return kind == Kind::Affine; }
    bool is_infinity() const { return kind != Kind::Affine; }

    friend bool operator==(const CurvePoint & P, const CurvePoint & Q)
    {
        if (P.kind != Q.kind)
            return false;
        if (P.kind == Kind::WInfinity)
            return true;
        if (P.kind == Kind::QInfinity)
            return P.y == Q.y;
        return P.x == Q.x && P.y == Q.y;
    }
    friend bool operator!=(const CurvePoint & P, const CurvePoint & Q) { return !(P == Q); }
    friend bool operator<(const CurvePoint & P, const CurvePoint & Q)
    {
        if (P.kind != Q.kind)
            return P.kind < Q.kind;
        if (P.kind == Kind::WInfinity)
            return false;
        if (P.kind == Kind::QInfinity)
            return P.y < Q.y;
        if (P.x == Q.x)
            return P.y < Q.y;
        return P.x < Q.x;
    }
};

template <class K>
std::string point_str(const CurvePoint<K> & P)
{
    using Kd = typename CurvePoint<K>::Kind;
    if (P.kind == Kd::WInfinity)
        return "inf";
    if (P.kind == Kd::QInfinity)
        return "inf[" + to_string(P.y) + "]";
    return "(" + to_string(P.x) + "," + to_string(P.y) + ")";
}

/// Model coefficients moved into a scalar type K, with the affine equation.
template <class K>
struct CurveOver {
    const CurveModel * model = nullptr;
    K like{};
    std::array<K, 5> a{};
    Poly<K> g;
    K lead{};
    BiPoly<K> F; // F(x, y) = 0 on the affine chart

    bool is_quartic() const { return model->is_quartic(); }
};

template <class K>
CurveOver<K> curve_over(const CurveModel & C, const K & like)
{
    CurveOver<K> W;
    W.model = &C;
    W.like = zero_like(like);
    K z = W.like, one = one_like(like);
    if (C.is_quartic()) {
        W.g = lift_poly(C.g, like);
        W.lead = W.g.lead();
        W.F.by_y = {-W.g, Poly<K>({}, z), Poly<K>::constant(one)};
    } else {
        for (int i = 0; i < 5; ++i)
            W.a[i] = lift_rat(C.a[i], like);
        // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6)
        Poly<K> f({W.a[4], W.a[3], W.a[1], one}, z);
        Poly<K> h({W.a[2], W.a[0]}, z);
        W.F.by_y = {-f, h, Poly<K>::constant(one)};
    }
    return W;
}

template <class K>
bool on_curve(const CurveOver<K> & C, const CurvePoint<K> & P)
{
    using Kd = typename CurvePoint<K>::Kind;
    switch (P.kind) {
    case Kd::WInfinity:
        return !C.is_quartic();
    case Kd::QInfinity:
        return C.is_quartic() && P.y * P.y == C.lead;
    default:
        return zero_p(C.F.eval(P.x, P.y));
    }
}

/// (x, y) -> (x, -y), swapping the two points at infinity.
template <class K>
CurvePoint<K> quartic_involution(const CurveOver<K> & C, const CurvePoint<K> & P)
{
    if (!C.is_quartic())
        throw UsageError("the involution is defined on quartic models");
    CurvePoint<K> Q = P;
    Q.y = -P.y;
    return Q;
}

template <class K>
struct Divisor {
    std::vector<std::pair<CurvePoint<K>, int>> terms; // sorted by point, no zero multiplicities

    Divisor() = default;
    Divisor(std::initializer_list<std::pair<CurvePoint<K>, int>> t) : terms(t) { normalize(); }
    explicit Divisor(std::vector<std::pair<CurvePoint<K>, int>> t) : terms(std::move(t)) { normalize(); }
    static Divisor point(const CurvePoint<K> & P, int m = 1) { return Divisor({{P, m}}); }

    int degree() const
    {
        int d = 0;
        for (const auto & t : terms)
            d += t.second;
        return d;
    }
    bool is_effective() const
    {
        for (const auto & t : terms)
            if (t.second < 0)
                return false;
        return true;
    }
    bool empty() const { return terms.empty(); }
    Divisor positive_part() const
    {
        Divisor r;
        for (const auto & t : terms)
            if (t.second > 0)
                r.terms.push_back(t);
        return r;
    }
    Divisor negative_part() const
    {
        Divisor r;
        for (const auto & t : terms)
            if (t.second < 0)
                r.terms.emplace_back(t.first, -t.second);
        return r;
    }
    int mult(const CurvePoint<K> & P) const
    {
        for (const auto & t : terms)
            if (t.first == P)
                return t.second;
        return 0;
    }

    friend Divisor operator+(const Divisor & A, const Divisor & B)
    {
        Divisor r = A;
        r.terms.insert(r.terms.end(), B.terms.begin(), B.terms.end());
        r.normalize();
        return r;
    }
    friend Divisor operator-(const Divisor & A, const Divisor & B) { return A + (-1) * B; }
    friend Divisor operator*(int k, Divisor A)
    {
        for (auto & t : A.terms)
            t.second *= k;
        A.normalize();
        return A;
    }
    friend bool operator==(const Divisor & A, const Divisor & B) { return A.terms == B.terms; }
    friend bool operator<(const Divisor & A, const Divisor & B) { return A.terms < B.terms; }

    void normalize()
    {
        std::sort(terms.begin(), terms.end(), [](const auto & u, const auto & v) { return u.first < v.first; });
        std::vector<std::pair<CurvePoint<K>, int>> out;
        for (const auto & t : terms) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(t);
        }
        terms.clear();
        for (auto & t : out)
            if (t.second != 0)
                terms.push_back(t);
    }
};

template <class K>
std::string divisor_str(const Divisor<K> & D)
{
    if (D.terms.empty())
        return "0";
    std::string s;
    for (const auto & [P, m] : D.terms) {
        if (!s.empty())
            s += m < 0 ? " - " : " + ";
        else if (m < 0)
            s += "-";
        int am = m < 0 ? -m : m;
        if (am != 1)
            s += std::to_string(am) + "*";
        s += point_str(P);
    }
    return s;
}

/// Points over a finite field; the model must have good reduction there.
std::vector<CurvePoint<FFElem>> enumerate_points(const CurveOver<FFElem> & C);
std::vector<CurvePoint<FFElem>> enumerate_points(const CurveModel & C, const FiniteField & F);

/// Smoothness of the reduced model at an odd prime p.
bool is_good_reduction(const CurveModel & C, std::uint32_t p);

CurvePoint<FFElem> frobenius(const CurvePoint<FFElem> & P);
CurvePoint<FFElem> embed_point(const CurvePoint<FFElem> & P, const FiniteField & F);

/// Rational point reduced into F; throws ReductionError when p divides a denominator.
CurvePoint<FFElem> reduce_point(const CurvePoint<Rat> & P, const FiniteField & F);
/// Quadratic point reduced into F, using the deterministic square root of d in F.
CurvePoint<FFElem> reduce_point(const CurvePoint<QuadElem> & P, const FiniteField & F);
Divisor<FFElem> reduce_divisor(const Divisor<Rat> & D, const FiniteField & F);
Divisor<FFElem> reduce_divisor(const Divisor<QuadElem> & D, const FiniteField & F);

/// Reduction mod p into F_p, or into F_{p^2} when a quadratic coordinate needs it.
Divisor<FFElem> reduce_divisor_mod_p(const CurveModel & C, const Divisor<Rat> & D, std::uint32_t p);
Divisor<FFElem> reduce_divisor_mod_p(const CurveModel & C, const Divisor<QuadElem> & D, std::uint32_t p);

CurvePoint<QuadElem> to_quad(const CurvePoint<Rat> & P);

} // namespace fsieve
