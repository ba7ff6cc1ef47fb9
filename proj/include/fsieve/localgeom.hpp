#pragma once

#include "fsieve/curve.hpp"
#include "fsieve/report.hpp"

#include <map>
#include <optional>
#include <vector>

namespace fsieve {

/// j = (num0(x) + num1(x) y) / den(x).
struct JMap {
    Poly<Rat> num0, num1, den;
    int degree = 0;

    bool involves_y() const { return !num1.is_zero(); }
};

template <class K>
struct JMapOver {
    Poly<K> num0, num1, den;
};

template <class K>
JMapOver<K> jmap_over(const JMap & J, const K & like)
{
    return {lift_poly(J.num0, like), lift_poly(J.num1, like), lift_poly(J.den, like)};
}

/// Coordinate-determined uniformizer at P.
template <class K>
UniformizerRule canonical_rule(const CurveOver<K> & C, const CurvePoint<K> & P)
{
    using Kd = typename CurvePoint<K>::Kind;
    if (P.kind == Kd::QInfinity)
        return UniformizerRule::QuarticInfinity;
    if (P.kind == Kd::WInfinity)
        return UniformizerRule::WeierstrassInfinity;
    K fy = C.F.dy().eval(P.x, P.y);
    return zero_p(fy) ? UniformizerRule::YMinusY0 : UniformizerRule::XMinusX0;
}

/// x(t), y(t) at P in the canonical uniformizer, known to absolute precision `prec`
/// in the chart where P is affine.
template <class K>
Branch<K> local_branch(const CurveOver<K> & C, const CurvePoint<K> & P, int prec)
{
    using S = TruncSeries<K>;
    using Kd = typename CurvePoint<K>::Kind;
    if (!on_curve(C, P))
        throw GeometryError("point " + point_str(P) + " is not on " + C.model->label);
    const K & z = C.like;
    K one = one_like(z);
    if (P.kind == Kd::Affine)
        return series_newton_branch(C.F, P.x, P.y, canonical_rule(C, P), prec);
    if (P.kind == Kd::QInfinity) {
        // v^2 = u^4 g(1/u)
        std::vector<K> rev;
        for (int i = 4; i >= 0; --i)
            rev.push_back(C.g[i]);
        BiPoly<K> V;
        V.by_y = {-Poly<K>(rev, z), Poly<K>({}, z), Poly<K>::constant(one)};
        Branch<K> b = series_newton_branch(V, z, P.y, UniformizerRule::XMinusX0, prec);
        S uinv = S({one}, -1, S::kExact, z);
        return {uinv, b.y * uinv * uinv};
    }
    // Weierstrass infinity: t = x/y, s = 1/y
    const auto & a = C.a;
    BiPoly<K> W;
    W.by_y = {Poly<K>({z, z, z, -one}, z), Poly<K>({one, a[0], -a[1]}, z), Poly<K>({a[2], -a[3]}, z),
              Poly<K>({-a[4]}, z)};
    Branch<K> b = series_newton_branch(W, z, z, UniformizerRule::XMinusX0, prec + 3);
    S sinv = b.y.inverse();
    return {b.x * sinv, sinv};
}

template <class K>
TruncSeries<K> j_series(const JMapOver<K> & J, const Branch<K> & b)
{
    auto num = eval_series(J.num0, b.x) + eval_series(J.num1, b.x) * b.y;
    auto den = eval_series(J.den, b.x);
    if (den.exact()) {
        // give an exact denominator the working precision of the branch
        int ap = 64;
        for (const TruncSeries<K> * s : std::array<const TruncSeries<K> *, 3>{&num, &b.x, &b.y})
            if (!s->exact())
                ap = std::min(ap, s->abs_precision());
        den = den.truncated(std::max(ap, den.val_bound() + 1));
    }
    if (!den.valuation())
        throw PrecisionExhausted("j denominator vanishes to the working precision");
    if (!num.valuation()) {
        if (num.exact())
            throw GeometryError("j-map is identically zero");
        throw PrecisionExhausted("j numerator vanishes to the working precision");
    }
    return num * den.inverse();
}

/// Value in P^1: infinite or a field element.
template <class K>
struct ProjValue {
    bool infinite = false;
    K value{};

    friend bool operator==(const ProjValue & a, const ProjValue & b)
    {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

template <class K>
struct LocalExpansionData {
    CurvePoint<K> P;
    ProjValue<K> gamma;
    int m = 0;
    K eps{};
    UniformizerRule rule = UniformizerRule::XMinusX0;
};

/// Ramification index and leading coefficient of j at P:
/// j - gamma = eps t^m + ..., or 1/j = eps t^m + ... above infinity.
template <class K>
LocalExpansionData<K> ram_index_and_leadcoeff(const CurveOver<K> & C, const JMapOver<K> & J, const CurvePoint<K> & P,
                                              int precision = kDefaultPrecision)
{
    LocalExpansionData<K> out;
    out.P = P;
    out.rule = canonical_rule(C, P);
    Branch<K> b = local_branch(C, P, precision);
    TruncSeries<K> js = j_series(J, b);
    int v = *js.valuation();
    if (v < 0) {
        out.gamma.infinite = true;
        out.m = -v;
        out.eps = inv(js.lead());
    } else {
        out.gamma.value = js.coeff(0);
        TruncSeries<K> d = js - TruncSeries<K>::constant(out.gamma.value);
        if (!d.valuation())
            throw PrecisionExhausted("j - j(P) vanishes to the working precision");
        out.m = *d.valuation();
        out.eps = d.lead();
    }
    long ch = characteristic(out.eps);
    if (ch != 0 && out.m % ch == 0)
        throw Unsupported("wild ramification at " + point_str(P));
    return out;
}

/// Same, doubling the precision on PrecisionExhausted.
template <class K>
LocalExpansionData<K> ram_data(const CurveOver<K> & C, const JMapOver<K> & J, const CurvePoint<K> & P,
                               int start = 4, int cap = 512)
{
    for (int prec = start;; prec *= 2) {
        try {
            return ram_index_and_leadcoeff(C, J, P, prec);
        } catch (const PrecisionExhausted &) {
            if (prec >= cap)
                throw;
        }
    }
}

/// j(P) in P^1 without expanding when the denominator does not vanish.
template <class K>
ProjValue<K> j_value(const CurveOver<K> & C, const JMapOver<K> & J, const CurvePoint<K> & P)
{
    if (P.is_affine()) {
        K d = J.den.eval(P.x);
        if (!zero_p(d))
            return {false, (J.num0.eval(P.x) + J.num1.eval(P.x) * P.y) / d};
    }
    return ram_data(C, J, P).gamma;
}

enum class Branchpoint { Zero = 0, J1728 = 1, Infinity = 2 };
inline const char * branch_name(int b) { return b == 0 ? "0" : (b == 1 ? "1728" : "inf"); }

/// Ramification multisets over 0, 1728, infinity: index -> count.
struct BelyiProfile {
    int degree = 0;
    std::array<std::map<int, int>, 3> over;

    int total(int b) const
    {
        int s = 0;
        for (auto & [e, c] : over[b])
            s += e * c;
        return s;
    }
    int points(int b) const
    {
        int s = 0;
        for (auto & [e, c] : over[b])
            s += c;
        return s;
    }
    bool consistent() const { return total(0) == degree && total(1) == degree && total(2) == degree; }
    /// Riemann-Hurwitz genus of the source, when the cover is branched only above 0, 1728, infinity.
    int source_genus() const;
    std::string str() const;
    friend bool operator==(const BelyiProfile &, const BelyiProfile &) = default;
};

struct MemberDescriptor;

/// Profile of a quartic member whose j-map is a function of x alone.
BelyiProfile belyi_profile_quartic(const CurveModel & C, const JMap & J);
BelyiProfile belyi_profile_quartic(const MemberDescriptor & d);
/// Profile of a rational function N/D on the projective line.
BelyiProfile belyi_profile_rational(const Poly<Rat> & N, const Poly<Rat> & D);

/// Genus of the normalized fibre product over the j-line.
int rh_genus_fibre_product(const BelyiProfile & a, const BelyiProfile & b);

/// Checks a claimed profile at the given primes: fibres over F_{p^4} never exceed it.
VerificationReport verify_profile(const MemberDescriptor & d, const std::vector<std::uint32_t> & primes);

/// Fibre polynomials in x for each branch value (Weierstrass members use norms).
std::array<Poly<Rat>, 3> fibre_polynomials(const CurveModel & C, const JMap & J);

} // namespace fsieve
