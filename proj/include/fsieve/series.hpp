#pragma once

#include "fsieve/errors.hpp"
#include "fsieve/poly.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace fsieve {

/// Default number of retained terms for local expansions.
inline constexpr int kDefaultPrecision = 24;

/// Truncated Laurent series in one local parameter t.
/// Holds sum c[i] t^(start+i), known modulo t^aprec.  Coefficients past the
/// stored vector (and below aprec) are zero.  Exact polynomials use kExact.
template <class K>
class TruncSeries {
  public:
    static constexpr int kExact = 1 << 28;

    TruncSeries() = default;
    TruncSeries(std::vector<K> c, int start, int aprec, const K & like)
        : c_(std::move(c)), start_(start), aprec_(aprec), zero_(zero_like(like))
    {
        normalize();
    }

    static TruncSeries constant(const K & a, int aprec = kExact) { return TruncSeries({a}, 0, aprec, a); }
    /// The parameter t itself.
    static TruncSeries var(const K & like, int aprec = kExact)
    {
        return TruncSeries({one_like(like)}, 1, aprec, like);
    }
    static TruncSeries zero_to(const K & like, int aprec) { return TruncSeries({}, aprec, aprec, like); }

    /// Valuation, or nullopt when the series is zero to its precision ("v >= precision").
    std::optional<int> valuation() const
    {
        if (c_.empty())
            return std::nullopt;
        return start_;
    }
    int abs_precision() const { return aprec_; }
    bool exact() const { return aprec_ >= kExact / 2; }
    /// Lower bound for the valuation.
    int val_bound() const { return c_.empty() ? aprec_ : start_; }
    const K & zero() const { return zero_; }

    /// Coefficient of t^n; throws PrecisionExhausted past the precision.
    K coeff(int n) const
    {
        if (n >= aprec_)
            throw PrecisionExhausted("series coefficient beyond precision");
        int i = n - start_;
        if (i < 0 || i >= static_cast<int>(c_.size()))
            return zero_;
        return c_[i];
    }
    /// Leading coefficient; throws PrecisionExhausted when zero to precision.
    const K & lead() const
    {
        if (c_.empty())
            throw PrecisionExhausted("series is zero to its precision");
        return c_.front();
    }

    TruncSeries truncated(int aprec) const
    {
        TruncSeries r = *this;
        r.aprec_ = std::min(aprec_, aprec);
        r.normalize();
        return r;
    }
    /// Multiply by t^k.
    TruncSeries shifted(int k) const
    {
        TruncSeries r = *this;
        r.start_ += k;
        r.aprec_ = exact() ? aprec_ : aprec_ + k;
        return r;
    }

    friend TruncSeries operator+(const TruncSeries & a, const TruncSeries & b) { return add(a, b, false); }
    friend TruncSeries operator-(const TruncSeries & a, const TruncSeries & b) { return add(a, b, true); }
    TruncSeries operator-() const
    {
        TruncSeries r = *this;
        for (auto & c : r.c_)
            c = -c;
        return r;
    }
    friend TruncSeries operator*(const TruncSeries & a, const TruncSeries & b)
    {
        const K & z = a.c_.empty() && !b.c_.empty() ? b.zero_ : a.zero_;
        int ap = std::min(cap(a.aprec_, b.val_bound()), cap(b.aprec_, a.val_bound()));
        if (a.c_.empty() || b.c_.empty())
            return zero_to(z, ap);
        int st = a.start_ + b.start_;
        int len = static_cast<int>(a.c_.size() + b.c_.size()) - 1;
        len = std::min(len, ap - st);
        std::vector<K> r(std::max(len, 0), z);
        for (int i = 0; i < static_cast<int>(a.c_.size()) && i < len; ++i) {
            if (zero_p(a.c_[i]))
                continue;
            for (int j = 0; j < static_cast<int>(b.c_.size()) && i + j < len; ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return TruncSeries(std::move(r), st, ap, z);
    }
    friend TruncSeries operator*(const K & s, TruncSeries a)
    {
        for (auto & c : a.c_)
            c = s * c;
        a.normalize();
        return a;
    }
    friend TruncSeries operator+(TruncSeries a, const K & s) { return a + constant(s); }

    TruncSeries inverse() const
    {
        if (c_.empty())
            throw PrecisionExhausted("inverting a series that is zero to its precision");
        int rel = exact() ? static_cast<int>(c_.size()) : aprec_ - start_;
        if (exact() && c_.size() == 1)
            return TruncSeries({inv(c_[0])}, -start_, kExact, zero_);
        if (exact())
            throw UsageError("inverse of a non-monomial exact series needs a precision");
        std::vector<K> r(rel, zero_);
        K i0 = inv(c_[0]);
        r[0] = i0;
        for (int n = 1; n < rel; ++n) {
            K s = zero_;
            for (int k = 1; k <= n && k < static_cast<int>(c_.size()); ++k)
                s += c_[k] * r[n - k];
            r[n] = -(s * i0);
        }
        return TruncSeries(std::move(r), -start_, rel - start_, zero_);
    }
    /// Inverse when this may be exact, computed to the given relative precision.
    TruncSeries inverse(int rel) const
    {
        TruncSeries t = *this;
        if (t.exact()) {
            if (t.c_.empty())
                throw UsageError("inverse of zero");
            t.aprec_ = t.start_ + rel;
        }
        return t.inverse();
    }
    friend TruncSeries operator/(const TruncSeries & a, const TruncSeries & b) { return a * b.inverse(); }

    friend bool operator==(const TruncSeries & a, const TruncSeries & b)
    {
        return a.aprec_ == b.aprec_ && a.c_ == b.c_ && (a.c_.empty() || a.start_ == b.start_);
    }

  private:
    static int cap(int aprec, int v)
    {
        if (aprec >= kExact / 2)
            return kExact;
        return aprec + v;
    }

    static TruncSeries add(const TruncSeries & a, const TruncSeries & b, bool sub)
    {
        const K & z = a.c_.empty() && !b.c_.empty() ? b.zero_ : a.zero_;
        int ap = std::min(a.aprec_, b.aprec_);
        int st = std::min(a.val_bound(), b.val_bound());
        st = std::min(st, ap);
        int end = st;
        if (!a.c_.empty())
            end = std::max(end, a.start_ + static_cast<int>(a.c_.size()));
        if (!b.c_.empty())
            end = std::max(end, b.start_ + static_cast<int>(b.c_.size()));
        end = std::min(end, ap);
        std::vector<K> r(std::max(end - st, 0), z);
        for (int i = 0; i < static_cast<int>(a.c_.size()); ++i) {
            int e = a.start_ + i;
            if (e < end)
                r[e - st] += a.c_[i];
        }
        for (int i = 0; i < static_cast<int>(b.c_.size()); ++i) {
            int e = b.start_ + i;
            if (e < end) {
                if (sub)
                    r[e - st] -= b.c_[i];
                else
                    r[e - st] += b.c_[i];
            }
        }
        return TruncSeries(std::move(r), st, ap, z);
    }

    void normalize()
    {
        if (!exact() && start_ + static_cast<int>(c_.size()) > aprec_)
            c_.resize(std::max(aprec_ - start_, 0), zero_);
        std::size_t lead = 0;
        while (lead < c_.size() && zero_p(c_[lead]))
            ++lead;
        if (lead == c_.size()) {
            c_.clear();
            start_ = aprec_;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            start_ += static_cast<int>(lead);
        }
        while (!c_.empty() && zero_p(c_.back()))
            c_.pop_back();
    }

    std::vector<K> c_;
    int start_ = kExact;
    int aprec_ = kExact;
    K zero_{};
};

template <class K>
TruncSeries<K> eval_series(const Poly<K> & f, const TruncSeries<K> & s)
{
    using S = TruncSeries<K>;
    if (f.is_zero())
        return S::zero_to(s.zero(), S::kExact);
    S r = S::constant(f.lead());
    for (int i = f.degree() - 1; i >= 0; --i)
        r = r * s + f[i];
    return r;
}

/// Polynomial in two variables, stored as coefficients (polynomials in x) of powers of y.
template <class K>
struct BiPoly {
    std::vector<Poly<K>> by_y;

    K eval(const K & x, const K & y) const
    {
        K r = zero_like(x);
        for (int i = static_cast<int>(by_y.size()) - 1; i >= 0; --i)
            r = r * y + by_y[i].eval(x);
        return r;
    }
    TruncSeries<K> eval(const TruncSeries<K> & x, const TruncSeries<K> & y) const
    {
        using S = TruncSeries<K>;
        S r = S::zero_to(x.zero(), S::kExact);
        for (int i = static_cast<int>(by_y.size()) - 1; i >= 0; --i)
            r = r * y + eval_series(by_y[i], x);
        return r;
    }
    BiPoly dy() const
    {
        BiPoly r;
        for (std::size_t i = 1; i < by_y.size(); ++i) {
            const K & z = by_y[i].zero();
            r.by_y.push_back(from_int<K>(static_cast<long>(i), z) * by_y[i]);
        }
        return r;
    }
    BiPoly dx() const
    {
        BiPoly r;
        for (const auto & c : by_y)
            r.by_y.push_back(c.derivative());
        return r;
    }
};

enum class UniformizerRule { XMinusX0, YMinusY0, QuarticInfinity, WeierstrassInfinity };

/// Local branch (x(t), y(t)) of a plane curve F(x, y) = 0 through a smooth point.
template <class K>
struct Branch {
    TruncSeries<K> x, y;
};

/// Solves F(x0 + t, y(t)) = 0 (XMinusX0) or F(x(t), y0 + t) = 0 (YMinusY0) by
/// Newton iteration, to absolute precision `precision`.
template <class K>
Branch<K> series_newton_branch(const BiPoly<K> & F, const K & x0, const K & y0, UniformizerRule rule, int precision)
{
    using S = TruncSeries<K>;
    if (precision < 1)
        throw UsageError("series precision must be positive");
    if (!zero_p(F.eval(x0, y0)))
        throw GeometryError("base point is not on the curve");
    bool solve_y = rule == UniformizerRule::XMinusX0;
    if (rule != UniformizerRule::XMinusX0 && rule != UniformizerRule::YMinusY0)
        throw UsageError("branch rule must be an affine chart rule");
    BiPoly<K> Fy = F.dy(), Fx = F.dx();
    K dpart = solve_y ? Fy.eval(x0, y0) : Fx.eval(x0, y0);
    if (zero_p(dpart)) {
        if (zero_p(Fy.eval(x0, y0)) && zero_p(Fx.eval(x0, y0)))
            throw GeometryError("singular point");
        throw GeometryError("uniformizer rule does not fit this point");
    }
    S t = S::var(x0).truncated(precision);
    S fixed = S::constant(solve_y ? x0 : y0).truncated(precision) + t;
    S moving = S::constant(solve_y ? y0 : x0).truncated(precision);
    int iters = 1;
    while ((1 << (iters - 1)) < precision)
        ++iters;
    const BiPoly<K> & D = solve_y ? Fy : Fx;
    for (int k = 0; k < iters + 1; ++k) {
        S val = solve_y ? F.eval(fixed, moving) : F.eval(moving, fixed);
        if (!val.valuation())
            break;
        S der = solve_y ? D.eval(fixed, moving) : D.eval(moving, fixed);
        moving = (moving - val * der.inverse()).truncated(precision);
    }
    S res = solve_y ? F.eval(fixed, moving) : F.eval(moving, fixed);
    if (res.valuation() && *res.valuation() < precision)
        throw std::logic_error("Newton iteration failed to converge at a smooth point");
    return solve_y ? Branch<K>{fixed, moving} : Branch<K>{moving, fixed};
}

} // namespace fsieve
