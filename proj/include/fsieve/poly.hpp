#pragma once

#include "fsieve/errors.hpp"
#include "fsieve/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fsieve {

/// Dense univariate polynomial, coefficients lowest degree first.
/// The zero polynomial has no coefficients and degree kZeroDegree.
template <class K>
class Poly {
  public:
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    explicit Poly(std::vector<K> c) : c_(std::move(c))
    {
        if (!c_.empty())
            zero_ = zero_like(c_.front());
        trim();
    }
    Poly(std::vector<K> c, const K & like) : c_(std::move(c)), zero_(zero_like(like)) { trim(); }

    static Poly constant(const K & a) { return Poly(std::vector<K>{a}, a); }
    static Poly monomial(const K & a, int n)
    {
        std::vector<K> c(n + 1, zero_like(a));
        c[n] = a;
        return Poly(std::move(c), a);
    }
    static Poly x(const K & like) { return monomial(one_like(like), 1); }
    /// x - r
    static Poly linear_root(const K & r) { return Poly(std::vector<K>{-r, one_like(r)}, r); }

    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K> & coeffs() const { return c_; }
    const K & zero() const { return zero_; }
    const K & operator[](int i) const
    {
        return (i < 0 || i >= static_cast<int>(c_.size())) ? zero_ : c_[i];
    }
    const K & lead() const { return c_.empty() ? zero_ : c_.back(); }

    K eval(const K & t) const
    {
        if (c_.empty())
            return zero_like(t);
        K r = c_.back();
        for (int i = degree() - 1; i >= 0; --i)
            r = r * t + c_[i];
        return r;
    }

    Poly derivative() const
    {
        if (degree() < 1)
            return Poly({}, zero_);
        std::vector<K> d;
        for (int i = 1; i <= degree(); ++i)
            d.push_back(from_int<K>(i, zero_) * c_[i]);
        return Poly(std::move(d), zero_);
    }

    Poly monic() const
    {
        if (c_.empty())
            return *this;
        K li = inv(lead());
        std::vector<K> d = c_;
        for (auto & a : d)
            a *= li;
        return Poly(std::move(d), zero_);
    }

    Poly & operator+=(const Poly & o)
    {
        if (c_.empty() && !o.c_.empty())
            zero_ = o.zero_;
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly & operator-=(const Poly & o)
    {
        if (c_.empty() && !o.c_.empty())
            zero_ = o.zero_;
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly & b) { return a += b; }
    friend Poly operator-(Poly a, const Poly & b) { return a -= b; }
    Poly operator-() const
    {
        Poly r = *this;
        for (auto & a : r.c_)
            a = -a;
        return r;
    }
    friend Poly operator*(const Poly & a, const Poly & b)
    {
        if (a.c_.empty() || b.c_.empty())
            return Poly({}, a.c_.empty() ? b.zero_ : a.zero_);
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (zero_p(a.c_[i]))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r), a.zero_);
    }
    Poly & operator*=(const Poly & o) { return *this = *this * o; }
    friend Poly operator*(const K & s, Poly a)
    {
        for (auto & c : a.c_)
            c = s * c;
        a.trim();
        return a;
    }

    /// Euclidean division; the divisor must be nonzero with invertible lead.
    static std::pair<Poly, Poly> divmod(const Poly & a, const Poly & b)
    {
        if (b.is_zero())
            throw UsageError("polynomial division by zero");
        if (a.degree() < b.degree())
            return {Poly({}, a.zero_), a};
        std::vector<K> r = a.c_;
        std::vector<K> q(a.degree() - b.degree() + 1, a.zero_);
        K li = inv(b.lead());
        int db = b.degree();
        for (int i = a.degree(); i >= db; --i) {
            if (zero_p(r[i]))
                continue;
            K f = r[i] * li;
            q[i - db] = f;
            for (int j = 0; j <= db; ++j)
                r[i - db + j] -= f * b.c_[j];
        }
        r.resize(db);
        return {Poly(std::move(q), a.zero_), Poly(std::move(r), a.zero_)};
    }
    friend Poly operator/(const Poly & a, const Poly & b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly & a, const Poly & b) { return divmod(a, b).second; }

    friend bool operator==(const Poly & a, const Poly & b) { return a.c_ == b.c_; }

    Poly pow(unsigned e) const
    {
        Poly r = constant(one_like(zero_));
        for (unsigned i = 0; i < e; ++i)
            r *= *this;
        return r;
    }

    /// this(g(x))
    Poly compose(const Poly & g) const
    {
        Poly r({}, zero_);
        for (int i = degree(); i >= 0; --i)
            r = r * g + constant(c_[i]);
        return r;
    }

    template <class F>
    auto map(F && fn) const -> Poly<decltype(fn(std::declval<const K &>()))>
    {
        using L = decltype(fn(std::declval<const K &>()));
        std::vector<L> d;
        d.reserve(c_.size());
        for (const auto & a : c_)
            d.push_back(fn(a));
        L z = fn(zero_);
        return Poly<L>(std::move(d), z);
    }

    std::string str(const std::string & var = "x") const
    {
        if (c_.empty())
            return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (zero_p(c_[i]))
                continue;
            std::string a = to_string(c_[i]);
            bool neg = a.size() > 1 && a[0] == '-' && a.find_first_of("+-", 1) == std::string::npos;
            if (neg && !s.empty())
                a = a.substr(1);
            if (!s.empty())
                s += neg ? " - " : " + ";
            else if (neg && i > 0 && a == "-1")
                a = "-", neg = false;
            if (i == 0)
                s += a;
            else {
                if (a == "-")
                    s += "-";
                else if (a != "1")
                    s += (a.find_first_of("+- ", 1) != std::string::npos ? "(" + a + ")" : a) + "*";
                s += var;
                if (i > 1)
                    s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void trim()
    {
        while (!c_.empty() && zero_p(c_.back()))
            c_.pop_back();
    }

    std::vector<K> c_;
    K zero_{};
};

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b)
{
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Yun's algorithm.  Factors are monic, squarefree, pairwise coprime; the
/// product of factor^mult is monic(f).
template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K> & f)
{
    if (f.is_zero())
        throw UsageError("squarefree decomposition of the zero polynomial");
    long ch = characteristic(f.zero());
    if (ch != 0 && ch <= f.degree())
        throw Unsupported("squarefree decomposition needs characteristic 0 or p > degree");
    std::vector<std::pair<Poly<K>, int>> out;
    Poly<K> fm = f.monic();
    if (fm.degree() == 0)
        return out;
    Poly<K> d = fm.derivative();
    Poly<K> a = poly_gcd(fm, d);
    Poly<K> b = fm / a;
    Poly<K> c = d / a;
    Poly<K> e = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        Poly<K> ai = poly_gcd(b, e);
        b = b / ai;
        c = e / ai;
        e = c - b.derivative();
        if (ai.degree() > 0)
            out.emplace_back(ai.monic(), i);
    }
    return out;
}

template <class K>
K resultant(Poly<K> f, Poly<K> g)
{
    K zero = zero_like(f.zero());
    K acc = one_like(zero);
    while (true) {
        if (f.is_zero() || g.is_zero())
            return zero;
        int m = f.degree(), n = g.degree();
        if (n == 0)
            return acc * power(g.lead(), static_cast<unsigned long>(m));
        Poly<K> r = f % g;
        if (r.is_zero())
            return zero;
        if ((static_cast<long>(m) * n) % 2)
            acc = -acc;
        acc *= power(g.lead(), static_cast<unsigned long>(m - r.degree()));
        f = std::move(g);
        g = std::move(r);
    }
}

template <class K>
K discriminant(const Poly<K> & f)
{
    int n = f.degree();
    if (n < 1)
        throw UsageError("discriminant of a constant");
    K r = resultant(f, f.derivative()) * inv(f.lead());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2)
        r = -r;
    return r;
}

/// Rational coefficients reduced into another scalar type.
template <class K>
Poly<K> lift_poly(const Poly<Rat> & f, const K & like)
{
    std::vector<K> c;
    for (const auto & a : f.coeffs())
        c.push_back(lift_rat(a, like));
    return Poly<K>(std::move(c), zero_like(like));
}

} // namespace fsieve
