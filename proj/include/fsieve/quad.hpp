#pragma once

#include "fsieve/rat.hpp"

#include <optional>
#include <string>

namespace fsieve {

/// Element a + b*sqrt(d) of Q(sqrt d), d a squarefree integer other than 0, 1.
/// Elements with d == 0 are plain rationals and combine with any field.
class QuadElem {
  public:
    QuadElem() = default;
    QuadElem(const Rat & a) : a_(a) {} // NOLINT(google-explicit-constructor)
    QuadElem(long a) : a_(a) {}        // NOLINT(google-explicit-constructor)
    QuadElem(const Rat & a, const Rat & b, long d);

    /// sqrt(r) as an element of Q(sqrt(squarefree part of r)).
    static QuadElem sqrt_of(const Rat & r);

    const Rat & a() const { return a_; }
    const Rat & b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadElem conj() const;
    Rat norm() const;
    Rat trace() const;
    QuadElem inverse() const;

    QuadElem & operator+=(const QuadElem & o);
    QuadElem & operator-=(const QuadElem & o);
    QuadElem & operator*=(const QuadElem & o);
    QuadElem & operator/=(const QuadElem & o) { return *this *= o.inverse(); }
    friend QuadElem operator+(QuadElem x, const QuadElem & y) { return x += y; }
    friend QuadElem operator-(QuadElem x, const QuadElem & y) { return x -= y; }
    friend QuadElem operator*(QuadElem x, const QuadElem & y) { return x *= y; }
    friend QuadElem operator/(QuadElem x, const QuadElem & y) { return x /= y; }
    QuadElem operator-() const;

    friend bool operator==(const QuadElem & x, const QuadElem & y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
    }
    friend bool operator<(const QuadElem & x, const QuadElem & y)
    {
        if (x.a_ != y.a_)
            return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    std::string str() const;

  private:
    long join(const QuadElem & o) const;

    Rat a_, b_;
    long d_ = 0;
};

/// Squarefree kernel of a nonzero integer (sign kept).
long squarefree_part(const mpz_class & n);

/// A square root inside the field of x (or inside Q(sqrt d) when x is rational and d given).
std::optional<QuadElem> quad_sqrt(const QuadElem & x, long d_hint = 0);
/// A cube root of x inside its own field, when one exists.
std::optional<QuadElem> quad_cbrt(const QuadElem & x);

} // namespace fsieve
