#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace fsieve {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
  public:
    Rat() = default;
    Rat(long n) : v_(n) {} // NOLINT(google-explicit-constructor)
    Rat(const mpz_class & n) : v_(n) {} // NOLINT(google-explicit-constructor)
    Rat(const mpz_class & num, const mpz_class & den);
    explicit Rat(const mpq_class & q) : v_(q) { v_.canonicalize(); }

    /// Parses "p" or "p/q" (optional sign, decimal digits).  Throws DataError.
    static Rat parse(std::string_view text);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class & raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// Canonical text form "p/q", or "p" when the denominator is 1.
    std::string str() const;

    Rat & operator+=(const Rat & o) { v_ += o.v_; return *this; }
    Rat & operator-=(const Rat & o) { v_ -= o.v_; return *this; }
    Rat & operator*=(const Rat & o) { v_ *= o.v_; return *this; }
    Rat & operator/=(const Rat & o);

    friend Rat operator+(Rat a, const Rat & b) { return a += b; }
    friend Rat operator-(Rat a, const Rat & b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat & b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat & b) { return a /= b; }
    Rat operator-() const { Rat r; r.v_ = -v_; return r; }

    friend bool operator==(const Rat & a, const Rat & b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat & a, const Rat & b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rat inverse() const;
    Rat pow(long e) const;

    /// Residue modulo p; throws ReductionError when p divides the denominator.
    std::uint64_t mod(std::uint64_t p) const;

  private:
    mpq_class v_;
};

std::ostream & operator<<(std::ostream & os, const Rat & r);

/// Exact square root when r is the square of a rational.
bool rat_is_square(const Rat & r, Rat * root = nullptr);
/// Exact cube root when r is the cube of a rational.
bool rat_is_cube(const Rat & r, Rat * root = nullptr);

} // namespace fsieve
