#pragma once

#include "fsieve/poly.hpp"
#include "fsieve/rat.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fsieve {

class FiniteField;

/// Element of F_{p^k}: coordinates in the power basis of the defining polynomial.
/// A null field pointer is the universal zero, compatible with every field.
struct FFElem {
    const FiniteField * field = nullptr;
    std::array<std::uint32_t, 4> c{};

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    FFElem & operator+=(const FFElem & o);
    FFElem & operator-=(const FFElem & o);
    FFElem & operator*=(const FFElem & o);
    FFElem & operator/=(const FFElem & o);
    friend FFElem operator+(FFElem a, const FFElem & b) { return a += b; }
    friend FFElem operator-(FFElem a, const FFElem & b) { return a -= b; }
    friend FFElem operator*(FFElem a, const FFElem & b) { return a *= b; }
    friend FFElem operator/(FFElem a, const FFElem & b) { return a /= b; }
    FFElem operator-() const;

    friend bool operator==(const FFElem & a, const FFElem & b)
    {
        if (a.is_zero() || b.is_zero())
            return a.is_zero() && b.is_zero();
        return a.field == b.field && a.c == b.c;
    }
    /// Lexicographic on the coordinate vector, lowest coordinate first.
    friend bool operator<(const FFElem & a, const FFElem & b) { return a.c < b.c; }
};

class FiniteField {
  public:
    /// Shared instance for F_{p^k}; p prime below 2^31, 1 <= k <= 4.
    static const FiniteField & get(std::uint32_t p, int k = 1);

    std::uint32_t p() const { return p_; }
    int k() const { return k_; }
    std::uint64_t order() const { return q_; }
    /// Monic defining polynomial over F_p, coefficients lowest first (length k + 1).
    const std::vector<std::uint32_t> & modulus() const { return mod_; }
    std::string name() const;

    FFElem zero() const { return FFElem{this, {}}; }
    FFElem one() const { return from_int(1); }
    FFElem from_int(long n) const;
    FFElem from_rat(const Rat & r) const;
    /// The class of x modulo the defining polynomial.
    FFElem generator() const;
    FFElem from_coords(const std::array<std::uint32_t, 4> & c) const;
    FFElem from_index(std::uint64_t i) const;
    std::uint64_t index(const FFElem & a) const;
    /// Embeds an element of the prime field F_p.
    FFElem embed(const FFElem & a) const;
    /// Whether the element lies in the prime field.
    bool in_prime_field(const FFElem & a) const;

    // arithmetic kernels (used by FFElem)
    void mul(FFElem & a, const FFElem & b) const;

    /// Multiplicative generator, when the field is small enough to tabulate.
    bool tabulated() const { return !exp_.empty(); }
    std::uint64_t dlog(const FFElem & a) const;
    FFElem exp(std::uint64_t e) const;

  private:
    FiniteField(std::uint32_t p, int k);
    void build_tables();

    std::uint32_t p_;
    int k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> mod_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

FFElem ff_pow(FFElem a, std::uint64_t e);
FFElem ff_inverse(const FFElem & a);
/// a -> a^p.
FFElem frobenius(const FFElem & a);
/// Deterministic square root (the lexicographically smaller of the two roots).
std::optional<FFElem> sqrt_in_field(const FFElem & a);
bool is_square(const FFElem & a);
/// All lambda in the field of a with lambda^d = a, sorted.
std::vector<FFElem> dth_roots(const FFElem & a, long d);
/// Roots of f lying in its coefficient field, sorted, without multiplicity.
std::vector<FFElem> roots_in_field(const Poly<FFElem> & f);

std::string to_string(const FFElem & a);

inline FFElem zero_like(const FFElem & a) { return a.field ? a.field->zero() : FFElem{}; }
FFElem one_like(const FFElem & a);
inline FFElem lift_rat(const Rat & r, const FFElem & like)
{
    if (!like.field)
        throw UsageError("reducing a rational needs a field");
    return like.field->from_rat(r);
}
inline bool zero_p(const FFElem & a) { return a.is_zero(); }
inline long characteristic(const FFElem & a) { return a.field ? static_cast<long>(a.field->p()) : 0; }
inline FFElem inv(const FFElem & a) { return ff_inverse(a); }

/// Iteration over every element in index order.
class ElementRange {
  public:
    static constexpr std::uint64_t kMaxElements = 100000000;
    explicit ElementRange(const FiniteField & F);

    class iterator {
      public:
        iterator(const FiniteField * F, std::uint64_t i) : F_(F), i_(i) {}
        FFElem operator*() const { return F_->from_index(i_); }
        iterator & operator++()
        {
            ++i_;
            return *this;
        }
        bool operator!=(const iterator & o) const { return i_ != o.i_; }

      private:
        const FiniteField * F_;
        std::uint64_t i_;
    };
    iterator begin() const { return {F_, 0}; }
    iterator end() const { return {F_, F_->order()}; }

  private:
    const FiniteField * F_;
};

inline ElementRange all_elements(const FiniteField & F) { return ElementRange(F); }

bool is_prime(std::uint64_t n);

struct FFElemHash {
    std::size_t operator()(const FFElem & a) const
    {
        std::uint64_t h = a.c[0];
        h = h * 1000003u + a.c[1];
        h = h * 1000003u + a.c[2];
        h = h * 1000003u + a.c[3];
        return std::hash<std::uint64_t>{}(h);
    }
};

} // namespace fsieve
