#pragma once

#include "fsieve/descriptors.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fsieve {

/// A point (P1, P2, lambda) of the normalized fibre product, lambda^d = eps/delta.
struct FibrePoint {
    CurvePoint<FFElem> P1, P2;
    FFElem lambda;
    int m = 1, n = 1, d = 1;
    ProjValue<FFElem> gamma;

    friend bool operator==(const FibrePoint & a, const FibrePoint & b)
    {
        return a.P1 == b.P1 && a.P2 == b.P2 && a.lambda == b.lambda;
    }
    friend bool operator<(const FibrePoint & a, const FibrePoint & b)
    {
        if (a.P1 != b.P1)
            return a.P1 < b.P1;
        if (a.P2 != b.P2)
            return a.P2 < b.P2;
        return a.lambda < b.lambda;
    }
};

std::string fibre_point_str(const FibrePoint & T);

/// Why p cannot be used for the pair, or nullopt when it can: p prime, 11 <= p,
/// good reduction of both members, p dividing no ramification index.
std::optional<std::string> prime_unusable(const PairDescriptor & pair, std::uint32_t p);

/// All ramification indices occurring in the two member profiles.
std::vector<int> ramification_indices(const PairDescriptor & pair);

/// X(F) for F = F_p or F_{p^2}, sorted.
std::vector<FibrePoint> fibre_points_over(const PairDescriptor & pair, const FiniteField & F);

FibrePoint frobenius_on_fibre_point(const FibrePoint & T);

/// X^(2)(F_p): unordered pairs {T, S} of points of X over F_{p^2} with {T, S} Frobenius-stable.
/// Elements index into `points` (all of X(F_{p^2})), first <= second.
struct SymSquare {
    std::uint32_t p = 0;
    std::vector<FibrePoint> points;
    std::vector<std::uint32_t> frob;     // index of T^phi
    std::vector<std::uint32_t> rational; // indices of X(F_p)
    std::vector<std::pair<std::uint32_t, std::uint32_t>> elems;

    std::size_t n1() const { return rational.size(); }
    std::size_t n2() const { return points.size(); }
};

SymSquare sym_square_enumerate(const PairDescriptor & pair, std::uint32_t p);

/// A rational or quadratic point of X above 0, 1728 or infinity, in characteristic 0.
struct SpecialPoint {
    int branch = 0; // 0, 1728, infinity as 0, 1, 2
    CurvePoint<QuadElem> P1, P2;
    QuadElem lambda;
    int m = 1, n = 1, d = 1;
    long field = 0; // 0 for Q, else the squarefree d of Q(sqrt d)

    bool rational() const { return field == 0; }
};

std::string special_point_str(const SpecialPoint & s);

struct SpecialPointReport {
    std::string pair;
    bool sufficient = true;
    std::string insufficient_reason;
    std::vector<SpecialPoint> points;
    std::array<int, 3> rational_count{}, quadratic_count{};
    std::vector<std::string> notes; // certificates for factors without quadratic roots
};

/// Rational and quadratic points of X above 0, 1728, infinity, from the member fibre data.
SpecialPointReport classify_special_points(const PairDescriptor & pair, int field_degree_bound = 2);

} // namespace fsieve
