#pragma once

#include "fsieve/fibre.hpp"
#include "fsieve/pic0.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fsieve {

/// The finite groups J1(Q), J2(Q) of a pair as explicit class representatives.
struct SieveGroups {
    std::vector<CurvePoint<Rat>> j1; // [P - inf], sorted, j1[0] is the identity
    std::vector<Divisor<Rat>> j2;    // degree-0 representatives of distinct classes, j2[0] = 0
    std::vector<std::string> j1_labels, j2_labels;

    std::size_t size() const { return j1.size() * j2.size(); }
};

SieveGroups sieve_groups(const PairDescriptor & pair);

/// Label of [P - inf] ("[0]" for the identity) and of a degree-0 divisor class.
std::string j1_label(const CurvePoint<Rat> & P);
std::string j2_label(const Divisor<Rat> & D);

struct PrimeResult {
    std::uint32_t p = 0;
    bool used = false;
    std::string skip_reason;
    std::vector<char> hit; // indexed i1 * |J2| + i2
    std::size_t n1 = 0, n2 = 0, sym = 0;
};

/// alpha(X^(2)(F_p)) restricted to the reductions of J1(Q) x J2(Q).
PrimeResult alpha_image(const PairDescriptor & pair, const SieveGroups & G, std::uint32_t p);

/// Whether (t1, t2) mod p lies in alpha(X^(2)(F_p)); nullopt when p is skipped.
std::optional<bool> alpha_membership(const PairDescriptor & pair, std::uint32_t p, const DivisorClass<Rat> & t1,
                                     const DivisorClass<Rat> & t2);

struct SieveReport {
    std::string pair;
    SieveGroups groups;
    std::vector<PrimeResult> primes; // increasing p
    std::vector<std::pair<std::size_t, std::size_t>> survivors;

    std::vector<std::uint32_t> used_primes() const;
    /// First used prime at which the class pair is not hit, or 0 when it survives.
    std::uint32_t eliminating_prime(std::size_t i1, std::size_t i2) const;
};

struct SieveOptions {
    std::uint32_t lo = 11, hi = 99;
    unsigned workers = 1;
};

SieveReport run_sieve(const PairDescriptor & pair, const SieveOptions & opt);
SieveReport run_sieve(const PairDescriptor & pair);

/// Verdict on one surviving class pair.
struct RationalJVerdict {
    std::size_t i1 = 0, i2 = 0;
    bool rational_j = false;
    std::string representative; // involution-stable effective divisor in t2 + D2
    Poly<Rat> pencil_den;       // basis {1/h, x/h}; h = 1 for the fibre at infinity
    std::string note;
};

std::string pencil_str(const Poly<Rat> & h);

std::vector<RationalJVerdict> rational_j_conclusion(const PairDescriptor & pair, const SieveReport & report);

struct CuspAlpha {
    std::string divisor; // the point pair of X^(2)(Q)
    int branch = 2;
    std::size_t i1 = 0, i2 = 0;
    bool survives = false;
};

struct CuspConsistencyReport {
    SpecialPointReport special;
    std::vector<CuspAlpha> values;
    bool ok() const;
};

/// alpha over Q of every rational or quadratic special point pair, compared with the survivors.
CuspConsistencyReport cusp_consistency_check(const PairDescriptor & pair, const SieveReport & report);

} // namespace fsieve
