#pragma once

#include "fsieve/localgeom.hpp"
#include "fsieve/report.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fsieve {

inline constexpr int kSchemaVersion = 1;

struct MWGenerator {
    Divisor<Rat> divisor; // degree 0; for Weierstrass members P - inf
    long order = 0;
};

struct MordellWeilData {
    long assumed_rank = 0;
    std::string rank_provenance;
    std::vector<long> shape; // invariant factors
    std::vector<MWGenerator> generators;
    std::string provenance;
};

/// One factor of a fibre polynomial over Q, with multiplicity.
struct FibreFactor {
    Poly<Rat> factor;
    int mult = 1;
};

struct MemberDescriptor {
    std::string label;
    std::string cremona; // empty when not an elliptic curve label
    CurveModel model;
    JMap jmap;
    std::vector<std::uint32_t> bad_primes;
    std::vector<CurvePoint<Rat>> rational_points;
    std::vector<CurvePoint<Rat>> cusps;
    std::vector<CurvePoint<Rat>> non_cusps;
    MordellWeilData mw;
    Divisor<Rat> base_divisor;
    std::optional<BelyiProfile> profile;
    std::array<std::optional<std::vector<FibreFactor>>, 3> special_fibres;
    std::map<std::string, std::string> provenance;
    std::string path; // where it was loaded from (not serialized)
};

struct PairDescriptor {
    std::string label;
    std::string member1_file, member2_file;
    std::uint32_t prime_lo = 11, prime_hi = 99;
    std::map<std::string, std::string> provenance;
    MemberDescriptor m1, m2; // resolved relative to the pair file
    std::string path;
};

/// Standalone profile fixture: a j-map on the projective line.
struct LineFixture {
    std::string label;
    Poly<Rat> num, den;
    std::map<std::string, std::string> provenance;
};

MemberDescriptor load_member(const std::string & path);
PairDescriptor load_pair(const std::string & path);
LineFixture load_line_fixture(const std::string & path);
MemberDescriptor parse_member(const std::string & text, const std::string & origin = "<memory>");
PairDescriptor parse_pair(const std::string & text, const std::string & origin = "<memory>");

/// Canonical text (sorted keys, lowest-terms rationals).
std::string serialize_member(const MemberDescriptor & d);
std::string serialize_pair(const PairDescriptor & d);

VerificationReport validate_descriptor(const MemberDescriptor & d);
VerificationReport validate_pair(const PairDescriptor & d);

/// Data directory: FIBRE_SIEVE_DATA if set, else the bundled one.
std::string data_dir();

/// The Mordell-Weil claim check: generators, orders, closure, shape, torsion bound.
VerificationReport verify_mw_claim(const MemberDescriptor & d);

std::string point_json_str(const CurvePoint<Rat> & P);

} // namespace fsieve
