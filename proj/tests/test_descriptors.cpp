#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

using namespace fsieve;
using oracle::member;

namespace {

std::string slurp(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string data_error(const std::function<void()> & f)
{
    try {
        f();
    } catch (const DataError & e) {
        return e.what();
    }
    return "";
}

CurvePoint<Rat> pt(long xn, long xd, long yn, long yd)
{
    return CurvePoint<Rat>::affine(Rat(xn) / Rat(xd), Rat(yn) / Rat(yd));
}

const char * kMembers[] = {"x0_15", "s3b5", "d7", "e7"};
const char * kPairs[] = {"b3b5d7", "s3b5d7", "b3b5e7", "s3b5e7"};

} // namespace

TEST_CASE("X(d7) loads with its quartic")
{
    const auto & d = member("d7");
    REQUIRE(d.model.is_quartic());
    std::vector<long> c{189, 70, -189, 70, -7}; // -7(x^4 - 10x^3 + 27x^2 - 10x - 27)
    for (int i = 0; i <= 4; ++i)
        CHECK(d.model.g[i] == Rat(c[i]));
    CHECK(d.jmap.degree == 56);
}

TEST_CASE("parse errors carry line and column")
{
    std::string text = slurp(oracle::data("members/d7.json"));
    std::string msg = data_error([&] { parse_member(text.substr(0, text.size() / 2), "cut.json"); });
    CHECK(std::regex_search(msg, std::regex("^cut\\.json:[0-9]+:[0-9]+: ")));
    msg = data_error([&] { parse_member("{\n  \"label\": \n", "two.json"); });
    CHECK(msg.rfind("two.json:3:", 0) == 0);
    CHECK(!data_error([] { load_member("/nonexistent/x.json"); }).empty());
}

TEST_CASE("strict schema")
{
    auto j = nlohmann::json::parse(slurp(oracle::data("members/e7.json")));
    auto bad = j;
    bad["mordell_weil"]["rank_proof"] = "trust me";
    std::string msg = data_error([&] { parse_member(bad.dump(), "e7x.json"); });
    CHECK(msg.find("rank_proof") != std::string::npos);
    CHECK(msg.find("mordell_weil") != std::string::npos);

    bad = j;
    bad["rank_proof"] = 1;
    CHECK(!data_error([&] { parse_member(bad.dump()); }).empty());

    bad = j;
    bad.erase("model");
    CHECK(data_error([&] { parse_member(bad.dump()); }).find("model") != std::string::npos);

    bad = j;
    bad["model"]["g"][0] = "2/4";
    CHECK(!data_error([&] { parse_member(bad.dump()); }).empty());

    bad = j;
    bad["model"]["g"][0] = "0.5";
    CHECK(!data_error([&] { parse_member(bad.dump()); }).empty());

    bad = j;
    bad["mordell_weil"]["provenance"] = "";
    CHECK(!data_error([&] { parse_member(bad.dump()); }).empty());

    bad = j;
    bad["schema_version"] = 2;
    CHECK(!data_error([&] { parse_member(bad.dump()); }).empty());
}

TEST_CASE("canonical files round-trip byte for byte")
{
    for (const char * m : kMembers) {
        std::string path = oracle::data(std::string("members/") + m + ".json");
        std::string text = slurp(path);
        CHECK_MESSAGE(serialize_member(parse_member(text)) == text, m);
    }
    for (const char * p : kPairs) {
        std::string path = oracle::data(std::string("pairs/") + p + ".json");
        CHECK_MESSAGE(serialize_pair(load_pair(path)) == slurp(path), p);
    }
}

TEST_CASE("bundled descriptors validate")
{
    for (const char * m : kMembers) {
        auto r = validate_descriptor(member(m));
        const Check * f = r.first_failure();
        CHECK_MESSAGE(r.ok(), m << ": " << (f ? f->name + " " + f->witness : ""));
    }
    for (const char * p : kPairs) {
        auto r = validate_pair(oracle::pair(p));
        const Check * f = r.first_failure();
        CHECK_MESSAGE(r.ok(), p << ": " << (f ? f->name + " " + f->witness : ""));
    }
}

TEST_CASE("cusp markers")
{
    auto sorted = [](std::vector<CurvePoint<Rat>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto O = CurvePoint<Rat>::w_infinity();
    CHECK(sorted(member("x0_15").cusps) == sorted({O, pt(-1, 1, 0, 1), pt(-2, 1, 3, 1), pt(8, 1, 18, 1)}));
    CHECK(sorted(member("x0_15").non_cusps) ==
          sorted({pt(3, 1, -2, 1), pt(8, 1, -27, 1), pt(-2, 1, -2, 1), pt(-13, 4, 9, 8)}));
    CHECK(sorted(member("s3b5").cusps) == sorted({O, pt(0, 1, 1, 1), pt(2, 1, -4, 1), pt(-3, 1, 1, 1)}));

    // a non-cusp marked as a cusp is caught
    MemberDescriptor d = member("x0_15");
    std::swap(d.cusps.back(), d.non_cusps.front());
    CHECK(!validate_descriptor(d).ok());
}

TEST_CASE("Mordell-Weil claims")
{
    for (const char * m : kMembers) {
        auto r = verify_mw_claim(member(m));
        const Check * f = r.first_failure();
        CHECK_MESSAGE(r.ok(), m << ": " << (f ? f->name + " " + f->witness : ""));
    }
    CHECK(member("x0_15").mw.shape == std::vector<long>{2, 4});
    CHECK(member("d7").mw.shape == std::vector<long>{2});

    // orders as literally attributed: (-1,0) of order 4 and (-2,-2) of order 2
    MemberDescriptor lit = member("x0_15");
    for (auto & g : lit.mw.generators)
        g.order = g.order == 2 ? 4 : 2;
    auto r = verify_mw_claim(lit);
    CHECK(!r.ok());
    REQUIRE(r.first_failure());
    CHECK(r.first_failure()->witness.find("true order") != std::string::npos);

    MemberDescriptor three = member("s3b5");
    three.mw.generators[1].order = 3;
    CHECK(!verify_mw_claim(three).ok());

    MemberDescriptor big = member("s3b5");
    big.mw.shape = {2, 8};
    CHECK(!verify_mw_claim(big).ok());

    MemberDescriptor quartic = member("e7");
    quartic.mw.generators[0].order = 4;
    CHECK(!verify_mw_claim(quartic).ok());

    MemberDescriptor ranked = member("d7");
    ranked.mw.assumed_rank = 1;
    CHECK_THROWS_AS(verify_mw_claim(ranked), Unsupported);
    CHECK(!validate_descriptor(ranked).ok());
}

TEST_CASE("pair descriptors resolve their members")
{
    const auto & p = oracle::pair("s3b5e7");
    CHECK(p.m1.cremona == "15A3");
    CHECK(p.m2.model.is_quartic());
    CHECK(p.prime_lo == 11);
    CHECK(p.prime_hi == 99);
    auto j = nlohmann::json::parse(slurp(oracle::data("pairs/s3b5e7.json")));
    std::swap(j["member1"], j["member2"]);
    std::string msg;
    try {
        parse_pair(j.dump(), oracle::data("pairs/swapped.json"));
    } catch (const DataError & e) {
        msg = e.what();
    }
    CHECK(!msg.empty());
}
