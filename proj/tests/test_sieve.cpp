#include "oracles.hpp"

#include <doctest.h>

using namespace fsieve;
using oracle::pair;

namespace {

using LabelSet = std::set<std::pair<std::string, std::string>>;

const SieveReport & full(const std::string & name)
{
    static std::map<std::string, SieveReport> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, run_sieve(pair(name))).first;
    return it->second;
}

LabelSet labels(const SieveReport & r)
{
    LabelSet out;
    for (auto [i1, i2] : r.survivors)
        out.emplace(r.groups.j1_labels[i1], r.groups.j2_labels[i2]);
    return out;
}

DivisorClass<Rat> j1_class(const CurvePoint<Rat> & P)
{
    Divisor<Rat> D;
    if (P.is_affine())
        D = Divisor<Rat>({{P, 1}, {CurvePoint<Rat>::w_infinity(), -1}});
    return {D};
}

const char * kPairs[] = {"b3b5d7", "s3b5d7", "b3b5e7", "s3b5e7"};

} // namespace

TEST_CASE("sieve groups")
{
    for (const char * name : kPairs) {
        const auto & G = full(name).groups;
        CHECK(G.j1.size() == 8);
        CHECK(G.j2.size() == 2);
        CHECK(G.j1_labels[0] == "[0]");
        CHECK(G.j2_labels[0] == "[0]");
    }
    CHECK(full("b3b5d7").groups.j2_labels[1] == "[(5/2,-7/4)-(5/2,7/4)]");
    CHECK(full("s3b5e7").groups.j2_labels[1] == "[(-1/3,-14/9)-(-1/3,14/9)]");
}

TEST_CASE("surviving sets of the four pairs")
{
    const std::string t = "[(5/2,-7/4)-(5/2,7/4)]";
    CHECK(labels(full("b3b5d7")) == LabelSet{{"[0]", t}, {"[(3,-2)-inf]", t}, {"[(8,18)-inf]", t}});
    CHECK(labels(full("s3b5d7")) == LabelSet{{"[0]", t}, {"[(2,-4)-inf]", t}, {"[(1,-1)-inf]", t}});
    CHECK(labels(full("b3b5e7")).empty());
    CHECK(labels(full("s3b5e7")) == LabelSet{{"[(0,1)-inf]", "[(-1/3,-14/9)-(-1/3,14/9)]"}});
    for (const char * name : kPairs)
        CHECK(full(name).used_primes() == oracle::sieve_primes());
}

TEST_CASE("survivors are exactly the pairs hit at every used prime")
{
    for (const char * name : kPairs) {
        const auto & r = full(name);
        std::size_t n2 = r.groups.j2.size();
        for (std::size_t i1 = 0; i1 < r.groups.j1.size(); ++i1)
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                bool all = true;
                std::uint32_t first = 0;
                for (const auto & pr : r.primes)
                    if (pr.used && !pr.hit[i1 * n2 + i2]) {
                        if (all)
                            first = pr.p;
                        all = false;
                    }
                bool survives = std::find(r.survivors.begin(), r.survivors.end(), std::make_pair(i1, i2)) !=
                                r.survivors.end();
                CHECK(survives == all);
                CHECK(r.eliminating_prime(i1, i2) == first);
            }
    }
}

TEST_CASE("monotonicity in the prime range")
{
    for (const char * name : kPairs) {
        const auto & r = full(name);
        auto narrow = run_sieve(pair(name), SieveOptions{11, 30, 1});
        auto wide = labels(narrow), fin = labels(r);
        CHECK(std::includes(wide.begin(), wide.end(), fin.begin(), fin.end()));
        // per-prime images do not depend on the range
        for (const auto & pn : narrow.primes)
            for (const auto & pf : r.primes)
                if (pn.p == pf.p)
                    CHECK(pn.hit == pf.hit);
        // survivors shrink along nested prefixes of the prime list
        LabelSet prev;
        bool first = true;
        for (std::uint32_t hi : {13u, 23u, 41u, 67u, 99u}) {
            auto s = labels(run_sieve(pair(name), SieveOptions{11, hi, 1}));
            if (!first)
                CHECK(std::includes(prev.begin(), prev.end(), s.begin(), s.end()));
            prev = s;
            first = false;
        }
        CHECK(prev == fin);
    }
}

TEST_CASE("worker count does not change the report")
{
    for (const char * name : {"b3b5d7", "s3b5e7"}) {
        auto a = run_sieve(pair(name), SieveOptions{11, 99, 1});
        auto b = run_sieve(pair(name), SieveOptions{11, 99, 3});
        CHECK(a.survivors == b.survivors);
        REQUIRE(a.primes.size() == b.primes.size());
        for (std::size_t k = 0; k < a.primes.size(); ++k) {
            CHECK(a.primes[k].p == b.primes[k].p);
            CHECK(a.primes[k].hit == b.primes[k].hit);
            CHECK(a.primes[k].sym == b.primes[k].sym);
        }
    }
}

TEST_CASE("no usable prime is a usage error")
{
    CHECK_THROWS_AS(run_sieve(pair("b3b5d7"), SieveOptions{90, 96, 1}), UsageError);
}

TEST_CASE("alpha of special points is hit at every prime")
{
    for (const char * name : kPairs) {
        const auto & r = full(name);
        auto c = cusp_consistency_check(pair(name), r);
        CHECK(c.ok());
        std::size_t n2 = r.groups.j2.size();
        for (const auto & v : c.values) {
            CHECK(v.survives);
            // reduction of alpha(D) lies in alpha of the reduced symmetric square
            for (const auto & pr : r.primes)
                CHECK(pr.hit[v.i1 * n2 + v.i2]);
        }
        CHECK(c.values.size() == (std::string(name).find("d7") != std::string::npos ? 4u : 0u));
    }
}

TEST_CASE("alpha values at the cusps of X(b3,b5,d7)")
{
    const auto & r = full("b3b5d7");
    auto c = cusp_consistency_check(pair("b3b5d7"), r);
    std::set<std::string> got;
    for (const auto & v : c.values)
        got.insert(r.groups.j1_labels[v.i1] + " " + r.groups.j2_labels[v.i2]);
    CHECK(got == std::set<std::string>{"[0] [(5/2,-7/4)-(5/2,7/4)]", "[(3,-2)-inf] [(5/2,-7/4)-(5/2,7/4)]"});
}

TEST_CASE("alpha membership")
{
    const auto & pr = pair("b3b5d7");
    const auto & r = full("b3b5d7");
    const auto & G = r.groups;
    CHECK(!alpha_membership(pr, 7, j1_class(G.j1[0]), {G.j2[0]}));
    CHECK(alpha_membership(pr, 101, j1_class(G.j1[0]), {G.j2[1]}).has_value());
    for (std::size_t i1 = 0; i1 < G.j1.size(); ++i1)
        for (std::size_t i2 = 0; i2 < G.j2.size(); ++i2)
            for (std::uint32_t p : {11u, 13u, 17u, 61u}) {
                auto m = alpha_membership(pr, p, j1_class(G.j1[i1]), {G.j2[i2]});
                REQUIRE(m);
                for (const auto & res : r.primes)
                    if (res.p == p)
                        CHECK(*m == static_cast<bool>(res.hit[i1 * G.j2.size() + i2]));
            }
    // ([(8,18)-inf], [0]) falls only at 61
    std::size_t k = std::find(G.j1_labels.begin(), G.j1_labels.end(), "[(8,18)-inf]") - G.j1_labels.begin();
    REQUIRE(k < G.j1.size());
    CHECK(r.eliminating_prime(k, 0) == 61);
    CHECK(*alpha_membership(pr, 59, j1_class(G.j1[k]), {G.j2[0]}));
    CHECK(!*alpha_membership(pr, 61, j1_class(G.j1[k]), {G.j2[0]}));
}

TEST_CASE("rational-j verdicts")
{
    for (const char * name : {"b3b5d7", "s3b5d7"}) {
        auto v = rational_j_conclusion(pair(name), full(name));
        REQUIRE(v.size() == 3);
        for (const auto & x : v) {
            CHECK(x.rational_j);
            CHECK(pencil_str(x.pencil_den) == "{1/(2*x - 5), x/(2*x - 5)}");
            CHECK(x.representative == "(5/2,-7/4) + (5/2,7/4)");
        }
    }
    auto v = rational_j_conclusion(pair("s3b5e7"), full("s3b5e7"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].rational_j);
    CHECK(pencil_str(v[0].pencil_den) == "{1/(3*x + 1), x/(3*x + 1)}");
    CHECK(rational_j_conclusion(pair("b3b5e7"), full("b3b5e7")).empty());
    CHECK(pencil_str(Poly<Rat>::constant(Rat(1))) == "{1, x}");
}

TEST_CASE("Riemann-Roch pencil of the 2-torsion representative")
{
    auto C = curve_over(oracle::member("d7").model, Rat(0));
    Divisor<Rat> D({{CurvePoint<Rat>::affine(Rat(5) / Rat(2), Rat(7) / Rat(4)), 1},
                    {CurvePoint<Rat>::affine(Rat(5) / Rat(2), Rat(-7) / Rat(4)), 1}});
    auto B = rr_pencil_basis(C, D);
    // den vanishes at x = 5/2 only
    CHECK(B.den.degree() == 1);
    CHECK(B.den.eval(Rat(5) / Rat(2)).is_zero());
}
