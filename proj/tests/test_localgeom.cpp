#include "oracles.hpp"

#include <doctest.h>

using namespace fsieve;
using oracle::member;

namespace {

BelyiProfile profile(int degree, std::map<int, int> z, std::map<int, int> o, std::map<int, int> i)
{
    BelyiProfile b;
    b.degree = degree;
    b.over = {std::move(z), std::move(o), std::move(i)};
    return b;
}

// Multiplicity of r as a root of f.
int root_mult(oracle::FPoly f, const FFElem & r)
{
    oracle::trim(f);
    int m = 0;
    while (f.size() > 1 && oracle::eval(f, r).is_zero()) {
        f = oracle::deflate(f, r);
        ++m;
    }
    return m;
}

const char * kPairs[] = {"b3b5d7", "s3b5d7", "b3b5e7", "s3b5e7"};

} // namespace

TEST_CASE("quartic member profiles")
{
    CHECK(belyi_profile_quartic(member("e7")) == profile(42, {{3, 14}}, {{1, 2}, {2, 20}}, {{7, 6}}));
    CHECK(belyi_profile_quartic(member("d7")) == profile(56, {{1, 2}, {3, 18}}, {{2, 28}}, {{7, 8}}));
    for (const char * q : {"d7", "e7"}) {
        auto b = belyi_profile_quartic(member(q));
        CHECK(b.consistent());
        CHECK(b.source_genus() == 1);
        REQUIRE(member(q).profile);
        CHECK(*member(q).profile == b);
    }
}

TEST_CASE("line fixture profile")
{
    auto ns7 = load_line_fixture(oracle::data("fixtures/ns7.json"));
    auto b = belyi_profile_rational(ns7.num, ns7.den);
    CHECK(b == profile(21, {{3, 7}}, {{1, 5}, {2, 8}}, {{7, 3}}));
    CHECK(b.source_genus() == 0);
}

TEST_CASE("declared Weierstrass profiles")
{
    for (const char * w : {"x0_15", "s3b5"}) {
        REQUIRE(member(w).profile);
        CHECK(member(w).profile->consistent());
        CHECK(member(w).profile->source_genus() == 1);
    }
    CHECK(member("x0_15").profile->degree == 24);
    CHECK(member("s3b5").profile->degree == 36);
}

TEST_CASE("fibre product genus")
{
    std::map<std::string, int> want{{"b3b5d7", 97}, {"s3b5d7", 153}, {"b3b5e7", 73}, {"s3b5e7", 113}};
    for (const char * name : kPairs) {
        const auto & pr = oracle::pair(name);
        CHECK(rh_genus_fibre_product(*pr.m1.profile, *pr.m2.profile) == want[name]);
        CHECK(rh_genus_fibre_product(*pr.m2.profile, *pr.m1.profile) == want[name]);
    }
    // over the trivial cover the fibre product is the curve itself
    auto trivial = profile(1, {{1, 1}}, {{1, 1}}, {{1, 1}});
    for (const char * m : {"x0_15", "s3b5", "d7", "e7"})
        CHECK(rh_genus_fibre_product(trivial, *member(m).profile) == 1);
    CHECK_THROWS_AS(rh_genus_fibre_product(profile(2, {{1, 1}}, {{1, 2}}, {{2, 1}}), trivial), UsageError);
}

TEST_CASE("profile verification at small primes")
{
    for (const char * m : {"x0_15", "s3b5", "d7", "e7"}) {
        auto r = verify_profile(member(m), {11, 13, 17});
        INFO(m << " " << (r.first_failure() ? r.first_failure()->name + ": " + r.first_failure()->witness : ""));
        CHECK(r.ok());
    }
    MemberDescriptor bad = member("e7");
    bad.profile = profile(42, {{3, 14}}, {{1, 4}, {2, 19}}, {{7, 6}});
    CHECK(!verify_profile(bad, {11, 13}).ok());
    bad.profile = profile(42, {{1, 3}, {3, 13}}, {{2, 21}}, {{7, 6}});
    CHECK(!verify_profile(bad, {11, 13, 17}).ok());
}

TEST_CASE("ramification of the quartic members at special points")
{
    const FiniteField & F = FiniteField::get(13, 2);
    for (const char * q : {"d7", "e7"}) {
        const auto & d = member(q);
        auto C = curve_over(d.model, F.zero());
        auto J = jmap_over(d.jmap, F.zero());
        auto den = oracle::reduce_poly(d.jmap.den, F);
        auto g = oracle::reduce_poly(d.model.g, F);
        int seen = 0;
        for (const auto & P : enumerate_points(C)) {
            if (!P.is_affine() || !oracle::eval(den, P.x).is_zero())
                continue;
            auto r = ram_data(C, J, P);
            CHECK(r.gamma.infinite);
            int want = root_mult(den, P.x) * (oracle::eval(g, P.x).is_zero() ? 2 : 1);
            CHECK(r.m == want);
            CHECK(r.m == 7);
            ++seen;
        }
        // the pole cubic splits over F_13
        CHECK(seen == 6);
    }
    auto C = curve_over(member("e7").model, Rat(0));
    auto J = jmap_over(member("e7").jmap, Rat(0));
    for (long s : {14, -14}) {
        auto P = CurvePoint<Rat>::affine(Rat(-1) / Rat(3), Rat(s) / Rat(9));
        auto r = ram_data(C, J, P);
        CHECK(!r.gamma.infinite);
        CHECK(r.gamma.value == Rat(0));
        CHECK(r.m == 3);
    }
}

TEST_CASE("ramification index agrees with root multiplicities in x")
{
    // j depends on x alone, so away from the branch points of x the index is the
    // multiplicity of x(P) in num - j(P) den, and twice that at a branch point
    for (const char * q : {"d7", "e7"})
        for (std::uint32_t p : {11u, 13u}) {
            const FiniteField & F = FiniteField::get(p);
            const auto & d = member(q);
            auto C = curve_over(d.model, F.zero());
            auto J = jmap_over(d.jmap, F.zero());
            auto num = oracle::reduce_poly(d.jmap.num0, F), den = oracle::reduce_poly(d.jmap.den, F);
            auto g = oracle::reduce_poly(d.model.g, F);
            for (const auto & P : enumerate_points(C)) {
                if (!P.is_affine())
                    continue;
                auto r = ram_data(C, J, P);
                oracle::FPoly h = den;
                if (!r.gamma.infinite) {
                    h = num;
                    h.resize(std::max(num.size(), den.size()), F.zero());
                    for (std::size_t i = 0; i < den.size(); ++i)
                        h[i] -= r.gamma.value * den[i];
                }
                int want = root_mult(h, P.x) * (oracle::eval(g, P.x).is_zero() ? 2 : 1);
                INFO(q << " p=" << p << " at " << point_str(P));
                CHECK(r.m == want);
            }
        }
}

TEST_CASE("fibres over F_p^2 never exceed the degree")
{
    for (const char * q : {"d7", "e7"})
        for (std::uint32_t p : {11u, 13u, 17u}) {
            const FiniteField & F = FiniteField::get(p, 2);
            const auto & d = member(q);
            auto C = curve_over(d.model, F.zero());
            auto J = jmap_over(d.jmap, F.zero());
            std::array<int, 3> sum{};
            for (const auto & P : enumerate_points(C)) {
                auto v = j_value(C, J, P);
                int b = v.infinite ? 2 : (v.value.is_zero() ? 0 : (v.value == F.from_int(1728) ? 1 : -1));
                if (b >= 0)
                    sum[b] += ram_data(C, J, P).m;
            }
            for (int b = 0; b < 3; ++b)
                CHECK(sum[b] <= d.jmap.degree);
        }
}

TEST_CASE("leading coefficients are Frobenius equivariant")
{
    for (const char * q : {"d7", "e7"}) {
        const FiniteField & F = FiniteField::get(13, 2);
        const auto & d = member(q);
        auto C = curve_over(d.model, F.zero());
        auto J = jmap_over(d.jmap, F.zero());
        int n = 0;
        for (const auto & P : enumerate_points(C)) {
            auto v = j_value(C, J, P);
            if (!v.infinite && !v.value.is_zero() && v.value != F.from_int(1728))
                continue;
            auto a = ram_data(C, J, P), b = ram_data(C, J, frobenius(P));
            CHECK(a.m == b.m);
            CHECK(frobenius(a.eps) == b.eps);
            ++n;
        }
        CHECK(n > 0);
    }
}

TEST_CASE("unramified points have index one")
{
    const FiniteField & F = FiniteField::get(11);
    auto C = curve_over(member("x0_15").model, F.zero());
    auto J = jmap_over(member("x0_15").jmap, F.zero());
    for (const auto & P : enumerate_points(C)) {
        auto r = ram_data(C, J, P);
        if (!r.gamma.infinite && !r.gamma.value.is_zero() && r.gamma.value != F.from_int(1728))
            CHECK(r.m == 1);
    }
}
