#include "oracles.hpp"

#include "fsieve/ecgroup.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace fsieve;
using oracle::member;

namespace {

CurvePoint<Rat> pt(long xn, long xd, long yn, long yd)
{
    return CurvePoint<Rat>::affine(Rat(xn) / Rat(xd), Rat(yn) / Rat(yd));
}

} // namespace

TEST_CASE("group law basics on X0(15)")
{
    auto C = curve_over(member("x0_15").model, Rat(0));
    auto O = CurvePoint<Rat>::w_infinity();
    auto P = pt(-1, 1, 0, 1), Q = pt(-2, 1, -2, 1);
    CHECK(ec_add(C, P, O) == P);
    CHECK(ec_add(C, P, ec_neg(C, P)) == O);
    // (-1,0) is 2-torsion and (-2,-2) has order 4 on this model
    CHECK(ec_mul(C, P, 2) == O);
    CHECK(ec_mul(C, Q, 2) != O);
    CHECK(ec_mul(C, Q, 4) == O);
    CHECK(ec_point_order(C, P) == 2);
    CHECK(ec_point_order(C, Q) == 4);
    CHECK(ec_point_order(C, O) == 1);
}

TEST_CASE("orders on 15A3")
{
    auto C = curve_over(member("s3b5").model, Rat(0));
    CHECK(ec_point_order(C, pt(0, 1, -2, 1)) == 4);
    CHECK(ec_point_order(C, pt(3, 4, -7, 8)) == 2);
}

TEST_CASE("listed rational points form Z/2 x Z/4")
{
    for (const char * name : {"x0_15", "s3b5"}) {
        const auto & d = member(name);
        auto C = curve_over(d.model, Rat(0));
        auto pts = d.rational_points;
        REQUIRE(pts.size() == 8);
        std::sort(pts.begin(), pts.end());
        std::vector<long> orders;
        for (const auto & P : pts) {
            for (const auto & Q : pts)
                CHECK(std::binary_search(pts.begin(), pts.end(), ec_add(C, P, Q)));
            orders.push_back(*ec_point_order(C, P));
        }
        CHECK(AbelianGroupShape::from_element_orders(orders) == AbelianGroupShape{{2, 4}});
    }
}

TEST_CASE("torsion gcd bound")
{
    std::vector<std::uint32_t> good;
    for (auto p : oracle::sieve_primes())
        good.push_back(p);
    for (const char * name : {"x0_15", "s3b5"}) {
        const auto & C = member(name).model;
        long g = 0;
        for (auto p : good)
            g = std::gcd(g, static_cast<long>(oracle::points_y_first(C, FiniteField::get(p)).size()));
        CHECK(torsion_gcd_bound(C, good) == g);
        CHECK(g % 8 == 0);
        CHECK(torsion_gcd_bound(C, {13}) == static_cast<long>(enumerate_points(C, FiniteField::get(13)).size()));
        // claimed torsion order divides every good count
        for (std::uint32_t p = 7; p < 100; p += 2)
            if (is_prime(p))
                CHECK(enumerate_points(C, FiniteField::get(p)).size() % 8 == 0);
    }
    auto E49 = CurveModel::weierstrass("49A3", {Rat(1), Rat(-1), Rat(0), Rat(-107), Rat(552)});
    std::vector<std::uint32_t> good49;
    for (auto p : good)
        if (p != 7)
            good49.push_back(p);
    CHECK(torsion_gcd_bound(E49, good49) % 2 == 0);
    CHECK_THROWS_AS(torsion_gcd_bound(E49, {}), UsageError);
}

TEST_CASE("associativity on random triples")
{
    std::mt19937_64 rng(1);
    for (const char * name : {"x0_15", "s3b5"})
        for (auto [p, k] : std::vector<std::pair<std::uint32_t, int>>{{11, 1}, {13, 1}, {11, 2}, {97, 1}}) {
            const FiniteField & F = FiniteField::get(p, k);
            auto C = curve_over(member(name).model, F.zero());
            auto pts = enumerate_points(C);
            for (int i = 0; i < 1000; ++i) {
                const auto & P = pts[rng() % pts.size()];
                const auto & Q = pts[rng() % pts.size()];
                const auto & R = pts[rng() % pts.size()];
                CHECK(ec_add(C, ec_add(C, P, Q), R) == ec_add(C, P, ec_add(C, Q, R)));
                CHECK(ec_add(C, P, Q) == ec_add(C, Q, P));
            }
        }
}

TEST_CASE("group law commutes with reduction")
{
    for (const char * name : {"x0_15", "s3b5"}) {
        const auto & d = member(name);
        auto C = curve_over(d.model, Rat(0));
        for (auto p : oracle::sieve_primes()) {
            const FiniteField & F = FiniteField::get(p);
            auto Cp = curve_over(d.model, F.zero());
            for (const auto & P : d.rational_points)
                for (const auto & Q : d.rational_points)
                    CHECK(reduce_point(ec_add(C, P, Q), F) == ec_add(Cp, reduce_point(P, F), reduce_point(Q, F)));
        }
    }
}
