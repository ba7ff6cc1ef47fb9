#include "oracles.hpp"

#include <doctest.h>

using namespace fsieve;
using oracle::member;

namespace {

CurvePoint<Rat> pt(long xn, long xd, long yn, long yd)
{
    return CurvePoint<Rat>::affine(Rat(xn) / Rat(xd), Rat(yn) / Rat(yd));
}

const char * kMembers[] = {"x0_15", "s3b5", "d7", "e7"};

} // namespace

TEST_CASE("points on curves")
{
    auto C1 = curve_over(member("x0_15").model, Rat(0));
    CHECK(on_curve(C1, pt(-1, 1, 0, 1)));
    auto D = curve_over(member("d7").model, Rat(0));
    CHECK(on_curve(D, pt(5, 2, 7, 4)));
    CHECK(!on_curve(D, pt(0, 1, 0, 1)));
    CHECK(quartic_involution(D, pt(5, 2, 7, 4)) == pt(5, 2, -7, 4));
    CHECK_THROWS_AS(quartic_involution(C1, pt(-1, 1, 0, 1)), UsageError);
}

TEST_CASE("good reduction")
{
    CHECK(!is_good_reduction(member("e7").model, 7));
    CHECK(is_good_reduction(member("x0_15").model, 11));
    CHECK(is_good_reduction(member("d7").model, 11));
    for (const char * q : {"d7", "e7"})
        for (std::uint32_t p = 3; p <= 97; p += 2) {
            bool prime = true;
            for (std::uint32_t r = 3; r * r <= p; r += 2)
                prime = prime && p % r != 0;
            if (prime)
                CHECK_MESSAGE(is_good_reduction(member(q).model, p) == (p != 7), q << " p=" << p);
        }
    for (const char * w : {"x0_15", "s3b5"})
        for (std::uint32_t p : {3u, 5u})
            CHECK(!is_good_reduction(member(w).model, p));
}

TEST_CASE("divisor reduction")
{
    const FiniteField & F = FiniteField::get(11);
    Divisor<Rat> D{{pt(5, 2, 7, 4), 2}};
    auto R = reduce_divisor(D, F);
    REQUIRE(R.terms.size() == 1);
    CHECK(R.terms[0].first == CurvePoint<FFElem>::affine(F.from_int(8), F.from_int(10)));
    CHECK(R.terms[0].second == 2);
    CHECK_THROWS_AS(reduce_point(pt(5, 2, 7, 4), FiniteField::get(2)), ReductionError);

    Divisor<Rat> T{{pt(-1, 1, 0, 1), 1}, {CurvePoint<Rat>::w_infinity(), -1}};
    auto RT = reduce_divisor(T, FiniteField::get(13));
    CHECK(RT.degree() == 0);
    CHECK(RT.mult(CurvePoint<FFElem>::affine(FiniteField::get(13).from_int(-1), FiniteField::get(13).zero())) == 1);

    // inf+ + inf- on X(d7) lands in F_p exactly when -7 is a square mod p
    QuadElem v = QuadElem::sqrt_of(Rat(-7));
    Divisor<QuadElem> I{{CurvePoint<QuadElem>::q_infinity(v), 1}, {CurvePoint<QuadElem>::q_infinity(-v), 1}};
    for (std::uint32_t p : oracle::sieve_primes()) {
        const FiniteField & F2 = FiniteField::get(p, 2);
        auto RI = reduce_divisor(I, F2);
        REQUIRE(RI.terms.size() == 2);
        bool residue = false;
        for (std::uint32_t a = 1; a < p; ++a)
            residue = residue || (a * a) % p == (7 * p - 7) % p;
        for (const auto & [P, m] : RI.terms) {
            CHECK(P.kind == CurvePoint<FFElem>::Kind::QInfinity);
            CHECK(F2.in_prime_field(P.y) == residue);
        }
    }
}

TEST_CASE("point enumeration agrees with a y-first search")
{
    for (const char * name : kMembers)
        for (std::uint32_t p : {11u, 13u}) {
            const FiniteField & F = FiniteField::get(p);
            auto lib = enumerate_points(member(name).model, F);
            std::sort(lib.begin(), lib.end());
            CHECK_MESSAGE(lib == oracle::points_y_first(member(name).model, F), name << " p=" << p);
        }
}

TEST_CASE("point counts")
{
    const FiniteField & F11 = FiniteField::get(11);
    long n = static_cast<long>(enumerate_points(member("d7").model, F11).size());
    CHECK(n == oracle::quartic_count_chi(member("d7").model.g, F11));
    CHECK(n == 8);
    CHECK(enumerate_points(member("x0_15").model, F11).size() % 8 == 0);
    CHECK_THROWS_AS(enumerate_points(member("e7").model, FiniteField::get(7)), UsageError);
}

TEST_CASE("Hasse bounds, embeddings and Frobenius orbits")
{
    for (const char * name : kMembers)
        for (std::uint32_t p : oracle::sieve_primes()) {
            const auto & C = member(name).model;
            const FiniteField & F1 = FiniteField::get(p);
            const FiniteField & F2 = FiniteField::get(p, 2);
            auto P1 = enumerate_points(C, F1);
            auto P2 = enumerate_points(C, F2);
            long n1 = static_cast<long>(P1.size()), n2 = static_cast<long>(P2.size());
            long q = p;
            CHECK((n1 - q - 1) * (n1 - q - 1) <= 4 * q);
            CHECK((n2 - q * q - 1) * (n2 - q * q - 1) <= 4 * q * q);
            std::sort(P2.begin(), P2.end());
            for (const auto & P : P1)
                CHECK(std::binary_search(P2.begin(), P2.end(), embed_point(P, F2)));
            long fixed = 0;
            for (const auto & P : P2) {
                auto Q = frobenius(P);
                CHECK(std::binary_search(P2.begin(), P2.end(), Q));
                CHECK(frobenius(Q) == P);
                fixed += Q == P;
            }
            CHECK(fixed == n1);
        }
}

TEST_CASE("quartic involution permutes points with the roots of g as fixed points")
{
    for (const char * name : {"d7", "e7"})
        for (std::uint32_t p : {11u, 13u, 29u})
            for (int k : {1, 2}) {
                const FiniteField & F = FiniteField::get(p, k);
                auto C = curve_over(member(name).model, F.zero());
                auto pts = enumerate_points(C);
                std::sort(pts.begin(), pts.end());
                long fixed = 0;
                for (const auto & P : pts) {
                    auto Q = quartic_involution(C, P);
                    CHECK(std::binary_search(pts.begin(), pts.end(), Q));
                    fixed += Q == P;
                }
                long roots = 0;
                for (const auto & [r, m] : oracle::roots_brute(oracle::reduce_poly(member(name).model.g, F), F))
                    roots += m;
                CHECK(fixed == roots);
            }
}
