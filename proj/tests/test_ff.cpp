#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace fsieve;

TEST_CASE("square roots")
{
    const FiniteField & F11 = FiniteField::get(11);
    auto r = sqrt_in_field(F11.from_int(4));
    REQUIRE(r);
    CHECK(*r == F11.from_int(2));
    CHECK(!sqrt_in_field(F11.from_int(2)));
    const FiniteField & F121 = FiniteField::get(11, 2);
    auto s = sqrt_in_field(F121.from_int(2));
    REQUIRE(s);
    CHECK(*s * *s == F121.from_int(2));
}

TEST_CASE("d-th roots examples")
{
    const FiniteField & F13 = FiniteField::get(13);
    auto cube1 = dth_roots(F13.one(), 3);
    std::vector<FFElem> want{F13.from_int(1), F13.from_int(3), F13.from_int(9)};
    std::sort(want.begin(), want.end());
    CHECK(cube1 == want);
    const FiniteField & F11 = FiniteField::get(11);
    CHECK(dth_roots(F11.from_int(2), 3).size() == 1);
    CHECK(dth_roots(F11.from_int(5), 1) == std::vector<FFElem>{F11.from_int(5)});
    CHECK_THROWS_AS(dth_roots(F11.zero(), 2), UsageError);
}

TEST_CASE("d-th roots agree with brute force")
{
    for (std::uint32_t p : {11u, 13u})
        for (int k : {1, 2}) {
            const FiniteField & F = FiniteField::get(p, k);
            for (long d = 1; d <= 7; ++d)
                for (std::uint64_t i = 0; i < F.order(); ++i) {
                    FFElem a = F.from_index(i);
                    if (a.is_zero())
                        continue;
                    std::vector<FFElem> brute;
                    for (std::uint64_t j = 0; j < F.order(); ++j) {
                        FFElem l = F.from_index(j);
                        if (ff_pow(l, static_cast<std::uint64_t>(d)) == a)
                            brute.push_back(l);
                    }
                    std::sort(brute.begin(), brute.end());
                    CHECK(dth_roots(a, d) == brute);
                }
        }
}

TEST_CASE("element iteration")
{
    CHECK(FiniteField::get(11).order() == 11);
    std::size_t n = 0;
    for (auto a : ElementRange(FiniteField::get(97, 2))) {
        (void)a;
        ++n;
    }
    CHECK(n == 9409);
    for (std::uint32_t p : {11u, 13u, 97u}) {
        const FiniteField & F = FiniteField::get(p);
        FFElem s = F.zero();
        for (auto a : ElementRange(F))
            s += a;
        CHECK(s.is_zero());
    }
}

TEST_CASE("Frobenius")
{
    for (std::uint32_t p : {11u, 13u, 53u}) {
        const FiniteField & F1 = FiniteField::get(p);
        const FiniteField & F2 = FiniteField::get(p, 2);
        for (auto a : ElementRange(F1))
            CHECK(frobenius(a) == a);
        std::size_t fixed = 0;
        for (auto a : ElementRange(F2)) {
            CHECK(frobenius(a) == ff_pow(a, p));
            CHECK(frobenius(frobenius(a)) == a);
            fixed += frobenius(a) == a;
        }
        CHECK(fixed == p);
    }
}

TEST_CASE("multiplicative orders divide p^k - 1")
{
    std::mt19937_64 rng(3);
    for (std::uint32_t p : oracle::sieve_primes())
        for (int k : {1, 2}) {
            const FiniteField & F = FiniteField::get(p, k);
            for (int s = 0; s < 10; ++s) {
                FFElem a = F.from_index(1 + rng() % (F.order() - 1));
                CHECK(ff_pow(a, F.order() - 1) == F.one());
            }
        }
}

TEST_CASE("prime field embeds as a ring homomorphism")
{
    std::mt19937_64 rng(9);
    for (std::uint32_t p : {11u, 13u, 97u}) {
        const FiniteField & F1 = FiniteField::get(p);
        const FiniteField & F2 = FiniteField::get(p, 2);
        for (int s = 0; s < 100; ++s) {
            FFElem a = F1.from_index(rng() % p), b = F1.from_index(rng() % p);
            CHECK(F2.embed(a + b) == F2.embed(a) + F2.embed(b));
            CHECK(F2.embed(a * b) == F2.embed(a) * F2.embed(b));
            CHECK(F2.in_prime_field(F2.embed(a)));
        }
    }
}
