#include <doctest.h>

#include <random>

#include "dcluster/linalg.hpp"

using namespace dcluster;

namespace {

Matrix random_matrix(std::mt19937& rng, const PrimeField& f, std::size_t r, std::size_t c, int zero_bias)
{
    std::uniform_int_distribution<std::uint32_t> val(0, f.modulus() - 1);
    std::uniform_int_distribution<int> coin(0, 9);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = coin(rng) < zero_bias ? 0 : val(rng);
    return m;
}

} // namespace

TEST_CASE("field arithmetic")
{
    PrimeField f(101);
    CHECK(f.add(100, 5) == 4);
    CHECK(f.sub(3, 5) == 99);
    CHECK(f.mul(50, 4) == 99);
    CHECK(f.from_int(-1) == 100);
    for (std::uint32_t a = 1; a < 101; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS(PrimeField(100));
    CHECK_THROWS(f.inv(0));
    PrimeField two(2);
    CHECK(two.add(1, 1) == 0);
}

TEST_CASE("rank and nullspace of a fixed matrix")
{
    PrimeField f(101);
    Matrix m(2, 3);
    // [1 2 3; 2 4 6] has rank 1
    m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
    m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6;
    CHECK(rank(f, m) == 1);
    const Matrix ns = nullspace(f, m);
    CHECK(ns.cols() == 2);
    CHECK(multiply(f, m, ns).is_zero());
}

TEST_CASE("random matrices: rank-nullity, solve, inverse, quotient")
{
    std::mt19937 rng(7);
    for (std::uint32_t p : {2u, 3u, 101u}) {
        PrimeField f(p);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
            const Matrix a = random_matrix(rng, f, r, c, static_cast<int>(rng() % 8));
            const Matrix ns = nullspace(f, a);
            CHECK(rank(f, a) + ns.cols() == c);
            CHECK(multiply(f, a, ns).is_zero());
            CHECK(rank(f, ns) == ns.cols());

            Vec x(c);
            for (auto& v : x) v = rng() % p;
            const Vec b = apply(f, a, x);
            const auto sol = solve(f, a, b);
            REQUIRE(sol.has_value());
            CHECK(apply(f, a, *sol) == b);

            const Quotient q = quotient_by_columns(f, a);
            CHECK(q.projection.rows() == r - rank(f, a));
            CHECK(multiply(f, q.projection, a).is_zero());
            for (std::size_t k = 0; k < q.lifts.size(); ++k) {
                Vec e(r, 0);
                e[q.lifts[k]] = 1;
                Vec expect(q.lifts.size(), 0);
                expect[k] = 1;
                CHECK(apply(f, q.projection, e) == expect);
            }

            const Matrix sq = random_matrix(rng, f, c, c, 0);
            if (auto inv = inverse(f, sq)) CHECK(multiply(f, *inv, sq) == Matrix::identity(c));
            else CHECK(rank(f, sq) < c);
        }
    }
}

TEST_CASE("solve reports inconsistent systems")
{
    PrimeField f(5);
    Matrix a(2, 1);
    a(0, 0) = 1;
    CHECK_FALSE(solve(f, a, Vec{0, 1}).has_value());
}
