#include "doctest.h"

#include <random>

#include "sullivan/algebra.hpp"
#include "support.hpp"

using namespace sullivan;

namespace {

GeneratorSet xy()
{
    GeneratorSet g;
    g.add("x", 2);
    g.add("y", 3);
    return g;
}

Polynomial gen(GeneratorId id, int exp = 1) { return Polynomial(Monomial::generator(id, exp)); }

} // namespace

TEST_SUITE("algebra") {

TEST_CASE("normalize moves an odd generator past an even one without sign")
{
    auto g = xy();
    auto r = normalize(g, {{1, 1}, {0, 1}});
    REQUIRE(r);
    CHECK(r->sign == 1);
    CHECK(to_string(g, r->monomial) == "x y");
}

TEST_CASE("normalize swaps two odd generators with a sign")
{
    GeneratorSet g;
    auto a = g.add("a", 3);
    auto b = g.add("b", 3);
    auto r = normalize(g, {{b, 1}, {a, 1}});
    REQUIRE(r);
    CHECK(r->sign == -1);
    CHECK(to_string(g, r->monomial) == "a b");
}

TEST_CASE("an odd square vanishes")
{
    auto g = xy();
    CHECK_FALSE(normalize(g, {{1, 1}, {1, 1}}));
    CHECK_FALSE(normalize(g, {{1, 2}}));
}

TEST_CASE("normalize rejects unknown ids and non-positive exponents")
{
    auto g = xy();
    CHECK_THROWS_AS(normalize(g, {{7, 1}}), AlgebraError);
    CHECK_THROWS_AS(normalize(g, {{0, 0}}), AlgebraError);
}

TEST_CASE("normalize merges repeated even factors")
{
    auto g = xy();
    auto r = normalize(g, {{0, 1}, {1, 1}, {0, 2}});
    REQUIRE(r);
    CHECK(r->sign == 1);
    CHECK(r->monomial == Monomial::from_canonical({{0, 3}, {1, 1}}));
}

TEST_CASE("normalize is idempotent on canonical monomials")
{
    auto g = testing::mixed_generators();
    for (int k = 0; k <= 12; ++k)
        for (const auto& m : basis(g, k)) {
            auto r = normalize(g, m.factors());
            REQUIRE(r);
            CHECK(r->sign == 1);
            CHECK(r->monomial == m);
        }
}

TEST_CASE("multiply examples")
{
    auto g = xy();
    CHECK(multiply(g, gen(0) + gen(1), gen(1)) == Polynomial(Monomial::from_canonical({{0, 1}, {1, 1}})));
    CHECK(multiply(g, gen(0), gen(0)) == gen(0, 2));

    GeneratorSet h;
    h.add("a", 3);
    h.add("b", 3);
    h.add("c", 3);
    auto ab = multiply(h, gen(0), gen(1));
    CHECK(multiply(h, ab, gen(2)) == multiply(h, gen(2), ab));
    CHECK(multiply(h, gen(1), gen(0)) == -ab);
}

TEST_CASE("multiply rejects polynomials over a different generator set")
{
    auto g = xy();
    CHECK_THROWS_AS(multiply(g, gen(0), gen(5)), AlgebraError);
}

TEST_CASE("basis examples")
{
    auto g = xy();
    auto b4 = basis(g, 4);
    REQUIRE(b4.size() == 1);
    CHECK(to_string(g, b4[0]) == "x^2");
    auto b5 = basis(g, 5);
    REQUIRE(b5.size() == 1);
    CHECK(to_string(g, b5[0]) == "x y");
    auto b0 = basis(testing::mixed_generators(), 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].is_unit());
    CHECK(basis(g, 1).empty());
}

TEST_CASE("basis is ordered by descending exponents of earlier generators")
{
    GeneratorSet g;
    g.add("x", 2);
    g.add("y", 2);
    auto b = basis(g, 4);
    REQUIRE(b.size() == 3);
    CHECK(to_string(g, b[0]) == "x^2");
    CHECK(to_string(g, b[1]) == "x y");
    CHECK(to_string(g, b[2]) == "y^2");
    CHECK(b[0] < b[1]);
    CHECK(b[1] < b[2]);
}

TEST_CASE("basis of a purely odd set counts subsets of the right total degree")
{
    GeneratorSet g;
    std::vector<int> degs{1, 3, 3, 5, 7, 9, 3};
    for (std::size_t i = 0; i < degs.size(); ++i)
        g.add("v" + std::to_string(i), degs[i]);
    int total = 0;
    for (int d : degs)
        total += d;
    for (int k = 0; k <= total + 1; ++k) {
        std::size_t subsets = 0;
        for (unsigned mask = 0; mask < (1u << degs.size()); ++mask) {
            int s = 0;
            for (std::size_t i = 0; i < degs.size(); ++i)
                if (mask & (1u << i))
                    s += degs[i];
            subsets += s == k;
        }
        CHECK(basis(g, k).size() == subsets);
    }
}

TEST_CASE("basis_within stops at the limit")
{
    auto g = testing::mixed_generators();
    auto full = basis(g, 20);
    REQUIRE(full.size() > 3);
    CHECK_FALSE(basis_within(g, 20, 3));
    auto all = basis_within(g, 20, full.size());
    REQUIRE(all);
    CHECK(*all == full);
}

TEST_CASE("basis by wordlength partitions the degree basis")
{
    auto g = testing::mixed_generators();
    for (int k = 0; k <= 14; ++k) {
        std::size_t sum = 0;
        for (int w = 0; w <= k; ++w) {
            auto part = basis(g, k, w);
            for (const auto& m : part) {
                CHECK(m.wordlength() == w);
                CHECK(m.degree(g) == k);
            }
            sum += part.size();
        }
        CHECK(sum == basis(g, k).size());
    }
}

TEST_CASE("wordlength_split examples")
{
    auto g = xy();
    auto parts = wordlength_split(gen(0, 2) + gen(1));
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(2) == gen(0, 2));
    CHECK(parts.at(1) == gen(1));
    CHECK(wordlength_split(Polynomial{}).empty());
    auto xy_parts = wordlength_split(multiply(g, gen(0), gen(1)));
    REQUIRE(xy_parts.size() == 1);
    CHECK(xy_parts.count(2) == 1);
}

TEST_CASE("polynomials drop cancelled coefficients")
{
    auto p = gen(0) - gen(0);
    CHECK(p.is_zero());
    Polynomial q;
    q.add_term(Monomial::generator(1), Rational(2, 4));
    CHECK(q.coefficient(Monomial::generator(1)) == Rational(1, 2));
    q.add_term(Monomial::generator(1), Rational(-1, 2));
    CHECK(q.is_zero());
}

TEST_CASE("to_string of polynomials")
{
    auto g = xy();
    CHECK(to_string(g, Polynomial{}) == "0");
    CHECK(to_string(g, Polynomial::unit()) == "1");
    auto p = gen(0, 3) * Rational(-2) + gen(0) * Rational(1, 2);
    CHECK(to_string(g, p) == "-2*x^3 + 1/2*x");
}

TEST_CASE("graded commutativity, associativity and distributivity on random elements")
{
    auto g = testing::mixed_generators();
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int dp = testing::uniform(rng, 0, 9), dq = testing::uniform(rng, 0, 9), dr = testing::uniform(rng, 0, 9);
        auto p = testing::random_homogeneous(g, dp, rng);
        auto q = testing::random_homogeneous(g, dq, rng);
        auto r = testing::random_homogeneous(g, dr, rng);
        auto pq = multiply(g, p, q);
        auto qp = multiply(g, q, p);
        CHECK(pq == ((dp * dq) % 2 ? -qp : qp));
        CHECK(multiply(g, pq, r) == multiply(g, p, multiply(g, q, r)));
        CHECK(multiply(g, p, q + r) == pq + multiply(g, p, r));
        if (!pq.is_zero()) {
            CHECK(pq.homogeneous_degree(g) == dp + dq);
        }
    }
}

TEST_CASE("wordlength is additive on nonzero monomial products")
{
    auto g = testing::mixed_generators();
    for (int k1 = 0; k1 <= 8; ++k1)
        for (int k2 = 0; k2 <= 8; ++k2)
            for (const auto& a : basis(g, k1))
                for (const auto& b : basis(g, k2))
                    if (auto m = multiply(g, a, b)) {
                        CHECK(m->monomial.wordlength() == a.wordlength() + b.wordlength());
                    }
}

} // TEST_SUITE
