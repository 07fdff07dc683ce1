#include "doctest.h"

#include "sullivan/classify.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/constructors.hpp"
#include "sullivan/dsl.hpp"

using namespace sullivan;
namespace c = sullivan::constructors;

namespace {

std::int64_t binomial(int n, int k)
{
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

BettiTable table(const ModelSpec& s) { return cohomology_table(validate(s)); }

} // namespace

TEST_SUITE("constructors") {

TEST_CASE("spheres")
{
    auto s3 = c::sphere(3);
    CHECK(s3.generators.size() == 1);
    CHECK(s3.d(0).is_zero());
    CHECK(table(s3).total == 2);
    CHECK(table(c::sphere(2)).total == 2);
    CHECK(dsl::serialize(c::sphere(2)) == "model s2\nflag formal\ngen x 2\ngen y 3\nd y = x^2\n");
    auto s4 = validate(c::sphere(4));
    CHECK(fd_bound(s4) == 4);
    CHECK(s4.generators()[1].degree == 7);
    for (int n = 2; n <= 9; ++n)
        CHECK(table(c::sphere(n)).total == 2);
    CHECK_THROWS_AS(c::sphere(1), std::invalid_argument);
}

TEST_CASE("projective spaces")
{
    auto cp1 = c::projective(1);
    auto s2 = c::sphere(2);
    CHECK(cp1.generators == s2.generators);
    CHECK(cp1.differential == s2.differential);
    for (int n = 1; n <= 5; ++n) {
        auto t = table(c::projective(n));
        CHECK(t.total == n + 1);
        CHECK(t.observed_fd == 2 * n);
        for (int i = 0; i <= n; ++i)
            CHECK(t.at(2 * i) == 1);
    }
    CHECK_THROWS_AS(c::projective(0), std::invalid_argument);
}

TEST_CASE("tori and the Heisenberg model")
{
    for (int n = 1; n <= 5; ++n) {
        auto t = table(c::torus(n));
        for (int k = 0; k <= n; ++k)
            CHECK(t.at(k) == binomial(n, k));
        CHECK(c::torus(n).flags.nilpotent);
    }
    auto h = table(c::heisenberg());
    CHECK(h.betti[0] == 1);
    CHECK(h.betti[1] == 2);
    CHECK(h.betti[2] == 2);
    CHECK(h.betti[3] == 1);
    CHECK(c::heisenberg().flags.nilpotent);
}

TEST_CASE("tensor products")
{
    auto t33 = c::tensor(c::sphere(3), c::sphere(3));
    CHECK(t33.generators.size() == 2);
    CHECK(t33.d(0).is_zero());
    CHECK(t33.d(1).is_zero());
    CHECK(t33.generators[0].name == "a_x");
    CHECK(t33.generators[1].name == "b_x");
    CHECK(table(t33).total == 4);

    auto t23 = c::tensor(c::sphere(2), c::sphere(3));
    CHECK(t23.generators.size() == 3);
    CHECK(table(t23).total == 4);

    auto x = c::projective(2);
    auto unit = c::tensor(x, c::empty());
    CHECK(unit.generators.size() == x.generators.size());
    CHECK(table(unit).betti == table(x).betti);
    CHECK_FALSE(unit.flags.nilpotent);
}

TEST_CASE("tensor is associative on Betti tables")
{
    std::vector<ModelSpec> parts{c::sphere(2), c::sphere(3), c::projective(2), c::heisenberg(), c::two_stage({3, 3})};
    for (std::size_t i = 0; i + 2 < parts.size(); ++i) {
        const auto &a = parts[i], &b = parts[i + 1], &d = parts[i + 2];
        auto left = validate(c::tensor(c::tensor(a, b), d));
        auto right = validate(c::tensor(a, c::tensor(b, d)));
        CohomologyOptions o;
        o.max_degree = std::max(default_window(left), default_window(right));
        CHECK(cohomology_table(left, o).betti == cohomology_table(right, o).betti);
    }
}

TEST_CASE("two-stage family")
{
    auto s = c::two_stage({3, 3, 5});
    auto m = validate(s);
    CHECK(m.dim_v() == 6);
    auto ts = two_stage_decompose(m);
    REQUIRE(ts);
    CHECK(ts->square_iso);
    CHECK(m.generators()[4].degree == 3 + 5 - 1);
    CHECK_THROWS_AS(c::two_stage({3, 4}), std::invalid_argument);
}

TEST_CASE("random families are valid, deterministic and classified as promised")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        CAPTURE(seed);
        auto ts = c::random_two_stage(seed);
        CHECK(dsl::serialize(ts) == dsl::serialize(c::random_two_stage(seed)));
        auto tsm = validate(ts);
        auto tc = classify(tsm);
        REQUIRE(tc.two_stage);
        CHECK(tc.two_stage->dw_in_lambda_u);
        CHECK(tsm.dim_v() <= 6);

        auto iso = validate(c::random_two_stage(seed, {}, true));
        auto ic = classify(iso);
        REQUIRE(ic.two_stage);
        CHECK(ic.two_stage->square_iso);

        auto pure = c::random_pure(seed);
        CHECK(dsl::serialize(pure) == dsl::serialize(c::random_pure(seed)));
        auto pm = validate(pure);
        CHECK(classify(pm).pure);
        CHECK(pm.dim_v_even() <= pm.dim_v_odd());
        CHECK(pm.dim_v() <= 6);
        for (const auto& g : pm.generators())
            CHECK(g.degree <= 9);
    }
    CHECK(dsl::serialize(c::random_pure(1)) != dsl::serialize(c::random_pure(2)));
}

TEST_CASE("caps are respected")
{
    c::RandomCaps caps{3, 5};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto m = validate(c::random_pure(seed, caps));
        CHECK(m.dim_v() <= 3);
        auto t = validate(c::random_two_stage(seed, caps));
        CHECK(t.dim_v() <= 3);
    }
}

TEST_CASE("families by name")
{
    CHECK(c::parse_family("two-stage-random") == c::Family::TwoStageRandom);
    CHECK_FALSE(c::parse_family("klein-bottle"));
    c::FamilyParams p;
    p.family = c::Family::Projective;
    p.n = 3;
    CHECK(dsl::serialize(c::build(p)) == dsl::serialize(c::projective(3)));
    for (auto f : {c::Family::Sphere, c::Family::Projective, c::Family::Torus, c::Family::Heisenberg,
                   c::Family::TwoStage, c::Family::PureRandom, c::Family::TwoStageRandom})
        CHECK(c::parse_family(c::to_string(f)) == f);
}

} // TEST_SUITE
