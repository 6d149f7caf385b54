#include <random>

#include "doctest.h"
#include "quipu/semilinear.hpp"

using namespace quipu;

namespace {

// brute-force window intersection of two terms
std::set<Vec2> brute_intersect(const SemiLinearTerm& a, const SemiLinearTerm& b,
                               const Window& w) {
    std::set<Vec2> ea = enumerate(a, w), eb = enumerate(b, w), out;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                          std::inserter(out, out.end()));
    return out;
}

SemiLinearTerm random_term(std::mt19937& rng, int max_coord) {
    auto coord = [&]() {
        return static_cast<std::int64_t>(rng() % (2 * max_coord + 1)) - max_coord;
    };
    auto nonnull = [&]() {
        Vec2 v{};
        while (v == Vec2{}) v = {coord(), coord()};
        return v;
    };
    Vec2 base{coord(), coord()};
    switch (rng() % 3) {
        case 0: return SemiLinearTerm(base, {});
        case 1: return SemiLinearTerm(base, {nonnull()});
        default: {
            Vec2 g1 = nonnull(), g2 = nonnull();
            while (colinear(g1, g2)) g2 = nonnull();
            return SemiLinearTerm(base, {g1, g2});
        }
    }
}

}  // namespace

TEST_CASE("contains") {
    CHECK(contains(SemiLinearTerm({0, -2}, {{0, -1}}), {0, -5}));
    CHECK(contains(SemiLinearTerm({2, -2}, {{2, 0}, {0, -1}}), {6, -4}));
    CHECK_FALSE(contains(SemiLinearTerm({0, -2}, {{0, -1}}), {1, -2}));
}

TEST_CASE("intersect_terms exact cases") {
    Window w{-30, 30, -30, 30, 0};

    SUBCASE("colinear lines, same direction") {
        SemiLinearTerm a({0, 0}, {{1, 0}}), b({5, 0}, {{2, 0}});
        IntersectResult r = intersect_terms(a, b);
        REQUIRE(r.kind == IntersectResult::Kind::Terms);
        REQUIRE(r.terms.size() == 1);
        CHECK(r.terms[0].base == Vec2{5, 0});
        CHECK(r.terms[0].gens == std::vector<Vec2>{{2, 0}});
        CHECK(intersect_in_window(a, b, w) == brute_intersect(a, b, w));
    }
    SUBCASE("parallel distinct rows") {
        IntersectResult r =
            intersect_terms(SemiLinearTerm({0, 0}, {{1, 0}}), SemiLinearTerm({0, 1}, {{1, 0}}));
        CHECK(r.kind == IntersectResult::Kind::Empty);
    }
    SUBCASE("single crossing") {
        IntersectResult r =
            intersect_terms(SemiLinearTerm({0, 0}, {{1, 0}}), SemiLinearTerm({3, 3}, {{0, -1}}));
        REQUIRE(r.kind == IntersectResult::Kind::Finite);
        CHECK(r.points == std::vector<Vec2>{{3, 0}});
    }
    SUBCASE("opposite colinear directions") {
        SemiLinearTerm a({0, 0}, {{1, 0}}), b({7, 0}, {{-2, 0}});
        IntersectResult r = intersect_terms(a, b);
        REQUIRE(r.kind == IntersectResult::Kind::Finite);
        CHECK(intersect_in_window(a, b, w) == brute_intersect(a, b, w));
    }
}

TEST_CASE("intersection_finite") {
    SemiLinearSet col{{SemiLinearTerm({0, -2}, {{0, -1}})}};
    SemiLinearSet row{{SemiLinearTerm({0, -1}, {{1, 0}})}};
    FinitenessResult r = intersection_finite(col, row);
    CHECK(r.kind == FinitenessResult::Kind::Yes);
    CHECK(r.points.empty());

    SemiLinearSet line{{SemiLinearTerm({0, 0}, {{1, 0}})}};
    CHECK(intersection_finite(line, line).kind == FinitenessResult::Kind::No);

    SemiLinearSet quad{{SemiLinearTerm({0, 0}, {{1, 0}, {0, 1}})}};
    SemiLinearSet ray{{SemiLinearTerm({10, 10}, {{1, 0}})}};
    CHECK(intersection_finite(quad, ray).kind == FinitenessResult::Kind::No);
}

TEST_CASE("enumerate") {
    Window w1{-5, 5, -4, 0, 0};
    CHECK(enumerate(SemiLinearTerm({0, -2}, {{0, -1}}), w1) ==
          std::set<Vec2>{{0, -2}, {0, -3}, {0, -4}});
    CHECK(enumerate(SemiLinearSet{}, w1).empty());
    Window w2{0, 6, -3, 0, 0};
    CHECK(enumerate(SemiLinearTerm({2, -2}, {{2, 0}, {0, -1}}), w2) ==
          std::set<Vec2>{{2, -2}, {4, -2}, {6, -2}, {2, -3}, {4, -3}, {6, -3}});
}

TEST_CASE("window oracle equivalence, fuzzed") {
    std::mt19937 rng(12345);
    Window w{-20, 20, -20, 20, 0};
    for (int it = 0; it < 1200; ++it) {
        SemiLinearTerm a = random_term(rng, 8), b = random_term(rng, 8);
        CHECK(intersect_in_window(a, b, w) == brute_intersect(a, b, w));
    }
}

TEST_CASE("contains agrees with enumerate, fuzzed") {
    std::mt19937 rng(999);
    Window w{-12, 12, -12, 12, 0};
    for (int it = 0; it < 300; ++it) {
        SemiLinearTerm t = random_term(rng, 8);
        std::set<Vec2> pts = enumerate(t, w);
        for (std::int64_t x = w.x_min; x <= w.x_max; ++x)
            for (std::int64_t y = w.y_min; y <= w.y_max; ++y)
                CHECK(contains(t, {x, y}) == (pts.count({x, y}) != 0));
    }
}

TEST_CASE("two-gen terms are injective") {
    std::mt19937 rng(4242);
    for (int it = 0; it < 200; ++it) {
        SemiLinearTerm t = random_term(rng, 8);
        if (t.gens.size() != 2) continue;
        std::set<Vec2> seen;
        for (std::int64_t u = 0; u <= 6; ++u)
            for (std::int64_t v = 0; v <= 6; ++v)
                CHECK(seen.insert(t.base + u * t.gens[0] + v * t.gens[1]).second);
    }
}
