#include <random>

#include "doctest.h"
#include "quipu/tas.hpp"

using namespace quipu;

namespace {

TAS ex1() { return load_tas_file(std::string(QUIPU_DATA_DIR) + "/ex1.json"); }
TAS grid1() { return load_tas_file(std::string(QUIPU_DATA_DIR) + "/grid1.json"); }
TAS bad1() { return load_tas_file(std::string(QUIPU_DATA_DIR) + "/bad1.json"); }

}  // namespace

TEST_CASE("load_tas") {
    TAS t = ex1();
    CHECK(t.tiles.size() == 4);
    CHECK(t.seed.name == "SEED");
    CHECK_FALSE(t.seed_in_tileset);
    CHECK(t.find_tile("A")->glue_at(Direction::E) == "b");

    TAS g = grid1();
    CHECK(g.tiles.size() == 1);
    CHECK(g.seed.name == "G");
    CHECK(g.seed_in_tileset);

    CHECK_THROWS_WITH_AS(
        load_tas(R"({"tiles":[{"name":"A"},{"name":"A"}],"seed":"A"})"),
        "DuplicateTileName: A", TasError);
    CHECK_THROWS_AS(load_tas(R"({"tiles":[{"name":"A"}],"seed":"Z"})"), TasError);
    CHECK_THROWS_AS(load_tas("not json"), TasError);
}

TEST_CASE("glues_match") {
    TAS t = ex1();
    const TileType& A = *t.find_tile("A");
    const TileType& B = *t.find_tile("B");
    CHECK(glues_match(A, Direction::E, B));
    CHECK_FALSE(glues_match(A, Direction::N, B));
    CHECK_FALSE(glues_match(B, Direction::N, A));  // empty glue never bonds
}

TEST_CASE("grow_max on the worked example") {
    TAS t = ex1();
    Window w{-3, 3, -3, 0, 8};
    GrowResult r = grow_max(t, w);
    REQUIRE(std::holds_alternative<Assembly>(r));
    const Assembly& a = std::get<Assembly>(r);

    std::set<Vec2> expected{{0, 0}};
    for (std::int64_t x = -3; x <= 3; ++x)
        for (std::int64_t y = -3; y <= -1; ++y) expected.insert({x, y});
    std::set<Vec2> got;
    for (const auto& [p, _] : a.tiles) got.insert(p);
    CHECK(got == expected);

    for (std::int64_t x = -3; x <= 3; ++x) {
        bool even = ((x % 2) + 2) % 2 == 0;
        CHECK(*a.at({x, -1}) == (even ? "A" : "B"));
        CHECK(*a.at({x, -2}) == (even ? "C" : "D"));
        CHECK(*a.at({x, -3}) == (even ? "C" : "D"));
    }
    CHECK(*a.at({0, 0}) == "SEED");
}

TEST_CASE("grow_max confluence witness") {
    GrowResult r = grow_max(bad1(), Window::square(4, 2));
    REQUIRE(std::holds_alternative<ConfluenceWitness>(r));
    const ConfluenceWitness& w = std::get<ConfluenceWitness>(r);
    CHECK(w.point == Vec2{0, 1});
    CHECK(w.tile_a == "B");
    CHECK(w.tile_b == "D");
}

TEST_CASE("grow_max: lonely seed") {
    TAS t;
    t.seed.name = "X";
    GrowResult r = grow_max(t, Window::square(3, 2));
    REQUIRE(std::holds_alternative<Assembly>(r));
    CHECK(std::get<Assembly>(r).tiles.size() == 1);
}

TEST_CASE("grow_max monotone in the window") {
    TAS t = ex1();
    Assembly small = std::get<Assembly>(grow_max(t, Window::square(4, 4)));
    Assembly big = std::get<Assembly>(grow_max(t, Window::square(8, 4)));
    for (const auto& [p, name] : small.tiles) {
        REQUIRE(big.has(p));
        CHECK(*big.at(p) == name);
    }
}

TEST_CASE("grow_max is order independent") {
    // random single-tile attachment orders reach the same fixpoint
    TAS t = ex1();
    Window w = Window::square(5, 0);
    Assembly want = std::get<Assembly>(grow_max(t, w));
    std::mt19937 rng(3);
    for (int run = 0; run < 10; ++run) {
        std::map<Vec2, std::string> placed{{{0, 0}, t.seed.name}};
        auto tile_def = [&](Vec2 p) {
            return p == Vec2{0, 0} ? &t.seed : t.find_tile(placed.at(p));
        };
        while (true) {
            std::vector<std::pair<Vec2, const TileType*>> options;
            for (const auto& [pos, _] : placed)
                for (Direction d : all_directions) {
                    Vec2 np = pos + direction_vec(d);
                    if (placed.count(np) || !w.contains(np)) continue;
                    for (const TileType& cand : t.tiles)
                        if (glues_match(*tile_def(pos), d, cand)) options.push_back({np, &cand});
                }
            if (options.empty()) break;
            auto pick = options[rng() % options.size()];
            placed[pick.first] = pick.second->name;
        }
        CHECK(placed.size() == want.tiles.size());
        for (const auto& [p, name] : placed) CHECK(*want.at(p) == name);
    }
}

TEST_CASE("path_assembles") {
    TAS t = ex1();
    auto r = path_assembles(t, FreePath::parse("SE"));
    REQUIRE(r.has_value());
    CHECK(*r == std::vector<std::string>{"A", "B"});
    CHECK_FALSE(path_assembles(t, FreePath::parse("SN")).has_value());
    CHECK_FALSE(path_assembles(t, FreePath::parse("EW")).has_value());
}

TEST_CASE("glue-matching paths agree with grow_max") {
    TAS t = ex1();
    Assembly a = std::get<Assembly>(grow_max(t, Window::square(10, 8)));
    for (const char* w : {"SE", "SES", "SW", "SSS", "SEESS", "SWWSS"}) {
        auto seq = path_assembles(t, FreePath::parse(w));
        REQUIRE(seq.has_value());
        std::vector<Vec2> pts = path_points(FreePath::parse(w));
        for (std::size_t k = 1; k < pts.size(); ++k) CHECK(*a.at(pts[k]) == (*seq)[k - 1]);
    }
}

TEST_CASE("candidate_in_alphamax") {
    TAS t = ex1();
    CHECK(candidate_in_alphamax(t, FreePath::parse("S"), FreePath::parse("S")));
    CHECK(candidate_in_alphamax(t, FreePath::parse("S"), FreePath::parse("E")));
    CHECK_FALSE(candidate_in_alphamax(t, FreePath::parse("S"), FreePath::parse("N")));
    // blocked after one period: the paper excludes S(ES)^w from AlphaMax
    CHECK_FALSE(candidate_in_alphamax(t, FreePath::parse("S"), FreePath::parse("ES")));
}

TEST_CASE("candidate pumping invariant") {
    TAS t = ex1();
    for (auto [ms, ps] : std::vector<std::pair<const char*, const char*>>{
             {"S", "S"}, {"S", "E"}, {"SE", "S"}, {"SEE", "S"}, {"S", "W"}}) {
        FreePath m = FreePath::parse(ms), p = FreePath::parse(ps);
        if (!candidate_in_alphamax(t, m, p)) continue;
        for (std::size_t k = 1; k <= 3 * m.size(); ++k)
            CHECK(path_assembles(t, m + p.repeated(k)).has_value());
    }
}

TEST_CASE("non_causal") {
    TAS t = ex1();
    Window w{-3, 3, -3, 1, 4};
    Assembly a = std::get<Assembly>(grow_max(t, w));

    std::set<Vec2> nc = non_causal(t, {1, -1}, w);
    std::set<Vec2> expected;
    for (const auto& [p, _] : a.tiles) expected.insert(p);
    expected.erase({0, 0});
    expected.erase({0, -1});
    expected.insert({1, -1});
    CHECK(nc == expected);

    std::set<Vec2> nc_seed = non_causal(t, {0, 0}, w);
    std::set<Vec2> all;
    for (const auto& [p, _] : a.tiles) all.insert(p);
    CHECK(nc_seed == all);

    std::set<Vec2> nc_col = non_causal(t, {0, -3}, w);
    std::set<Vec2> expected_col = all;
    expected_col.erase({0, 0});
    expected_col.erase({0, -1});
    expected_col.erase({0, -2});
    CHECK(nc_col == expected_col);

    CHECK_THROWS_AS(non_causal(t, {0, 1}, w), TasError);
}
