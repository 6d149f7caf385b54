#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "quipu/path.hpp"

using namespace quipu;

namespace {

// independent simplicity oracle: sort points, compare neighbors
bool simple_oracle(const FreePath& w) {
    std::vector<Vec2> pts = path_points(w);
    std::sort(pts.begin(), pts.end());
    return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
}

std::vector<FreePath> all_words(std::size_t len) {
    std::vector<FreePath> out;
    std::vector<Direction> w(len, Direction::E);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == len) {
            out.push_back(FreePath(w));
            return;
        }
        for (Direction d : all_directions) {
            w[i] = d;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

TEST_CASE("displacement") {
    CHECK(displacement(FreePath::parse("NNE")) == Vec2{1, 2});
    CHECK(displacement(FreePath::parse("")) == Vec2{0, 0});
    CHECK(displacement(FreePath::parse("ENEE")) == Vec2{3, 1});
}

TEST_CASE("transform") {
    FreePath a = FreePath::parse("NNE");
    CHECK(transform(a, Transform::Reverse).str() == "ENN");
    CHECK(transform(a, Transform::Backward).str() == "SSW");
    CHECK(transform(a, Transform::ReverseBackward).str() == "WSS");
}

TEST_CASE("transform properties") {
    for (const FreePath& w : all_words(5)) {
        CHECK(displacement(transform(w, Transform::Backward)) == -displacement(w));
        CHECK(transform(transform(w, Transform::ReverseBackward), Transform::ReverseBackward) ==
              w);
    }
}

TEST_CASE("is_simple") {
    CHECK(is_simple(FreePath::parse("NES")));
    CHECK_FALSE(is_simple(FreePath::parse("NESNES")));
    CHECK_FALSE(is_simple(FreePath::parse("EW")));
}

TEST_CASE("is_simple agrees with the oracle up to length 10") {
    // sampled lengths keep the loop fast; length <= 7 is exhaustive below
    std::mt19937 rng(7);
    for (int it = 0; it < 20000; ++it) {
        std::size_t len = 1 + rng() % 10;
        FreePath w;
        for (std::size_t i = 0; i < len; ++i)
            w.letters.push_back(all_directions[rng() % 4]);
        CHECK(is_simple(w) == simple_oracle(w));
    }
    for (std::size_t len = 1; len <= 7; ++len)
        for (const FreePath& w : all_words(len)) CHECK(is_simple(w) == simple_oracle(w));
}

TEST_CASE("pump_check") {
    CHECK(pump_check(FreePath::parse("E")));
    CHECK_FALSE(pump_check(FreePath::parse("NES")));
    CHECK(pump_check(FreePath::parse("NNE")));
    CHECK(is_simple(FreePath::parse("NNE").repeated(10)));
    CHECK_THROWS_AS(pump_check(FreePath{}), PathError);
}

TEST_CASE("pump_check implies simple repetitions") {
    for (std::size_t len = 1; len <= 5; ++len)
        for (const FreePath& w : all_words(len))
            if (pump_check(w))
                for (std::size_t k = 1; k <= 10; ++k) CHECK(is_simple(w.repeated(k)));
}

TEST_CASE("rotations") {
    CHECK(rotations(FreePath::parse("EEN")) ==
          std::set<std::string>{"EEN", "ENE", "NEE"});
    CHECK(rotations(FreePath::parse("EE")) == std::set<std::string>{"EE"});
    CHECK(rotations(FreePath::parse("ENEE")) ==
          std::set<std::string>{"ENEE", "NEEE", "EEEN", "EENE"});
}

TEST_CASE("ultimately periodic parsing") {
    UltimatelyPeriodic up = UltimatelyPeriodic::parse("SE|S");
    CHECK(up.transient.str() == "SE");
    CHECK(up.period.str() == "S");
    CHECK(up.str() == "SE|S");
    CHECK(up.prefix(5).str() == "SESSS");
    CHECK_THROWS_AS(UltimatelyPeriodic::parse("SES"), PathError);
    CHECK_THROWS_AS(UltimatelyPeriodic::parse("SE|"), PathError);
}

TEST_CASE("ribbon membership") {
    Ribbon r(Rational(0), Rational(2), Vec2{0, 1});
    CHECK(in_ribbon({0, 0}, r));
    CHECK_FALSE(in_ribbon({0, 3}, r));
    CHECK(in_ribbon({5, 1}, r));
    CHECK_THROWS_AS(Ribbon(Rational(0), Rational(0), Vec2{0, 2}), PathError);
}

TEST_CASE("direction order") {
    DirOrder o;  // default S < E < W < N
    CHECK(o.str() == "SEWN");
    CHECK(o.rank(Direction::S) == 0);
    CHECK(o.word_less(FreePath::parse("SS"), FreePath::parse("SE")));
    CHECK(o.word_less(FreePath::parse("SE"), FreePath::parse("SW")));
    DirOrder o2 = DirOrder::parse("ENSW");
    CHECK(o2.word_less(FreePath::parse("E"), FreePath::parse("N")));
    CHECK_THROWS_AS(DirOrder::parse("EENW"), PathError);
}
