#ifndef QUIPU_PATH_HPP
#define QUIPU_PATH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quipu {

/// The four lattice directions. Internal order is fixed; the alphabetical
/// order used for candidate enumeration is a runtime parameter (DirOrder).
enum class Direction : std::uint8_t { E = 0, N = 1, S = 2, W = 3 };

constexpr std::array<Direction, 4> all_directions{Direction::E, Direction::N,
                                                  Direction::S, Direction::W};

Direction opposite(Direction d);
Direction turn_left(Direction d);   // counter-clockwise
Direction turn_right(Direction d);  // clockwise
char direction_char(Direction d);
std::optional<Direction> direction_from_char(char c);

struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(std::int64_t k, Vec2 v) { return {k * v.x, k * v.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2&) const = default;
    auto operator<=>(const Vec2&) const = default;
};

Vec2 direction_vec(Direction d);
std::int64_t cross(Vec2 a, Vec2 b);
std::int64_t dot(Vec2 a, Vec2 b);
bool colinear(Vec2 a, Vec2 b);

/// Axis-aligned lattice window. `margin` widens it for growth fixpoints.
struct Window {
    std::int64_t x_min = -16, x_max = 16, y_min = -16, y_max = 16;
    std::int64_t margin = 8;

    static Window square(std::int64_t half, std::int64_t margin = 8) {
        return Window{-half, half, -half, half, margin};
    }
    bool contains(Vec2 p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    Window enlarged() const {
        return Window{x_min - margin, x_max + margin, y_min - margin, y_max + margin, 0};
    }
    std::int64_t span() const {
        std::int64_t sx = x_max - x_min, sy = y_max - y_min;
        return sx > sy ? sx : sy;
    }
};

/// A word over {E,N,S,W}; a valid free path visits pairwise distinct points.
struct FreePath {
    std::vector<Direction> letters;

    FreePath() = default;
    explicit FreePath(std::vector<Direction> w) : letters(std::move(w)) {}

    static FreePath parse(const std::string& s);
    std::string str() const;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    bool operator==(const FreePath&) const = default;

    FreePath operator+(const FreePath& rhs) const;
    FreePath repeated(std::size_t k) const;
};

enum class Transform { Reverse, Backward, ReverseBackward };

Vec2 displacement(const FreePath& fp);
FreePath transform(const FreePath& fp, Transform mode);
bool is_simple(const FreePath& word);
/// Prefix-sum points of the word anchored at `anchor` (size |word|+1).
std::vector<Vec2> path_points(const FreePath& word, Vec2 anchor = {});

/// Lemma "double means pumpable": is_simple(m·m) certifies ^ω m^ω.
bool pump_check(const FreePath& m);

std::set<std::string> rotations(const FreePath& m);
FreePath rotate(const FreePath& m, std::size_t shift);

/// m p^ω: empty transient allowed, period non-empty.
struct UltimatelyPeriodic {
    FreePath transient;
    FreePath period;

    static UltimatelyPeriodic parse(const std::string& s);  // "m|p"
    std::string str() const;
    /// First n letters of the infinite word.
    FreePath prefix(std::size_t n) const;
};

struct GroundedPath {
    Vec2 anchor;
    FreePath word;

    std::vector<Vec2> points() const { return path_points(word, anchor); }
};

/// Exact rational, normalized, denominator > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);
    friend bool operator<=(Rational a, Rational b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
    friend Rational operator-(Rational a, Rational b);
    bool operator==(const Rational&) const = default;
};

/// Points x with a <= nu·x <= b; requires a + |nu| <= b so it is connected.
struct Ribbon {
    Rational a;
    Rational b;
    Vec2 nu;

    Ribbon(Rational a_, Rational b_, Vec2 nu_);
};

bool in_ribbon(Vec2 point, const Ribbon& r);

/// Runtime alphabetical order on directions; default S < E < W < N.
struct DirOrder {
    std::array<Direction, 4> order{Direction::S, Direction::E, Direction::W, Direction::N};

    static DirOrder parse(const std::string& s);  // e.g. "SEWN"
    std::string str() const;
    int rank(Direction d) const;
    /// Lexicographic comparison of words under this order.
    bool word_less(const FreePath& a, const FreePath& b) const;
};

struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace quipu

#endif
