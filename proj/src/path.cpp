#include "quipu/path.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_set>

namespace quipu {

Direction opposite(Direction d) {
    switch (d) {
        case Direction::E: return Direction::W;
        case Direction::W: return Direction::E;
        case Direction::N: return Direction::S;
        case Direction::S: return Direction::N;
    }
    return Direction::E;
}

Direction turn_left(Direction d) {
    switch (d) {
        case Direction::E: return Direction::N;
        case Direction::N: return Direction::W;
        case Direction::W: return Direction::S;
        case Direction::S: return Direction::E;
    }
    return Direction::E;
}

Direction turn_right(Direction d) { return opposite(turn_left(d)); }

char direction_char(Direction d) {
    switch (d) {
        case Direction::E: return 'E';
        case Direction::N: return 'N';
        case Direction::S: return 'S';
        case Direction::W: return 'W';
    }
    return '?';
}

std::optional<Direction> direction_from_char(char c) {
    switch (c) {
        case 'E': return Direction::E;
        case 'N': return Direction::N;
        case 'S': return Direction::S;
        case 'W': return Direction::W;
        default: return std::nullopt;
    }
}

Vec2 direction_vec(Direction d) {
    switch (d) {
        case Direction::E: return {1, 0};
        case Direction::N: return {0, 1};
        case Direction::S: return {0, -1};
        case Direction::W: return {-1, 0};
    }
    return {};
}

std::int64_t cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
std::int64_t dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
bool colinear(Vec2 a, Vec2 b) { return cross(a, b) == 0; }

FreePath FreePath::parse(const std::string& s) {
    FreePath fp;
    fp.letters.reserve(s.size());
    for (char c : s) {
        auto d = direction_from_char(c);
        if (!d) throw PathError(std::string("bad direction letter '") + c + "'");
        fp.letters.push_back(*d);
    }
    return fp;
}

std::string FreePath::str() const {
    std::string s;
    s.reserve(letters.size());
    for (Direction d : letters) s.push_back(direction_char(d));
    return s;
}

FreePath FreePath::operator+(const FreePath& rhs) const {
    FreePath r = *this;
    r.letters.insert(r.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return r;
}

FreePath FreePath::repeated(std::size_t k) const {
    FreePath r;
    r.letters.reserve(letters.size() * k);
    for (std::size_t i = 0; i < k; ++i)
        r.letters.insert(r.letters.end(), letters.begin(), letters.end());
    return r;
}

Vec2 displacement(const FreePath& fp) {
    Vec2 v;
    for (Direction d : fp.letters) v = v + direction_vec(d);
    return v;
}

FreePath transform(const FreePath& fp, Transform mode) {
    FreePath r = fp;
    if (mode == Transform::Reverse || mode == Transform::ReverseBackward)
        std::reverse(r.letters.begin(), r.letters.end());
    if (mode == Transform::Backward || mode == Transform::ReverseBackward)
        for (Direction& d : r.letters) d = opposite(d);
    return r;
}

std::vector<Vec2> path_points(const FreePath& word, Vec2 anchor) {
    std::vector<Vec2> pts;
    pts.reserve(word.size() + 1);
    Vec2 p = anchor;
    pts.push_back(p);
    for (Direction d : word.letters) {
        p = p + direction_vec(d);
        pts.push_back(p);
    }
    return pts;
}

namespace {
struct Vec2Hash {
    std::size_t operator()(Vec2 v) const {
        return std::hash<std::int64_t>()(v.x * 1000003 ^ (v.y + 0x9e3779b97f4a7c15LL));
    }
};
}  // namespace

bool is_simple(const FreePath& word) {
    std::unordered_set<Vec2, Vec2Hash> seen;
    seen.reserve(word.size() + 1);
    Vec2 p;
    seen.insert(p);
    for (Direction d : word.letters) {
        p = p + direction_vec(d);
        if (!seen.insert(p).second) return false;
    }
    return true;
}

bool pump_check(const FreePath& m) {
    if (m.empty()) throw PathError("pump_check: empty word");
    return is_simple(m + m);
}

FreePath rotate(const FreePath& m, std::size_t shift) {
    FreePath r;
    std::size_t n = m.size();
    if (n == 0) return r;
    shift %= n;
    r.letters.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.letters.push_back(m.letters[(i + shift) % n]);
    return r;
}

std::set<std::string> rotations(const FreePath& m) {
    if (m.empty()) throw PathError("rotations: empty word");
    std::set<std::string> out;
    for (std::size_t i = 0; i < m.size(); ++i) out.insert(rotate(m, i).str());
    return out;
}

UltimatelyPeriodic UltimatelyPeriodic::parse(const std::string& s) {
    auto bar = s.find('|');
    if (bar == std::string::npos) throw PathError("ultimately periodic path needs 'm|p'");
    UltimatelyPeriodic up;
    up.transient = FreePath::parse(s.substr(0, bar));
    up.period = FreePath::parse(s.substr(bar + 1));
    if (up.period.empty()) throw PathError("empty period in '" + s + "'");
    return up;
}

std::string UltimatelyPeriodic::str() const { return transient.str() + "|" + period.str(); }

FreePath UltimatelyPeriodic::prefix(std::size_t n) const {
    FreePath r;
    r.letters.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < transient.size())
            r.letters.push_back(transient.letters[i]);
        else
            r.letters.push_back(period.letters[(i - transient.size()) % period.size()]);
    }
    return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw PathError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Ribbon::Ribbon(Rational a_, Rational b_, Vec2 nu_) : a(a_), b(b_), nu(nu_) {
    if (nu.x == 0 && nu.y == 0) throw PathError("ribbon with null normal");
    Rational w = b - a;
    // a + |nu| <= b  <=>  (b-a) >= 0 and (b-a)^2 >= nu·nu
    bool ok = !(w < Rational(0)) && w.num * w.num >= dot(nu, nu) * w.den * w.den;
    if (!ok) throw PathError("ribbon too thin: a + |nu| > b");
}

bool in_ribbon(Vec2 point, const Ribbon& r) {
    std::int64_t d = dot(r.nu, point);
    return r.a <= Rational(d) && Rational(d) <= r.b;
}

DirOrder DirOrder::parse(const std::string& s) {
    if (s.size() != 4) throw PathError("direction order needs 4 letters");
    DirOrder o;
    bool seen[4] = {false, false, false, false};
    for (std::size_t i = 0; i < 4; ++i) {
        auto d = direction_from_char(s[i]);
        if (!d || seen[static_cast<int>(*d)]) throw PathError("bad direction order '" + s + "'");
        seen[static_cast<int>(*d)] = true;
        o.order[i] = *d;
    }
    return o;
}

std::string DirOrder::str() const {
    std::string s;
    for (Direction d : order) s.push_back(direction_char(d));
    return s;
}

int DirOrder::rank(Direction d) const {
    for (int i = 0; i < 4; ++i)
        if (order[i] == d) return i;
    return 4;
}

bool DirOrder::word_less(const FreePath& a, const FreePath& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int ra = rank(a.letters[i]), rb = rank(b.letters[i]);
        if (ra != rb) return ra < rb;
    }
    return a.size() < b.size();
}

}  // namespace quipu
