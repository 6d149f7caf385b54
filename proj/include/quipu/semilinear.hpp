#ifndef QUIPU_SEMILINEAR_HPP
#define QUIPU_SEMILINEAR_HPP

#include <set>
#include <vector>

#include "quipu/path.hpp"

namespace quipu {

/// base + N·gens[0] (+ N·gens[1]): 0 gens = point, 1 = half-line, 2 = cone.
/// Two gens must be non-colinear, one gen non-null.
struct SemiLinearTerm {
    Vec2 base;
    std::vector<Vec2> gens;

    SemiLinearTerm() = default;
    SemiLinearTerm(Vec2 b, std::vector<Vec2> g);
    bool operator==(const SemiLinearTerm&) const = default;
};

struct SemiLinearSet {
    std::vector<SemiLinearTerm> terms;
};

bool contains(const SemiLinearTerm& t, Vec2 point);
bool contains(const SemiLinearSet& s, Vec2 point);

struct IntersectResult {
    enum class Kind { Empty, Finite, Terms, Unknown } kind = Kind::Empty;
    std::vector<Vec2> points;          // Finite
    std::vector<SemiLinearTerm> terms; // Terms
};

/// Exact where the filtration needs it (point x any, line x line, line x plane,
/// plane x plane with identical generator pairs); general plane x plane is
/// Unknown and callers fall back to window enumeration.
IntersectResult intersect_terms(const SemiLinearTerm& t1, const SemiLinearTerm& t2);

/// Window-exact intersection; uses the exact arms, enumerates on Unknown.
std::set<Vec2> intersect_in_window(const SemiLinearTerm& t1, const SemiLinearTerm& t2,
                                   const Window& w);

struct FinitenessResult {
    enum class Kind { Yes, No, Unknown } kind = Kind::Yes;
    std::vector<Vec2> points;  // the full intersection when Yes
};

FinitenessResult intersection_finite(const SemiLinearSet& s1, const SemiLinearSet& s2);

std::set<Vec2> enumerate(const SemiLinearTerm& t, const Window& w);
std::set<Vec2> enumerate(const SemiLinearSet& s, const Window& w);

}  // namespace quipu

#endif
