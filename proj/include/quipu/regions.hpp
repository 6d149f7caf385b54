#ifndef QUIPU_REGIONS_HPP
#define QUIPU_REGIONS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quipu/path.hpp"

namespace quipu {

enum class Side { Left, Right, On };

/// backward is read backward from the anchor: materializing it walks its
/// letters from the anchor and yields points in reverse path order.
struct BiInfinitePath {
    UltimatelyPeriodic backward;
    Vec2 anchor;
    UltimatelyPeriodic forward;
};

struct RegionsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CogrowBlocked : RegionsError {
    std::size_t step;
    explicit CogrowBlocked(std::size_t n)
        : RegionsError("co-growth blocked at step " + std::to_string(n)), step(n) {}
};

/// Ordered points of a finite path (consecutive points adjacent).
using PointSeq = std::vector<Vec2>;

/// Materializes the bi-infinite path inside `w` plus one ring beyond, in path
/// order (…backward, anchor, forward…).
PointSeq materialize(const BiInfinitePath& bp, const Window& w);

/// Left/Right partition of `w` induced by an oriented path given as an
/// ordered point sequence (bi-infinite paths: pass a window-spanning stretch).
struct RegionSplit {
    std::set<Vec2> left, right, path;
};
RegionSplit split_regions(const PointSeq& pts, const Window& w);

Side side_of(const BiInfinitePath& bp, Vec2 point, const Window& w);

FreePath cogrow(const UltimatelyPeriodic& b1, const UltimatelyPeriodic& f1,
                const UltimatelyPeriodic& b2, const UltimatelyPeriodic& f2, Side side,
                std::size_t max_steps);

struct WallCell {
    bool present = false;
    std::string tile;                 // empty when unknown / absent
    std::set<char> edge_dirs;         // directions of incident path edges
    bool operator==(const WallCell&) const = default;
};

using WallValuation = std::vector<WallCell>;  // x_w .. x_w + delta

struct OffTheWallReport {
    std::size_t i = 0;
    std::size_t l = 0;
    std::int64_t x_w = 0;
    std::int64_t delta = 0;
    std::int64_t y0 = 0;
    WallValuation valuation;
    std::int64_t area_above = 0;
    std::int64_t height = 0;
};

/// Finds the off-the-wall decomposition of a finite path ending on the y0
/// wall, or nullopt. `tiles` (one name per step, as from path_assembles) is
/// optional and only enriches the valuation.
std::optional<OffTheWallReport> off_the_wall_analyze(
    const GroundedPath& path, std::int64_t y0,
    const std::vector<std::string>& tiles = {});

/// Right co-growth of the two above-the-wall segments continued by W^omega,
/// both walled by the eastern ray. Requires identical wall valuations.
FreePath combine_off_the_wall(const GroundedPath& p1, const GroundedPath& p2, std::int64_t y0,
                              std::size_t max_steps,
                              const std::vector<std::string>& tiles1 = {},
                              const std::vector<std::string>& tiles2 = {});

/// Indices k >= 1 with y >= y0 whose eastward ray misses the path.
std::vector<std::size_t> points_of_interest(const GroundedPath& path, std::int64_t y0);

}  // namespace quipu

#endif
