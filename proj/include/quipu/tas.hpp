#ifndef QUIPU_TAS_HPP
#define QUIPU_TAS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "quipu/path.hpp"

namespace quipu {

/// Empty string is the non-bonding glue.
using GlueLabel = std::string;

struct TileType {
    std::string name;
    std::array<GlueLabel, 4> glue{};  // indexed by Direction

    const GlueLabel& glue_at(Direction d) const { return glue[static_cast<int>(d)]; }
    GlueLabel& glue_at(Direction d) { return glue[static_cast<int>(d)]; }
};

struct TAS {
    std::vector<TileType> tiles;
    TileType seed;
    bool seed_in_tileset = false;

    const TileType* find_tile(const std::string& name) const;
};

struct TasError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the JSON document format: {glues, tiles, seed, seed_in_tileset}.
TAS load_tas(const std::string& json_text);
TAS load_tas_file(const std::string& path);

bool glues_match(const TileType& t, Direction d, const TileType& t2);

/// Partial map from lattice points to tile names; seed at the origin.
struct Assembly {
    std::map<Vec2, std::string> tiles;

    bool has(Vec2 p) const { return tiles.count(p) != 0; }
    const std::string* at(Vec2 p) const {
        auto it = tiles.find(p);
        return it == tiles.end() ? nullptr : &it->second;
    }
};

struct ConfluenceWitness {
    Vec2 point;
    std::string tile_a, tile_b;  // sorted by name
};

using GrowResult = std::variant<Assembly, ConfluenceWitness>;

/// Single-tile attachment fixpoint on the margin-enlarged window, cropped to
/// the window. Returns a witness if some free position is attachable by two
/// distinct tile types.
GrowResult grow_max(const TAS& tas, const Window& window);

/// Glue-consistent tile sequence along the grounded word from the seed, or
/// nullopt. The sequence excludes the seed (one tile per step).
std::optional<std::vector<std::string>> path_assembles(const TAS& tas, const FreePath& word);

/// Certifies 0.m p^omega within AlphaMax: checks simplicity and assembly of
/// m p^R with R large enough that a (phase, tile) state repeat is forced.
bool candidate_in_alphamax(const TAS& tas, const FreePath& m, const FreePath& p);

/// Window restriction of NonCausal(x): x itself plus every y such that some
/// assembly path from the origin reaches x avoiding y.
std::set<Vec2> non_causal(const TAS& tas, Vec2 x, const Window& window);

}  // namespace quipu

#endif
