#include "quipu/tas.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace quipu {

namespace {

using nlohmann::json;

TileType tile_from_json(const json& j) {
    if (!j.is_object() || !j.contains("name"))
        throw TasError("ParseError: tile needs a name");
    TileType t;
    t.name = j.at("name").get<std::string>();
    const std::pair<const char*, Direction> sides[] = {{"north", Direction::N},
                                                       {"east", Direction::E},
                                                       {"south", Direction::S},
                                                       {"west", Direction::W}};
    for (auto [key, dir] : sides) {
        if (j.contains(key) && !j.at(key).is_null())
            t.glue_at(dir) = j.at(key).get<std::string>();
    }
    return t;
}

}  // namespace

const TileType* TAS::find_tile(const std::string& name) const {
    for (const auto& t : tiles)
        if (t.name == name) return &t;
    return nullptr;
}

TAS load_tas(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw TasError(std::string("ParseError: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("tiles") || !doc.contains("seed"))
        throw TasError("ParseError: document needs tiles and seed");

    TAS tas;
    std::set<std::string> declared_glues;
    bool check_glues = doc.contains("glues");
    if (check_glues)
        for (const auto& g : doc.at("glues")) declared_glues.insert(g.get<std::string>());

    std::set<std::string> names;
    for (const auto& tj : doc.at("tiles")) {
        TileType t = tile_from_json(tj);
        if (!names.insert(t.name).second) throw TasError("DuplicateTileName: " + t.name);
        tas.tiles.push_back(t);
    }
    tas.seed_in_tileset = doc.value("seed_in_tileset", false);

    const json& sj = doc.at("seed");
    if (sj.is_string()) {
        const TileType* t = tas.find_tile(sj.get<std::string>());
        if (!t) throw TasError("UnknownSeed: " + sj.get<std::string>());
        tas.seed = *t;
    } else {
        tas.seed = tile_from_json(sj);
        if (tas.seed_in_tileset && !tas.find_tile(tas.seed.name))
            throw TasError("UnknownSeed: " + tas.seed.name);
    }

    if (check_glues) {
        auto validate = [&](const TileType& t) {
            for (const auto& g : t.glue)
                if (!g.empty() && !declared_glues.count(g))
                    throw TasError("ParseError: undeclared glue '" + g + "' on tile " + t.name);
        };
        for (const auto& t : tas.tiles) validate(t);
        validate(tas.seed);
    }
    return tas;
}

TAS load_tas_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TasError("ParseError: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_tas(ss.str());
}

bool glues_match(const TileType& t, Direction d, const TileType& t2) {
    const GlueLabel& a = t.glue_at(d);
    return !a.empty() && a == t2.glue_at(opposite(d));
}

namespace {

struct Grown {
    std::map<Vec2, const TileType*> placed;
};

// Tiles attachable at `pos` via placed neighbors; sorted by name.
std::set<std::string> attachable_at(const TAS& tas, const Grown& g, Vec2 pos) {
    std::set<std::string> out;
    for (Direction d : all_directions) {
        auto it = g.placed.find(pos + direction_vec(d));
        if (it == g.placed.end()) continue;
        for (const TileType& t : tas.tiles)
            if (glues_match(*it->second, opposite(d), t)) out.insert(t.name);
    }
    return out;
}

bool reachable_avoiding(const TAS& tas, const Grown& g, Vec2 target, Vec2 avoid) {
    if (target == avoid) return false;
    if (target == Vec2{0, 0}) return true;
    std::set<Vec2> seen{{0, 0}};
    std::deque<Vec2> q{{0, 0}};
    while (!q.empty()) {
        Vec2 cur = q.front();
        q.pop_front();
        const TileType* tc = g.placed.at(cur);
        for (Direction d : all_directions) {
            Vec2 nxt = cur + direction_vec(d);
            if (nxt == avoid || seen.count(nxt)) continue;
            auto it = g.placed.find(nxt);
            if (it == g.placed.end() || !glues_match(*tc, d, *it->second)) continue;
            if (nxt == target) return true;
            seen.insert(nxt);
            q.push_back(nxt);
        }
    }
    return false;
}

}  // namespace

GrowResult grow_max(const TAS& tas, const Window& window) {
    Window big = window.enlarged();
    Grown g;
    g.placed[{0, 0}] = &tas.seed;

    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Vec2> frontier;
        for (const auto& [pos, _] : g.placed)
            for (Direction d : all_directions) {
                Vec2 q = pos + direction_vec(d);
                if (big.contains(q) && !g.placed.count(q)) frontier.insert(q);
            }
        for (Vec2 pos : frontier) {
            auto tiles = attachable_at(tas, g, pos);
            if (tiles.size() >= 2) {
                auto it = tiles.begin();
                std::string a = *it++;
                return ConfluenceWitness{pos, a, *it};
            }
            if (tiles.size() == 1) {
                g.placed[pos] = tas.find_tile(*tiles.begin());
                changed = true;
            }
        }
    }

    // A second tile may become attachable at an occupied cell once later
    // neighbors arrive; both orders are producible if the enabling neighbors
    // are reachable without the cell.
    for (const auto& [pos, tile] : g.placed) {
        if (pos == Vec2{0, 0}) continue;
        std::set<std::string> tiles;
        for (Direction d : all_directions) {
            Vec2 np = pos + direction_vec(d);
            auto it = g.placed.find(np);
            if (it == g.placed.end()) continue;
            if (!reachable_avoiding(tas, g, np, pos)) continue;
            for (const TileType& t : tas.tiles)
                if (glues_match(*it->second, opposite(d), t)) tiles.insert(t.name);
        }
        if (tiles.size() >= 2) {
            auto it = tiles.begin();
            std::string a = *it++;
            return ConfluenceWitness{pos, a, *it};
        }
    }

    Assembly out;
    for (const auto& [pos, tile] : g.placed)
        if (window.contains(pos)) out.tiles[pos] = tile->name;
    return out;
}

std::optional<std::vector<std::string>> path_assembles(const TAS& tas, const FreePath& word) {
    if (!is_simple(word)) return std::nullopt;
    std::vector<const TileType*> stack(word.size(), nullptr);
    std::vector<std::size_t> choice(word.size(), 0);
    std::size_t i = 0;
    while (i < word.size()) {
        const TileType& prev = i == 0 ? tas.seed : *stack[i - 1];
        Direction d = word.letters[i];
        const TileType* found = nullptr;
        std::size_t c = choice[i];
        for (; c < tas.tiles.size(); ++c) {
            if (glues_match(prev, d, tas.tiles[c])) {
                found = &tas.tiles[c];
                break;
            }
        }
        if (found) {
            stack[i] = found;
            choice[i] = c + 1;
            ++i;
        } else {
            choice[i] = 0;
            if (i == 0) return std::nullopt;
            --i;  // backtrack
        }
    }
    std::vector<std::string> seq(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) seq[k] = stack[k]->name;
    return seq;
}

bool candidate_in_alphamax(const TAS& tas, const FreePath& m, const FreePath& p) {
    if (p.empty()) return false;
    std::size_t reps = std::max<std::size_t>(
        {3 * m.size(), m.size() + 2 * p.size() + 4, tas.tiles.size() + 2, 2});
    FreePath probe = m + p.repeated(reps);
    if (!is_simple(probe)) return false;
    return path_assembles(tas, probe).has_value();
}

std::set<Vec2> non_causal(const TAS& tas, Vec2 x, const Window& window) {
    GrowResult grown = grow_max(tas, window);
    const Assembly* asmb = std::get_if<Assembly>(&grown);
    if (!asmb) throw TasError("non_causal: system not confluent in window");
    if (!asmb->has(x)) throw TasError("PointNotInAssembly");

    auto tile_def = [&](Vec2 p) -> const TileType* {
        if (p == Vec2{0, 0} && !tas.seed_in_tileset) return &tas.seed;
        return tas.find_tile(*asmb->at(p));
    };
    auto reaches_avoiding = [&](Vec2 avoid) {
        if (avoid == Vec2{0, 0}) return x == Vec2{0, 0};
        std::set<Vec2> seen{{0, 0}};
        std::deque<Vec2> q{{0, 0}};
        while (!q.empty()) {
            Vec2 cur = q.front();
            q.pop_front();
            if (cur == x) return true;
            for (Direction d : all_directions) {
                Vec2 nxt = cur + direction_vec(d);
                if (nxt == avoid || seen.count(nxt) || !asmb->has(nxt)) continue;
                if (!glues_match(*tile_def(cur), d, *tile_def(nxt))) continue;
                seen.insert(nxt);
                q.push_back(nxt);
            }
        }
        return false;
    };

    std::set<Vec2> result{x};
    for (const auto& [p, _] : asmb->tiles) {
        if (p == x) continue;
        if (reaches_avoiding(p)) result.insert(p);
    }
    return result;
}

}  // namespace quipu
