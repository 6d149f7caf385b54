#include "quipu/filtration.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"

namespace quipu {

// --- candidate order -------------------------------------------------------

CandidateIter::CandidateIter(CandidateOrder order) : order_(order) {
    if (order_.cap < 2) throw PathError("candidate cap must be >= 2");
    refill();
}

void CandidateIter::refill() {
    batch_.clear();
    batch_pos_ = 0;
    while (batch_.empty()) {
        if (length_ > order_.cap) {
            done_ = true;
            return;
        }
        // all words of this length in alphabetical order, pruned to simple
        // prefixes, split at m_len_
        std::vector<Direction> word;
        std::vector<Vec2> pts{{0, 0}};
        auto simple_extend = [&](Direction d) {
            Vec2 np = pts.back() + direction_vec(d);
            for (Vec2 p : pts)
                if (p == np) return false;
            word.push_back(d);
            pts.push_back(np);
            return true;
        };
        std::function<void()> dfs = [&]() {
            if (word.size() == static_cast<std::size_t>(length_)) {
                FreePath m, p;
                m.letters.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(m_len_));
                p.letters.assign(word.begin() + static_cast<std::ptrdiff_t>(m_len_), word.end());
                if (is_simple(m + p + p)) batch_.emplace_back(std::move(m), std::move(p));
                return;
            }
            for (Direction d : order_.dir_order.order) {
                if (!simple_extend(d)) continue;
                dfs();
                word.pop_back();
                pts.pop_back();
            }
        };
        dfs();
        if (++m_len_ >= static_cast<std::size_t>(length_)) {
            m_len_ = 1;
            ++length_;
        }
    }
}

std::optional<std::pair<FreePath, FreePath>> CandidateIter::next() {
    if (done_) return std::nullopt;
    while (batch_pos_ >= batch_.size()) {
        refill();
        if (done_) return std::nullopt;
    }
    return batch_[batch_pos_++];
}

// --- path domain -----------------------------------------------------------

SemiLinearSet path_domain(const FreePath& m, const FreePath& p) {
    SemiLinearSet s;
    std::vector<Vec2> mpts = path_points(m);
    for (std::size_t i = 0; i + 1 < mpts.size(); ++i)
        s.terms.push_back(SemiLinearTerm(mpts[i], {}));
    Vec2 vm = displacement(m);
    Vec2 vp = displacement(p);
    std::vector<Vec2> ppts = path_points(p, vm);
    for (std::size_t j = 0; j < p.size(); ++j)
        s.terms.push_back(SemiLinearTerm(ppts[j], {vp}));
    return s;
}

namespace {

using i64 = std::int64_t;

// index of `pt` on 0.m p^omega, or -1
i64 path_index_of(Vec2 pt, const FreePath& m, const FreePath& p) {
    std::vector<Vec2> mpts = path_points(m);
    for (std::size_t i = 0; i < mpts.size(); ++i)
        if (mpts[i] == pt) return static_cast<i64>(i);
    Vec2 vm = displacement(m);
    Vec2 vp = displacement(p);
    std::vector<Vec2> ppts = path_points(p, vm);
    i64 best = -1;
    for (std::size_t j = 0; j < p.size(); ++j) {
        Vec2 diff = pt - ppts[j];
        i64 k;
        if (vp.x != 0) {
            if (diff.x % vp.x != 0) continue;
            k = diff.x / vp.x;
        } else {
            if (vp.y == 0 || diff.y % vp.y != 0) continue;
            k = diff.y / vp.y;
        }
        if (k * vp.x != diff.x || k * vp.y != diff.y || k < 0) continue;
        i64 idx = static_cast<i64>(m.size()) + k * static_cast<i64>(p.size()) +
                  static_cast<i64>(j);
        if (best < 0 || idx < best) best = idx;
    }
    return best;
}

struct TileSeq {
    std::vector<std::string> names;  // per step; vertex k >= 1 has names[k-1]
    std::string at_vertex(std::size_t k, const TAS& tas) const {
        return k == 0 ? tas.seed.name : names[k - 1];
    }
};

// Unique tile sequence along 0.m p^reps (the candidate is certified).
TileSeq probe_tiles(const TAS& tas, const FreePath& m, const FreePath& p, std::size_t reps) {
    FreePath w = m + p.repeated(reps);
    auto seq = path_assembles(tas, w);
    if (!seq) throw QuipuError("probe on uncertified candidate");
    return TileSeq{*seq};
}

std::string candidate_str(const FreePath& m, const FreePath& p) {
    return m.str() + "|" + p.str();
}

// --- grid witness ----------------------------------------------------------

bool path_in_assembly(const Assembly& asmb, const TAS& tas, Vec2 anchor, const FreePath& w,
                      const Window& window, bool truncate_at_window) {
    Vec2 pos = anchor;
    const std::string* prev = asmb.at(pos);
    if (!prev) return false;
    for (Direction d : w.letters) {
        Vec2 nxt = pos + direction_vec(d);
        if (!window.contains(nxt)) return truncate_at_window;
        const std::string* cur = asmb.at(nxt);
        if (!cur) return false;
        const TileType* a = tas.find_tile(*prev);
        const TileType* b = tas.find_tile(*cur);
        if (pos == Vec2{0, 0} && !tas.seed_in_tileset) a = &tas.seed;
        if (nxt == Vec2{0, 0} && !tas.seed_in_tileset) b = &tas.seed;
        if (!a || !b || !glues_match(*a, d, *b)) return false;
        pos = nxt;
        prev = cur;
    }
    return true;
}

std::optional<GridWitness> find_grid_witness(const TAS& tas, const Window& window,
                                             const FreePath& pword, const FreePath& cword) {
    GrowResult grown = grow_max(tas, window);
    const Assembly* asmb = std::get_if<Assembly>(&grown);
    if (!asmb) return std::nullopt;

    // BFS over the binding graph gives each reachable B a canonical 0.m
    std::map<Vec2, std::pair<Vec2, Direction>> parent;
    std::vector<Vec2> bfs_order;
    std::deque<Vec2> q{{0, 0}};
    parent[{0, 0}] = {{0, 0}, Direction::E};
    while (!q.empty()) {
        Vec2 cur = q.front();
        q.pop_front();
        bfs_order.push_back(cur);
        for (Direction d : all_directions) {
            Vec2 nxt = cur + direction_vec(d);
            if (parent.count(nxt) || !asmb->has(nxt)) continue;
            const TileType* a = (cur == Vec2{0, 0} && !tas.seed_in_tileset)
                                    ? &tas.seed
                                    : tas.find_tile(*asmb->at(cur));
            const TileType* b = tas.find_tile(*asmb->at(nxt));
            if (!a || !b || !glues_match(*a, d, *b)) continue;
            parent[nxt] = {cur, d};
            q.push_back(nxt);
        }
    }
    auto word_to = [&](Vec2 b) {
        std::vector<Direction> rev;
        Vec2 cur = b;
        while (cur != Vec2{0, 0}) {
            auto [pv, d] = parent.at(cur);
            rev.push_back(d);
            cur = pv;
        }
        std::reverse(rev.begin(), rev.end());
        return FreePath(std::move(rev));
    };

    std::size_t periods =
        static_cast<std::size_t>(window.span()) / std::max<std::size_t>(1, pword.size()) + 2;
    for (Vec2 b : bfs_order) {
        for (std::size_t rp = 0; rp < pword.size(); ++rp) {
            FreePath ph = rotate(pword, rp);
            if (!path_in_assembly(*asmb, tas, b, ph.repeated(periods), window, true)) continue;
            for (std::size_t rc = 0; rc < cword.size(); ++rc) {
                FreePath ch = rotate(cword, rc);
                if (!path_in_assembly(*asmb, tas, b, ch.repeated(periods), window, true))
                    continue;
                if (!path_in_assembly(*asmb, tas, b + displacement(ph), ch, window, false))
                    continue;
                if (!path_in_assembly(*asmb, tas, b + displacement(ch), ph, window, false))
                    continue;
                return GridWitness{word_to(b), ph, ch};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

bool grid_witness_materializes(const GridWitness& w, const TAS& tas, const Window& window) {
    GrowResult grown = grow_max(tas, window);
    const Assembly* asmb = std::get_if<Assembly>(&grown);
    if (!asmb) return false;
    Vec2 b = displacement(w.m);
    std::size_t periods =
        static_cast<std::size_t>(window.span()) / std::max<std::size_t>(1, w.p.size()) + 2;
    return path_in_assembly(*asmb, tas, {0, 0}, w.m, window, false) &&
           path_in_assembly(*asmb, tas, b, w.p.repeated(periods), window, true) &&
           path_in_assembly(*asmb, tas, b, w.q.repeated(periods), window, true) &&
           path_in_assembly(*asmb, tas, b + displacement(w.p), w.q, window, false) &&
           path_in_assembly(*asmb, tas, b + displacement(w.q), w.p, window, false);
}

std::optional<GridWitness> grid_check(const Quipu& q, const FreePath& m, const FreePath& p,
                                      const TAS& tas, const Window& window) {
    QuipuAnalysis an = analyze(q);
    if (an.cycles.empty()) return std::nullopt;

    // certified tile cycle of the candidate period: earliest (phase, tile)
    // state repeat along the periodic part
    std::size_t reps = std::max<std::size_t>(
        {3 * m.size(), m.size() + 2 * p.size() + 4, tas.tiles.size() + 3});
    TileSeq seq = probe_tiles(tas, m, p, reps);
    std::size_t ms = m.size(), ps = p.size();
    std::size_t ci = 0, cj = 0;
    bool found = false;
    for (std::size_t i = ms; i <= ms + (tas.tiles.size() + 2) * ps && !found; ++i)
        for (std::size_t j = i + ps; j <= seq.names.size(); j += ps)
            if (seq.at_vertex(i, tas) == seq.at_vertex(j, tas)) {
                ci = i;
                cj = j;
                found = true;
                break;
            }
    if (!found) return std::nullopt;
    // ptiles[s] = tile after s arcs from the anchor; pw[s] = that arc's label
    std::vector<std::string> ptiles;
    FreePath pw;
    for (std::size_t s = ci; s < cj; ++s) {
        ptiles.push_back(seq.at_vertex(s, tas));
        pw.letters.push_back(p.letters[(s - ms) % ps]);
    }
    Vec2 vp = displacement(pw);

    for (const Cycle& c : an.cycles) {
        if (colinear(vp, c.disp)) continue;
        std::vector<std::string> ctiles;
        for (int v : c.verts) ctiles.push_back(q.verts[static_cast<std::size_t>(v)].tile);
        // try all rotation pairs sharing an anchor tile
        std::size_t lp = ptiles.size(), lc = ctiles.size();
        i64 extent = 2 * static_cast<i64>(lp + lc) + 2;
        // lay a bi-infinite line anchored at 0: tiles[s] sits after s arcs
        auto lay = [&](const FreePath& word, const std::vector<std::string>& tiles,
                       std::size_t rot) {
            std::map<Vec2, std::string> out;
            FreePath w = rotate(word, rot);
            std::size_t L = w.size();
            std::vector<std::string> ts;
            for (std::size_t s = 0; s < L; ++s) ts.push_back(tiles[(rot + s) % L]);
            Vec2 pos{0, 0};
            out[pos] = ts[0];
            for (i64 k = 1; k <= extent * static_cast<i64>(L); ++k) {
                std::size_t s = static_cast<std::size_t>((k - 1) % static_cast<i64>(L));
                pos = pos + direction_vec(w.letters[s]);
                out.emplace(pos, ts[(s + 1) % L]);
            }
            pos = {0, 0};
            std::size_t idx = 0;
            for (i64 k = 1; k <= extent * static_cast<i64>(L); ++k) {
                idx = (idx + L - 1) % L;
                pos = pos - direction_vec(w.letters[idx]);
                out.emplace(pos, ts[idx]);
            }
            return out;
        };
        for (std::size_t rp = 0; rp < lp; ++rp) {
            for (std::size_t rc = 0; rc < lc; ++rc) {
                if (ptiles[rp] != ctiles[rc]) continue;
                auto line_p = lay(pw, ptiles, rp);
                auto line_c = lay(c.word, ctiles, rc);
                bool ok = true;
                for (const auto& [pos, tile] : line_p) {
                    auto it = line_c.find(pos);
                    if (it != line_c.end() && it->second != tile) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                // crossing assembles; find the five-path witness in the window
                auto w = find_grid_witness(tas, window, pw, c.word);
                if (w) return w;
            }
        }
    }
    return std::nullopt;
}

// --- extend_direction ------------------------------------------------------

namespace {

// vertices whose copy_of chain leads into `ids`
void absorb_copies(const Quipu& q, std::vector<int>& ids, std::size_t old_size) {
    std::set<int> base(ids.begin(), ids.end());
    for (std::size_t v = old_size; v < q.size(); ++v) {
        int cur = q.verts[v].copy_of;
        while (cur >= 0) {
            if (base.count(cur)) {
                ids.push_back(static_cast<int>(v));
                base.insert(static_cast<int>(v));
                break;
            }
            cur = q.verts[static_cast<std::size_t>(cur)].copy_of;
        }
    }
    std::sort(ids.begin(), ids.end());
}

bool term_subset_in_window(const SemiLinearTerm& t, const SemiLinearSet& cover,
                           const Window& w) {
    for (Vec2 p : enumerate(t, w))
        if (!contains(cover, p)) return false;
    return true;
}

SemiLinearTerm shifted(const SemiLinearTerm& t, Vec2 by) {
    return SemiLinearTerm(t.base + by, t.gens);
}

}  // namespace

ExtensionResult extend_direction(const Quipu& q0, std::vector<int> X, Direction d,
                                 const TileType& t, const TAS& tas, const Window& window) {
    ExtensionResult res;
    res.q = q0;
    res.kind = ExtensionResult::Kind::NoChange;
    Window big = window.enlarged();

    std::sort(X.begin(), X.end());
    std::size_t xi = 0;
    int guard = 0;
    while (xi < X.size()) {
        if (++guard > 4096) throw QuipuError("extend_direction did not stabilize");
        int x = X[xi];
        QuipuAnalysis an = analyze(res.q);
        SemiLinearSet cov;
        cov.terms = an.cover;
        SemiLinearTerm S = shifted(an.cover[static_cast<std::size_t>(x)], direction_vec(d));

        if (term_subset_in_window(S, cov, big)) {
            ++xi;
            continue;
        }

        // classify overlaps with every vertex cover
        bool any_overlap = false;
        bool infinite_overlap = false;
        int infinite_y = -1;
        IntersectResult::Kind inf_kind{};
        for (std::size_t y = 0; y < res.q.size() && !infinite_overlap; ++y) {
            IntersectResult r = intersect_terms(S, an.cover[y]);
            switch (r.kind) {
                case IntersectResult::Kind::Empty:
                    break;
                case IntersectResult::Kind::Finite:
                    any_overlap = true;
                    break;
                case IntersectResult::Kind::Terms:
                    infinite_overlap = true;
                    infinite_y = static_cast<int>(y);
                    inf_kind = r.kind;
                    break;
                case IntersectResult::Kind::Unknown:
                    if (!intersect_in_window(S, an.cover[y], big).empty()) {
                        infinite_overlap = true;  // Lemma 25 grid arm
                        infinite_y = static_cast<int>(y);
                        inf_kind = r.kind;
                    }
                    break;
            }
        }

        if (!any_overlap && !infinite_overlap) {
            int nv = res.q.add_vertex(t.name);
            res.q.add_arc(x, d, nv);
            res.kind = ExtensionResult::Kind::Extended;
            ++xi;
            continue;
        }

        if (infinite_overlap) {
            const SemiLinearTerm& Cy = an.cover[static_cast<std::size_t>(infinite_y)];
            if (S == Cy) {
                ++xi;  // already represented by y (Lemma 25 case a)
                continue;
            }
            if (inf_kind == IntersectResult::Kind::Unknown) {
                // distinct proto-teeth overlapping: grid (Lemma 25 case 3)
                const auto& pcx = an.path_cycles[static_cast<std::size_t>(x)];
                const auto& pcy = an.path_cycles[static_cast<std::size_t>(infinite_y)];
                FreePath wa = an.cycles[static_cast<std::size_t>(pcx.back())].word;
                FreePath wb = an.cycles[static_cast<std::size_t>(pcy.back())].word;
                res.kind = ExtensionResult::Kind::GridDetected;
                res.witness = find_grid_witness(tas, window, wa, wb);
                if (!res.witness) res.witness = GridWitness{FreePath{}, wa, wb};
                return res;
            }
            std::size_t gx = S.gens.size(), gy = Cy.gens.size();
            if (gx == 1 && gy == 1) {
                Vec2 bx = S.gens[0], by = Cy.gens[0];
                if (colinear(bx, by) && dot(bx, by) > 0) {
                    // co-linear backbones, same direction (Lemma 23): stretch
                    // x's cycle to the lcm period, then retry the copies
                    i64 nx = bx.x != 0 ? bx.x : bx.y;
                    i64 ny = by.x != 0 ? by.x : by.y;
                    i64 l = std::lcm(nx < 0 ? -nx : nx, ny < 0 ? -ny : ny);
                    int k = static_cast<int>(l / (nx < 0 ? -nx : nx));
                    const auto& pcx = an.path_cycles[static_cast<std::size_t>(x)];
                    std::size_t old = res.q.size();
                    if (k >= 2) {
                        res.q = k_multiple(res.q, pcx.back(), k);
                        res.kind = ExtensionResult::Kind::Extended;
                        absorb_copies(res.q, X, old);
                        continue;  // reprocess x with the stretched cycle
                    }
                    // same period length: peel until disjoint or contained
                    res.q = unroll(res.q, pcx.back(),
                                   static_cast<int>(an.cycles[static_cast<std::size_t>(
                                                                  pcx.back())]
                                                        .verts.size()));
                    res.kind = ExtensionResult::Kind::Extended;
                    absorb_copies(res.q, X, old);
                    continue;
                }
                // opposite or skew directions cannot overlap infinitely
                throw QuipuError("unexpected infinite overlap of independent backbones");
            }
            if (gx != gy) {
                // same comb, Z1 vs Z2 (Lemma 24): fully unroll the Z2 cycle
                int v2 = gx == 2 ? x : infinite_y;
                const auto& pc = an.path_cycles[static_cast<std::size_t>(v2)];
                std::size_t old = res.q.size();
                res.q = unroll(res.q, pc.back(),
                               static_cast<int>(
                                   an.cycles[static_cast<std::size_t>(pc.back())].verts.size()));
                res.kind = ExtensionResult::Kind::Extended;
                absorb_copies(res.q, X, old);
                continue;
            }
            // same proto-tooth, shifted (Lemma 25 case b): unroll the tooth
            const auto& pcx = an.path_cycles[static_cast<std::size_t>(x)];
            std::size_t old = res.q.size();
            res.q = unroll(res.q, pcx.back(),
                           static_cast<int>(
                               an.cycles[static_cast<std::size_t>(pcx.back())].verts.size()));
            res.kind = ExtensionResult::Kind::Extended;
            absorb_copies(res.q, X, old);
            continue;
        }

        // finite, partial overlap: peel the nearest cycle until the shifted
        // cover clears the collisions (its base walks away from the seed)
        const auto& pcx = an.path_cycles[static_cast<std::size_t>(x)];
        if (pcx.empty()) throw QuipuError("finite partial overlap at a Z0 vertex");
        std::size_t old = res.q.size();
        res.q = unroll(res.q, pcx.back(),
                       static_cast<int>(
                           an.cycles[static_cast<std::size_t>(pcx.back())].verts.size()));
        res.kind = ExtensionResult::Kind::Extended;
        absorb_copies(res.q, X, old);
    }
    return res;
}

// --- periodic step / build-up ---------------------------------------------

namespace {

struct PlantInput {
    Vec2 anchor;
    FreePath m2;  // transient from the anchor (may be empty)
    FreePath p2;  // period, rotated to the anchor's phase
    std::vector<std::string> tiles;  // tiles along anchor.m2 p2^: tiles[s] at step s+1
};

int vertex_covering(const QuipuAnalysis& an, Vec2 pt) {
    for (std::size_t v = 0; v < an.cover.size(); ++v)
        if (contains(an.cover[v], pt)) return static_cast<int>(v);
    return -1;
}

// Plants transient + fresh cycle below x_anchor (which must cover the anchor
// as its cover base, zone <= 1 cases already resolved by the caller).
void plant_at(Quipu& q, const TAS& tas, int x_anchor, const PlantInput& in) {
    std::size_t ms = in.m2.size(), ps = in.p2.size();
    std::string anchor_tile = q.verts[static_cast<std::size_t>(x_anchor)].tile;
    auto tile_at = [&](std::size_t s) {  // vertex index s along the planted path
        return s == 0 ? anchor_tile : in.tiles[s - 1];
    };
    auto letter = [&](std::size_t s) {  // arc s-1 -> s
        return s <= ms ? in.m2.letters[s - 1] : in.p2.letters[(s - 1 - ms) % ps];
    };
    // earliest (phase, tile) state repeat with i >= max(1, |m2|)
    std::size_t lo = std::max<std::size_t>(1, ms);
    std::size_t besti = 0, bestj = 0;
    bool found = false;
    for (std::size_t i = lo; !found && i <= lo + (tas.tiles.size() + 2) * ps; ++i)
        for (std::size_t j = i + ps; j < in.tiles.size(); j += ps)
            if (tile_at(i) == tile_at(j)) {
                besti = i;
                bestj = j;
                found = true;
                break;
            }
    if (!found) throw QuipuError("no tile cycle along the candidate period");

    int prev = x_anchor;
    std::vector<int> cyc;
    for (std::size_t s = 1; s < bestj; ++s) {
        int nv = q.add_vertex(tile_at(s));
        q.add_arc(prev, letter(s), nv);
        if (s >= besti) cyc.push_back(nv);
        prev = nv;
    }
    q.add_arc(prev, letter(bestj), cyc.front());  // closing arc
}

}  // namespace

ExtensionResult extend_buildup(const Quipu& q0, const FreePath& m, const FreePath& p,
                               const TAS& tas, const Window& window) {
    ExtensionResult res;
    res.q = q0;
    Window big = window.enlarged();

    SemiLinearSet dom = path_domain(m, p);
    FinitenessResult fin = intersection_finite(covers(res.q), dom);
    if (fin.kind != FinitenessResult::Kind::Yes)
        throw QuipuError("PreconditionViolated: infinite or unknown cover intersection");

    i64 alpha = 0;
    for (Vec2 pt : fin.points) {
        i64 idx = path_index_of(pt, m, p);
        if (idx < 0) throw QuipuError("intersection point off the path");
        alpha = std::max(alpha, idx);
    }

    // tile sequence long enough for the split and the state-repeat search
    std::size_t reps = std::max<std::size_t>(
        {3 * m.size(), m.size() + 2 * p.size() + 4, tas.tiles.size() + 3,
         (static_cast<std::size_t>(alpha) + (tas.tiles.size() + 4) * p.size()) / p.size() + 2});
    TileSeq seq = probe_tiles(tas, m, p, reps);
    FreePath whole = m + p.repeated(reps);

    FreePath m1;  // prefix up to the anchor
    m1.letters.assign(whole.letters.begin(), whole.letters.begin() + alpha);
    PlantInput in;
    in.anchor = displacement(m1);
    if (alpha <= static_cast<i64>(m.size())) {
        in.m2.letters.assign(m.letters.begin() + alpha, m.letters.end());
        in.p2 = p;
    } else {
        in.p2 = rotate(p, static_cast<std::size_t>((alpha - static_cast<i64>(m.size())) %
                                                   static_cast<i64>(p.size())));
    }
    for (std::size_t s = static_cast<std::size_t>(alpha) + 1; s <= whole.size(); ++s)
        in.tiles.push_back(seq.names[s - 1]);

    std::size_t cycles_before = analyze(res.q).cycles.size();

    // periodic step: move the anchor vertex into Z0/Z1 as required, then plant
    int guard = 0;
    while (true) {
        if (++guard > 512) throw QuipuError("periodic step did not stabilize");
        QuipuAnalysis an = analyze(res.q);
        int xa = vertex_covering(an, in.anchor);
        if (xa < 0) throw QuipuError("anchor not covered");
        int zone = an.zone[static_cast<std::size_t>(xa)];
        const auto& pc = an.path_cycles[static_cast<std::size_t>(xa)];
        if (zone == 2) {
            res.q = unroll(res.q, pc.back(),
                           static_cast<int>(
                               an.cycles[static_cast<std::size_t>(pc.back())].verts.size()));
            continue;
        }
        if (zone == 1) {
            const Cycle& b = an.cycles[static_cast<std::size_t>(pc.front())];
            if (an.cover[static_cast<std::size_t>(xa)].base != in.anchor) {
                res.q = unroll(res.q, pc.front(), static_cast<int>(b.verts.size()));
                continue;
            }
            Vec2 vp = displacement(in.p2);
            if (colinear(vp, b.disp)) {  // independent backbone: move to Z0
                res.q = unroll(res.q, pc.front(), static_cast<int>(b.verts.size()));
                continue;
            }
            // blocked repetitions: every base instance must meet the quipu
            // only at the instance itself
            SemiLinearSet cov = covers(res.q);
            bool blocked = false;
            FreePath probe2 = in.m2 + in.p2 + in.p2;
            for (Vec2 base : enumerate(an.cover[static_cast<std::size_t>(xa)], big)) {
                for (Vec2 pt : path_points(probe2, base))
                    if (pt != base && big.contains(pt) && contains(cov, pt)) blocked = true;
                if (blocked) break;
            }
            if (blocked) {
                res.q = unroll(res.q, pc.front(), static_cast<int>(b.verts.size()));
                continue;
            }
            plant_at(res.q, tas, xa, in);
            break;
        }
        plant_at(res.q, tas, xa, in);  // zone 0
        break;
    }

    if (analyze(res.q).cycles.size() <= cycles_before)
        throw QuipuError("build-up step did not add a cycle");

    // transient step along the prefix, one direction at a time
    Vec2 pos{0, 0};
    for (std::size_t s = 0; s < m1.size(); ++s) {
        Direction d = m1.letters[s];
        QuipuAnalysis an = analyze(res.q);
        int vx = vertex_covering(an, pos);
        if (vx < 0) throw QuipuError("transient step lost coverage");
        pos = pos + direction_vec(d);
        const TileType* t = tas.find_tile(seq.at_vertex(s + 1, tas));
        if (!t && tas.seed.name == seq.at_vertex(s + 1, tas)) t = &tas.seed;
        if (!t) throw QuipuError("unknown tile in transient step");
        ExtensionResult step = extend_direction(res.q, {vx}, d, *t, tas, window);
        if (step.kind == ExtensionResult::Kind::GridDetected) return step;
        res.q = std::move(step.q);
    }

    res.kind = ExtensionResult::Kind::Extended;
    return res;
}

// --- decorations -----------------------------------------------------------

ExtensionResult add_decorations(const Quipu& q0, int bound, const TAS& tas,
                                const Window& window) {
    ExtensionResult res;
    res.q = q0;
    res.kind = ExtensionResult::Kind::NoChange;
    if (bound < 1) return res;

    GrowResult grown = grow_max(tas, window);
    const Assembly* asmb = std::get_if<Assembly>(&grown);
    if (!asmb) throw QuipuError("add_decorations on a non-confluent window");

    auto tile_def = [&](Vec2 p) -> const TileType* {
        if (p == Vec2{0, 0} && !tas.seed_in_tileset) return &tas.seed;
        return tas.find_tile(*asmb->at(p));
    };

    // BFS over the binding graph: every point within distance <= bound is
    // reachable by an assembly path of that length
    std::map<Vec2, int> dist;
    dist[{0, 0}] = 0;
    std::deque<Vec2> bfs{{0, 0}};
    while (!bfs.empty()) {
        Vec2 cur = bfs.front();
        bfs.pop_front();
        if (dist[cur] >= bound) continue;
        for (Direction d : all_directions) {
            Vec2 nxt = cur + direction_vec(d);
            if (dist.count(nxt) || !asmb->has(nxt)) continue;
            if (!glues_match(*tile_def(cur), d, *tile_def(nxt))) continue;
            dist[nxt] = dist[cur] + 1;
            bfs.push_back(nxt);
            // ensure coverage of nxt via its BFS parent
            QuipuAnalysis an = analyze(res.q);
            SemiLinearSet cov;
            cov.terms = an.cover;
            if (contains(cov, nxt)) continue;
            int vx = vertex_covering(an, cur);
            if (vx < 0) continue;  // parent itself not covered yet; later pass
            ExtensionResult step =
                extend_direction(res.q, {vx}, d, *tile_def(nxt), tas, window);
            if (step.kind == ExtensionResult::Kind::GridDetected) return step;
            if (step.kind == ExtensionResult::Kind::Extended)
                res.kind = ExtensionResult::Kind::Extended;
            res.q = std::move(step.q);
        }
    }
    return res;
}

// --- halting ----------------------------------------------------------------

bool quipu_halted(const Quipu& q, const TAS& tas, const Window& window,
                  const Assembly& window_assembly) {
    QuipuAnalysis an = analyze(q);
    SemiLinearSet cov;
    cov.terms = an.cover;

    auto tile_def = [&](std::size_t v) -> const TileType* {
        if (v == 0 && !tas.seed_in_tileset) return &tas.seed;
        return tas.find_tile(q.verts[v].tile);
    };
    for (std::size_t v = 0; v < q.size(); ++v) {
        const TileType* tv = tile_def(v);
        if (!tv) return false;
        for (Direction d : all_directions) {
            const GlueLabel& g = tv->glue_at(d);
            if (g.empty()) continue;
            bool attachable = false;
            for (const TileType& t : tas.tiles)
                if (t.glue_at(opposite(d)) == g) attachable = true;
            if (!attachable) continue;
            SemiLinearTerm s(an.cover[v].base + direction_vec(d), an.cover[v].gens);
            for (Vec2 p : enumerate(s, window))
                if (!contains(cov, p)) return false;
        }
    }
    // boundary guard: boundary assembly points must sit in periodic terms
    for (const auto& [p, _] : window_assembly.tiles) {
        bool boundary = p.x == window.x_min || p.x == window.x_max || p.y == window.y_min ||
                        p.y == window.y_max;
        if (!boundary) continue;
        bool periodic = false;
        for (const auto& term : an.cover)
            if (!term.gens.empty() && contains(term, p)) periodic = true;
        if (!periodic) return false;
    }
    return true;
}

// --- main loop ---------------------------------------------------------------

FiltrationResult run_filtration(const TAS& tas, const FiltrationConfig& cfg) {
    FiltrationResult res;
    res.cap = cfg.cap;
    res.quipu = Quipu::rooted(tas.seed.name);

    GrowResult grown = grow_max(tas, cfg.window);
    if (const ConfluenceWitness* w = std::get_if<ConfluenceWitness>(&grown)) {
        res.kind = FiltrationResult::Kind::NotConfluent;
        res.confluence_witness = *w;
        return res;
    }
    const Assembly& window_assembly = std::get<Assembly>(grown);

    int step = 0;
    bool halt_dirty = true;
    bool halted = false;
    auto note = [&](const std::string& kind, const std::string& cand, int added) {
        res.trace.push_back(TraceEntry{step++, kind, cand, added});
    };

    CandidateIter iter({cfg.dir_order, cfg.cap});
    while (auto cand = iter.next()) {
        if (halt_dirty) {
            halted = quipu_halted(res.quipu, tas, cfg.window, window_assembly);
            halt_dirty = false;
        }
        if (halted) {
            res.kind = FiltrationResult::Kind::Halt;
            return res;
        }
        const auto& [m, p] = *cand;
        int bound = static_cast<int>(m.size() + p.size()) - 1;
        auto decorate = [&]() {
            std::size_t before = res.quipu.size();
            ExtensionResult dec = add_decorations(res.quipu, bound, tas, cfg.window);
            if (dec.kind == ExtensionResult::Kind::GridDetected) {
                res.kind = FiltrationResult::Kind::Grid;
                res.grid_witness = dec.witness;
                res.quipu = std::move(dec.q);
                return false;
            }
            if (dec.kind == ExtensionResult::Kind::Extended) {
                res.quipu = std::move(dec.q);
                note("decoration", candidate_str(m, p),
                     static_cast<int>(res.quipu.size() - before));
                halt_dirty = true;
            }
            return true;
        };

        if (!candidate_in_alphamax(tas, m, p)) {
            if (!decorate()) return res;
            continue;
        }
        if (auto witness = grid_check(res.quipu, m, p, tas, cfg.window)) {
            note("grid-check", candidate_str(m, p), 0);
            res.kind = FiltrationResult::Kind::Grid;
            res.grid_witness = witness;
            return res;
        }
        FinitenessResult fin = intersection_finite(covers(res.quipu), path_domain(m, p));
        if (fin.kind == FinitenessResult::Kind::Yes) {
            std::size_t before = res.quipu.size();
            ExtensionResult ext = extend_buildup(res.quipu, m, p, tas, cfg.window);
            if (ext.kind == ExtensionResult::Kind::GridDetected) {
                res.kind = FiltrationResult::Kind::Grid;
                res.grid_witness = ext.witness;
                res.quipu = std::move(ext.q);
                return res;
            }
            res.quipu = std::move(ext.q);
            note("cycle", candidate_str(m, p), static_cast<int>(res.quipu.size() - before));
            halt_dirty = true;
            if (cfg.record_intermediates) res.intermediates.push_back(res.quipu);
        }
        if (!decorate()) return res;
    }

    if (quipu_halted(res.quipu, tas, cfg.window, window_assembly)) {
        res.kind = FiltrationResult::Kind::Halt;
        return res;
    }
    res.kind = FiltrationResult::Kind::Inconclusive;
    return res;
}

std::string result_to_json(const FiltrationResult& r) {
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& e : r.trace) {
        trace.push_back({{"step", e.step},
                         {"kind", e.kind},
                         {"candidate", e.candidate},
                         {"vertices_added", e.vertices_added}});
    }
    std::string result;
    switch (r.kind) {
        case FiltrationResult::Kind::Halt: result = "halt"; break;
        case FiltrationResult::Kind::Grid: result = "grid"; break;
        case FiltrationResult::Kind::Inconclusive: result = "inconclusive"; break;
        case FiltrationResult::Kind::NotConfluent: result = "not-confluent"; break;
    }
    if (r.kind == FiltrationResult::Kind::NotConfluent) {
        nlohmann::ordered_json doc;
        doc["result"] = result;
        doc["confluence_witness"] = {
            {"point", {r.confluence_witness->point.x, r.confluence_witness->point.y}},
            {"tiles", {r.confluence_witness->tile_a, r.confluence_witness->tile_b}}};
        doc["trace"] = trace;
        return doc.dump(2) + "\n";
    }
    return quipu_to_json(r.quipu, result, r.grid_witness, trace.dump());
}

}  // namespace quipu
