#include "quipu/regions.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace quipu {

namespace {

// Walk letters of an ultimately periodic word from `anchor` until every later
// point is guaranteed outside L-inf `radius` of the origin.
PointSeq walk_escaping(const UltimatelyPeriodic& up, Vec2 anchor, std::int64_t radius) {
    Vec2 dp = displacement(up.period);
    if (dp == Vec2{} && !up.period.empty())
        throw RegionsError("periodic part with null displacement cannot stay simple");
    std::int64_t reps = radius + static_cast<std::int64_t>(up.transient.size()) +
                        static_cast<std::int64_t>(up.period.size()) + 2;
    std::size_t total = up.transient.size() + up.period.size() * static_cast<std::size_t>(reps);
    PointSeq pts;
    pts.reserve(total + 1);
    Vec2 p = anchor;
    pts.push_back(p);
    FreePath w = up.prefix(total);
    for (Direction d : w.letters) {
        p = p + direction_vec(d);
        pts.push_back(p);
    }
    return pts;
}

std::int64_t window_radius(const Window& w) {
    std::int64_t r = 0;
    for (std::int64_t v : {w.x_min, w.x_max, w.y_min, w.y_max}) r = std::max(r, v < 0 ? -v : v);
    return r + w.margin + 2;
}

}  // namespace

PointSeq materialize(const BiInfinitePath& bp, const Window& w) {
    std::int64_t radius = window_radius(w);
    PointSeq back = walk_escaping(bp.backward, bp.anchor, radius);
    PointSeq fwd = walk_escaping(bp.forward, bp.anchor, radius);
    PointSeq out;
    out.reserve(back.size() + fwd.size());
    for (auto it = back.rbegin(); it != back.rend(); ++it) out.push_back(*it);
    out.insert(out.end(), fwd.begin() + 1, fwd.end());
    return out;
}

RegionSplit split_regions(const PointSeq& pts, const Window& w) {
    RegionSplit rs;
    std::set<Vec2> on(pts.begin(), pts.end());
    rs.path = on;

    std::set<Vec2> left_seed, right_seed;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Vec2 a = pts[k], b = pts[k + 1];
        Vec2 step = b - a;
        Direction d{};
        for (Direction cand : all_directions)
            if (direction_vec(cand) == step) d = cand;
        Vec2 lv = direction_vec(turn_left(d));
        Vec2 rv = direction_vec(turn_right(d));
        for (Vec2 base : {a, b}) {
            Vec2 l = base + lv, r = base + rv;
            if (w.contains(l) && !on.count(l)) left_seed.insert(l);
            if (w.contains(r) && !on.count(r)) right_seed.insert(r);
        }
    }
    auto flood = [&](const std::set<Vec2>& seeds) {
        std::set<Vec2> out = seeds;
        std::deque<Vec2> q(seeds.begin(), seeds.end());
        while (!q.empty()) {
            Vec2 cur = q.front();
            q.pop_front();
            for (Direction d : all_directions) {
                Vec2 nxt = cur + direction_vec(d);
                if (!w.contains(nxt) || on.count(nxt) || out.count(nxt)) continue;
                out.insert(nxt);
                q.push_back(nxt);
            }
        }
        return out;
    };
    rs.left = flood(left_seed);
    rs.right = flood(right_seed);
    return rs;
}

Side side_of(const BiInfinitePath& bp, Vec2 point, const Window& w) {
    PointSeq pts = materialize(bp, w);
    RegionSplit rs = split_regions(pts, w);
    if (rs.path.count(point)) return Side::On;
    bool l = rs.left.count(point) != 0;
    bool r = rs.right.count(point) != 0;
    if (l && !r) return Side::Left;
    if (r && !l) return Side::Right;
    throw RegionsError("WindowTooSmall: regions not separated at the query point");
}

FreePath cogrow(const UltimatelyPeriodic& b1, const UltimatelyPeriodic& f1,
                const UltimatelyPeriodic& b2, const UltimatelyPeriodic& f2, Side side,
                std::size_t max_steps) {
    (void)b1;
    (void)b2;
    if (side == Side::On) throw RegionsError("cogrow: side must be Left or Right");
    if (f1.prefix(1).letters.empty() || f2.prefix(1).letters.empty() ||
        f1.prefix(1).letters[0] != f2.prefix(1).letters[0])
        throw RegionsError("cogrow: forward paths must start with the same direction");

    std::int64_t radius = static_cast<std::int64_t>(max_steps) + 2;
    PointSeq pts1 = walk_escaping(f1, {0, 0}, radius);
    PointSeq pts2 = walk_escaping(f2, {0, 0}, radius);
    std::map<Vec2, std::size_t> idx1, idx2;
    for (std::size_t k = 0; k < pts1.size(); ++k) idx1.emplace(pts1[k], k);
    for (std::size_t k = 0; k < pts2.size(); ++k) idx2.emplace(pts2[k], k);

    FreePath out;
    Vec2 cur{0, 0};
    std::optional<Direction> heading;
    while (out.size() < max_steps) {
        std::set<Direction> cands;
        if (auto it = idx1.find(cur); it != idx1.end() && it->second + 1 < pts1.size()) {
            Vec2 step = pts1[it->second + 1] - cur;
            for (Direction d : all_directions)
                if (direction_vec(d) == step) cands.insert(d);
        }
        if (auto it = idx2.find(cur); it != idx2.end() && it->second + 1 < pts2.size()) {
            Vec2 step = pts2[it->second + 1] - cur;
            for (Direction d : all_directions)
                if (direction_vec(d) == step) cands.insert(d);
        }
        if (cands.empty()) throw CogrowBlocked(out.size());
        Direction chosen;
        if (!heading) {
            if (cands.size() != 1) throw CogrowBlocked(out.size());
            chosen = *cands.begin();
        } else {
            Direction h = *heading;
            std::array<Direction, 3> prio =
                side == Side::Right
                    ? std::array<Direction, 3>{turn_right(h), h, turn_left(h)}
                    : std::array<Direction, 3>{turn_left(h), h, turn_right(h)};
            bool found = false;
            chosen = h;
            for (Direction p : prio)
                if (cands.count(p)) {
                    chosen = p;
                    found = true;
                    break;
                }
            if (!found) throw CogrowBlocked(out.size());
        }
        out.letters.push_back(chosen);
        cur = cur + direction_vec(chosen);
        heading = chosen;
    }
    return out;
}

namespace {

Window bbox_window(const PointSeq& pts, std::int64_t pad) {
    Window w{pts[0].x, pts[0].x, pts[0].y, pts[0].y, 0};
    for (Vec2 p : pts) {
        w.x_min = std::min(w.x_min, p.x);
        w.x_max = std::max(w.x_max, p.x);
        w.y_min = std::min(w.y_min, p.y);
        w.y_max = std::max(w.y_max, p.y);
    }
    w.x_min -= pad;
    w.x_max += pad;
    w.y_min -= pad;
    w.y_max += pad;
    return w;
}

// Ordered points of ^W . seg . W^ (east ray in, segment, west ray out),
// truncated to the window plus a ring.
PointSeq wall_bi_infinite(const PointSeq& seg, const Window& w) {
    PointSeq out;
    Vec2 in = seg.front(), outp = seg.back();
    for (std::int64_t x = w.x_max + 1; x > in.x; --x) out.push_back({x, in.y});
    out.insert(out.end(), seg.begin(), seg.end());
    for (std::int64_t x = outp.x - 1; x >= w.x_min - 1; --x) out.push_back({x, outp.y});
    return out;
}

}  // namespace

std::optional<OffTheWallReport> off_the_wall_analyze(const GroundedPath& path, std::int64_t y0,
                                                     const std::vector<std::string>& tiles) {
    PointSeq pts = path.points();
    if (pts.size() < 3) return std::nullopt;
    std::size_t l = pts.size() - 1;
    if (pts[l].y != y0) return std::nullopt;
    std::int64_t x_w = pts[l].x;

    Window w = bbox_window(pts, 2);

    for (std::size_t i = l - 1; i >= 1; --i) {
        if (pts[i].y != y0 || pts[i].x <= x_w) continue;
        // east ray meets the above-the-wall segment only at its start
        bool ok = true;
        for (std::size_t k = i + 1; k <= l && ok; ++k)
            if (pts[k].y == y0 && pts[k].x >= pts[i].x) ok = false;
        // west ray meets it only at its end
        for (std::size_t k = i; k < l && ok; ++k)
            if (pts[k].y == y0 && pts[k].x <= x_w) ok = false;
        if (!ok) continue;

        PointSeq seg(pts.begin() + static_cast<std::ptrdiff_t>(i), pts.end());
        PointSeq bi = wall_bi_infinite(seg, w);
        RegionSplit rs = split_regions(bi, w);
        // prefix strictly left of the bi-infinite path
        for (std::size_t k = 0; k < i && ok; ++k)
            if (!rs.left.count(pts[k]) || rs.path.count(pts[k])) ok = false;
        if (!ok) continue;

        OffTheWallReport rep;
        rep.i = i;
        rep.l = l;
        rep.x_w = x_w;
        rep.delta = pts[i].x - x_w;
        rep.y0 = y0;
        std::int64_t max_y = y0;
        for (std::size_t k = i; k <= l; ++k) max_y = std::max(max_y, pts[k].y);
        rep.height = max_y - y0;

        for (std::int64_t x = x_w; x <= x_w + rep.delta; ++x) {
            WallCell cell;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (pts[k] != Vec2{x, y0}) continue;
                cell.present = true;
                if (!tiles.empty() && k >= 1 && k <= tiles.size()) cell.tile = tiles[k - 1];
                if (k >= 1) {
                    Vec2 s = pts[k - 1] - pts[k];
                    for (Direction d : all_directions)
                        if (direction_vec(d) == s) cell.edge_dirs.insert(direction_char(d));
                }
                if (k + 1 < pts.size()) {
                    Vec2 s = pts[k + 1] - pts[k];
                    for (Direction d : all_directions)
                        if (direction_vec(d) == s) cell.edge_dirs.insert(direction_char(d));
                }
            }
            rep.valuation.push_back(cell);
        }

        std::int64_t area = 0;
        for (std::int64_t x = w.x_min; x <= w.x_max; ++x)
            for (std::int64_t y = y0; y <= w.y_max; ++y) {
                Vec2 p{x, y};
                if (y == y0 && (x < x_w || x > x_w + rep.delta)) continue;  // wall rays
                if (rs.path.count(p) || rs.left.count(p)) ++area;
            }
        rep.area_above = area;
        return rep;
    }
    return std::nullopt;
}

FreePath combine_off_the_wall(const GroundedPath& p1, const GroundedPath& p2, std::int64_t y0,
                              std::size_t max_steps, const std::vector<std::string>& tiles1,
                              const std::vector<std::string>& tiles2) {
    auto r1 = off_the_wall_analyze(p1, y0, tiles1);
    auto r2 = off_the_wall_analyze(p2, y0, tiles2);
    if (!r1 || !r2) throw RegionsError("combine_off_the_wall: input not off-the-wall");
    if (r1->valuation != r2->valuation)
        throw RegionsError("ValuationMismatch: wall valuations differ");

    auto segment_word = [](const GroundedPath& p, std::size_t i) {
        FreePath seg;
        seg.letters.assign(p.word.letters.begin() + static_cast<std::ptrdiff_t>(i),
                           p.word.letters.end());
        return seg;
    };
    UltimatelyPeriodic wall_back{FreePath{}, FreePath::parse("E")};  // ^W read backward
    UltimatelyPeriodic f1{segment_word(p1, r1->i), FreePath::parse("W")};
    UltimatelyPeriodic f2{segment_word(p2, r2->i), FreePath::parse("W")};
    // a transient ending in W would swallow the period; both are fine as words
    UltimatelyPeriodic fw1{f1.transient, f1.period};
    UltimatelyPeriodic fw2{f2.transient, f2.period};
    return cogrow(wall_back, fw1, wall_back, fw2, Side::Right, max_steps);
}

std::vector<std::size_t> points_of_interest(const GroundedPath& path, std::int64_t y0) {
    PointSeq pts = path.points();
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (pts[k].y < y0) continue;
        bool hit = false;
        for (std::size_t j = 0; j < pts.size() && !hit; ++j)
            if (pts[j].y == pts[k].y && pts[j].x > pts[k].x) hit = true;
        if (!hit) out.push_back(k);
    }
    return out;
}

}  // namespace quipu
