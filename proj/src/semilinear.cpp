#include "quipu/semilinear.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace quipu {

namespace {

using i64 = std::int64_t;

i64 floor_div(i64 a, i64 b) {
    assert(b != 0);
    i64 q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

i64 mod_pos(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Solutions of A*s == B (mod M), M > 0, as s == r (mod m); nullopt if none.
struct Progression {
    i64 r, m;
};
std::optional<Progression> solve_cong(i64 A, i64 B, i64 M) {
    A = mod_pos(A, M);
    B = mod_pos(B, M);
    if (A == 0) {
        if (B == 0) return Progression{0, 1};
        return std::nullopt;
    }
    i64 x, y;
    i64 g = std::gcd(A, M);
    if (B % g != 0) return std::nullopt;
    i64 A2 = A / g, B2 = B / g, M2 = M / g;
    ext_gcd(A2, M2, x, y);
    i64 r = mod_pos(x % M2 * (B2 % M2), M2);
    return Progression{r, M2};
}

std::optional<Progression> crt(Progression p, Progression q) {
    i64 g = std::gcd(p.m, q.m);
    if (mod_pos(p.r - q.r, g) != 0) return std::nullopt;
    i64 l = p.m / g * q.m;
    // step p by p.m until congruent to q
    i64 r = p.r;
    for (i64 i = 0; i < q.m / g; ++i) {
        if (mod_pos(r - q.r, q.m) == 0) return Progression{mod_pos(r, l), l};
        r += p.m;
    }
    return std::nullopt;
}

Vec2 primitive(Vec2 v) {
    i64 g = std::gcd(v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y);
    return {v.x / g, v.y / g};
}

// scalar s with p = s * g, g primitive and non-null
std::optional<i64> scalar_along(Vec2 p, Vec2 g) {
    if (!colinear(p, g)) return std::nullopt;
    i64 s = g.x != 0 ? floor_div(p.x, g.x) : floor_div(p.y, g.y);
    if (s * g.x != p.x || s * g.y != p.y) return std::nullopt;
    return s;
}

IntersectResult finite_result(std::vector<Vec2> pts) {
    IntersectResult r;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    r.kind = pts.empty() ? IntersectResult::Kind::Empty : IntersectResult::Kind::Finite;
    r.points = std::move(pts);
    return r;
}

IntersectResult terms_result(std::vector<SemiLinearTerm> ts) {
    IntersectResult r;
    r.kind = IntersectResult::Kind::Terms;
    r.terms = std::move(ts);
    return r;
}

IntersectResult line_line(const SemiLinearTerm& t1, const SemiLinearTerm& t2) {
    Vec2 a = t1.base, b = t1.gens[0], c = t2.base, d = t2.gens[0];
    if (!colinear(b, d)) {
        // skew: at most one crossing
        Vec2 delta = c - a;
        i64 det = cross(b, d);
        i64 s_num = cross(delta, d), t_num = cross(delta, b);
        if (s_num % det != 0 || t_num % det != 0) return finite_result({});
        i64 s = s_num / det, t = t_num / det;
        if (s < 0 || t < 0) return finite_result({});
        return finite_result({a + s * b});
    }
    if (cross(c - a, b) != 0) return finite_result({});  // parallel distinct lines
    Vec2 g = primitive(b);
    i64 beta = *scalar_along(b, g);  // > 0 by construction of primitive
    i64 delta = *scalar_along(d, g);
    i64 gamma = *scalar_along(c - a, g);
    if (delta > 0) {
        // positions s >= max(0, gamma), s == 0 mod beta, s == gamma mod delta
        auto p1 = Progression{0, beta};
        auto p2 = Progression{mod_pos(gamma, delta), delta};
        auto comb = crt(p1, p2);
        if (!comb) return finite_result({});
        i64 lb = std::max<i64>(0, gamma);
        i64 s0 = comb->r + comb->m * ceil_div(lb - comb->r, comb->m);
        return terms_result({SemiLinearTerm(a + s0 * g, {comb->m * g})});
    }
    // opposite directions: bounded overlap in [0, gamma]
    if (gamma < 0) return finite_result({});
    std::vector<Vec2> pts;
    i64 ad = -delta;
    for (i64 s = 0; s <= gamma; s += beta)
        if ((gamma - s) % ad == 0) pts.push_back(a + s * g);
    return finite_result(pts);
}

IntersectResult line_plane(const SemiLinearTerm& line, const SemiLinearTerm& plane) {
    Vec2 a = line.base, b = line.gens[0];
    Vec2 c = plane.base, d = plane.gens[0], e = plane.gens[1];
    if (cross(d, e) < 0) std::swap(d, e);
    i64 det = cross(d, e);
    Vec2 off = a - c;
    // u(s) = (U0 + s*Ub)/det, v(s) = (V0 + s*Vb)/det must be integers >= 0
    i64 U0 = cross(off, e), Ub = cross(b, e);
    i64 V0 = cross(d, off), Vb = cross(d, b);
    auto pu = solve_cong(Ub, -U0, det);
    auto pv = solve_cong(Vb, -V0, det);
    if (!pu || !pv) return finite_result({});
    auto comb = crt(*pu, *pv);
    if (!comb) return finite_result({});
    i64 lo = 0;
    i64 hi = -1;  // -1 = unbounded
    auto apply = [&](i64 k0, i64 kb) -> bool {  // k0 + s*kb >= 0
        if (kb > 0) {
            lo = std::max(lo, ceil_div(-k0, kb));
        } else if (kb < 0) {
            i64 h = floor_div(k0, -kb);
            hi = hi < 0 ? h : std::min(hi, h);
        } else if (k0 < 0) {
            return false;
        }
        return true;
    };
    if (!apply(U0, Ub) || !apply(V0, Vb)) return finite_result({});
    i64 s0 = comb->r + comb->m * ceil_div(lo - comb->r, comb->m);
    if (hi < 0) return terms_result({SemiLinearTerm(a + s0 * b, {comb->m * b})});
    std::vector<Vec2> pts;
    for (i64 s = s0; s <= hi; s += comb->m) pts.push_back(a + s * b);
    return finite_result(pts);
}

bool same_gen_pair(const SemiLinearTerm& t1, const SemiLinearTerm& t2) {
    return (t1.gens[0] == t2.gens[0] && t1.gens[1] == t2.gens[1]) ||
           (t1.gens[0] == t2.gens[1] && t1.gens[1] == t2.gens[0]);
}

IntersectResult plane_plane_same(const SemiLinearTerm& t1, const SemiLinearTerm& t2) {
    Vec2 d = t1.gens[0], e = t1.gens[1];
    i64 det = cross(d, e);
    Vec2 delta = t2.base - t1.base;
    i64 ud_num = cross(delta, e), ve_num = cross(d, delta);
    if (ud_num % det != 0 || ve_num % det != 0) return finite_result({});
    i64 ud = ud_num / det, ve = ve_num / det;
    Vec2 base = t1.base + std::max<i64>(0, ud) * d + std::max<i64>(0, ve) * e;
    return terms_result({SemiLinearTerm(base, {d, e})});
}

}  // namespace

SemiLinearTerm::SemiLinearTerm(Vec2 b, std::vector<Vec2> g) : base(b), gens(std::move(g)) {
    for (const Vec2& v : gens)
        if (v == Vec2{}) throw PathError("semilinear term with null generator");
    if (gens.size() == 2 && colinear(gens[0], gens[1]))
        throw PathError("semilinear term with colinear generator pair");
    if (gens.size() > 2) throw PathError("semilinear term with more than two generators");
}

bool contains(const SemiLinearTerm& t, Vec2 point) {
    Vec2 diff = point - t.base;
    switch (t.gens.size()) {
        case 0:
            return diff == Vec2{};
        case 1: {
            auto s = scalar_along(diff, primitive(t.gens[0]));
            if (!s) return false;
            auto k = scalar_along(t.gens[0], primitive(t.gens[0]));
            return *s >= 0 && *s % *k == 0;
        }
        default: {
            i64 det = cross(t.gens[0], t.gens[1]);
            i64 u_num = cross(diff, t.gens[1]), v_num = cross(t.gens[0], diff);
            if (u_num % det != 0 || v_num % det != 0) return false;
            i64 u = u_num / det, v = v_num / det;
            return u >= 0 && v >= 0;
        }
    }
}

bool contains(const SemiLinearSet& s, Vec2 point) {
    for (const auto& t : s.terms)
        if (contains(t, point)) return true;
    return false;
}

IntersectResult intersect_terms(const SemiLinearTerm& t1, const SemiLinearTerm& t2) {
    const SemiLinearTerm* lo = &t1;
    const SemiLinearTerm* hi = &t2;
    if (lo->gens.size() > hi->gens.size()) std::swap(lo, hi);
    switch (lo->gens.size() * 4 + hi->gens.size()) {
        case 0 * 4 + 0:
        case 0 * 4 + 1:
        case 0 * 4 + 2:
            return contains(*hi, lo->base) ? finite_result({lo->base}) : finite_result({});
        case 1 * 4 + 1:
            return line_line(*lo, *hi);
        case 1 * 4 + 2:
            return line_plane(*lo, *hi);
        default:
            if (same_gen_pair(*lo, *hi)) return plane_plane_same(*lo, *hi);
            return IntersectResult{IntersectResult::Kind::Unknown, {}, {}};
    }
}

std::set<Vec2> intersect_in_window(const SemiLinearTerm& t1, const SemiLinearTerm& t2,
                                   const Window& w) {
    IntersectResult r = intersect_terms(t1, t2);
    std::set<Vec2> out;
    switch (r.kind) {
        case IntersectResult::Kind::Empty:
            break;
        case IntersectResult::Kind::Finite:
            for (Vec2 p : r.points)
                if (w.contains(p)) out.insert(p);
            break;
        case IntersectResult::Kind::Terms:
            for (const auto& t : r.terms)
                for (Vec2 p : enumerate(t, w)) out.insert(p);
            break;
        case IntersectResult::Kind::Unknown: {
            auto a = enumerate(t1, w);
            auto b = enumerate(t2, w);
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(out, out.end()));
            break;
        }
    }
    return out;
}

FinitenessResult intersection_finite(const SemiLinearSet& s1, const SemiLinearSet& s2) {
    FinitenessResult res;
    std::set<Vec2> pts;
    for (const auto& t1 : s1.terms)
        for (const auto& t2 : s2.terms) {
            IntersectResult r = intersect_terms(t1, t2);
            switch (r.kind) {
                case IntersectResult::Kind::Empty:
                    break;
                case IntersectResult::Kind::Finite:
                    pts.insert(r.points.begin(), r.points.end());
                    break;
                case IntersectResult::Kind::Terms:
                    res.kind = FinitenessResult::Kind::No;
                    return res;
                case IntersectResult::Kind::Unknown:
                    res.kind = FinitenessResult::Kind::Unknown;
                    return res;
            }
        }
    res.kind = FinitenessResult::Kind::Yes;
    res.points.assign(pts.begin(), pts.end());
    return res;
}

std::set<Vec2> enumerate(const SemiLinearTerm& t, const Window& w) {
    std::set<Vec2> out;
    switch (t.gens.size()) {
        case 0:
            if (w.contains(t.base)) out.insert(t.base);
            break;
        case 1: {
            Vec2 g = t.gens[0];
            i64 hi = -1;
            auto bound = [&](i64 pos, i64 lo_w, i64 hi_w, i64 step) {
                if (step > 0)
                    hi = hi < 0 ? floor_div(hi_w - pos, step)
                                : std::min(hi, floor_div(hi_w - pos, step));
                else if (step < 0)
                    hi = hi < 0 ? floor_div(pos - lo_w, -step)
                                : std::min(hi, floor_div(pos - lo_w, -step));
            };
            bound(t.base.x, w.x_min, w.x_max, g.x);
            bound(t.base.y, w.y_min, w.y_max, g.y);
            if (hi < 0) hi = 0;  // g non-null, so some axis bounded; defensive
            for (i64 k = 0; k <= hi; ++k) {
                Vec2 p = t.base + k * g;
                if (w.contains(p)) out.insert(p);
            }
            break;
        }
        default: {
            Vec2 d = t.gens[0], e = t.gens[1];
            i64 det = cross(d, e);
            i64 u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;
            bool first = true;
            for (Vec2 corner : {Vec2{w.x_min, w.y_min}, Vec2{w.x_min, w.y_max},
                                Vec2{w.x_max, w.y_min}, Vec2{w.x_max, w.y_max}}) {
                Vec2 diff = corner - t.base;
                i64 un = cross(diff, e), vn = cross(d, diff);
                i64 ul = floor_div(un, det), vl = floor_div(vn, det);
                if (first) {
                    u_lo = u_hi = ul;
                    v_lo = v_hi = vl;
                    first = false;
                } else {
                    u_lo = std::min(u_lo, ul);
                    u_hi = std::max(u_hi, ul);
                    v_lo = std::min(v_lo, vl);
                    v_hi = std::max(v_hi, vl);
                }
            }
            for (i64 u = std::max<i64>(0, u_lo); u <= u_hi + 1; ++u)
                for (i64 v = std::max<i64>(0, v_lo); v <= v_hi + 1; ++v) {
                    Vec2 p = t.base + u * d + v * e;
                    if (w.contains(p)) out.insert(p);
                }
            break;
        }
    }
    return out;
}

std::set<Vec2> enumerate(const SemiLinearSet& s, const Window& w) {
    std::set<Vec2> out;
    for (const auto& t : s.terms)
        for (Vec2 p : enumerate(t, w)) out.insert(p);
    return out;
}

}  // namespace quipu
