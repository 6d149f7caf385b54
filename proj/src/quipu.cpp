#include "quipu/quipu.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"

namespace quipu {

Quipu Quipu::rooted(const std::string& seed_tile) {
    Quipu q;
    q.add_vertex(seed_tile);
    return q;
}

int Quipu::add_vertex(const std::string& tile, int copy_of) {
    verts.push_back({tile, copy_of});
    out.push_back({-1, -1, -1, -1});
    return static_cast<int>(verts.size()) - 1;
}

void Quipu::add_arc(int from, Direction d, int to) {
    int& slot = out[from][static_cast<int>(d)];
    if (slot != -1) throw QuipuError("duplicate out-arc label");
    slot = to;
}

void Quipu::remove_arc(int from, Direction d) { out[from][static_cast<int>(d)] = -1; }

namespace {

std::vector<std::vector<std::pair<int, Direction>>> in_arcs(const Quipu& q) {
    std::vector<std::vector<std::pair<int, Direction>>> in(q.size());
    for (std::size_t v = 0; v < q.size(); ++v)
        for (Direction d : all_directions) {
            int t = q.arc(static_cast<int>(v), d);
            if (t >= 0) in[t].emplace_back(static_cast<int>(v), d);
        }
    return in;
}

// Tarjan strongly connected components.
struct SccResult {
    std::vector<int> comp;  // per vertex
    int count = 0;
};

SccResult scc(const Quipu& q) {
    int n = static_cast<int>(q.size());
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stk;
    std::vector<bool> on(n, false);
    int next = 0;
    struct Frame {
        int v;
        int dir;
    };
    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> frames{{start, 0}};
        index[start] = low[start] = next++;
        stk.push_back(start);
        on[start] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.dir < 4) {
                int w = q.out[f.v][f.dir++];
                if (w < 0) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = next++;
                    stk.push_back(w);
                    on[w] = true;
                    frames.push_back({w, 0});
                } else if (on[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = false;
                        res.comp[w] = res.count;
                        if (w == v) break;
                    }
                    ++res.count;
                }
            }
        }
    }
    return res;
}

}  // namespace

QuipuAnalysis analyze(const Quipu& q) {
    int n = static_cast<int>(q.size());
    QuipuAnalysis a;
    a.cycle_of.assign(n, -1);

    SccResult comps = scc(q);
    std::vector<std::vector<int>> members(comps.count);
    for (int v = 0; v < n; ++v) members[comps.comp[v]].push_back(v);

    // each nontrivial SCC (or self-loop) must be a single simple cycle
    std::vector<Cycle> cycles;
    for (auto& mem : members) {
        if (mem.size() == 1) {
            bool self_loop = false;
            for (Direction d : all_directions)
                if (q.arc(mem[0], d) == mem[0]) self_loop = true;
            if (!self_loop) continue;
        }

        // walk around: each member must have exactly one in-SCC out-arc
        std::vector<std::pair<int, Direction>> next(q.size(), {-1, Direction::E});
        for (int v : mem) {
            int cnt = 0;
            for (Direction d : all_directions) {
                int t = q.arc(v, d);
                if (t >= 0 && comps.comp[t] == comps.comp[v]) {
                    next[v] = {t, d};
                    ++cnt;
                }
            }
            if (cnt != 1) throw QuipuError("tangled cycles: vertex " + std::to_string(v));
        }
        Cycle c;
        int start = *std::min_element(mem.begin(), mem.end());
        int cur = start;
        do {
            c.verts.push_back(cur);
            c.word.letters.push_back(next[cur].second);
            cur = next[cur].first;
        } while (cur != start && c.verts.size() <= mem.size());
        if (cur != start || c.verts.size() != mem.size())
            throw QuipuError("SCC is not a single simple cycle");
        c.disp = displacement(c.word);
        cycles.push_back(std::move(c));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const Cycle& x, const Cycle& y) { return x.verts.front() < y.verts.front(); });

    auto in = in_arcs(q);

    // rotate each cycle so the entry (vertex with an external in-arc) is first
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
        Cycle& c = cycles[ci];
        std::vector<int> entries;
        for (int v : c.verts)
            for (auto [from, d] : in[v])
                if (std::find(c.verts.begin(), c.verts.end(), from) == c.verts.end())
                    entries.push_back(v);
        if (entries.size() != 1)
            throw QuipuError("cycle must have exactly one incoming arc, has " +
                             std::to_string(entries.size()));
        auto it = std::find(c.verts.begin(), c.verts.end(), entries.front());
        std::size_t shift = static_cast<std::size_t>(it - c.verts.begin());
        std::rotate(c.verts.begin(), c.verts.begin() + static_cast<std::ptrdiff_t>(shift),
                    c.verts.end());
        c.word = rotate(c.word, shift);
        for (int v : c.verts) a.cycle_of[v] = static_cast<int>(ci);
    }
    a.cycles = std::move(cycles);

    // tree skeleton: all arcs except each cycle's closing arc (into its entry)
    a.parent.assign(n, -1);
    a.parent_dir.assign(n, Direction::E);
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) {
        for (auto [from, d] : in[v]) {
            bool closing = a.cycle_of[v] >= 0 && a.cycle_of[from] == a.cycle_of[v];
            if (closing) continue;
            ++indeg[v];
            a.parent[v] = from;
            a.parent_dir[v] = d;
        }
    }
    if (indeg[q.root()] != 0 || a.parent[q.root()] != -1)
        throw QuipuError("root has an incoming arc");
    for (int v = 1; v < n; ++v)
        if (indeg[v] != 1)
            throw QuipuError("vertex " + std::to_string(v) + " has in-degree " +
                             std::to_string(indeg[v]) + " in the tree skeleton");

    // acyclicity of the skeleton + reachability, and zones/covers via parents
    a.zone.assign(n, -1);
    a.path_cycles.assign(n, {});
    a.cover.assign(n, SemiLinearTerm{});
    for (int v = 0; v < n; ++v) {
        std::vector<int> chain;
        int cur = v;
        while (cur != -1) {
            chain.push_back(cur);
            cur = a.parent[cur];
            if (chain.size() > q.size()) throw QuipuError("skeleton has a cycle");
        }
        if (chain.back() != q.root()) throw QuipuError("vertex unreachable from root");
        std::vector<int> cycs;
        Vec2 base{};
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            int w = *it;
            if (w != q.root()) base = base + direction_vec(a.parent_dir[w]);
            int cid = a.cycle_of[w];
            if (cid >= 0 && (cycs.empty() || cycs.back() != cid)) {
                if (std::find(cycs.begin(), cycs.end(), cid) != cycs.end())
                    throw QuipuError("rooted path re-enters a cycle");
                cycs.push_back(cid);
            }
        }
        if (cycs.size() > 2)
            throw QuipuError("rooted path meets more than two cycles at vertex " +
                             std::to_string(v));
        a.zone[v] = static_cast<int>(cycs.size());
        a.path_cycles[v] = cycs;
        std::vector<Vec2> gens;
        for (int cid : cycs) gens.push_back(a.cycles[cid].disp);
        for (Vec2 g : gens)
            if (g == Vec2{}) throw QuipuError("cycle with null displacement");
        if (gens.size() == 2 && colinear(gens[0], gens[1]))
            throw QuipuError("colinear backbone and tooth periods at vertex " +
                             std::to_string(v));
        a.cover[v] = SemiLinearTerm(base, gens);
    }
    return a;
}

FreePath QuipuAnalysis::word_to(int v) const {
    std::vector<Direction> rev;
    int cur = v;
    while (parent[cur] != -1) {
        rev.push_back(parent_dir[cur]);
        cur = parent[cur];
    }
    std::reverse(rev.begin(), rev.end());
    return FreePath(std::move(rev));
}

Violations validate(const Quipu& q, const TAS& tas, const Window& window) {
    Violations v;
    auto fail = [&](const std::string& s) { v.items.push_back(s); };

    // condition 1: root labeled by the seed, in-degree 0, seed label unique
    if (q.verts[q.root()].tile != tas.seed.name) fail("root not labeled by the seed");
    for (std::size_t i = 1; i < q.size(); ++i)
        if (q.verts[i].tile == tas.seed.name && !tas.seed_in_tileset)
            fail("seed label on non-root vertex " + std::to_string(i));

    // condition 2: arc glue compatibility
    auto tile_def = [&](int vert) -> const TileType* {
        if (vert == q.root() && !tas.seed_in_tileset) return &tas.seed;
        return tas.find_tile(q.verts[vert].tile);
    };
    for (std::size_t from = 0; from < q.size(); ++from)
        for (Direction d : all_directions) {
            int to = q.arc(static_cast<int>(from), d);
            if (to < 0) continue;
            const TileType* a = tile_def(static_cast<int>(from));
            const TileType* b = tile_def(to);
            if (!a || !b || !glues_match(*a, d, *b))
                fail("arc " + std::to_string(from) + "->" + std::to_string(to) +
                     " not glue compatible");
        }

    // conditions 3,4,5 + null displacements via structural analysis
    QuipuAnalysis an;
    try {
        an = analyze(q);
    } catch (const QuipuError& e) {
        fail(e.what());
        return v;
    }

    // condition 7 (and 6 through it): pairwise disjoint covers
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y = x + 1; y < q.size(); ++y) {
            IntersectResult r = intersect_terms(an.cover[x], an.cover[y]);
            bool empty = r.kind == IntersectResult::Kind::Empty;
            if (r.kind == IntersectResult::Kind::Unknown)
                empty = intersect_in_window(an.cover[x], an.cover[y], window).empty();
            if (!empty)
                fail("covers of vertices " + std::to_string(x) + " and " + std::to_string(y) +
                     " intersect");
        }
    return v;
}

SemiLinearTerm cover(const Quipu& q, int v) { return analyze(q).cover[v]; }

SemiLinearSet covers(const Quipu& q) {
    QuipuAnalysis a = analyze(q);
    SemiLinearSet s;
    s.terms = a.cover;
    return s;
}

namespace {

// Vertices reachable from `start` without entering `forbidden` vertices.
std::vector<int> hanging_subgraph(const Quipu& q, int start, const std::vector<int>& forbidden) {
    std::vector<int> out;
    std::set<int> seen{start};
    std::set<int> forb(forbidden.begin(), forbidden.end());
    std::deque<int> todo{start};
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop_front();
        out.push_back(v);
        for (Direction d : all_directions) {
            int t = q.arc(v, d);
            if (t < 0 || forb.count(t) || seen.count(t)) continue;
            seen.insert(t);
            todo.push_back(t);
        }
    }
    return out;
}

// Copy the subgraph rooted at `src` (excluding arcs into `forbidden`) into q,
// rooted at a fresh copy; returns old->new map.
std::map<int, int> copy_subgraph(Quipu& q, int src, const std::vector<int>& forbidden) {
    std::vector<int> nodes = hanging_subgraph(q, src, forbidden);
    std::map<int, int> remap;
    for (int v : nodes) remap[v] = q.add_vertex(q.verts[v].tile, v);
    for (int v : nodes)
        for (Direction d : all_directions) {
            int t = q.arc(v, d);
            if (t < 0) continue;
            auto it = remap.find(t);
            if (it != remap.end()) q.add_arc(remap[v], d, it->second);
        }
    return remap;
}

Quipu unroll_once(const Quipu& q0, int cycle_id) {
    QuipuAnalysis a = analyze(q0);
    if (cycle_id < 0 || cycle_id >= static_cast<int>(a.cycles.size()))
        throw QuipuError("NoSuchCycle");
    const Cycle& c = a.cycles[static_cast<std::size_t>(cycle_id)];
    int xc = c.entry();

    Quipu q = q0;
    // the entry's hanging subgraph (everything it reaches outside the cycle)
    std::vector<int> forb = c.verts;
    std::map<int, int> remap;
    int x = -1;
    {
        // copy = new entry-copy plus copies of each hanging subtree
        x = q.add_vertex(q.verts[xc].tile, xc);
        Direction cyc_dir = c.word.letters.front();
        for (Direction d : all_directions) {
            int t = q0.arc(xc, d);
            if (t < 0 || d == cyc_dir) continue;
            std::map<int, int> sub = copy_subgraph(q, t, forb);
            q.add_arc(x, d, sub.at(t));
        }
    }
    // redirect external in-arcs of xc to x
    for (std::size_t from = 0; from < q0.size(); ++from) {
        if (std::find(c.verts.begin(), c.verts.end(), static_cast<int>(from)) != c.verts.end())
            continue;
        for (Direction d : all_directions)
            if (q0.arc(static_cast<int>(from), d) == xc) {
                q.remove_arc(static_cast<int>(from), d);
                q.add_arc(static_cast<int>(from), d, x);
            }
    }
    // duplicate the entry's in-cycle out-arc from the copy
    Direction cyc_dir = c.word.letters.front();
    int z = q0.arc(xc, cyc_dir);
    q.add_arc(x, cyc_dir, z);
    return q;
}

}  // namespace

Quipu unroll(const Quipu& q, int cycle_id, int steps) {
    if (steps < 1) throw QuipuError("unroll needs steps >= 1");
    Quipu cur = q;
    for (int s = 0; s < steps; ++s) {
        // after each step the cycle keeps its vertices; find it again by them
        QuipuAnalysis a = analyze(cur);
        if (cycle_id < 0 || cycle_id >= static_cast<int>(a.cycles.size()))
            throw QuipuError("NoSuchCycle");
        cur = unroll_once(cur, cycle_id);
    }
    return cur;
}

Quipu k_multiple(const Quipu& q0, int cycle_id, int k) {
    if (k < 2) throw QuipuError("k_multiple needs k >= 2");
    QuipuAnalysis a = analyze(q0);
    if (cycle_id < 0 || cycle_id >= static_cast<int>(a.cycles.size()))
        throw QuipuError("NoSuchCycle");
    const Cycle& c = a.cycles[static_cast<std::size_t>(cycle_id)];
    int s = static_cast<int>(c.verts.size());

    Quipu q = q0;
    // copies x_i^j with their hanging subgraphs
    std::vector<std::vector<int>> copies(static_cast<std::size_t>(k));
    copies[0] = c.verts;
    for (int j = 1; j < k; ++j) {
        copies[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            int xi = c.verts[static_cast<std::size_t>(i)];
            int copy = q.add_vertex(q.verts[static_cast<std::size_t>(xi)].tile, xi);
            copies[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = copy;
            Direction cyc_dir = c.word.letters[static_cast<std::size_t>(i)];
            for (Direction d : all_directions) {
                int t = q0.arc(xi, d);
                if (t < 0 || d == cyc_dir) continue;
                std::map<int, int> sub = copy_subgraph(q, t, c.verts);
                q.add_arc(copy, d, sub.at(t));
            }
        }
    }
    // in-copy arcs x_i^j -> x_{i+1}^j
    for (int j = 1; j < k; ++j)
        for (int i = 0; i + 1 < s; ++i)
            q.add_arc(copies[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
                      c.word.letters[static_cast<std::size_t>(i)],
                      copies[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) + 1]);
    // rewire the closing arcs through the copies
    Direction close_dir = c.word.letters.back();
    int last = c.verts.back();
    q.remove_arc(last, close_dir);
    q.add_arc(last, close_dir, copies[1][0]);
    for (int j = 1; j + 1 < k; ++j)
        q.add_arc(copies[static_cast<std::size_t>(j)].back(), close_dir,
                  copies[static_cast<std::size_t>(j) + 1][0]);
    q.add_arc(copies[static_cast<std::size_t>(k) - 1].back(), close_dir, c.verts.front());
    return q;
}

Assembly alpha_within(const Quipu& q, const Window& window) {
    Assembly out;
    std::set<std::pair<int, Vec2>> seen;
    std::deque<std::pair<int, Vec2>> todo;
    todo.push_back({q.root(), {0, 0}});
    seen.insert({q.root(), {0, 0}});
    while (!todo.empty()) {
        auto [v, pos] = todo.front();
        todo.pop_front();
        out.tiles[pos] = q.verts[static_cast<std::size_t>(v)].tile;
        for (Direction d : all_directions) {
            int t = q.arc(v, d);
            if (t < 0) continue;
            Vec2 np = pos + direction_vec(d);
            if (!window.contains(np)) continue;
            if (seen.insert({t, np}).second) todo.push_back({t, np});
        }
    }
    return out;
}

CombReport structure_report(const Quipu& q) {
    QuipuAnalysis a;
    try {
        a = analyze(q);
    } catch (const QuipuError& e) {
        throw QuipuError(std::string("InvalidQuipu: ") + e.what());
    }
    CombReport report;
    std::map<int, std::size_t> comb_of_cycle;

    for (std::size_t ci = 0; ci < a.cycles.size(); ++ci) {
        int entry = a.cycles[ci].entry();
        if (a.path_cycles[static_cast<std::size_t>(entry)].size() != 1) continue;  // Z2 cycle
        Comb comb;
        comb.transient = a.word_to(entry);
        comb.backbone = a.cycles[ci].word;
        comb.backbone_entry = entry;
        comb_of_cycle[static_cast<int>(ci)] = report.combs.size();
        report.combs.push_back(std::move(comb));
    }
    // proto-teeth: Z2 cycles attach to the comb of their first path cycle
    for (std::size_t ci = 0; ci < a.cycles.size(); ++ci) {
        int entry = a.cycles[ci].entry();
        const auto& pc = a.path_cycles[static_cast<std::size_t>(entry)];
        if (pc.size() != 2) continue;
        int backbone_cycle = pc.front();
        Comb& comb = report.combs[comb_of_cycle.at(backbone_cycle)];
        // connector: labels from the backbone vertex where the branch leaves
        std::vector<Direction> rev;
        int cur = entry;
        while (a.cycle_of[cur] != backbone_cycle) {
            rev.push_back(a.parent_dir[static_cast<std::size_t>(cur)]);
            cur = a.parent[static_cast<std::size_t>(cur)];
        }
        std::reverse(rev.begin(), rev.end());
        ProtoTooth tooth;
        tooth.connector = FreePath(std::move(rev));
        tooth.cycle_word = a.cycles[ci].word;
        Vec2 b = a.cycles[static_cast<std::size_t>(backbone_cycle)].disp;
        Vec2 t = a.cycles[ci].disp;
        tooth.side = cross(b, t) > 0 ? Side::Left : Side::Right;
        comb.teeth.push_back(std::move(tooth));
    }
    // Lemma "bounded teeth": per-side proto-tooth count <= backbone length
    for (const Comb& comb : report.combs) {
        std::size_t left = 0, right = 0;
        for (const auto& t : comb.teeth) (t.side == Side::Left ? left : right)++;
        if (left > comb.backbone.size() || right > comb.backbone.size())
            throw QuipuError("InvalidQuipu: more proto-teeth than backbone period length");
    }
    // decorations: maximal cycle-free branches hanging off comb structure
    std::vector<bool> structural(q.size(), false);  // reaches (or is in) a cycle
    for (std::size_t v = 0; v < q.size(); ++v)
        for (int r : hanging_subgraph(q, static_cast<int>(v), {}))
            if (a.cycle_of[static_cast<std::size_t>(r)] >= 0) structural[v] = true;
    for (std::size_t v = 0; v < q.size(); ++v) {
        if (structural[v]) continue;
        int p = a.parent[v];
        if (p < 0 || !structural[static_cast<std::size_t>(p)]) continue;  // not a branch root
        const auto& pc = a.path_cycles[v];
        if (pc.empty()) continue;  // hangs off the pre-cycle transient
        Comb& comb =
            report.combs[comb_of_cycle.at(pc.front())];
        for (int leaf : hanging_subgraph(q, static_cast<int>(v), {})) {
            bool has_out = false;
            for (Direction d : all_directions)
                if (q.arc(leaf, d) >= 0) has_out = true;
            if (has_out) continue;
            std::vector<Direction> rev;
            int cur = leaf;
            while (cur != p) {
                rev.push_back(a.parent_dir[static_cast<std::size_t>(cur)]);
                cur = a.parent[static_cast<std::size_t>(cur)];
            }
            std::reverse(rev.begin(), rev.end());
            comb.decorations.push_back(FreePath(std::move(rev)));
        }
    }
    for (Comb& comb : report.combs)
        std::sort(comb.decorations.begin(), comb.decorations.end(),
                  [](const FreePath& x, const FreePath& y) { return x.str() < y.str(); });
    return report;
}

// --- documents -----------------------------------------------------------

namespace {
using ojson = nlohmann::ordered_json;
}

std::string quipu_to_json(const Quipu& q, const std::string& result,
                          const std::optional<GridWitness>& witness,
                          const std::string& trace_json) {
    QuipuAnalysis a = analyze(q);
    ojson doc;
    doc["vertices"] = ojson::array();
    for (std::size_t v = 0; v < q.size(); ++v) {
        ojson jv;
        jv["id"] = v;
        jv["tile"] = q.verts[v].tile;
        jv["zone"] = a.zone[v];
        if (q.verts[v].copy_of >= 0) jv["copy_of"] = q.verts[v].copy_of;
        doc["vertices"].push_back(jv);
    }
    doc["arcs"] = ojson::array();
    for (std::size_t v = 0; v < q.size(); ++v)
        for (Direction d : all_directions) {
            int t = q.arc(static_cast<int>(v), d);
            if (t < 0) continue;
            ojson ja;
            ja["from"] = v;
            ja["to"] = t;
            ja["dir"] = std::string(1, direction_char(d));
            doc["arcs"].push_back(ja);
        }
    doc["root"] = q.root();
    doc["covers"] = ojson::array();
    for (std::size_t v = 0; v < q.size(); ++v) {
        ojson jc;
        jc["vertex"] = v;
        jc["base"] = {a.cover[v].base.x, a.cover[v].base.y};
        jc["gens"] = ojson::array();
        for (Vec2 g : a.cover[v].gens) jc["gens"].push_back({g.x, g.y});
        doc["covers"].push_back(jc);
    }
    doc["result"] = result;
    if (witness) {
        doc["grid_witness"] = {
            {"m", witness->m.str()}, {"p", witness->p.str()}, {"q", witness->q.str()}};
    }
    if (!trace_json.empty()) doc["trace"] = ojson::parse(trace_json);
    return doc.dump(2) + "\n";
}

Quipu quipu_from_json(const std::string& text) {
    ojson doc = ojson::parse(text);
    Quipu q;
    for (const auto& jv : doc.at("vertices")) q.add_vertex(jv.at("tile").get<std::string>());
    for (const auto& ja : doc.at("arcs")) {
        auto d = direction_from_char(ja.at("dir").get<std::string>().at(0));
        if (!d) throw QuipuError("bad arc direction");
        q.add_arc(ja.at("from").get<int>(), *d, ja.at("to").get<int>());
    }
    if (doc.at("root").get<int>() != 0) throw QuipuError("root must be vertex 0");
    return q;
}

std::string quipu_to_dot(const Quipu& q) {
    std::ostringstream os;
    os << "digraph quipu {\n  rankdir=TB;\n  node [shape=box];\n";
    os << "  0 [label=\"" << q.verts[0].tile << "\", peripheries=2];\n";
    for (std::size_t v = 1; v < q.size(); ++v)
        os << "  " << v << " [label=\"" << q.verts[v].tile << "\"];\n";
    for (std::size_t v = 0; v < q.size(); ++v)
        for (Direction d : all_directions) {
            int t = q.arc(static_cast<int>(v), d);
            if (t >= 0)
                os << "  " << v << " -> " << t << " [label=\"" << direction_char(d) << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace quipu
