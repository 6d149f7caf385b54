#ifndef QUIPU_QUIPU_HPP
#define QUIPU_QUIPU_HPP

#include <optional>
#include <string>
#include <vector>

#include "quipu/semilinear.hpp"
#include "quipu/tas.hpp"

namespace quipu {

struct QuipuError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuipuVertex {
    std::string tile;
    int copy_of = -1;  // provenance for unroll/k-multiple copies
};

/// Rooted directed graph with tile-labeled vertices and direction-labeled
/// arcs; out-arcs are at most one per direction, so label determinism is
/// structural. Mutating operations return new values.
class Quipu {
  public:
    std::vector<QuipuVertex> verts;
    std::vector<std::array<int, 4>> out;  // out[v][dir] = target vertex or -1

    static Quipu rooted(const std::string& seed_tile);

    int add_vertex(const std::string& tile, int copy_of = -1);
    void add_arc(int from, Direction d, int to);
    void remove_arc(int from, Direction d);
    int arc(int from, Direction d) const { return out[from][static_cast<int>(d)]; }
    int root() const { return 0; }
    std::size_t size() const { return verts.size(); }
};

struct Cycle {
    std::vector<int> verts;  // in cycle order, entry first
    FreePath word;           // arc labels around, starting at the entry
    Vec2 disp;
    int entry() const { return verts.front(); }
};

/// Derived structure: tree skeleton, cycles, zones, covers.
struct QuipuAnalysis {
    std::vector<Cycle> cycles;               // sorted by smallest vertex id
    std::vector<int> cycle_of;               // cycle index or -1, per vertex
    std::vector<int> parent;                 // tree parent (-1 for root)
    std::vector<Direction> parent_dir;
    std::vector<int> zone;                   // 0, 1 or 2
    std::vector<SemiLinearTerm> cover;       // per vertex
    std::vector<std::vector<int>> path_cycles;  // cycle ids on the rooted path

    FreePath word_to(int v) const;  // tree path labels root -> v
};

/// Structural analysis; throws QuipuError on malformed graphs.
QuipuAnalysis analyze(const Quipu& q);

struct Violations {
    std::vector<std::string> items;
    bool ok() const { return items.empty(); }
};

/// Checks the seven quipu conditions (6 via cover disjointness plus non-null
/// cycle displacements). The window backs the enumeration fallback for cover
/// pairs outside the exact arms.
Violations validate(const Quipu& q, const TAS& tas,
                    const Window& window = Window::square(40, 0));

SemiLinearTerm cover(const Quipu& q, int v);
SemiLinearSet covers(const Quipu& q);

Quipu unroll(const Quipu& q, int cycle_id, int steps);
Quipu k_multiple(const Quipu& q, int cycle_id, int k);

/// Union of eta-labels of all rooted walks staying inside the window.
Assembly alpha_within(const Quipu& q, const Window& window);

struct ProtoTooth {
    FreePath connector;  // labels from the backbone vertex to the tooth entry
    FreePath cycle_word;
    Side side;
};

struct Comb {
    FreePath transient;  // labels root -> backbone entry
    FreePath backbone;
    int backbone_entry;
    std::vector<ProtoTooth> teeth;
    std::vector<FreePath> decorations;  // acyclic branch words off the comb
};

struct CombReport {
    std::vector<Comb> combs;
};

CombReport structure_report(const Quipu& q);

// --- documents ---------------------------------------------------------

struct GridWitness {
    FreePath m, p, q;
};

std::string quipu_to_json(const Quipu& q, const std::string& result,
                          const std::optional<GridWitness>& witness = std::nullopt,
                          const std::string& trace_json = "");
Quipu quipu_from_json(const std::string& text);
std::string quipu_to_dot(const Quipu& q);

}  // namespace quipu

#endif
