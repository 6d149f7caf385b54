#ifndef QUIPU_FILTRATION_HPP
#define QUIPU_FILTRATION_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quipu/quipu.hpp"

namespace quipu {

struct CandidateOrder {
    DirOrder dir_order;
    int cap = 12;  // maximum |m| + |p|
};

/// Emits (m, p) pairs, both non-empty, with m p^2 simple, ordered by
/// (|m|+|p|, |m|, alphabetical on m p under the direction order).
class CandidateIter {
  public:
    explicit CandidateIter(CandidateOrder order);
    std::optional<std::pair<FreePath, FreePath>> next();

  private:
    void refill();
    CandidateOrder order_;
    int length_ = 2;
    std::size_t m_len_ = 1;
    std::vector<std::pair<FreePath, FreePath>> batch_;
    std::size_t batch_pos_ = 0;
    bool done_ = false;
};

struct ExtensionResult {
    enum class Kind { Extended, GridDetected, NoChange } kind = Kind::NoChange;
    Quipu q;
    std::optional<GridWitness> witness;
};

/// Lemma-26 style extension: make CoverBy(X)+d covered, unrolling or
/// k-multiplying cycles as the overlap analysis requires. X vertices must all
/// be labeled by the same tile whose d-glue matches t across d.
ExtensionResult extend_direction(const Quipu& q, std::vector<int> X, Direction d,
                                 const TileType& t, const TAS& tas, const Window& window);

/// Quipu build-up step for the candidate 0.m p^omega (must be certified and
/// have finite cover intersection).
ExtensionResult extend_buildup(const Quipu& q, const FreePath& m, const FreePath& p,
                               const TAS& tas, const Window& window);

/// Tests the two-periodic-crossing condition of the candidate period against
/// every non-colinear quipu cycle; on success returns the five-path witness
/// located in the window.
std::optional<GridWitness> grid_check(const Quipu& q, const FreePath& m, const FreePath& p,
                                      const TAS& tas, const Window& window);

/// Covers every assembly point within binding-graph distance <= bound of the
/// origin (the transient-step closure over all short assembly paths).
ExtensionResult add_decorations(const Quipu& q, int bound, const TAS& tas,
                                const Window& window);

struct FiltrationConfig {
    Window window = Window::square(16, 8);
    int cap = 12;
    DirOrder dir_order;
    bool record_intermediates = false;
};

struct TraceEntry {
    int step = 0;
    std::string kind;       // "cycle" | "decoration" | "unroll" | "grid-check"
    std::string candidate;  // "m|p"
    int vertices_added = 0;
};

struct FiltrationResult {
    enum class Kind { Halt, Grid, Inconclusive, NotConfluent } kind = Kind::Inconclusive;
    Quipu quipu;
    std::optional<GridWitness> grid_witness;
    std::optional<ConfluenceWitness> confluence_witness;
    int cap = 0;
    std::vector<TraceEntry> trace;
    std::vector<Quipu> intermediates;  // after each cycle insertion, if recorded
};

FiltrationResult run_filtration(const TAS& tas, const FiltrationConfig& cfg);

/// Full result document (quipu document plus trace).
std::string result_to_json(const FiltrationResult& r);

/// The semilinear domain of 0.m p^omega.
SemiLinearSet path_domain(const FreePath& m, const FreePath& p);

/// Window-sound completeness test behind Q[halt].
bool quipu_halted(const Quipu& q, const TAS& tas, const Window& window,
                  const Assembly& window_assembly);

/// Checks the five Lemma-15 paths of a grid witness inside the window.
bool grid_witness_materializes(const GridWitness& w, const TAS& tas, const Window& window);

}  // namespace quipu

#endif
