#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdyn/words.hpp"

namespace sdyn {

using Vertex = std::uint32_t;

/// Labeled edge. Edges are ordered by (src, label, dst).
struct Edge {
  Vertex src = 0;
  Vertex dst = 0;
  Symbol label = 0;

  bool operator==(const Edge&) const = default;
  friend bool operator<(const Edge& a, const Edge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.label != b.label) return a.label < b.label;
    return a.dst < b.dst;
  }
};

/// Labeled multigraph (V, E, tau) presenting the one-sided shift obtained by
/// reading labels along infinite paths. Parallel edges with distinct labels
/// are kept; duplicate (src, dst, label) triples collapse to one edge.
class LabeledGraph {
 public:
  LabeledGraph(Alphabet alphabet, Vertex vertex_count, std::vector<Edge> edges);

  const Alphabet& alphabet() const { return alphabet_; }
  Vertex vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Out-edges of v, sorted by (label, dst).
  std::span<const Edge> out_edges(Vertex v) const {
    return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
  }

  bool operator==(const LabeledGraph& other) const {
    return alphabet_ == other.alphabet_ && vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  Alphabet alphabet_;
  Vertex vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
};

/// Repeatedly removes vertices without outgoing or without incoming edges.
/// Surviving vertices keep their relative order. Throws EmptyShift when
/// nothing survives.
LabeledGraph prune(const LabeledGraph& g);

struct Components {
  std::vector<std::uint32_t> component_of;  ///< per vertex
  std::uint32_t count = 0;
};

/// Strongly connected components (iterative Tarjan).
Components strongly_connected_components(const LabeledGraph& g);

bool is_strongly_connected(const LabeledGraph& g);

/// gcd of all cycle lengths. Throws std::invalid_argument unless g is
/// strongly connected.
std::uint64_t period(const LabeledGraph& g);

struct ComponentPeriod {
  std::uint32_t component = 0;
  std::uint64_t vertices = 0;
  std::uint64_t period = 0;
};

/// Periods of the components that carry at least one cycle.
std::vector<ComponentPeriod> component_periods(const LabeledGraph& g);

/// Symbols b such that every edge v -> v' has a parallel b-labeled edge.
std::vector<Symbol> safe_symbols(const LabeledGraph& g);

/// Labeled product of the graphs, pruned. Presents the intersection of the
/// presented shifts. Throws EmptyShift if the intersection is empty and
/// CapExceeded if an intermediate product has more than `vertex_cap`
/// vertices.
LabeledGraph couple(std::span<const LabeledGraph> graphs, std::uint64_t vertex_cap = 1'000'000);

/// Strongly connected and aperiodic. This is a statement about the given
/// presentation; a shift may be mixing while some presentation is not.
bool is_mixing_presentation(const LabeledGraph& g);

/// True iff w labels a finite path in g. For a pruned graph this is
/// membership in the language of the presented shift.
bool accepts(const LabeledGraph& g, const Word& w);

inline constexpr std::uint64_t kDefaultWordCap = 2'000'000;

/// All words of length n labeling paths of g, sorted lexicographically.
/// Throws CapExceeded (carrying the lower bound cap+1) when there are more
/// than `cap` of them.
std::vector<Word> language(const LabeledGraph& g, std::size_t n, std::uint64_t cap = kDefaultWordCap);

/// |L_n| without materializing the words.
std::uint64_t language_size(const LabeledGraph& g, std::size_t n, std::uint64_t cap = kDefaultWordCap);

struct EntropyBounds {
  double lower = 0;
  double upper = 0;
  std::size_t horizon = 0;
  std::size_t cycle_length = 0;  ///< length of the cycle family realizing `lower` (0 if none)
};

/// upper = log|L_n| / n. lower = max over vertices v and lengths c <= min(n, 10)
/// of log(#distinct labels of closed paths of length c at v) / c; those
/// words concatenate freely, so this is a genuine lower bound.
EntropyBounds entropy_bounds(const LabeledGraph& g, std::size_t n, std::uint64_t cap = kDefaultWordCap);

/// Sofic shift given by a pruned presentation plus its structural flags.
class SoficShift {
 public:
  explicit SoficShift(const LabeledGraph& g);

  const LabeledGraph& presentation() const { return graph_; }
  bool strongly_connected() const { return strongly_connected_; }
  /// 0 when the presentation is not strongly connected.
  std::uint64_t period() const { return period_; }
  const std::vector<Symbol>& safe_symbols() const { return safe_; }
  bool mixing_presentation() const { return strongly_connected_ && period_ == 1; }

 private:
  LabeledGraph graph_;
  bool strongly_connected_;
  std::uint64_t period_;
  std::vector<Symbol> safe_;
};

/// Coupling kept in factored form. When every factor is pruned and the
/// factors share a safe symbol, every product vertex has an in- and an
/// out-edge labeled by that symbol, so the product needs no pruning and
/// a word labels a path of the coupling iff it labels a path of every
/// factor. `accepts` uses that shortcut and otherwise materializes.
class Coupling {
 public:
  explicit Coupling(std::vector<LabeledGraph> factors);

  const std::vector<LabeledGraph>& factors() const { return factors_; }
  bool factorwise() const { return factorwise_; }
  std::uint64_t product_size() const;
  LabeledGraph materialize(std::uint64_t vertex_cap = 1'000'000) const;
  bool accepts(const Word& w) const;

 private:
  std::vector<LabeledGraph> factors_;
  bool factorwise_;
};

/// Label of a uniformly random walk of `length` edges. The start vertex is
/// uniform unless given.
Word random_path_word(const LabeledGraph& g, std::size_t length, std::mt19937_64& rng,
                      std::optional<Vertex> start = std::nullopt);

/// Shortest-first search for a word in L(a) \ L(b) of length at most
/// `max_length`: greedy label-maximal and label-minimal walks from every
/// start vertex of `a`, then a breadth-first search over pairs
/// (vertex of a, reachable set of b) bounded by `state_cap` states.
std::optional<Word> find_language_gap(const LabeledGraph& a, const LabeledGraph& b, std::size_t max_length,
                                      std::size_t state_cap = 200'000);

/// {"alphabet_size": k, "vertices": n, "edges": [{"src","dst","label"}...]}
nlohmann::ordered_json graph_to_json(const LabeledGraph& g);
/// Throws std::invalid_argument naming the offending field or edge index.
LabeledGraph graph_from_json(const nlohmann::json& j);
/// Canonical text form used for files: two-space indented JSON.
std::string graph_to_text(const LabeledGraph& g);
LabeledGraph graph_from_text(const std::string& text);

std::string graph_to_dot(const LabeledGraph& g, const std::string& name = "G");
/// Reads the DOT produced by graph_to_dot (vertex declarations in order,
/// one edge per line). Throws std::invalid_argument naming the line.
LabeledGraph graph_from_dot(const std::string& text);

}  // namespace sdyn
