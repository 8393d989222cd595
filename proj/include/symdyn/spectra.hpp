#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "symdyn/sofic.hpp"

namespace sdyn {

/// Knuth-Morris-Pratt matcher for one nonempty pattern as a total DFA.
/// States are the lengths 0..|w|-1 of the matched prefix; a transition
/// that completes an occurrence moves to the longest proper border, so
/// overlapping occurrences are all counted.
class OccurrenceAutomaton {
 public:
  OccurrenceAutomaton(Word pattern, const Alphabet& alphabet);

  const Word& pattern() const { return pattern_; }
  std::size_t state_count() const { return pattern_.size(); }
  std::uint32_t next(std::uint32_t state, Symbol a) const { return next_[state * alphabet_size_ + a]; }
  bool completes(std::uint32_t state, Symbol a) const { return done_[state * alphabet_size_ + a] != 0; }

 private:
  Word pattern_;
  int alphabet_size_;
  std::vector<std::uint32_t> next_;
  std::vector<char> done_;
};

/// Overlapping occurrences of w in u (0 when w is empty or longer than u).
std::uint64_t gamma(const Word& w, const Word& u);

/// Product of a graph with the occurrence automaton of w. Vertex
/// v * |w| + q pairs graph vertex v with automaton state q; weights[i] is 1
/// when edge i of `graph` completes an occurrence.
struct WeightedProduct {
  LabeledGraph graph;
  std::vector<std::uint8_t> weights;
  std::size_t states_per_vertex = 1;
};

WeightedProduct weighted_product(const LabeledGraph& g, const Word& w);

/// Largest number of occurrences of w in a word of L_n(X), by a layered
/// longest-path computation over the product.
std::uint64_t Gamma(const SoficShift& x, const Word& w, std::size_t n);

struct LambdaResult {
  Rational value;
  Word witness_cycle;  ///< label of a cycle whose periodic point attains value
};

/// Maximum limiting frequency of w: the maximum mean weight of a cycle in
/// the weighted product, by Karp's algorithm per strongly connected
/// component. Throws CapExceeded when a component has more than
/// `component_cap` vertices.
LambdaResult Lambda(const SoficShift& x, const Word& w, std::size_t component_cap = 3000);

nlohmann::ordered_json to_json(const LambdaResult& r, const Word& w, const Alphabet& alphabet);

/// Restriction to the edges that lie on a cycle, pruned.
SoficShift measure_center(const SoficShift& x);

struct CenterProjection {
  std::vector<Word> words;
  std::size_t block_length = 0;
  Word filler;
  Rational replaced_fraction;  ///< positions inside replaced blocks / all positions
  Rational changed_fraction;   ///< positions whose symbol changed / all positions
};

/// Splits every word into blocks of length m (the last of length in
/// [m, 2m)), keeps blocks in the language of the measure center and
/// replaces the others: inner blocks by `filler`, final blocks by the
/// closest word of the same length in the center's language. m defaults to
/// 1 and the filler to the least word of L_m of the center.
CenterProjection project_to_center(const std::vector<Word>& words, const SoficShift& x,
                                   std::optional<std::size_t> m = std::nullopt,
                                   std::optional<Word> filler = std::nullopt);

}  // namespace sdyn
