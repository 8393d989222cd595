#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/sofic.hpp"

namespace sdyn {

/// max(sup_a inf_b d(a,b), sup_b inf_a d(a,b)) for nonempty finite sets.
template <typename T, typename Dist>
Rational hausdorff(const std::vector<T>& a, const std::vector<T>& b, Dist&& d) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff needs nonempty sets");
  auto one_side = [&](const std::vector<T>& from, const std::vector<T>& to, bool flip) {
    Rational sup = 0;
    for (const T& x : from) {
      std::optional<Rational> inf;
      for (const T& y : to) {
        Rational v = flip ? d(y, x) : d(x, y);
        if (!inf || v < *inf) inf = std::move(v);
      }
      sup = std::max(sup, *inf);
    }
    return sup;
  };
  return std::max(one_side(a, b, false), one_side(b, a, true));
}

/// Indexed finite set with a symmetric, zero-diagonal distance table.
/// The triangle inequality is not assumed.
class FinitePseudometricSet {
 public:
  explicit FinitePseudometricSet(std::vector<std::vector<Rational>> dist);

  std::size_t size() const { return dist_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return dist_.at(i).at(j); }
  bool satisfies_triangle_inequality() const;
  /// Hausdorff distance between two index subsets.
  Rational hausdorff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const;

 private:
  std::vector<std::vector<Rational>> dist_;
};

struct TraceResult {
  Rational cost;           ///< normalized Hamming distance
  std::size_t mismatches;  ///< cost * |target|
  Word witness;            ///< lexicographically least optimal path label
};

/// Default bound on (|target|+1) * |V| cells of the dynamic programming table.
inline constexpr std::uint64_t kTraceTableCap = 60'000'000;

/// Closest path label of g to `target` in Hamming distance, by dynamic
/// programming over (position, vertex). Targets that g accepts are
/// returned at cost zero without building the table. Throws CapExceeded
/// when the table would exceed `table_cap` cells.
TraceResult best_trace(const LabeledGraph& g, const Word& target, std::uint64_t table_cap = kTraceTableCap);

/// Same for a coupling; accepted targets are recognized factor by factor
/// when the coupling allows it, otherwise the product is materialized.
TraceResult best_trace(const Coupling& c, const Word& target, std::uint64_t table_cap = kTraceTableCap);

struct LangDistance {
  std::size_t horizon = 0;
  Rational value;  ///< exact value, or a certified lower bound in sampled mode
  Rational x_side;
  Rational y_side;
  std::optional<Word> witness;  ///< a word realizing `value` on its side
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
};

/// Hausdorff distance between L_n(X) and L_n(Y) under normalized Hamming
/// distance. Each side enumerates its own language and traces every word
/// in the other presentation.
LangDistance lang_hausdorff_hamming_exact(const SoficShift& x, const SoficShift& y, std::size_t n,
                                          std::uint64_t cap = kDefaultWordCap);

/// Seeded estimate: `samples` random path words per side. Every inner
/// minimum is exact, so the value is a lower bound on the exact one.
LangDistance lang_hausdorff_hamming_sampled(const SoficShift& x, const SoficShift& y, std::size_t n,
                                            std::uint64_t samples, std::uint64_t seed);

/// {horizon, value_num, value_den, witness?, mode, seed?, ...}
nlohmann::ordered_json to_json(const LangDistance& d, const Alphabet& alphabet);

/// Tracing error of the length-`horizon` prefix of the concatenated
/// segments. Each segment must label a path of g; otherwise
/// std::invalid_argument names the first offending segment.
Rational eps_tracing_probe(const LabeledGraph& g, const std::vector<Word>& segments, std::size_t horizon);

}  // namespace sdyn
