#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "json.hpp"
#include "symdyn/sofic.hpp"

namespace sdyn {

/// A shift space known through its language. Subclasses supply L_n; the
/// base caches results behind a mutex so concurrent callers see the same
/// sorted vectors regardless of scheduling.
class LanguageOracle {
 public:
  explicit LanguageOracle(Alphabet alphabet) : alphabet_(alphabet) {}
  virtual ~LanguageOracle() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  /// L_n, sorted lexicographically. L_0 = {empty word}.
  const std::vector<Word>& words(std::size_t n) const;
  /// Largest n for which words(n) is exact; nullopt when unbounded.
  virtual std::optional<std::size_t> max_trusted_length() const { return std::nullopt; }

 protected:
  virtual std::vector<Word> compute(std::size_t n) const = 0;

 private:
  Alphabet alphabet_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::vector<Word>> cache_;
};

/// Shift of finite type given by forbidden words.
class SftOracle : public LanguageOracle {
 public:
  SftOracle(Alphabet alphabet, std::vector<Word> forbidden, std::uint64_t cap = kDefaultWordCap);
  /// A presentation whose vertices are the allowed words of length
  /// max(1, longest forbidden - 1).
  const LabeledGraph& presentation() const { return graph_; }

 protected:
  std::vector<Word> compute(std::size_t n) const override;

 private:
  std::vector<Word> forbidden_;
  LabeledGraph graph_;
  std::uint64_t cap_;
};

class SoficOracle : public LanguageOracle {
 public:
  explicit SoficOracle(const LabeledGraph& g, std::uint64_t cap = kDefaultWordCap);

 protected:
  std::vector<Word> compute(std::size_t n) const override;

 private:
  LabeledGraph graph_;
  std::uint64_t cap_;
};

/// Factors of a finite prefix of a point, trusted up to a declared length
/// (the caller certifies that every word of that length already occurs).
/// Longer queries throw std::out_of_range.
class PrefixOracle : public LanguageOracle {
 public:
  PrefixOracle(Alphabet alphabet, Word prefix, std::size_t trusted_length);
  std::optional<std::size_t> max_trusted_length() const override { return trusted_; }

 protected:
  std::vector<Word> compute(std::size_t n) const override;

 private:
  Word prefix_;
  std::size_t trusted_;
};

/// n-th Rauzy graph: vertices L_n in sorted order, one edge per
/// w in L_{n+1} from w[0,n) to w[1,n+1) labeled w_0.
LabeledGraph rauzy_graph(const LanguageOracle& oracle, std::size_t n);

/// The shift of finite type presented by the n-th Rauzy graph.
SoficShift markov_approximation(const LanguageOracle& oracle, std::size_t n);

struct ChainProbeRow {
  std::size_t n = 0;
  std::uint64_t vertices = 0;  ///< after pruning
  std::uint64_t edges = 0;
  bool strongly_connected = false;
  std::uint64_t period = 0;  ///< 0 when not strongly connected
  bool mixing() const { return strongly_connected && period == 1; }
};

struct ChainProbe {
  std::vector<ChainProbeRow> rows;
  /// Least n0 such that every row from n0 on is mixing.
  std::optional<std::size_t> mixing_from;
  bool chain_mixing_up_to_horizon() const { return mixing_from.has_value(); }
};

ChainProbe chain_mixing_probe(const LanguageOracle& oracle, std::size_t n_max);

nlohmann::ordered_json to_json(const ChainProbeRow& row);
nlohmann::ordered_json to_json(const ChainProbe& probe);

}  // namespace sdyn
