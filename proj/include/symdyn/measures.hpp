#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symdyn/block_distribution.hpp"
#include "symdyn/sofic.hpp"

namespace sdyn {

/// Joint distribution on A^n x A^n, sparse. Keys are (u, w) with u drawn
/// from the first marginal and w from the second.
struct Joining {
  int level = 0;
  std::map<std::pair<Word, Word>, Rational> entries;

  /// True iff the row sums are mu's level-n probabilities and the column
  /// sums are nu's.
  bool has_marginals(const BlockDistribution& mu, const BlockDistribution& nu) const;
  /// Sum of mass * normalized Hamming distance.
  Rational expected_distance() const;
};

/// Cylinder probabilities of the periodic orbit of v: cyclic occurrence
/// counts of each length-k word in v divided by |v|.
BlockDistribution from_periodic(const Word& v, int k, const Alphabet& alphabet);

/// Level-j distribution p'(w) = sum over v of p(wv).
BlockDistribution marginalize(const BlockDistribution& mu, int j);

/// The distribution at level n, marginalizing when mu is finer. Throws
/// std::invalid_argument when n exceeds mu's level.
BlockDistribution at_level(const BlockDistribution& mu, int n);

/// Empirical level-k distribution of the cyclic closure of a finite word:
/// exactly from_periodic(b, k). Provided under this name for prefix
/// statistics of long sequences.
BlockDistribution empirical_distribution(const Word& b, int k, const Alphabet& alphabet);

struct TransportResult {
  Rational value;
  Joining witness;
};

/// min over joinings of the expected normalized Hamming distance between
/// the level-n marginals, solved exactly as a transportation problem.
TransportResult transport_dbar_n(const BlockDistribution& mu, const BlockDistribution& nu, int n);

struct AlphaJoiningResult {
  bool feasible = false;
  Rational min_outside_mass;  ///< least mass any joining puts outside Delta_n(alpha)
  std::optional<Joining> witness;
};

/// Is there a joining with lambda(Delta_n(alpha)) >= 1 - alpha, where
/// Delta_n(alpha) = {(u, w) : d_Ham(u, w) <= alpha}? Decided exactly by
/// minimizing the mass outside Delta_n(alpha).
AlphaJoiningResult alpha_good_joining(const BlockDistribution& mu, const BlockDistribution& nu, int n,
                                      const Rational& alpha);

/// Least alpha in {0, 1/n, ..., 1} for which alpha_good_joining succeeds.
Rational dstar_n(const BlockDistribution& mu, const BlockDistribution& nu, int n);

/// Hausdorff distance between two finite sets of distributions under
/// transport_dbar_n. Throws std::invalid_argument on an empty set.
Rational hausdorff_dbar_n(const std::vector<BlockDistribution>& a, const std::vector<BlockDistribution>& b, int n);

/// Primitive label words of closed paths of length <= max_len, one per
/// rotation class (the least rotation), sorted by length then
/// lexicographically. Throws CapExceeded beyond `cap` words.
std::vector<Word> cycle_words(const LabeledGraph& g, std::size_t max_len, std::uint64_t cap = 100'000);

/// from_periodic of every word returned by cycle_words.
std::vector<BlockDistribution> cycle_measures(const LabeledGraph& g, std::size_t max_len, int level,
                                              std::uint64_t cap = 100'000);

/// {"level": k, "alphabet_size": a, "probs": [{"word", "num", "den"}...]}
nlohmann::ordered_json distribution_to_json(const BlockDistribution& mu);
BlockDistribution distribution_from_json(const nlohmann::json& j);
/// {"level": n, "entries": [{"u", "w", "num", "den"}...]}
nlohmann::ordered_json joining_to_json(const Joining& j, const Alphabet& alphabet);

}  // namespace sdyn
