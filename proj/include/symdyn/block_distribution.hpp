#pragma once

#include <map>
#include <string>

#include "symdyn/rational.hpp"
#include "symdyn/words.hpp"

namespace sdyn {

/// Cylinder probabilities of a shift-invariant measure on words of one
/// fixed length (the level). Zero entries are not stored.
///
/// Invariants checked on construction: every word has length `level`,
/// probabilities are nonnegative and sum to one, and for every word w of
/// length level-1 the prefix and suffix marginals agree,
/// sum_a p(wa) = sum_a p(aw).
class BlockDistribution {
 public:
  BlockDistribution(Alphabet alphabet, int level, std::map<Word, Rational> probs);

  const Alphabet& alphabet() const { return alphabet_; }
  int level() const { return level_; }
  const std::map<Word, Rational>& probabilities() const { return probs_; }

  /// mu[w] for |w| <= level; the empty word has probability one.
  Rational operator[](const Word& w) const;

  bool operator==(const BlockDistribution&) const = default;

 private:
  Alphabet alphabet_;
  int level_;
  std::map<Word, Rational> probs_;
};

}  // namespace sdyn
