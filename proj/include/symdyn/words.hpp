#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "symdyn/rational.hpp"

namespace sdyn {

using Symbol = std::uint8_t;

/// Symbols are 0..size-1. At least two symbols, at most 256.
class Alphabet {
 public:
  explicit Alphabet(int size = 2);
  int size() const { return size_; }
  bool contains(Symbol s) const { return static_cast<int>(s) < size_; }
  bool operator==(const Alphabet&) const = default;

 private:
  int size_;
};

/// A finite word. The empty word is valid.
using Word = std::vector<Symbol>;

/// Throws std::invalid_argument if some symbol lies outside the alphabet.
void check_word(const Word& w, const Alphabet& alphabet);

/// Digit string for alphabets of at most ten symbols, comma-separated
/// integers otherwise.
std::string format_word(const Word& w, const Alphabet& alphabet);
Word parse_word(const std::string& text, const Alphabet& alphabet);

/// Number of positions where u and w differ. Requires |u| = |w|.
std::size_t hamming_count(const Word& u, const Word& w);

/// Normalized Hamming distance. Requires |u| = |w| > 0.
Rational hamming_normalized(const Word& u, const Word& w);

/// Overlapping occurrences of w in b (0 when |w| > |b|; |b|+1 for empty w).
std::size_t occurrence_count(const Word& w, const Word& b);

/// Relative frequency of w in b with the convention that every
/// overlapping occurrence counts and the denominator is |b|; zero when
/// |w| > |b|. The empty word has frequency one.
Rational freq(const Word& w, const Word& b);

/// Ultimately periodic one-sided point preperiod . period^infinity.
///
/// Stored canonically: the period is primitive and the preperiod is as
/// short as possible, so two points are equal iff their representations
/// are.
class UPPoint {
 public:
  UPPoint(Word preperiod, Word period);

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }

  Symbol at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  /// The image under the shift map.
  UPPoint shifted() const;

  bool operator==(const UPPoint&) const = default;

 private:
  Word preperiod_;
  Word period_;
};

/// "preperiod|period".
std::string format_point(const UPPoint& x, const Alphabet& alphabet);
UPPoint parse_point(const std::string& text, const Alphabet& alphabet);

/// Exact upper density of disagreements between two ultimately periodic
/// points. The preperiods have density zero, so this is the mismatch
/// density of the aligned tails over one lcm of the two period lengths.
Rational dbar_up(const UPPoint& x, const UPPoint& y);

class BlockDistribution;

struct DStarValue {
  Rational value;       ///< the series truncated after K terms
  Rational tail_bound;  ///< the omitted tail is at most this (2^{1-K})
};

/// sum_{k=1..K} 2^{-k} sum_{w in A^k} |freq(w,B) - mu[w]|.
/// Throws std::invalid_argument if K < 1 or K exceeds mu's level.
DStarValue dstar_block(const Word& b, const BlockDistribution& mu, int max_level);

}  // namespace sdyn
