#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/words.hpp"

namespace sdyn {

/// Words W_0, W_1, ... and thresholds delta_1, delta_2, ... for the tower
/// V_0 = W_0, V_{k+1} = V_k^{a_{k+1}} W_{k+1} 1^{b_{k+1}}.
struct TowerParams {
  Alphabet alphabet{2};
  std::vector<Word> words;      ///< W_0, W_1, ...
  std::vector<Rational> deltas;  ///< deltas[k] is delta_{k+1}
};

/// The nonempty words over the alphabet in length-then-lexicographic
/// order: 0, 1, 00, 01, ... for the binary alphabet.
std::vector<Word> canonical_enumeration(const Alphabet& alphabet, std::size_t count);

/// Canonical words with delta_k = ratio^k, k = 1..depth.
TowerParams geometric_tower_params(std::size_t depth, const Rational& ratio, const Alphabet& alphabet = Alphabet(2));

struct TowerLevel {
  Word v;              ///< V_k
  std::uint64_t a = 0;  ///< a_k (0 at level 0)
  std::uint64_t b = 0;  ///< b_k (0 at level 0)
};

struct Tower {
  TowerParams params;
  std::vector<TowerLevel> levels;  ///< V_0 .. V_K
  bool truncated = false;          ///< the length cap stopped the build early
};

inline constexpr std::uint64_t kTowerLengthCap = 10'000'000;

/// b_{k+1} is the least b >= 0 with |W_{k+1}| + b divisible by |V_k| and
/// a_{k+1} the least a >= 1 with (|W_{k+1}| + b_{k+1}) / |V_{k+1}| < delta_{k+1}.
/// Requires sum delta < 1/2. A level longer than `length_cap` is not built
/// and the result is flagged truncated.
Tower tower_build(const TowerParams& params, std::size_t depth, std::uint64_t length_cap = kTowerLengthCap);

struct TowerCheck {
  char kind = 'a';  ///< 'a': d-bar step bound, 'b': cylinder lower bound, 'c': partial sum
  std::size_t k = 0;
  std::size_t n = 0;  ///< second level for 'b' checks
  Rational lhs;
  Rational rhs;
  bool ok = false;
};

struct TowerReport {
  std::vector<TowerCheck> checks;
  bool passed() const;
  /// First failing check, if any.
  std::optional<TowerCheck> first_failure() const;
};

/// (a) dbar(V_k^inf, V_{k+1}^inf) <= delta_{k+1} for k < K;
/// (b) from_periodic(V_n)[W_k] >= (1/|V_k|) prod_{j=k+1..n} (1 - delta_j) for k < n <= K;
/// (c) the partial sums of the deltas stay below 1/2.
TowerReport tower_verify(const Tower& tower);

nlohmann::ordered_json to_json(const Tower& tower, bool include_words);
nlohmann::ordered_json to_json(const TowerReport& report);

}  // namespace sdyn
