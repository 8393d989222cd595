#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/words.hpp"

namespace sdyn {

/// Increasing scale p_0 = 1 < p_1 < ... with p_k | p_{k+1} and
/// p_{k+1} >= 3 p_k.
class OxtobyScale {
 public:
  explicit OxtobyScale(std::vector<std::uint64_t> p);

  const std::vector<std::uint64_t>& p() const { return p_; }
  std::uint64_t operator[](std::size_t k) const { return p_.at(k); }
  /// Largest k for which M_k is defined (M_k needs p_{k+1}).
  std::size_t max_level() const { return p_.size() - 2; }
  /// True iff i lies in M_k = ([-p_k, p_k) + p_{k+1} N_0) intersected with N_0.
  bool in_level(std::uint64_t i, std::size_t k) const;
  /// Least k >= 1 with i in M_k. Below p_{K+1} every position outside
  /// M_1..M_K lies in M_{K+1}, so i < p.back() is always answered; larger
  /// uncovered positions throw std::out_of_range.
  std::size_t level_of(std::uint64_t i) const;

 private:
  std::vector<std::uint64_t> p_;
};

inline constexpr std::uint64_t kOxtobyPrefixCap = 10'000'000;

/// x_i = level_of(i) mod 2 for i < n.
Word oxtoby_prefix(const OxtobyScale& p, std::uint64_t n);

/// |M_l intersected with [0, p_{k+1})| in closed form, 2 p_l p_{k+1} / p_{l+1}.
std::uint64_t oxtoby_window_counts(const OxtobyScale& p, std::size_t l, std::size_t k);

struct OxtobyHorizon {
  std::size_t k = 0;
  std::uint64_t horizon = 0;  ///< p_{k+1}
  Symbol majority = 0;        ///< (k+1) mod 2
  Rational majority_frequency;
  Rational certified_bound;  ///< 1 - sum_{l<=k} |M_l cap [0,p_{k+1})| / p_{k+1}
  Rational mismatch_vs_zero;  ///< density of 1s, the disagreement with 0^infinity
  Rational mismatch_vs_one;
  Rational transport_to_majority_point;  ///< level-1 transport to the majority fixed point
  bool frequency_ok = false;             ///< majority_frequency > 1 - delta and >= certified_bound
  bool transport_ok = false;             ///< transport < delta
};

struct OxtobyReport {
  Rational delta;
  Rational scale_sum;  ///< sum over supplied levels of 2 p_k / p_{k+1}
  std::vector<OxtobyHorizon> horizons;
  bool passed() const;
};

/// Checks the finite-horizon counting facts at horizons p_2, ..., p_{k+1}.
/// Throws std::invalid_argument if the supplied scale has
/// sum 2 p_l / p_{l+1} >= delta or k exceeds the scale.
OxtobyReport oxtoby_verify(const OxtobyScale& p, const Rational& delta, std::size_t k);

nlohmann::ordered_json to_json(const OxtobyReport& r);

}  // namespace sdyn
