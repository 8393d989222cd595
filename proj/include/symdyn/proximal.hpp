#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"
#include "symdyn/sofic.hpp"

namespace sdyn {

/// Graph family G_n on base^n vertices with gap g(n) = gap_base^n.
struct ProximalParams {
  std::uint64_t base = 10;
  std::uint64_t gap_base = 2;
  std::size_t depth = 3;

  std::uint64_t size(std::size_t n) const;  ///< base^n
  std::uint64_t gap(std::size_t n) const;   ///< gap_base^n
  /// Throws std::invalid_argument unless base >= 3 and g(n) < base^n - 1 for n <= depth.
  void validate() const;
};

/// Vertices v_0..v_{N-1} with N = base^n: 0-labeled edges v_k -> v_{k+1 mod N},
/// 1-labeled edges v_k -> v_{k+1} for 1 <= k <= N - g(n), and a 0-labeled
/// skip edge v_{N-g(n)} -> v_{N-g(n)+2 mod N}.
LabeledGraph proximal_graph(const ProximalParams& params, std::size_t n, std::uint64_t vertex_cap = 1'000'000);

/// G_1, ..., G_n kept in factored form.
Coupling proximal_coupling(const ProximalParams& params, std::size_t n, std::uint64_t vertex_cap = 1'000'000);

/// Y_n = Z_1 cap ... cap Z_n as the pruned product presentation.
SoficShift proximal_intersection(const ProximalParams& params, std::size_t n, std::uint64_t vertex_cap = 1'000'000);

struct ZeroingShadow {
  Word y;
  std::uint64_t changed = 0;
  Rational density;  ///< changed / |x|
  Rational bound;    ///< g(n+1) / base^{n+1}
  bool within_bound = false;
};

/// y_j = 0 when (j + offset) mod base^{n+1} lies in [base^{n+1} - g(n+1), base^{n+1}),
/// y_j = x_j otherwise. Checks that x labels a path of Y_n and that y
/// labels a path of Y_{n+1} (tracing cost zero); a failed check throws
/// VerificationFailure.
ZeroingShadow proximal_zeroing_shadow(const ProximalParams& params, const Word& x, std::size_t n,
                                      std::uint64_t offset = 0);

/// A word of L(Z_a) not in L(Z_b), shortest found within `max_length`.
std::optional<Word> proximal_non_inclusion_witness(const ProximalParams& params, std::size_t a, std::size_t b,
                                                   std::size_t max_length = 200);

nlohmann::ordered_json to_json(const ZeroingShadow& s, bool include_word);

}  // namespace sdyn
