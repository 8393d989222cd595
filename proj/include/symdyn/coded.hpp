#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/words.hpp"

namespace sdyn {

/// Arithmetic data of the code B_n: k = |B_n|, s and l the shortest and
/// longest lengths, tau_len = |tau(n)| = total length of all members.
struct CodedLevelStats {
  std::size_t n = 0;
  BigInt k, s, l, tau_len;
};

/// The four lower bounds on t(n) used by the construction.
enum class TInequality {
  Structural,   ///< t > |tau| / (2l - 3s), equivalent to s(n+1)/l(n+1) < 2/3
  Cauchy,       ///< t > (|tau| + 3l) / (s eps 2^{-n})
  MixingRatio,  ///< t >= l / (l - s)
  MixingLength  ///< t >= (2s + 2l + 3|tau|) / l
};

enum class TMode { Structural, Cauchy, Mixing, Both };

/// Least integer satisfying one inequality. Throws
/// std::invalid_argument when it cannot be satisfied (2l - 3s <= 0 for
/// Structural, l <= s for MixingRatio) or eps is missing for Cauchy.
BigInt coded_t_bound(const CodedLevelStats& st, TInequality which, const std::optional<Rational>& eps = std::nullopt);

/// max(2, bounds of the selected inequalities). Structural is always
/// included; Cauchy adds the eps bound, Mixing the two mixing bounds, Both
/// all four.
BigInt coded_min_t(const CodedLevelStats& st, TMode mode, const std::optional<Rational>& eps = std::nullopt);

const char* to_string(TMode mode);
TMode parse_tmode(const std::string& text);

struct CodedParams {
  std::vector<Word> b1{Word{0}, Word{1, 1}};
  /// t(1), t(2), ... When empty, `levels` values are chosen by coded_min_t.
  std::vector<std::uint64_t> t;
  std::size_t levels = 1;  ///< number of t values when chosen automatically
  TMode mode = TMode::Both;
  std::optional<Rational> epsilon;
  std::uint64_t enumeration_cap = 100'000;  ///< largest k(n) enumerated explicitly
  std::uint64_t tau_cap = 10'000'000;       ///< longest tau(n) materialized
};

/// The codes B_1, B_2, ... with B_{n+1} = {b_1 ... b_{t(n)} tau(n)}.
/// Members of B_{n+1} are listed in lexicographic order of their index
/// tuples, and tau(n) concatenates B_n in that order. Codes and tau are
/// built lazily and only while under the caps; everything else (stats,
/// exact-length members, random members, membership) works without them.
class CodedSystem {
 public:
  explicit CodedSystem(CodedParams params);

  const CodedParams& params() const { return params_; }
  /// Number of levels with known statistics: t(1..T) gives levels 1..T+1.
  std::size_t levels() const { return stats_.size(); }
  const CodedLevelStats& stats(std::size_t n) const;
  std::uint64_t t(std::size_t n) const;
  std::uint64_t s(std::size_t n) const;
  std::uint64_t l(std::size_t n) const;

  bool enumerable(std::size_t n) const;
  /// B_n in canonical order. Throws CapExceeded when not enumerable.
  const std::vector<Word>& words(std::size_t n) const;
  bool has_tau(std::size_t n) const;
  const Word& tau(std::size_t n) const;

  /// A member of B_n of length exactly len: the t(n-1) part lengths are
  /// clamped greedily (longest first) or drawn at random when rng is given.
  Word word_of_length(std::size_t n, std::uint64_t len, std::mt19937_64* rng = nullptr) const;
  Word random_member(std::size_t n, std::mt19937_64& rng) const;
  /// Membership in B_n by unique left-to-right decoding.
  bool is_member(std::size_t n, const Word& w) const;

 private:
  CodedParams params_;
  std::vector<std::uint64_t> t_;
  std::vector<CodedLevelStats> stats_;
  mutable std::map<std::size_t, std::vector<Word>> words_;
  mutable std::map<std::size_t, Word> tau_;
};

/// Splits `total` into `parts` values in [lo, hi]: greedy from the front
/// (largest first) without rng, uniform over feasible values per part with
/// it. Throws std::invalid_argument if impossible.
std::vector<std::uint64_t> split_length(std::uint64_t total, std::uint64_t parts, std::uint64_t lo, std::uint64_t hi,
                                        std::mt19937_64* rng = nullptr);

struct CodedShadow {
  std::vector<Word> z_blocks;          ///< members of B_{n+1}
  std::uint64_t prefix_length = 0;     ///< |z|, the compared prefix
  std::uint64_t mismatches = 0;        ///< Hamming distance of y and z on it
  Rational density;
  Rational bound;                      ///< (|tau| + 3l) / (|tau| + s t)
  std::size_t rounds = 0;
};

/// Replaces a stream of B_n blocks by a stream of B_{n+1} blocks: each
/// round emits w = b_1 ... b_{t(n)} tau(n), finds the block b_{j+1}
/// straddling |w|, and rewrites its overhang a together with the next two
/// blocks as two or three B_n words of the same total length. Stops when
/// fewer blocks remain than a round needs. Throws std::invalid_argument if
/// a block is not in B_n or no round fits, VerificationFailure if the
/// density exceeds the bound.
CodedShadow coded_shadow_next(const CodedSystem& sys, const std::vector<Word>& blocks, std::size_t n);

struct ShadowCheck {
  bool ok = false;
  std::string reason;
  Rational density;
};

/// Independent check of a shadow: every z block is in B_{n+1}, the y
/// stream covers the z prefix, and the recounted density respects the bound.
ShadowCheck verify_coded_shadow(const CodedSystem& sys, const std::vector<Word>& y_blocks,
                                const std::vector<Word>& z_blocks, std::size_t n);

/// uwv is the factor of concat(words) starting at offset; every entry of
/// words is a member of B_level.
struct ConnectCertificate {
  std::size_t level = 0;
  std::vector<Word> words;
  std::uint64_t offset = 0;
};

struct ConnectResult {
  Word w;
  int case_used = 0;  ///< case at the outermost level
  std::size_t recursion_depth = 0;
  ConnectCertificate certificate;
};

/// A word w of length m with uwv a factor of members of B_{n+1} (or of a
/// concatenation of two of them). Needs m >= 2 s(n); throws
/// std::invalid_argument otherwise or when a recursion step leaves the
/// range the parameters support.
ConnectResult coded_connect(const CodedSystem& sys, const Word& u, const Word& v, std::uint64_t m, std::size_t n);

/// Checks |w| = m, membership of every certificate word and that uwv sits
/// at the certified offset.
bool verify_connect(const CodedSystem& sys, const Word& u, const Word& v, std::uint64_t m, const ConnectResult& r);

struct MinimalityWitness {
  bool holds = false;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::optional<Word> counterexample;
};

/// Does u occur in every checked member of B_{n+2}? All of B_{n+2} when
/// enumerable, otherwise `samples` seeded random members. Requires u to be
/// a factor of a concatenation of two B_n words (std::invalid_argument
/// otherwise).
MinimalityWitness coded_minimality_witness(const CodedSystem& sys, std::size_t n, const Word& u,
                                           std::uint64_t samples, std::uint64_t seed);

nlohmann::ordered_json to_json(const CodedLevelStats& st);
nlohmann::ordered_json to_json(const CodedShadow& s);
nlohmann::ordered_json to_json(const ConnectResult& r, const Alphabet& alphabet);

}  // namespace sdyn
