#include "symdyn/oxtoby.hpp"

#include <stdexcept>

#include "symdyn/errors.hpp"
#include "symdyn/measures.hpp"

namespace sdyn {

OxtobyScale::OxtobyScale(std::vector<std::uint64_t> p) : p_(std::move(p)) {
  if (p_.size() < 3) throw std::invalid_argument("an Oxtoby scale needs at least p_0, p_1, p_2");
  if (p_[0] != 1) throw std::invalid_argument("an Oxtoby scale starts with p_0 = 1");
  for (std::size_t k = 0; k + 1 < p_.size(); ++k) {
    if (p_[k + 1] % p_[k] != 0)
      throw std::invalid_argument("p_" + std::to_string(k) + " does not divide p_" + std::to_string(k + 1));
    if (p_[k + 1] / p_[k] < 3)
      throw std::invalid_argument("p_" + std::to_string(k + 1) + " / p_" + std::to_string(k) + " is below 3");
  }
}

bool OxtobyScale::in_level(std::uint64_t i, std::size_t k) const {
  if (k < 1 || k > max_level()) throw std::out_of_range("Oxtoby level " + std::to_string(k) + " not in scale");
  const std::uint64_t r = i % p_[k + 1];
  return r < p_[k] || r >= p_[k + 1] - p_[k];
}

std::size_t OxtobyScale::level_of(std::uint64_t i) const {
  for (std::size_t k = 1; k <= max_level(); ++k)
    if (in_level(i, k)) return k;
  if (i < p_.back()) return max_level() + 1;
  throw std::out_of_range("position " + std::to_string(i) + " is not covered by the supplied scale");
}

Word oxtoby_prefix(const OxtobyScale& p, std::uint64_t n) {
  if (n > kOxtobyPrefixCap) throw CapExceeded("Oxtoby prefix longer than " + std::to_string(kOxtobyPrefixCap), n);
  if (n > p.p().back())
    throw std::out_of_range("scale covers positions below " + std::to_string(p.p().back()) + " only");
  Word x(n);
  for (std::uint64_t i = 0; i < n; ++i) x[i] = static_cast<Symbol>(p.level_of(i) % 2);
  return x;
}

std::uint64_t oxtoby_window_counts(const OxtobyScale& p, std::size_t l, std::size_t k) {
  if (l < 1 || l > k || k > p.max_level())
    throw std::out_of_range("window count needs 1 <= l <= k <= " + std::to_string(p.max_level()));
  return 2 * p[l] * (p[k + 1] / p[l + 1]);
}

bool OxtobyReport::passed() const {
  for (const auto& h : horizons)
    if (!h.frequency_ok || !h.transport_ok) return false;
  return true;
}

OxtobyReport oxtoby_verify(const OxtobyScale& p, const Rational& delta, std::size_t k) {
  if (k < 1 || k > p.max_level())
    throw std::invalid_argument("verification level must lie in [1, " + std::to_string(p.max_level()) + "]");
  OxtobyReport r;
  r.delta = delta;
  for (std::size_t l = 1; l + 1 < p.p().size(); ++l)
    r.scale_sum += make_rational(static_cast<long>(2 * p[l]), static_cast<long>(p[l + 1]));
  if (r.scale_sum >= delta)
    throw std::invalid_argument("scale condition fails: sum of 2 p_k / p_{k+1} is " + to_string(r.scale_sum) +
                                ", not below " + to_string(delta));
  const Alphabet binary(2);
  for (std::size_t kk = 1; kk <= k; ++kk) {
    OxtobyHorizon h;
    h.k = kk;
    h.horizon = p[kk + 1];
    h.majority = static_cast<Symbol>((kk + 1) % 2);
    const Word x = oxtoby_prefix(p, h.horizon);
    std::uint64_t ones = 0;
    for (Symbol s : x) ones += s;
    const long H = static_cast<long>(h.horizon);
    h.mismatch_vs_zero = make_rational(static_cast<long>(ones), H);
    h.mismatch_vs_one = make_rational(H - static_cast<long>(ones), H);
    h.majority_frequency = h.majority == 1 ? h.mismatch_vs_zero : h.mismatch_vs_one;
    h.certified_bound = 1;
    for (std::size_t l = 1; l <= kk; ++l)
      h.certified_bound -= make_rational(static_cast<long>(oxtoby_window_counts(p, l, kk)), H);
    h.frequency_ok = h.majority_frequency > 1 - delta && h.majority_frequency >= h.certified_bound;
    const BlockDistribution empirical = empirical_distribution(x, 1, binary);
    const BlockDistribution point = from_periodic(Word{h.majority}, 1, binary);
    h.transport_to_majority_point = transport_dbar_n(empirical, point, 1).value;
    h.transport_ok = h.transport_to_majority_point < delta;
    r.horizons.push_back(std::move(h));
  }
  return r;
}

nlohmann::ordered_json to_json(const OxtobyReport& r) {
  nlohmann::ordered_json j;
  j["delta"] = to_string(r.delta);
  j["scale_sum"] = to_string(r.scale_sum);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& h : r.horizons) {
    nlohmann::ordered_json row;
    row["k"] = h.k;
    row["horizon"] = h.horizon;
    row["majority_symbol"] = static_cast<int>(h.majority);
    row["majority_frequency"] = to_string(h.majority_frequency);
    row["certified_bound"] = to_string(h.certified_bound);
    row["required_above"] = to_string(1 - r.delta);
    row["mismatch_vs_0"] = to_string(h.mismatch_vs_zero);
    row["mismatch_vs_1"] = to_string(h.mismatch_vs_one);
    row["transport_to_fixed_point"] = to_string(h.transport_to_majority_point);
    row["frequency_ok"] = h.frequency_ok;
    row["transport_ok"] = h.transport_ok;
    rows.push_back(std::move(row));
  }
  j["horizons"] = std::move(rows);
  j["passed"] = r.passed();
  return j;
}

}  // namespace sdyn
