#include "symdyn/proximal.hpp"

#include <stdexcept>

#include "symdyn/errors.hpp"
#include "symdyn/metrics.hpp"

namespace sdyn {

namespace {

std::uint64_t checked_pow(std::uint64_t b, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / b) throw std::overflow_error("power overflows");
    r *= b;
  }
  return r;
}

}  // namespace

std::uint64_t ProximalParams::size(std::size_t n) const { return checked_pow(base, n); }
std::uint64_t ProximalParams::gap(std::size_t n) const { return checked_pow(gap_base, n); }

void ProximalParams::validate() const {
  if (base < 3) throw std::invalid_argument("proximal base must be at least 3");
  if (gap_base < 1) throw std::invalid_argument("proximal gap base must be positive");
  for (std::size_t n = 1; n <= depth; ++n)
    if (gap(n) + 1 >= size(n))
      throw std::invalid_argument("gap g(" + std::to_string(n) + ") must be below base^n - 1");
}

LabeledGraph proximal_graph(const ProximalParams& params, std::size_t n, std::uint64_t vertex_cap) {
  if (n < 1) throw std::invalid_argument("proximal graphs are indexed from n = 1");
  const std::uint64_t N = params.size(n), g = params.gap(n);
  if (params.base < 3 || g + 1 >= N) throw std::invalid_argument("proximal parameters violate g(n) < base^n - 1");
  if (N > vertex_cap) throw CapExceeded("proximal graph has " + std::to_string(N) + " vertices", N);
  std::vector<Edge> edges;
  edges.reserve(2 * N + 1);
  for (std::uint64_t k = 0; k < N; ++k) edges.push_back({Vertex(k), Vertex((k + 1) % N), 0});
  for (std::uint64_t k = 1; k <= N - g; ++k) edges.push_back({Vertex(k), Vertex(k + 1), 1});
  edges.push_back({Vertex(N - g), Vertex((N - g + 2) % N), 0});
  return LabeledGraph(Alphabet(2), Vertex(N), std::move(edges));
}

Coupling proximal_coupling(const ProximalParams& params, std::size_t n, std::uint64_t vertex_cap) {
  std::vector<LabeledGraph> gs;
  for (std::size_t i = 1; i <= n; ++i) gs.push_back(proximal_graph(params, i, vertex_cap));
  return Coupling(std::move(gs));
}

SoficShift proximal_intersection(const ProximalParams& params, std::size_t n, std::uint64_t vertex_cap) {
  return SoficShift(proximal_coupling(params, n, vertex_cap).materialize(vertex_cap));
}

ZeroingShadow proximal_zeroing_shadow(const ProximalParams& params, const Word& x, std::size_t n,
                                      std::uint64_t offset) {
  if (x.empty()) throw std::invalid_argument("zeroing shadow needs a nonempty word");
  check_word(x, Alphabet(2));
  const Coupling yn = proximal_coupling(params, n);
  if (!yn.accepts(x)) throw VerificationFailure("input word is not in the language of Y_" + std::to_string(n));
  const std::uint64_t P = params.size(n + 1), g = params.gap(n + 1);
  ZeroingShadow s;
  s.y = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if ((j + offset) % P >= P - g && s.y[j] != 0) {
      s.y[j] = 0;
      ++s.changed;
    }
  }
  const Coupling next = proximal_coupling(params, n + 1);
  std::size_t cost = 1;
  try {
    cost = best_trace(next, s.y).mismatches;
  } catch (const CapExceeded&) {
  }
  if (cost != 0) throw VerificationFailure("zeroed word is not in the language of Y_" + std::to_string(n + 1));
  s.density = make_rational(static_cast<long>(s.changed), static_cast<long>(x.size()));
  s.bound = make_rational(static_cast<long>(g), static_cast<long>(P));
  s.within_bound = s.density <= s.bound;
  return s;
}

std::optional<Word> proximal_non_inclusion_witness(const ProximalParams& params, std::size_t a, std::size_t b,
                                                   std::size_t max_length) {
  return find_language_gap(proximal_graph(params, a), proximal_graph(params, b), max_length);
}

nlohmann::ordered_json to_json(const ZeroingShadow& s, bool include_word) {
  nlohmann::ordered_json j;
  j["length"] = s.y.size();
  j["changed"] = s.changed;
  j["density"] = to_string(s.density);
  j["bound"] = to_string(s.bound);
  j["within_bound"] = s.within_bound;
  if (include_word) j["y"] = format_word(s.y, Alphabet(2));
  return j;
}

}  // namespace sdyn
