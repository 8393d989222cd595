#include "symdyn/metrics.hpp"

#include <limits>
#include <random>

#include "symdyn/errors.hpp"

namespace sdyn {

FinitePseudometricSet::FinitePseudometricSet(std::vector<std::vector<Rational>> dist) : dist_(std::move(dist)) {
  for (std::size_t i = 0; i < dist_.size(); ++i) {
    if (dist_[i].size() != dist_.size()) throw std::invalid_argument("distance table is not square");
    if (dist_[i][i] != 0) throw std::invalid_argument("distance table has a nonzero diagonal entry");
    for (std::size_t j = 0; j < i; ++j) {
      if (dist_[i][j] != dist_[j][i]) throw std::invalid_argument("distance table is not symmetric");
      if (dist_[i][j] < 0) throw std::invalid_argument("distance table has a negative entry");
    }
  }
}

bool FinitePseudometricSet::satisfies_triangle_inequality() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist_[i][k] > dist_[i][j] + dist_[j][k]) return false;
  return true;
}

Rational FinitePseudometricSet::hausdorff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
  return sdyn::hausdorff(a, b, [&](std::size_t i, std::size_t j) { return (*this)(i, j); });
}

TraceResult best_trace(const LabeledGraph& g, const Word& target, std::uint64_t table_cap) {
  const std::size_t n = target.size();
  if (n == 0) throw std::invalid_argument("best_trace needs a nonempty target");
  if (accepts(g, target)) return {Rational(0), 0, target};
  const Vertex V = g.vertex_count();
  const std::uint64_t cells = std::uint64_t(n + 1) * V;
  if (cells > table_cap)
    throw CapExceeded("tracing table needs " + std::to_string(cells) + " cells, cap is " + std::to_string(table_cap),
                      cells);
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  // best[i * V + v]: least mismatches reading target[i..n) from v.
  std::vector<std::uint32_t> best(cells, kNone);
  std::fill(best.begin() + std::ptrdiff_t(n) * V, best.end(), 0);
  for (std::size_t i = n; i-- > 0;) {
    std::uint32_t* row = best.data() + i * V;
    const std::uint32_t* next = best.data() + (i + 1) * V;
    for (Vertex v = 0; v < V; ++v)
      for (const Edge& e : g.out_edges(v)) {
        if (next[e.dst] == kNone) continue;
        const std::uint32_t c = next[e.dst] + (e.label != target[i]);
        if (c < row[v]) row[v] = c;
      }
  }
  std::uint32_t opt = kNone;
  for (Vertex v = 0; v < V; ++v) opt = std::min(opt, best[v]);
  if (opt == kNone) throw EmptyShift("graph has no path of length " + std::to_string(n));

  std::vector<Vertex> frontier, next;
  for (Vertex v = 0; v < V; ++v)
    if (best[v] == opt) frontier.push_back(v);
  std::uint32_t budget = opt;
  Word witness;
  witness.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t* row_next = best.data() + (i + 1) * V;
    int chosen = -1;
    next.clear();
    for (Vertex v : frontier)
      for (const Edge& e : g.out_edges(v)) {
        if (chosen >= 0 && e.label > chosen) break;
        if (row_next[e.dst] == kNone) continue;
        const std::uint32_t miss = e.label != target[i];
        if (miss + row_next[e.dst] != budget) continue;
        if (chosen < 0 || e.label < chosen) {
          chosen = e.label;
          next.clear();
        }
        next.push_back(e.dst);
      }
    witness.push_back(static_cast<Symbol>(chosen));
    budget -= static_cast<std::uint32_t>(chosen != target[i]);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier.swap(next);
  }
  return {make_rational(opt, static_cast<long>(n)), opt, std::move(witness)};
}

TraceResult best_trace(const Coupling& c, const Word& target, std::uint64_t table_cap) {
  if (target.empty()) throw std::invalid_argument("best_trace needs a nonempty target");
  if (c.factorwise() && c.accepts(target)) return {Rational(0), 0, target};
  return best_trace(c.materialize(), target, table_cap);
}

namespace {

// Largest inner minimum over `words`, traced in `other`; ties keep the
// earliest word.
void trace_side(const std::vector<Word>& words, const LabeledGraph& other, Rational& side, std::optional<Word>& arg) {
  std::size_t worst = 0;
  bool any = false;
  for (const Word& w : words) {
    const std::size_t m = best_trace(other, w).mismatches;
    if (!any || m > worst) {
      worst = m;
      arg = w;
      any = true;
    }
  }
  side = words.empty() ? Rational(0) : make_rational(static_cast<long>(worst), static_cast<long>(words.front().size()));
}

}  // namespace

LangDistance lang_hausdorff_hamming_exact(const SoficShift& x, const SoficShift& y, std::size_t n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("lang_hausdorff_hamming needs n >= 1");
  LangDistance out;
  out.horizon = n;
  std::optional<Word> wx, wy;
  trace_side(language(x.presentation(), n, cap), y.presentation(), out.x_side, wx);
  trace_side(language(y.presentation(), n, cap), x.presentation(), out.y_side, wy);
  out.value = std::max(out.x_side, out.y_side);
  out.witness = out.x_side >= out.y_side ? wx : wy;
  return out;
}

LangDistance lang_hausdorff_hamming_sampled(const SoficShift& x, const SoficShift& y, std::size_t n,
                                            std::uint64_t samples, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("lang_hausdorff_hamming needs n >= 1");
  if (samples == 0) throw std::invalid_argument("sampled mode needs at least one sample");
  LangDistance out;
  out.horizon = n;
  out.sampled = true;
  out.seed = seed;
  out.samples = samples;
  std::mt19937_64 rng(seed);
  auto draw = [&](const LabeledGraph& g) {
    std::vector<Word> words;
    for (std::uint64_t s = 0; s < samples; ++s) words.push_back(random_path_word(g, n, rng));
    return words;
  };
  std::optional<Word> wx, wy;
  const auto sx = draw(x.presentation());
  const auto sy = draw(y.presentation());
  trace_side(sx, y.presentation(), out.x_side, wx);
  trace_side(sy, x.presentation(), out.y_side, wy);
  out.value = std::max(out.x_side, out.y_side);
  out.witness = out.x_side >= out.y_side ? wx : wy;
  return out;
}

nlohmann::ordered_json to_json(const LangDistance& d, const Alphabet& alphabet) {
  nlohmann::ordered_json j;
  j["horizon"] = d.horizon;
  j["value_num"] = to_string(BigInt(d.value.get_num()));
  j["value_den"] = to_string(BigInt(d.value.get_den()));
  j["value"] = to_string(d.value);
  j["x_side"] = to_string(d.x_side);
  j["y_side"] = to_string(d.y_side);
  if (d.witness) j["witness"] = format_word(*d.witness, alphabet);
  j["mode"] = d.sampled ? "sampled" : "exact";
  if (d.sampled) {
    j["seed"] = d.seed;
    j["samples"] = d.samples;
    j["lower_bound"] = to_string(d.value);
  }
  return j;
}

Rational eps_tracing_probe(const LabeledGraph& g, const std::vector<Word>& segments, std::size_t horizon) {
  Word joined;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!accepts(g, segments[i]))
      throw std::invalid_argument("segment " + std::to_string(i) + " is not in the language");
    joined.insert(joined.end(), segments[i].begin(), segments[i].end());
  }
  if (horizon == 0 || horizon > joined.size())
    throw std::invalid_argument("horizon must lie in [1, " + std::to_string(joined.size()) + "]");
  joined.resize(horizon);
  return best_trace(g, joined).cost;
}

}  // namespace sdyn
