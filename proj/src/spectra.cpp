#include "symdyn/spectra.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "symdyn/errors.hpp"
#include "symdyn/metrics.hpp"

namespace sdyn {

OccurrenceAutomaton::OccurrenceAutomaton(Word pattern, const Alphabet& alphabet)
    : pattern_(std::move(pattern)), alphabet_size_(alphabet.size()) {
  if (pattern_.empty()) throw std::invalid_argument("occurrence automaton needs a nonempty pattern");
  check_word(pattern_, alphabet);
  const std::size_t m = pattern_.size();
  // Full KMP automaton on states 0..m, then state m is folded into its border.
  std::vector<std::uint32_t> full((m + 1) * alphabet_size_, 0);
  std::uint32_t border = 0;
  for (std::uint32_t q = 0; q <= m; ++q) {
    for (int a = 0; a < alphabet_size_; ++a) {
      if (q < m && pattern_[q] == a)
        full[q * alphabet_size_ + a] = q + 1;
      else
        full[q * alphabet_size_ + a] = q == 0 ? 0 : full[border * alphabet_size_ + a];
    }
    if (q > 0 && q < m) border = full[border * alphabet_size_ + pattern_[q]];
  }
  next_.resize(m * alphabet_size_);
  done_.resize(m * alphabet_size_);
  for (std::uint32_t q = 0; q < m; ++q)
    for (int a = 0; a < alphabet_size_; ++a) {
      std::uint32_t t = full[q * alphabet_size_ + a];
      done_[q * alphabet_size_ + a] = t == m;
      if (t == m) t = border;
      next_[q * alphabet_size_ + a] = t;
    }
}

std::uint64_t gamma(const Word& w, const Word& u) {
  if (w.empty() || w.size() > u.size()) return 0;
  return occurrence_count(w, u);
}

WeightedProduct weighted_product(const LabeledGraph& g, const Word& w) {
  const OccurrenceAutomaton aut(w, g.alphabet());
  const std::size_t m = aut.state_count();
  std::vector<Edge> edges;
  edges.reserve(g.edges().size() * m);
  for (const Edge& e : g.edges())
    for (std::uint32_t q = 0; q < m; ++q)
      edges.push_back({static_cast<Vertex>(e.src * m + q), static_cast<Vertex>(e.dst * m + aut.next(q, e.label)),
                       e.label});
  WeightedProduct p{LabeledGraph(g.alphabet(), static_cast<Vertex>(g.vertex_count() * m), std::move(edges)), {}, m};
  p.weights.reserve(p.graph.edges().size());
  for (const Edge& e : p.graph.edges()) p.weights.push_back(aut.completes(e.src % m, e.label));
  return p;
}

std::uint64_t Gamma(const SoficShift& x, const Word& w, std::size_t n) {
  if (w.empty()) throw std::invalid_argument("Gamma needs a nonempty word");
  if (n < w.size()) return 0;
  const WeightedProduct p = weighted_product(x.presentation(), w);
  const Vertex N = p.graph.vertex_count();
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> cur(N, kNone), nxt(N);
  for (Vertex v = 0; v < N; v += static_cast<Vertex>(p.states_per_vertex)) cur[v] = 0;
  const auto& edges = p.graph.edges();
  for (std::size_t step = 0; step < n; ++step) {
    std::fill(nxt.begin(), nxt.end(), kNone);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::int64_t c = cur[edges[i].src];
      if (c == kNone) continue;
      nxt[edges[i].dst] = std::max(nxt[edges[i].dst], c + p.weights[i]);
    }
    cur.swap(nxt);
  }
  const std::int64_t best = *std::max_element(cur.begin(), cur.end());
  return best < 0 ? 0 : static_cast<std::uint64_t>(best);
}

namespace {

struct CycleCandidate {
  Rational mean;
  Word labels;
};

// Karp's maximum mean cycle inside one strongly connected component,
// given as the list of its vertices and edge indices.
std::optional<CycleCandidate> karp_component(const WeightedProduct& p, const std::vector<Vertex>& verts,
                                             const std::vector<std::size_t>& comp_edges) {
  const std::size_t n = verts.size();
  std::map<Vertex, std::size_t> local;
  for (std::size_t i = 0; i < n; ++i) local[verts[i]] = i;
  const auto& edges = p.graph.edges();
  constexpr std::int32_t kNone = INT32_MIN;
  // d[k * n + v]: max weight of a k-edge walk ending at v; par holds the last edge.
  std::vector<std::int32_t> d((n + 1) * n, kNone);
  std::vector<std::uint32_t> par((n + 1) * n, 0);
  std::fill(d.begin(), d.begin() + std::ptrdiff_t(n), 0);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t idx = 0; idx < comp_edges.size(); ++idx) {
      const Edge& e = edges[comp_edges[idx]];
      const std::size_t u = local[e.src], v = local[e.dst];
      const std::int32_t prev = d[(k - 1) * n + u];
      if (prev == kNone) continue;
      const std::int32_t val = prev + p.weights[comp_edges[idx]];
      if (val > d[k * n + v]) {
        d[k * n + v] = val;
        par[k * n + v] = static_cast<std::uint32_t>(idx);
      }
    }
  std::optional<Rational> best;
  std::size_t best_v = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (d[n * n + v] == kNone) continue;
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (d[k * n + v] == kNone) continue;
      const Rational r = make_rational(d[n * n + v] - d[k * n + v], static_cast<long>(n - k));
      if (!worst || r < *worst) worst = r;
    }
    if (worst && (!best || *worst > *best)) {
      best = *worst;
      best_v = v;
    }
  }
  if (!best) return std::nullopt;
  // The optimal n-edge walk into best_v closes a cycle of mean *best.
  std::vector<std::size_t> walk_vertices(n + 1);
  std::vector<std::size_t> walk_edges(n);
  walk_vertices[n] = best_v;
  for (std::size_t k = n; k > 0; --k) {
    const std::size_t idx = par[k * n + walk_vertices[k]];
    walk_edges[k - 1] = comp_edges[idx];
    walk_vertices[k - 1] = local[edges[comp_edges[idx]].src];
  }
  std::optional<CycleCandidate> found;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (walk_vertices[i] != walk_vertices[j]) continue;
      long weight = 0;
      Word labels;
      for (std::size_t k = i; k < j; ++k) {
        weight += p.weights[walk_edges[k]];
        labels.push_back(edges[walk_edges[k]].label);
      }
      const Rational mean = make_rational(weight, static_cast<long>(j - i));
      if (mean == *best && (!found || labels.size() < found->labels.size())) found = CycleCandidate{mean, labels};
      break;
    }
  if (!found) throw VerificationFailure("maximum mean cycle: no cycle on the critical walk attains the value");
  return found;
}

}  // namespace

LambdaResult Lambda(const SoficShift& x, const Word& w, std::size_t component_cap) {
  if (w.empty()) throw std::invalid_argument("Lambda needs a nonempty word");
  const WeightedProduct p = weighted_product(x.presentation(), w);
  const Components comps = strongly_connected_components(p.graph);
  std::vector<std::vector<Vertex>> verts(comps.count);
  std::vector<std::vector<std::size_t>> comp_edges(comps.count);
  for (Vertex v = 0; v < p.graph.vertex_count(); ++v) verts[comps.component_of[v]].push_back(v);
  const auto& edges = p.graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (comps.component_of[edges[i].src] == comps.component_of[edges[i].dst])
      comp_edges[comps.component_of[edges[i].src]].push_back(i);
  std::optional<CycleCandidate> best;
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    if (comp_edges[c].empty()) continue;
    if (verts[c].size() > component_cap)
      throw CapExceeded("product component with " + std::to_string(verts[c].size()) + " vertices exceeds cap " +
                            std::to_string(component_cap),
                        verts[c].size());
    auto cand = karp_component(p, verts[c], comp_edges[c]);
    if (cand && (!best || cand->mean > best->mean ||
                 (cand->mean == best->mean && (cand->labels.size() < best->labels.size() ||
                                               (cand->labels.size() == best->labels.size() &&
                                                cand->labels < best->labels)))))
      best = cand;
  }
  if (!best) throw EmptyShift("presentation has no cycle");
  return {best->mean, best->labels};
}

nlohmann::ordered_json to_json(const LambdaResult& r, const Word& w, const Alphabet& alphabet) {
  nlohmann::ordered_json j;
  j["word"] = format_word(w, alphabet);
  j["value_num"] = to_string(BigInt(r.value.get_num()));
  j["value_den"] = to_string(BigInt(r.value.get_den()));
  j["witness_cycle"] = format_word(r.witness_cycle, alphabet);
  return j;
}

SoficShift measure_center(const SoficShift& x) {
  const LabeledGraph& g = x.presentation();
  const Components comps = strongly_connected_components(g);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (comps.component_of[e.src] == comps.component_of[e.dst]) kept.push_back(e);
  return SoficShift(LabeledGraph(g.alphabet(), g.vertex_count(), std::move(kept)));
}

namespace {

// Least word of L_n of a pruned graph.
Word least_word(const LabeledGraph& g, std::size_t n) {
  std::vector<char> live(g.vertex_count(), 1);
  Word out;
  while (out.size() < n) {
    std::vector<std::vector<char>> next(std::size_t(g.alphabet().size()), std::vector<char>(g.vertex_count(), 0));
    std::vector<char> used(std::size_t(g.alphabet().size()), 0);
    for (const Edge& e : g.edges())
      if (live[e.src]) {
        next[e.label][e.dst] = 1;
        used[e.label] = 1;
      }
    Symbol a = 0;
    while (!used[a]) ++a;
    out.push_back(a);
    live = std::move(next[a]);
  }
  return out;
}

}  // namespace

CenterProjection project_to_center(const std::vector<Word>& words, const SoficShift& x, std::optional<std::size_t> m,
                                   std::optional<Word> filler) {
  const SoficShift center = measure_center(x);
  const LabeledGraph& cg = center.presentation();
  CenterProjection out;
  out.block_length = m.value_or(1);
  if (out.block_length == 0) throw std::invalid_argument("block length must be positive");
  if (filler) {
    if (filler->size() != out.block_length || !accepts(cg, *filler))
      throw std::invalid_argument("filler must be a word of the measure center of length " +
                                  std::to_string(out.block_length));
    out.filler = *filler;
  } else {
    out.filler = least_word(cg, out.block_length);
  }
  std::uint64_t total = 0, replaced = 0, changed = 0;
  for (std::size_t idx = 0; idx < words.size(); ++idx) {
    const Word& w = words[idx];
    if (w.size() < out.block_length)
      throw std::invalid_argument("word " + std::to_string(idx) + " is shorter than the block length");
    if (!accepts(x.presentation(), w))
      throw std::invalid_argument("word " + std::to_string(idx) + " is not in the language");
    const std::size_t blocks = w.size() / out.block_length;
    Word result;
    result.reserve(w.size());
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t begin = b * out.block_length;
      const std::size_t end = b + 1 == blocks ? w.size() : begin + out.block_length;
      const Word block(w.begin() + std::ptrdiff_t(begin), w.begin() + std::ptrdiff_t(end));
      Word repl = block;
      if (!accepts(cg, block)) {
        repl = b + 1 == blocks && block.size() != out.block_length ? best_trace(cg, block).witness : out.filler;
        replaced += block.size();
        changed += hamming_count(block, repl);
      }
      result.insert(result.end(), repl.begin(), repl.end());
    }
    total += w.size();
    out.words.push_back(std::move(result));
  }
  out.replaced_fraction = total ? make_rational(static_cast<long>(replaced), static_cast<long>(total)) : Rational(0);
  out.changed_fraction = total ? make_rational(static_cast<long>(changed), static_cast<long>(total)) : Rational(0);
  return out;
}

}  // namespace sdyn
