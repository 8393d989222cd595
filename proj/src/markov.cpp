#include "symdyn/markov.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "symdyn/errors.hpp"

namespace sdyn {

const std::vector<Word>& LanguageOracle::words(std::size_t n) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  if (auto t = max_trusted_length(); t && n > *t)
    throw std::out_of_range("language queried at length " + std::to_string(n) + " beyond trusted length " +
                            std::to_string(*t));
  std::vector<Word> w = n == 0 ? std::vector<Word>{Word{}} : compute(n);
  return cache_.emplace(n, std::move(w)).first->second;
}

namespace {

bool contains_forbidden(const Word& w, const std::vector<Word>& forbidden) {
  for (const Word& f : forbidden) {
    if (f.size() > w.size()) continue;
    if (std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return true;
  }
  return false;
}

LabeledGraph sft_graph(const Alphabet& alphabet, const std::vector<Word>& forbidden) {
  std::size_t longest = 1;
  for (const Word& f : forbidden) {
    if (f.empty()) throw std::invalid_argument("the empty word cannot be forbidden");
    check_word(f, alphabet);
    longest = std::max(longest, f.size());
  }
  const std::size_t m = std::max<std::size_t>(1, longest - 1);
  // Allowed words of length m, built by extension so only F-free words are kept.
  std::vector<Word> states{Word{}};
  for (std::size_t len = 0; len < m; ++len) {
    std::vector<Word> next;
    for (const Word& w : states)
      for (int a = 0; a < alphabet.size(); ++a) {
        Word x = w;
        x.push_back(static_cast<Symbol>(a));
        if (!contains_forbidden(x, forbidden)) next.push_back(std::move(x));
      }
    states.swap(next);
  }
  if (states.empty()) throw EmptyShift("every word of length " + std::to_string(m) + " contains a forbidden word");
  std::map<Word, Vertex> index;
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const Word& w : states)
    for (int a = 0; a < alphabet.size(); ++a) {
      Word x = w;
      x.push_back(static_cast<Symbol>(a));
      if (contains_forbidden(x, forbidden)) continue;
      const Word tail(x.begin() + 1, x.end());
      auto it = index.find(tail);
      if (it == index.end()) continue;
      edges.push_back({index.at(w), it->second, w[0]});
    }
  return prune(LabeledGraph(alphabet, static_cast<Vertex>(states.size()), std::move(edges)));
}

}  // namespace

SftOracle::SftOracle(Alphabet alphabet, std::vector<Word> forbidden, std::uint64_t cap)
    : LanguageOracle(alphabet), forbidden_(std::move(forbidden)), graph_(sft_graph(alphabet, forbidden_)), cap_(cap) {}

std::vector<Word> SftOracle::compute(std::size_t n) const { return language(graph_, n, cap_); }

SoficOracle::SoficOracle(const LabeledGraph& g, std::uint64_t cap)
    : LanguageOracle(g.alphabet()), graph_(prune(g)), cap_(cap) {}

std::vector<Word> SoficOracle::compute(std::size_t n) const { return language(graph_, n, cap_); }

PrefixOracle::PrefixOracle(Alphabet alphabet, Word prefix, std::size_t trusted_length)
    : LanguageOracle(alphabet), prefix_(std::move(prefix)), trusted_(trusted_length) {
  check_word(prefix_, alphabet);
  if (trusted_ >= prefix_.size()) throw std::invalid_argument("trusted length must be shorter than the prefix");
}

std::vector<Word> PrefixOracle::compute(std::size_t n) const {
  std::set<Word> found;
  // The last position is excluded so that every listed word extends to
  // the right inside the prefix.
  for (std::size_t i = 0; i + n < prefix_.size(); ++i)
    found.emplace(prefix_.begin() + std::ptrdiff_t(i), prefix_.begin() + std::ptrdiff_t(i + n));
  return {found.begin(), found.end()};
}

LabeledGraph rauzy_graph(const LanguageOracle& oracle, std::size_t n) {
  if (n < 1) throw std::invalid_argument("rauzy_graph needs n >= 1");
  const auto& vertices = oracle.words(n);
  const auto& edges_words = oracle.words(n + 1);
  std::map<Word, Vertex> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], static_cast<Vertex>(i));
  std::vector<Edge> edges;
  edges.reserve(edges_words.size());
  for (const Word& w : edges_words) {
    auto src = index.find(Word(w.begin(), w.end() - 1));
    auto dst = index.find(Word(w.begin() + 1, w.end()));
    if (src == index.end() || dst == index.end())
      throw std::invalid_argument("language oracle is not factorial at length " + std::to_string(n + 1));
    edges.push_back({src->second, dst->second, w[0]});
  }
  return LabeledGraph(oracle.alphabet(), static_cast<Vertex>(vertices.size()), std::move(edges));
}

SoficShift markov_approximation(const LanguageOracle& oracle, std::size_t n) {
  return SoficShift(rauzy_graph(oracle, n));
}

ChainProbe chain_mixing_probe(const LanguageOracle& oracle, std::size_t n_max) {
  ChainProbe probe;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const SoficShift s(rauzy_graph(oracle, n));
    ChainProbeRow row;
    row.n = n;
    row.vertices = s.presentation().vertex_count();
    row.edges = s.presentation().edges().size();
    row.strongly_connected = s.strongly_connected();
    row.period = s.period();
    probe.rows.push_back(row);
  }
  for (std::size_t i = probe.rows.size(); i-- > 0;) {
    if (!probe.rows[i].mixing()) break;
    probe.mixing_from = probe.rows[i].n;
  }
  return probe;
}

nlohmann::ordered_json to_json(const ChainProbeRow& row) {
  nlohmann::ordered_json j;
  j["n"] = row.n;
  j["vertices"] = row.vertices;
  j["edges"] = row.edges;
  j["strongly_connected"] = row.strongly_connected;
  j["period"] = row.period;
  return j;
}

nlohmann::ordered_json to_json(const ChainProbe& probe) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : probe.rows) rows.push_back(to_json(r));
  j["rows"] = std::move(rows);
  j["chain_mixing_up_to_horizon"] = probe.chain_mixing_up_to_horizon();
  if (probe.mixing_from)
    j["mixing_from"] = *probe.mixing_from;
  else
    j["mixing_from"] = nullptr;
  return j;
}

}  // namespace sdyn
