#include "symdyn/measures.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "symdyn/errors.hpp"
#include "symdyn/transport.hpp"

namespace sdyn {

BlockDistribution::BlockDistribution(Alphabet alphabet, int level, std::map<Word, Rational> probs)
    : alphabet_(alphabet), level_(level) {
  if (level < 1) throw std::invalid_argument("block distribution level must be >= 1");
  Rational total = 0;
  for (auto& [w, p] : probs) {
    if (static_cast<int>(w.size()) != level)
      throw std::invalid_argument("block distribution word of length " + std::to_string(w.size()) +
                                  " at level " + std::to_string(level));
    check_word(w, alphabet_);
    if (p < 0) throw std::invalid_argument("block distribution has a negative probability");
    total += p;
    if (p != 0) probs_.emplace(w, p);
  }
  if (total != 1) throw std::invalid_argument("block distribution sums to " + to_string(total) + ", not 1");
  std::map<Word, Rational> pre, suf;
  for (const auto& [w, p] : probs_) {
    pre[Word(w.begin(), w.end() - 1)] += p;
    suf[Word(w.begin() + 1, w.end())] += p;
  }
  for (const auto* m : {&pre, &suf})
    for (const auto& [w, p] : *m) {
      const auto& other = (m == &pre) ? suf : pre;
      auto it = other.find(w);
      if (it == other.end() || it->second != p)
        throw std::invalid_argument("block distribution is not shift-consistent at word '" +
                                    format_word(w, alphabet_) + "'");
    }
}

Rational BlockDistribution::operator[](const Word& w) const {
  if (static_cast<int>(w.size()) > level_)
    throw std::invalid_argument("cylinder longer than the distribution level");
  if (w.empty()) return 1;
  Rational sum = 0;
  for (auto it = probs_.lower_bound(w); it != probs_.end(); ++it) {
    if (!std::equal(w.begin(), w.end(), it->first.begin())) break;
    sum += it->second;
  }
  return sum;
}

bool Joining::has_marginals(const BlockDistribution& mu, const BlockDistribution& nu) const {
  if (mu.level() != level || nu.level() != level) return false;
  std::map<Word, Rational> rows, cols;
  for (const auto& [key, m] : entries) {
    if (m < 0) return false;
    rows[key.first] += m;
    cols[key.second] += m;
  }
  auto same = [](std::map<Word, Rational> a, const std::map<Word, Rational>& b) {
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a == b;
  };
  return same(rows, mu.probabilities()) && same(cols, nu.probabilities());
}

Rational Joining::expected_distance() const {
  Rational sum = 0;
  for (const auto& [key, m] : entries) sum += m * hamming_normalized(key.first, key.second);
  return sum;
}

BlockDistribution from_periodic(const Word& v, int k, const Alphabet& alphabet) {
  if (v.empty()) throw std::invalid_argument("from_periodic needs a nonempty period");
  if (k < 1) throw std::invalid_argument("from_periodic needs k >= 1");
  check_word(v, alphabet);
  std::map<Word, Rational> probs;
  const Rational unit = make_rational(1, static_cast<long>(v.size()));
  Word w(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (int j = 0; j < k; ++j) w[j] = v[(i + j) % v.size()];
    probs[w] += unit;
  }
  return BlockDistribution(alphabet, k, std::move(probs));
}

BlockDistribution empirical_distribution(const Word& b, int k, const Alphabet& alphabet) {
  return from_periodic(b, k, alphabet);
}

BlockDistribution marginalize(const BlockDistribution& mu, int j) {
  if (j < 1 || j > mu.level())
    throw std::invalid_argument("marginalize: level " + std::to_string(j) + " outside [1, " +
                                std::to_string(mu.level()) + "]");
  if (j == mu.level()) return mu;
  std::map<Word, Rational> probs;
  for (const auto& [w, p] : mu.probabilities()) probs[Word(w.begin(), w.begin() + j)] += p;
  return BlockDistribution(mu.alphabet(), j, std::move(probs));
}

BlockDistribution at_level(const BlockDistribution& mu, int n) {
  if (n > mu.level())
    throw std::invalid_argument("distribution is only available up to level " + std::to_string(mu.level()) +
                                ", requested " + std::to_string(n));
  return marginalize(mu, n);
}

namespace {

struct Support {
  std::vector<Word> words;
  std::vector<Rational> mass;
};

Support support_of(const BlockDistribution& mu) {
  Support s;
  for (const auto& [w, p] : mu.probabilities()) {
    s.words.push_back(w);
    s.mass.push_back(p);
  }
  return s;
}

Joining to_joining(const TransportPlan& plan, const Support& a, const Support& b, int n) {
  Joining j;
  j.level = n;
  for (const auto& e : plan.entries) j.entries[{a.words[e.source], b.words[e.sink]}] = e.mass;
  return j;
}

void check_same_alphabet(const BlockDistribution& mu, const BlockDistribution& nu) {
  if (!(mu.alphabet() == nu.alphabet())) throw std::invalid_argument("distributions use different alphabets");
}

}  // namespace

TransportResult transport_dbar_n(const BlockDistribution& mu, const BlockDistribution& nu, int n) {
  check_same_alphabet(mu, nu);
  if (n < 1) throw std::invalid_argument("transport needs n >= 1");
  const Support a = support_of(at_level(mu, n)), b = support_of(at_level(nu, n));
  const TransportPlan plan = solve_transport(a.mass, b.mass, [&](std::size_t i, std::size_t j) {
    return static_cast<std::int64_t>(hamming_count(a.words[i], b.words[j]));
  });
  TransportResult out;
  out.value = plan.cost / n;
  out.witness = to_joining(plan, a, b, n);
  return out;
}

AlphaJoiningResult alpha_good_joining(const BlockDistribution& mu, const BlockDistribution& nu, int n,
                                      const Rational& alpha) {
  check_same_alphabet(mu, nu);
  if (n < 1) throw std::invalid_argument("alpha_good_joining needs n >= 1");
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha must lie in [0, 1]");
  const Support a = support_of(at_level(mu, n)), b = support_of(at_level(nu, n));
  const TransportPlan plan = solve_transport(a.mass, b.mass, [&](std::size_t i, std::size_t j) {
    return std::int64_t{hamming_normalized(a.words[i], b.words[j]) > alpha};
  });
  AlphaJoiningResult out;
  out.min_outside_mass = plan.cost;
  out.feasible = plan.cost <= alpha;
  if (out.feasible) out.witness = to_joining(plan, a, b, n);
  return out;
}

Rational dstar_n(const BlockDistribution& mu, const BlockDistribution& nu, int n) {
  // Feasibility is monotone in alpha, so bisect over the grid k/n.
  int lo = 0, hi = n;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (alpha_good_joining(mu, nu, n, make_rational(mid, n)).feasible)
      hi = mid;
    else
      lo = mid + 1;
  }
  return make_rational(lo, n);
}

Rational hausdorff_dbar_n(const std::vector<BlockDistribution>& a, const std::vector<BlockDistribution>& b, int n) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_dbar_n needs nonempty sets");
  std::vector<std::vector<Rational>> d(a.size(), std::vector<Rational>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d[i][j] = transport_dbar_n(a[i], b[j], n).value;
  Rational result = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational best = d[i][0];
    for (std::size_t j = 1; j < b.size(); ++j) best = std::min(best, d[i][j]);
    result = std::max(result, best);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    Rational best = d[0][j];
    for (std::size_t i = 1; i < a.size(); ++i) best = std::min(best, d[i][j]);
    result = std::max(result, best);
  }
  return result;
}

namespace {

bool is_primitive(const Word& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < w.size() && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return false;
  }
  return true;
}

bool is_least_rotation(const Word& w) {
  Word r = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < w) return false;
  }
  return true;
}

}  // namespace

std::vector<Word> cycle_words(const LabeledGraph& g, std::size_t max_len, std::uint64_t cap) {
  std::set<Word> found;
  Word word;
  std::function<void(Vertex, Vertex, std::size_t)> dfs = [&](Vertex start, Vertex v, std::size_t len) {
    for (const Edge& e : g.out_edges(v)) {
      word.push_back(e.label);
      if (e.dst == start && is_primitive(word) && is_least_rotation(word)) {
        found.insert(word);
        if (found.size() > cap)
          throw CapExceeded("more than " + std::to_string(cap) + " cycle words", cap + 1);
      }
      if (len + 1 < max_len) dfs(start, e.dst, len + 1);
      word.pop_back();
    }
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) dfs(v, v, 0);
  std::vector<Word> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::vector<BlockDistribution> cycle_measures(const LabeledGraph& g, std::size_t max_len, int level,
                                              std::uint64_t cap) {
  std::vector<BlockDistribution> out;
  for (const Word& w : cycle_words(g, max_len, cap)) out.push_back(from_periodic(w, level, g.alphabet()));
  return out;
}

nlohmann::ordered_json distribution_to_json(const BlockDistribution& mu) {
  nlohmann::ordered_json j;
  j["level"] = mu.level();
  j["alphabet_size"] = mu.alphabet().size();
  auto probs = nlohmann::ordered_json::array();
  for (const auto& [w, p] : mu.probabilities()) {
    nlohmann::ordered_json e;
    e["word"] = format_word(w, mu.alphabet());
    e["num"] = to_string(BigInt(p.get_num()));
    e["den"] = to_string(BigInt(p.get_den()));
    probs.push_back(std::move(e));
  }
  j["probs"] = std::move(probs);
  return j;
}

BlockDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("probs"))
    throw std::invalid_argument("distribution JSON needs 'level' and 'probs'");
  const int level = j.at("level").get<int>();
  const Alphabet alphabet(j.value("alphabet_size", 2));
  std::map<Word, Rational> probs;
  const auto& arr = j.at("probs");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    const std::string where = "probs[" + std::to_string(i) + "]";
    if (!e.contains("word") || !e.contains("num") || !e.contains("den"))
      throw std::invalid_argument(where + ": needs 'word', 'num' and 'den'");
    auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    const Rational p = parse_rational(text(e.at("num")) + "/" + text(e.at("den")));
    probs[parse_word(e.at("word").get<std::string>(), alphabet)] += p;
  }
  return BlockDistribution(alphabet, level, std::move(probs));
}

nlohmann::ordered_json joining_to_json(const Joining& j, const Alphabet& alphabet) {
  nlohmann::ordered_json out;
  out["level"] = j.level;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, m] : j.entries) {
    nlohmann::ordered_json e;
    e["u"] = format_word(key.first, alphabet);
    e["w"] = format_word(key.second, alphabet);
    e["num"] = to_string(BigInt(m.get_num()));
    e["den"] = to_string(BigInt(m.get_den()));
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

}  // namespace sdyn
