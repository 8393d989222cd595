#include "symdyn/tower.hpp"

#include <stdexcept>

#include "symdyn/measures.hpp"

namespace sdyn {

std::vector<Word> canonical_enumeration(const Alphabet& alphabet, std::size_t count) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  while (out.size() < count) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (int a = 0; a < alphabet.size(); ++a) {
        Word x = w;
        x.push_back(static_cast<Symbol>(a));
        next.push_back(std::move(x));
      }
    for (const Word& w : next) {
      if (out.size() == count) break;
      out.push_back(w);
    }
    layer.swap(next);
  }
  return out;
}

TowerParams geometric_tower_params(std::size_t depth, const Rational& ratio, const Alphabet& alphabet) {
  TowerParams p;
  p.alphabet = alphabet;
  p.words = canonical_enumeration(alphabet, depth + 1);
  Rational d = 1;
  for (std::size_t k = 0; k < depth; ++k) {
    d *= ratio;
    p.deltas.push_back(d);
  }
  return p;
}

Tower tower_build(const TowerParams& params, std::size_t depth, std::uint64_t length_cap) {
  if (params.words.size() < depth + 1) throw std::invalid_argument("tower needs words W_0..W_K");
  if (params.deltas.size() < depth) throw std::invalid_argument("tower needs deltas delta_1..delta_K");
  Rational sum = 0;
  for (std::size_t k = 0; k < depth; ++k) {
    if (params.deltas[k] <= 0) throw std::invalid_argument("tower deltas must be positive");
    sum += params.deltas[k];
  }
  if (sum >= make_rational(1, 2)) throw std::invalid_argument("tower deltas must sum to less than 1/2");
  for (std::size_t k = 0; k <= depth; ++k) {
    if (params.words[k].empty()) throw std::invalid_argument("tower words must be nonempty");
    check_word(params.words[k], params.alphabet);
  }
  if (params.alphabet.size() < 2) throw std::invalid_argument("tower padding symbol 1 is not in the alphabet");

  Tower t;
  t.params = params;
  t.levels.push_back({params.words[0], 0, 0});
  for (std::size_t k = 0; k < depth; ++k) {
    const Word& vk = t.levels.back().v;
    const Word& w = params.words[k + 1];
    const std::uint64_t vlen = vk.size(), wlen = w.size();
    const std::uint64_t b = (vlen - wlen % vlen) % vlen;
    // (wlen + b) / (a vlen + wlen + b) < delta  <=>  a > ((wlen + b)/delta - wlen - b) / vlen
    const Rational tail(static_cast<unsigned long>(wlen + b));
    const BigInt bound = floor((tail / params.deltas[k] - tail) / static_cast<unsigned long>(vlen));
    BigInt a_big = bound + 1;
    if (a_big < 1) a_big = 1;
    std::int64_t a = 0;
    if (!fits_int64(a_big, a) || static_cast<std::uint64_t>(a) > length_cap / vlen ||
        static_cast<std::uint64_t>(a) * vlen + wlen + b > length_cap) {
      t.truncated = true;
      break;
    }
    TowerLevel level;
    level.a = static_cast<std::uint64_t>(a);
    level.b = b;
    level.v.reserve(level.a * vlen + wlen + b);
    for (std::uint64_t i = 0; i < level.a; ++i) level.v.insert(level.v.end(), vk.begin(), vk.end());
    level.v.insert(level.v.end(), w.begin(), w.end());
    level.v.insert(level.v.end(), b, Symbol{1});
    t.levels.push_back(std::move(level));
  }
  return t;
}

bool TowerReport::passed() const { return !first_failure().has_value(); }

std::optional<TowerCheck> TowerReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return c;
  return std::nullopt;
}

TowerReport tower_verify(const Tower& tower) {
  TowerReport r;
  const auto& L = tower.levels;
  const auto& P = tower.params;
  const std::size_t K = L.size() - 1;
  for (std::size_t k = 0; k < K; ++k) {
    TowerCheck c;
    c.kind = 'a';
    c.k = k;
    c.n = k + 1;
    c.lhs = dbar_up(UPPoint({}, L[k].v), UPPoint({}, L[k + 1].v));
    c.rhs = P.deltas[k];
    c.ok = c.lhs <= c.rhs;
    r.checks.push_back(std::move(c));
  }
  for (std::size_t n = 1; n <= K; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      TowerCheck c;
      c.kind = 'b';
      c.k = k;
      c.n = n;
      const Word& w = P.words[k];
      c.lhs = from_periodic(L[n].v, static_cast<int>(w.size()), P.alphabet)[w];
      c.rhs = make_rational(1, static_cast<long>(L[k].v.size()));
      for (std::size_t j = k + 1; j <= n; ++j) c.rhs *= 1 - P.deltas[j - 1];
      c.ok = c.lhs >= c.rhs;
      r.checks.push_back(std::move(c));
    }
  }
  Rational partial = 0;
  for (std::size_t k = 0; k < K; ++k) {
    partial += P.deltas[k];
    TowerCheck c;
    c.kind = 'c';
    c.k = k + 1;
    c.n = k + 1;
    c.lhs = partial;
    c.rhs = make_rational(1, 2);
    c.ok = c.lhs < c.rhs;
    r.checks.push_back(std::move(c));
  }
  return r;
}

nlohmann::ordered_json to_json(const Tower& tower, bool include_words) {
  nlohmann::ordered_json j;
  j["depth"] = tower.levels.size() - 1;
  j["truncated"] = tower.truncated;
  auto levels = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < tower.levels.size(); ++k) {
    const auto& l = tower.levels[k];
    nlohmann::ordered_json e;
    e["k"] = k;
    e["w"] = format_word(tower.params.words[k], tower.params.alphabet);
    if (k > 0) e["delta"] = to_string(tower.params.deltas[k - 1]);
    e["length"] = l.v.size();
    e["a"] = l.a;
    e["b"] = l.b;
    if (k > 0) e["c"] = l.v.size() / tower.levels[k - 1].v.size();
    if (include_words) e["v"] = format_word(l.v, tower.params.alphabet);
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  return j;
}

nlohmann::ordered_json to_json(const TowerReport& report) {
  nlohmann::ordered_json j;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["check"] = std::string(1, c.kind);
    e["k"] = c.k;
    e["n"] = c.n;
    e["lhs"] = to_string(c.lhs);
    e["rhs"] = to_string(c.rhs);
    e["ok"] = c.ok;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["passed"] = report.passed();
  return j;
}

}  // namespace sdyn
