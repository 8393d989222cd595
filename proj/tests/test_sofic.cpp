#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/sofic.hpp"

using namespace sdyn;

namespace {

const Alphabet kBin(2);

Word w(const char* s) { return parse_word(s, kBin); }

std::set<Word> as_set(const std::vector<Word>& v) { return {v.begin(), v.end()}; }

LabeledGraph two_cycle() { return LabeledGraph(kBin, 2, {{0, 1, 0}, {1, 0, 1}}); }

LabeledGraph random_graph(std::mt19937_64& rng, Vertex max_vertices) {
  const Vertex n = std::uniform_int_distribution<Vertex>(1, max_vertices)(rng);
  std::vector<Edge> edges;
  const int m = std::uniform_int_distribution<int>(int(n), int(3 * n))(rng);
  for (int e = 0; e < m; ++e)
    edges.push_back({std::uniform_int_distribution<Vertex>(0, n - 1)(rng),
                     std::uniform_int_distribution<Vertex>(0, n - 1)(rng),
                     static_cast<Symbol>(rng() % 2)});
  return LabeledGraph(kBin, n, edges);
}

// Cycle lengths up to max_len present in g, by boolean matrix powers.
std::vector<std::size_t> cycle_lengths(const LabeledGraph& g, std::size_t max_len) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n)), pw;
  for (const auto& e : g.edges()) adj[e.src][e.dst] = true;
  pw = adj;
  std::vector<std::size_t> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    bool closed = false;
    for (std::size_t v = 0; v < n; ++v) closed = closed || pw[v][v];
    if (closed) out.push_back(len);
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (pw[a][b])
          for (std::size_t c = 0; c < n; ++c)
            if (adj[b][c]) next[a][c] = true;
    pw = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(LabeledGraph(kBin, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(LabeledGraph(kBin, 1, {{0, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(LabeledGraph(kBin, 1, {{0, 0, 2}}), std::invalid_argument);
  const LabeledGraph g(kBin, 1, {{0, 0, 1}, {0, 0, 0}, {0, 0, 1}});
  CHECK(g.edges().size() == 2);
  CHECK(g.edges()[0].label == 0);
}

TEST_CASE("prune examples") {
  const LabeledGraph loop(kBin, 1, {{0, 0, 0}});
  CHECK(prune(loop) == loop);
  CHECK(prune(fixture::full_shift()) == fixture::full_shift());
  CHECK_THROWS_AS(prune(LabeledGraph(kBin, 2, {{0, 1, 0}})), EmptyShift);
  // A transient tail into a loop and a dead end out of it.
  const LabeledGraph tails(kBin, 4, {{0, 1, 1}, {1, 1, 0}, {1, 2, 1}, {3, 0, 0}});
  const LabeledGraph p = prune(tails);
  CHECK(p.vertex_count() == 1);
  CHECK(p.edges().size() == 1);
}

TEST_CASE("strong connectivity and period examples") {
  CHECK(is_strongly_connected(two_cycle()));
  CHECK_FALSE(is_strongly_connected(LabeledGraph(kBin, 2, {{0, 0, 0}, {1, 1, 1}})));
  CHECK(period(LabeledGraph(kBin, 1, {{0, 0, 0}})) == 1);
  CHECK(period(fixture::safe_cycle(8)) == 8);
  CHECK(period(fixture::safe_cycle(2)) == 2);
  CHECK(period(fixture::golden_mean()) == 1);
  CHECK_THROWS_AS(period(LabeledGraph(kBin, 2, {{0, 0, 0}, {1, 1, 1}})), std::invalid_argument);
  const auto comps = component_periods(LabeledGraph(kBin, 3, {{0, 0, 0}, {1, 2, 1}, {2, 1, 1}}));
  REQUIRE(comps.size() == 2);
  std::multiset<std::uint64_t> periods{comps[0].period, comps[1].period};
  CHECK(periods == std::multiset<std::uint64_t>{1, 2});
}

TEST_CASE("safe symbols examples") {
  CHECK(safe_symbols(fixture::full_shift(3)) == std::vector<Symbol>{0, 1, 2});
  CHECK(safe_symbols(fixture::even_shift()).empty());
  CHECK(safe_symbols(fixture::safe_cycle(5)) == std::vector<Symbol>{0, 1});
}

TEST_CASE("coupling without a common safe symbol is disconnected") {
  const LabeledGraph a = fixture::even_shift(), b = fixture::odd_shift();
  CHECK(is_mixing_presentation(prune(a)));
  CHECK(is_mixing_presentation(prune(b)));
  CHECK(safe_symbols(a).empty());
  const std::vector<LabeledGraph> gs{a, b};
  const LabeledGraph c = couple(gs);
  CHECK_FALSE(is_strongly_connected(c));
  CHECK_FALSE(is_mixing_presentation(c));
}

TEST_CASE("coupling of periods 8 and 2 with safe symbol 0 is disconnected") {
  const std::vector<LabeledGraph> gs{fixture::safe_cycle(8), fixture::safe_cycle(2)};
  CHECK(safe_symbols(gs[0]) == std::vector<Symbol>{0, 1});
  const LabeledGraph c = couple(gs);
  CHECK_FALSE(is_strongly_connected(c));
  CHECK(strongly_connected_components(c).count == 2);
}

TEST_CASE("couple of one graph is prune") {
  const LabeledGraph g(kBin, 3, {{0, 1, 0}, {1, 0, 1}, {2, 0, 1}});
  const std::vector<LabeledGraph> gs{g};
  CHECK(couple(gs) == prune(g));
}

TEST_CASE("coupling caps and empty intersections") {
  const std::vector<LabeledGraph> gs{fixture::safe_cycle(7), fixture::safe_cycle(11)};
  CHECK_THROWS_AS(couple(gs, 50), CapExceeded);
  const std::vector<LabeledGraph> disjoint{LabeledGraph(kBin, 1, {{0, 0, 0}}), LabeledGraph(kBin, 1, {{0, 0, 1}})};
  CHECK_THROWS_AS(couple(disjoint), EmptyShift);
}

TEST_CASE("couplings of safe graphs with coprime periods are strongly connected") {
  std::mt19937_64 rng(2024);
  const std::vector<std::vector<Vertex>> period_sets{{1, 2}, {2, 3}, {3, 5}, {2, 5}, {1, 7}, {2, 3, 5}, {3, 4}, {4, 5, 7}};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& ps = period_sets[trial % period_sets.size()];
    std::vector<LabeledGraph> gs;
    for (Vertex p : ps) {
      gs.push_back(fixture::random_safe_graph(rng, p));
      REQUIRE(period(gs.back()) == p);
      REQUIRE(!safe_symbols(gs.back()).empty());
    }
    const LabeledGraph c = couple(gs);
    CHECK(is_strongly_connected(c));
  }
}

TEST_CASE("coupling language is the intersection of languages when a safe symbol is shared") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<LabeledGraph> gs{fixture::random_safe_graph(rng, 1 + trial % 3), fixture::random_safe_graph(rng, 2 + trial % 2)};
    const LabeledGraph c = couple(gs);
    for (std::size_t n = 0; n <= 8; ++n) {
      std::set<Word> expect;
      const auto a = oracle::path_labels(gs[0], n), b = oracle::path_labels(gs[1], n);
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(expect, expect.end()));
      CHECK(as_set(language(c, n)) == expect);
    }
  }
}

TEST_CASE("coupling language matches a brute-force product on random graphs") {
  std::mt19937_64 rng(78);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<LabeledGraph> gs{random_graph(rng, 4), random_graph(rng, 4)};
    std::vector<Edge> prod;
    const Vertex n1 = gs[1].vertex_count();
    for (const Edge& e : gs[0].edges())
      for (const Edge& f : gs[1].edges())
        if (e.label == f.label) prod.push_back({e.src * n1 + f.src, e.dst * n1 + f.dst, e.label});
    const LabeledGraph product(kBin, gs[0].vertex_count() * n1, prod);
    std::optional<LabeledGraph> c;
    try {
      c = couple(gs);
    } catch (const EmptyShift&) {
      CHECK(oracle::path_labels(product, 1).empty());
      continue;
    }
    ++checked;
    for (std::size_t n = 0; n <= 8; ++n) {
      const auto got = as_set(language(*c, n));
      CHECK(got == oracle::path_labels(product, n));
      const auto a = oracle::path_labels(gs[0], n), b = oracle::path_labels(gs[1], n);
      for (const Word& x : got) CHECK((a.count(x) && b.count(x)));
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("language examples") {
  CHECK(language(fixture::full_shift(), 3).size() == 8);
  CHECK(language(fixture::golden_mean(), 3) == std::vector<Word>{w("000"), w("001"), w("010"), w("100"), w("101")});
  CHECK(language(two_cycle(), 2) == std::vector<Word>{w("01"), w("10")});
  CHECK(language(fixture::golden_mean(), 0) == std::vector<Word>{Word{}});
  CHECK_THROWS_AS(language(fixture::full_shift(), 12, 100), CapExceeded);
  try {
    language(fixture::full_shift(), 12, 100);
  } catch (const CapExceeded& e) {
    CHECK(e.lower_bound() >= 101);
  }
}

TEST_CASE("language agrees with brute force on golden mean and random graphs") {
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(as_set(language(fixture::golden_mean(), n)) == oracle::sft_language(2, {w("11")}, n));
    CHECK(language_size(fixture::even_shift(), n) == oracle::path_labels(fixture::even_shift(), n).size());
  }
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const LabeledGraph g = random_graph(rng, 5);
    std::optional<LabeledGraph> p;
    try {
      p = prune(g);
    } catch (const EmptyShift&) {
      continue;
    }
    for (std::size_t n = 0; n <= 7; ++n) CHECK(as_set(language(*p, n)) == oracle::path_labels(g, n));
  }
}

TEST_CASE("language is factorial and extendable") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    std::optional<LabeledGraph> p;
    try {
      p = prune(random_graph(rng, 5));
    } catch (const EmptyShift&) {
      continue;
    }
    for (std::size_t j = 1; j <= 7; ++j) {
      const auto shorter = as_set(language(*p, j - 1));
      const auto longer = language(*p, j + 1);
      for (const Word& x : language(*p, j)) {
        CHECK(shorter.count(Word(x.begin(), x.end() - 1)));
        CHECK(shorter.count(Word(x.begin() + 1, x.end())));
        bool extends = false;
        for (const Word& y : longer) extends = extends || std::equal(x.begin(), x.end(), y.begin());
        CHECK(extends);
      }
    }
  }
}

TEST_CASE("language sizes are submultiplicative") {
  for (const LabeledGraph& g : {fixture::golden_mean(), fixture::even_shift(), fixture::odd_shift()})
    for (std::size_t n = 1; n <= 7; ++n)
      for (std::size_t m = 1; m <= 7; ++m) CHECK(language_size(g, n + m) <= language_size(g, n) * language_size(g, m));
}

TEST_CASE("period divides every cycle length") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::optional<LabeledGraph> p;
    try {
      p = prune(random_graph(rng, 6));
    } catch (const EmptyShift&) {
      continue;
    }
    if (!is_strongly_connected(*p)) continue;
    ++checked;
    const auto d = period(*p);
    std::uint64_t g = 0;
    for (std::size_t len : cycle_lengths(*p, 12)) {
      CHECK(len % d == 0);
      g = std::gcd(g, std::uint64_t(len));
    }
    CHECK(g == d);
  }
  CHECK(checked > 10);
}

TEST_CASE("mixing presentation examples") {
  CHECK(is_mixing_presentation(fixture::full_shift()));
  CHECK_FALSE(is_mixing_presentation(two_cycle()));
  const SoficShift s(fixture::golden_mean());
  CHECK(s.mixing_presentation());
  CHECK(s.period() == 1);
}

TEST_CASE("entropy bounds") {
  const auto full = entropy_bounds(fixture::full_shift(), 10);
  CHECK(std::abs(full.upper - std::log(2.0)) < 1e-12);
  CHECK(std::abs(full.lower - std::log(2.0)) < 1e-12);
  const auto gm = entropy_bounds(fixture::golden_mean(), 16);
  const double phi = std::log((1 + std::sqrt(5.0)) / 2);
  CHECK(std::abs(gm.upper - phi) < 0.05);
  CHECK(gm.lower <= phi + 1e-12);
  CHECK(gm.lower > 0);
  const auto orbit = entropy_bounds(two_cycle(), 12);
  CHECK(orbit.lower == 0);
  CHECK(orbit.upper < 0.1);
}

TEST_CASE("accepts and random path words") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Word x = random_path_word(fixture::even_shift(), 40, rng);
    CHECK(accepts(fixture::even_shift(), x));
  }
  CHECK_FALSE(accepts(fixture::golden_mean(), w("0110")));
  CHECK(accepts(fixture::golden_mean(), w("01010")));
}

TEST_CASE("coupling acceptance matches the materialized product") {
  const Coupling c({fixture::safe_cycle(3), fixture::safe_cycle(4)});
  CHECK(c.factorwise());
  CHECK(c.product_size() == 12);
  const LabeledGraph m = c.materialize();
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const Word x = oracle::random_word(rng, 2, 10);
    CHECK(c.accepts(x) == accepts(m, x));
  }
}

TEST_CASE("language gap witnesses") {
  const auto gap = find_language_gap(fixture::full_shift(), fixture::golden_mean(), 10);
  REQUIRE(gap.has_value());
  CHECK(*gap == w("11"));
  CHECK_FALSE(find_language_gap(fixture::golden_mean(), fixture::full_shift(), 10).has_value());
  const auto even_gap = find_language_gap(fixture::golden_mean(), fixture::even_shift(), 10);
  REQUIRE(even_gap.has_value());
  CHECK(accepts(fixture::golden_mean(), *even_gap));
  CHECK_FALSE(accepts(fixture::even_shift(), *even_gap));
}

TEST_CASE("JSON and DOT round trips") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    const LabeledGraph g = random_graph(rng, 6);
    CHECK(graph_from_json(nlohmann::json::parse(graph_to_json(g).dump())) == g);
    CHECK(graph_from_text(graph_to_text(g)) == g);
    CHECK(graph_to_text(graph_from_text(graph_to_text(g))) == graph_to_text(g));
    CHECK(graph_from_dot(graph_to_dot(g)) == g);
    CHECK(graph_to_dot(graph_from_dot(graph_to_dot(g))) == graph_to_dot(g));
  }
}

TEST_CASE("malformed graph input is reported with its location") {
  try {
    graph_from_text("{\"alphabet_size\": 2, \"vertices\": 1, \"edges\": [");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  try {
    graph_from_text(R"({"alphabet_size": 2, "vertices": 1, "edges": [{"src": 0, "dst": 0}]})");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("edges[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(graph_from_dot("digraph G {\n  v0;\n  v0 -> v0 [label=\"0\"];\n}\n"), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_dot("digraph G {\n  alphabet_size=2;\n  v1;\n}\n"), std::invalid_argument);
}
