#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/markov.hpp"
#include "symdyn/proximal.hpp"

using namespace sdyn;

namespace {

const Alphabet kBin(2);

Word w(const char* s) { return parse_word(s, kBin); }

std::set<Word> lang_set(const LabeledGraph& g, std::size_t n) {
  const auto v = language(g, n);
  return {v.begin(), v.end()};
}

std::set<Word> oracle_set(const LanguageOracle& o, std::size_t n) {
  const auto& v = o.words(n);
  return {v.begin(), v.end()};
}

LabeledGraph two_cycle() { return LabeledGraph(kBin, 2, {{0, 1, 0}, {1, 0, 1}}); }

}  // namespace

TEST_CASE("language oracles") {
  const SftOracle gm(kBin, {w("11")});
  CHECK(gm.words(0) == std::vector<Word>{Word{}});
  CHECK(gm.words(3).size() == 5);
  for (std::size_t n = 0; n <= 10; ++n) CHECK(oracle_set(gm, n) == oracle::sft_language(2, {w("11")}, n));
  const SoficOracle even(fixture::even_shift());
  for (std::size_t n = 0; n <= 10; ++n) CHECK(oracle_set(even, n) == oracle::path_labels(fixture::even_shift(), n));
  CHECK_THROWS_AS(SftOracle(kBin, {w("0"), w("1")}), EmptyShift);
}

TEST_CASE("prefix oracles refuse untrusted lengths") {
  Word x;
  for (int i = 0; i < 50; ++i) x.insert(x.end(), {0, 0, 1});
  const PrefixOracle o(kBin, x, 6);
  CHECK(o.max_trusted_length() == 6);
  CHECK(o.words(3) == std::vector<Word>{w("001"), w("010"), w("100")});
  CHECK_THROWS_AS(o.words(7), std::out_of_range);
  CHECK_THROWS_AS(PrefixOracle(kBin, w("0101"), 4), std::invalid_argument);
}

TEST_CASE("rauzy graph examples") {
  const SoficOracle full(fixture::full_shift());
  const LabeledGraph r1 = rauzy_graph(full, 1);
  CHECK(r1.vertex_count() == 2);
  CHECK(r1.edges().size() == 4);

  const SftOracle gm(kBin, {w("11")});
  const LabeledGraph g1 = rauzy_graph(gm, 1);
  CHECK(g1.vertex_count() == 2);
  // Vertices are L_1 in sorted order: 0 -> "0", 1 -> "1".
  CHECK(g1.edges() == std::vector<Edge>{{0, 0, 0}, {0, 1, 0}, {1, 0, 1}});

  const SoficOracle fixed(LabeledGraph(kBin, 1, {{0, 0, 0}}));
  const LabeledGraph f2 = rauzy_graph(fixed, 2);
  CHECK(f2.vertex_count() == 1);
  CHECK(f2.edges() == std::vector<Edge>{{0, 0, 0}});
  CHECK_THROWS_AS(rauzy_graph(fixed, 0), std::invalid_argument);
}

TEST_CASE("Markov approximations agree with the shift up to length n+1") {
  const SftOracle gm(kBin, {w("11")});
  const SoficOracle even(fixture::even_shift());
  const ProximalParams pp;
  const SoficOracle prox1(proximal_intersection(pp, 1).presentation());
  const SoficOracle prox2(proximal_intersection(pp, 2).presentation());
  for (const LanguageOracle* o : std::vector<const LanguageOracle*>{&gm, &even, &prox1, &prox2})
    for (std::size_t n = 1; n <= 8; ++n) {
      const SoficShift xm = markov_approximation(*o, n);
      for (std::size_t j = 1; j <= n + 1; ++j) REQUIRE(lang_set(xm.presentation(), j) == oracle_set(*o, j));
    }
}

TEST_CASE("SFTs are their own approximations") {
  const SftOracle gm(kBin, {w("11")});
  const SftOracle two(kBin, {w("111"), w("010")});
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t j = 1; j <= 10; ++j) CHECK(lang_set(markov_approximation(gm, n).presentation(), j) == oracle_set(gm, j));
    if (n >= 2)
      for (std::size_t j = 1; j <= 10; ++j)
        CHECK(lang_set(markov_approximation(two, n).presentation(), j) == oracle_set(two, j));
  }
}

TEST_CASE("even shift approximation of order 1 is strictly larger at length 3") {
  const SoficOracle even(fixture::even_shift());
  const auto approx = lang_set(markov_approximation(even, 1).presentation(), 3);
  const auto exact = oracle_set(even, 3);
  CHECK(std::includes(approx.begin(), approx.end(), exact.begin(), exact.end()));
  CHECK(approx.size() > exact.size());
  CHECK(approx.count(w("010")));
  CHECK_FALSE(exact.count(w("010")));
}

TEST_CASE("approximations decrease and are idempotent") {
  const SoficOracle even(fixture::even_shift());
  for (std::size_t n = 1; n <= 6; ++n) {
    const SoficShift a = markov_approximation(even, n);
    const SoficShift b = markov_approximation(even, n + 1);
    const SoficOracle again(a.presentation());
    const SoficShift c = markov_approximation(again, n);
    for (std::size_t j = 1; j <= 10; ++j) {
      const auto la = lang_set(a.presentation(), j), lb = lang_set(b.presentation(), j);
      CHECK(std::includes(la.begin(), la.end(), lb.begin(), lb.end()));
      CHECK(lang_set(c.presentation(), j) == la);
    }
  }
}

TEST_CASE("chain mixing probe") {
  const auto full = chain_mixing_probe(SoficOracle(fixture::full_shift()), 6);
  CHECK(full.mixing_from == 1);
  const auto cyc = chain_mixing_probe(SoficOracle(two_cycle()), 6);
  CHECK_FALSE(cyc.chain_mixing_up_to_horizon());
  for (const auto& row : cyc.rows) CHECK(row.period == 2);
  const auto gm = chain_mixing_probe(SftOracle(kBin, {w("11")}), 8);
  CHECK(gm.rows.size() == 8);
  CHECK(gm.mixing_from == 1);
  for (const auto& row : gm.rows) CHECK(row.mixing());
  const auto j = to_json(gm.rows.front());
  CHECK(j.dump() == R"({"n":1,"vertices":2,"edges":3,"strongly_connected":true,"period":1})");
}
