#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/metrics.hpp"

using namespace sdyn;

namespace {

const Alphabet kBin(2);

Word w(const char* s) { return parse_word(s, kBin); }

LabeledGraph fixed_point(Symbol a) { return LabeledGraph(kBin, 1, {{0, 0, a}}); }

LabeledGraph random_graph(std::mt19937_64& rng, Vertex n, int m) {
  std::vector<Edge> edges;
  for (int e = 0; e < m; ++e)
    edges.push_back({std::uniform_int_distribution<Vertex>(0, n - 1)(rng),
                     std::uniform_int_distribution<Vertex>(0, n - 1)(rng), static_cast<Symbol>(rng() % 2)});
  return LabeledGraph(kBin, n, edges);
}

// max over x in L_n(X) of min over y in L_n(Y) of the normalized distance.
Rational one_side(const LabeledGraph& x, const LabeledGraph& y, std::size_t n) {
  const auto ys = oracle::path_labels(y, n);
  Rational sup = 0;
  for (const Word& a : oracle::path_labels(x, n)) {
    std::size_t best = n;
    for (const Word& b : ys) best = std::min(best, oracle::hamming(a, b));
    sup = std::max(sup, make_rational(long(best), long(n)));
  }
  return sup;
}

}  // namespace

TEST_CASE("hausdorff examples") {
  auto d = [](const UPPoint& a, const UPPoint& b) { return dbar_up(a, b); };
  const UPPoint zero = parse_point("|0", kBin), one = parse_point("|1", kBin);
  const std::vector<UPPoint> a{zero, one}, b{zero};
  CHECK(hausdorff(a, a, d) == 0);
  CHECK(hausdorff(std::vector<UPPoint>{zero}, std::vector<UPPoint>{one}, d) == 1);
  CHECK(hausdorff(a, b, d) == 1);
  CHECK_THROWS_AS(hausdorff(std::vector<UPPoint>{}, b, d), std::invalid_argument);
}

TEST_CASE("finite pseudometric sets") {
  const FinitePseudometricSet s({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  CHECK(s.satisfies_triangle_inequality());
  CHECK(s.hausdorff({0}, {2}) == 0);
  CHECK(s.hausdorff({0, 1}, {2}) == 1);
  const FinitePseudometricSet bad({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  CHECK_FALSE(bad.satisfies_triangle_inequality());
  CHECK_THROWS_AS(FinitePseudometricSet({{0, 1}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(FinitePseudometricSet({{1, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("hausdorff is zero exactly when each set is within distance zero of the other") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<UPPoint> a, b;
    const int na = 1 + int(rng() % 3), nb = 1 + int(rng() % 3);
    for (int i = 0; i < na; ++i) a.push_back(oracle::random_point(rng, 2, 2, 2));
    for (int i = 0; i < nb; ++i) b.push_back(oracle::random_point(rng, 2, 2, 2));
    auto d = [](const UPPoint& x, const UPPoint& y) { return dbar_up(x, y); };
    bool covered = true;
    for (const auto& x : a) {
      bool hit = false;
      for (const auto& y : b) hit = hit || dbar_up(x, y) == 0;
      covered = covered && hit;
    }
    for (const auto& y : b) {
      bool hit = false;
      for (const auto& x : a) hit = hit || dbar_up(x, y) == 0;
      covered = covered && hit;
    }
    CHECK((hausdorff(a, b, d) == 0) == covered);
  }
}

TEST_CASE("best_trace examples") {
  const auto in = best_trace(fixture::golden_mean(), w("10100"));
  CHECK(in.cost == 0);
  CHECK(in.witness == w("10100"));
  CHECK(best_trace(fixed_point(0), w("1111")).cost == 1);
  CHECK(best_trace(fixed_point(0), w("1111")).witness == w("0000"));
}

TEST_CASE("best_trace on 1^n in the golden mean shift") {
  for (std::size_t n = 1; n <= 14; ++n) {
    const Word target(n, 1);
    const auto t = best_trace(fixture::golden_mean(), target);
    CHECK(t.cost == make_rational(long(n / 2), long(n)));
    CHECK(t.cost == oracle::min_trace(fixture::golden_mean(), target));
    CHECK(accepts(fixture::golden_mean(), t.witness));
    CHECK(hamming_count(t.witness, target) == t.mismatches);
  }
}

TEST_CASE("best_trace matches brute force and picks the least witness") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::optional<LabeledGraph> g;
    try {
      g = prune(random_graph(rng, 4, 7));
    } catch (const EmptyShift&) {
      continue;
    }
    ++checked;
    const Word target = oracle::random_word(rng, 2, 1 + rng() % 10);
    const auto t = best_trace(*g, target);
    CHECK(t.cost == oracle::min_trace(*g, target));
    Word least;
    bool found = false;
    for (const Word& c : oracle::path_labels(*g, target.size()))
      if (make_rational(long(oracle::hamming(c, target)), long(target.size())) == t.cost) {
        least = c;
        found = true;
        break;
      }
    REQUIRE(found);
    CHECK(t.witness == least);
  }
  CHECK(checked > 50);
}

TEST_CASE("best_trace cost does not increase when edges are added") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const LabeledGraph base = random_graph(rng, 4, 6);
    std::optional<LabeledGraph> pb;
    try {
      pb = prune(base);
    } catch (const EmptyShift&) {
      continue;
    }
    std::vector<Edge> more = base.edges();
    more.push_back({Vertex(rng() % 4), Vertex(rng() % 4), Symbol(rng() % 2)});
    const LabeledGraph bigger = prune(LabeledGraph(kBin, 4, more));
    const Word target = oracle::random_word(rng, 2, 12);
    CHECK(best_trace(bigger, target).cost <= best_trace(*pb, target).cost);
  }
}

TEST_CASE("best_trace on couplings agrees with the materialized product") {
  const Coupling c({fixture::safe_cycle(3), fixture::safe_cycle(5)});
  const LabeledGraph m = c.materialize();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    const Word target = oracle::random_word(rng, 2, 1 + rng() % 16);
    const auto a = best_trace(c, target), b = best_trace(m, target);
    CHECK(a.cost == b.cost);
    CHECK(a.witness == b.witness);
  }
  CHECK_THROWS_AS(best_trace(fixture::golden_mean(), Word{}), std::invalid_argument);
}

TEST_CASE("language Hausdorff-Hamming distance examples") {
  const SoficShift full(fixture::full_shift()), gm(fixture::golden_mean());
  const SoficShift z(fixed_point(0)), o(fixed_point(1));
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(lang_hausdorff_hamming_exact(gm, gm, n).value == 0);
    CHECK(lang_hausdorff_hamming_exact(z, o, n).value == 1);
    const auto d = lang_hausdorff_hamming_exact(full, gm, n);
    CHECK(d.value == make_rational(long(n / 2), long(n)));
    CHECK(d.y_side == 0);
    CHECK(d.x_side == one_side(fixture::full_shift(), fixture::golden_mean(), n));
  }
}

TEST_CASE("language distance inner minima agree with enumeration") {
  std::mt19937_64 rng(64);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::optional<LabeledGraph> a, b;
    try {
      a = prune(random_graph(rng, 3, 6));
      b = prune(random_graph(rng, 3, 6));
    } catch (const EmptyShift&) {
      continue;
    }
    ++checked;
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto d = lang_hausdorff_hamming_exact(SoficShift(*a), SoficShift(*b), n);
      CHECK(d.x_side == one_side(*a, *b, n));
      CHECK(d.y_side == one_side(*b, *a, n));
      CHECK(d.value == std::max(d.x_side, d.y_side));
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("sampled language distance is a reproducible lower bound") {
  const SoficShift full(fixture::full_shift()), gm(fixture::golden_mean());
  const auto exact = lang_hausdorff_hamming_exact(full, gm, 10);
  const auto s1 = lang_hausdorff_hamming_sampled(full, gm, 10, 200, 7);
  const auto s2 = lang_hausdorff_hamming_sampled(full, gm, 10, 200, 7);
  CHECK(s1.sampled);
  CHECK(s1.value <= exact.value);
  CHECK(s1.value == s2.value);
  CHECK(s1.witness == s2.witness);
  const auto j = to_json(s1, kBin);
  CHECK(j["mode"] == "sampled");
  CHECK(j["seed"] == 7);
  CHECK(to_json(exact, kBin)["mode"] == "exact");
  CHECK(to_json(exact, kBin)["value_num"] == "1");
  CHECK(to_json(exact, kBin)["value_den"] == "2");
}

TEST_CASE("language distance to a subshift has a zero inner side") {
  const SoficShift gm(fixture::golden_mean()), full(fixture::full_shift()), even(fixture::even_shift());
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(lang_hausdorff_hamming_exact(gm, full, n).x_side == 0);
    CHECK(lang_hausdorff_hamming_exact(even, full, n).x_side == 0);
  }
}

TEST_CASE("eps tracing probe") {
  CHECK(eps_tracing_probe(fixture::golden_mean(), {w("0101")}, 4) == 0);
  CHECK(eps_tracing_probe(fixture::full_shift(), {w("11"), w("0"), w("111")}, 6) == 0);
  std::vector<Word> segs;
  for (int i = 0; i < 4; ++i) {
    segs.push_back(w("10"));
    segs.push_back(w("01"));
  }
  Word concat;
  for (const Word& s : segs) concat.insert(concat.end(), s.begin(), s.end());
  for (std::size_t h = 1; h <= 14; ++h) {
    const Rational c = eps_tracing_probe(fixture::golden_mean(), segs, h);
    const Word prefix(concat.begin(), concat.begin() + std::ptrdiff_t(h));
    CHECK(c == oracle::min_trace(fixture::golden_mean(), prefix));
    const long junctions = h >= 4 ? long((h - 4) / 4 + 1) : 0;
    CHECK(c <= make_rational(junctions, long(h)));
  }
  try {
    eps_tracing_probe(fixture::golden_mean(), {w("10"), w("110")}, 3);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("segment 1") != std::string::npos);
  }
  CHECK_THROWS_AS(eps_tracing_probe(fixture::golden_mean(), {w("10")}, 5), std::invalid_argument);
}
