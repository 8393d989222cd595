// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure or time budget overrun.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "symdyn/coded.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/markov.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/metrics.hpp"
#include "symdyn/oxtoby.hpp"
#include "symdyn/proximal.hpp"
#include "symdyn/spectra.hpp"
#include "symdyn/tower.hpp"

using namespace sdyn;

namespace {

const Alphabet kBin(2);

Word w(const char* s) { return parse_word(s, kBin); }

Word concat(const std::vector<Word>& ws) {
  Word out;
  for (const Word& x : ws) out.insert(out.end(), x.begin(), x.end());
  return out;
}

// Collects failed expectations; the first few are reported.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += !ok;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failed_) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string str(const Rational& r) { return to_string(r); }

std::set<Word> as_set(const std::vector<Word>& v) { return {v.begin(), v.end()}; }

void markov_identity(Checker& c) {
  const SftOracle gm(kBin, {w("11")});
  const SoficOracle even(fixture::even_shift());
  std::vector<std::set<Word>> gm_lang(10), even_lang(10);
  for (std::size_t j = 1; j <= 9; ++j) {
    gm_lang[j] = oracle::sft_language(2, {w("11")}, j, 2);
    even_lang[j] = oracle::path_labels(fixture::even_shift(), j);
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    const LabeledGraph a = markov_approximation(gm, n).presentation();
    const LabeledGraph b = markov_approximation(even, n).presentation();
    for (std::size_t j = 1; j <= n + 1; ++j) {
      c.expect(as_set(language(a, j)) == gm_lang[j], "golden mean n=" + std::to_string(n) + " j=" + std::to_string(j));
      c.expect(as_set(language(b, j)) == even_lang[j],
               "even n=" + std::to_string(n) + " j=" + std::to_string(j));
    }
  }
}

void coprime_couplings(Checker& c) {
  std::mt19937_64 rng(2024);
  const std::vector<std::vector<Vertex>> period_sets{{1, 2}, {2, 3}, {3, 5}, {2, 5}, {1, 7}, {2, 3, 5}, {3, 4}, {4, 5, 7}};
  int connected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& ps = period_sets[trial % period_sets.size()];
    std::vector<LabeledGraph> gs;
    for (Vertex p : ps) {
      gs.push_back(fixture::random_safe_graph(rng, p));
      c.expect(is_strongly_connected(gs.back()) && period(gs.back()) == p, "generator period");
      const auto safe = safe_symbols(gs.back());
      c.expect(std::find(safe.begin(), safe.end(), Symbol{0}) != safe.end(), "generator safe symbol");
    }
    connected += is_strongly_connected(couple(gs));
  }
  c.expect(connected == 200, std::to_string(connected) + "/200 connected");
  const std::vector<LabeledGraph> no_safe{fixture::even_shift(), fixture::odd_shift()};
  c.expect(!is_strongly_connected(couple(no_safe)), "no common safe symbol control");
  const std::vector<LabeledGraph> shared_period{fixture::safe_cycle(8), fixture::safe_cycle(2)};
  c.expect(!is_strongly_connected(couple(shared_period)), "periods 8 and 2 control");
}

void oxtoby_counting(Checker& c) {
  for (const std::vector<std::uint64_t>& p :
       {std::vector<std::uint64_t>{1, 4, 16, 64}, std::vector<std::uint64_t>{1, 100, 10000, 1000000}}) {
    const OxtobyScale s(p);
    for (std::size_t k = 1; k <= s.max_level(); ++k)
      for (std::size_t l = 1; l <= k; ++l) {
        std::uint64_t brute = 0;
        for (std::uint64_t i = 0; i < p[k + 1]; ++i) {
          const std::uint64_t r = i % p[l + 1];
          brute += r < p[l] || r >= p[l + 1] - p[l];
        }
        c.expect(oxtoby_window_counts(s, l, k) == brute && brute == 2 * p[l] * p[k + 1] / p[l + 1],
                 "count l=" + std::to_string(l) + " k=" + std::to_string(k));
      }
  }
  const OxtobyScale p({1, 100, 10000, 1000000});
  const Rational delta = make_rational(1, 10);
  const auto report = oxtoby_verify(p, delta, 2);
  c.expect(report.horizons.size() == 2, "two horizons");
  const Word x = oxtoby_prefix(p, 1000000);
  for (const auto& h : report.horizons) {
    c.expect(h.majority_frequency >= make_rational(94, 100), "frequency at k=" + std::to_string(h.k));
    const Word prefix(x.begin(), x.begin() + std::ptrdiff_t(h.horizon));
    const BlockDistribution emp = empirical_distribution(prefix, 1, kBin);
    const BlockDistribution point = from_periodic(Word{h.majority}, 1, kBin);
    const Rational t = transport_dbar_n(emp, point, 1).value;
    c.expect(t < delta, "transport " + str(t) + " at k=" + std::to_string(h.k));
    c.expect(t == h.transport_to_majority_point, "report transport");
  }
}

void transport_distances(Checker& c) {
  for (int n = 1; n <= 6; ++n) {
    const BlockDistribution zero(kBin, n, {{Word(n, 0), Rational(1)}}), one(kBin, n, {{Word(n, 1), Rational(1)}});
    c.expect(transport_dbar_n(zero, one, n).value == 1, "point masses n=" + std::to_string(n));
    const BlockDistribution a = from_periodic(w("01"), n, kBin), b = from_periodic(w("0"), n, kBin);
    const Rational t = transport_dbar_n(a, b, n).value;
    c.expect(t == make_rational(1, 2), "per(01) vs per(0) n=" + std::to_string(n));
    if (n <= 3) c.expect(t == oracle::transport_lp(a.probabilities(), b.probabilities()), "oracle n=" + std::to_string(n));
  }
  std::mt19937_64 rng(100);
  auto random_measure = [&](int n) {
    std::map<Word, Rational> probs;
    const long wa = 1 + long(rng() % 5), wb = 1 + long(rng() % 5);
    for (const auto& [x, q] : oracle::periodic_blocks(oracle::random_word(rng, 2, 1 + rng() % 6), std::size_t(n)))
      probs[x] += q * make_rational(wa, wa + wb);
    for (const auto& [x, q] : oracle::periodic_blocks(oracle::random_word(rng, 2, 1 + rng() % 6), std::size_t(n)))
      probs[x] += q * make_rational(wb, wa + wb);
    return BlockDistribution(kBin, n, probs);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const BlockDistribution a = random_measure(n), b = random_measure(n), d = random_measure(n);
    const Rational ab = transport_dbar_n(a, b, n).value, ba = transport_dbar_n(b, a, n).value;
    const Rational bd = transport_dbar_n(b, d, n).value, ad = transport_dbar_n(a, d, n).value;
    c.expect(transport_dbar_n(a, a, n).value == 0, "identity");
    c.expect(ab == ba, "symmetry");
    c.expect(ad <= ab + bd, "triangle");
    c.expect(ab == oracle::transport_lp(a.probabilities(), b.probabilities()), "oracle on random pair");
  }
}

void best_trace_golden_mean(Checker& c) {
  for (std::size_t n = 1; n <= 14; ++n) {
    const Word target(n, 1);
    const Rational cost = best_trace(fixture::golden_mean(), target).cost;
    c.expect(cost == make_rational(long(n / 2), long(n)), "formula n=" + std::to_string(n));
    c.expect(cost == oracle::min_trace(fixture::golden_mean(), target), "exhaustive n=" + std::to_string(n));
  }
}

void lambda_karp(Checker& c) {
  struct Case {
    LabeledGraph g;
    const char* word;
    Rational expect;
  };
  const std::vector<Case> cases{{fixture::full_shift(), "10", make_rational(1, 2)},
                                {fixture::golden_mean(), "11", Rational(0)},
                                {fixture::golden_mean(), "1", make_rational(1, 2)}};
  for (const Case& k : cases) {
    const SoficShift x(k.g);
    const Word pat = w(k.word);
    const Rational lam = Lambda(x, pat).value;
    c.expect(lam == k.expect, std::string("value for ") + k.word);
    c.expect(lam == oracle::max_cyclic_frequency(k.g, pat, 10), std::string("orbit oracle for ") + k.word);
    for (std::size_t n = 1; n <= 16; ++n)
      c.expect(lam <= (Rational(Gamma(x, pat, n)) + long(pat.size()) - 1) / long(n),
               std::string("Fekete for ") + k.word + " n=" + std::to_string(n));
  }
}

void proximal_family(Checker& c) {
  const ProximalParams pp;
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 2; ++n) {
    const SoficShift yn = proximal_intersection(pp, n);
    c.expect(yn.strongly_connected() && yn.period() == 1, "Y_" + std::to_string(n) + " mixing");
    std::vector<LabeledGraph> next_factors;
    for (std::size_t k = 1; k <= n + 1; ++k) next_factors.push_back(proximal_graph(pp, k));
    const Rational bound = n == 1 ? make_rational(1, 25) : make_rational(1, 125);
    for (int i = 0; i < 100; ++i) {
      const Word x = random_path_word(yn.presentation(), 100000, rng);
      const auto s = proximal_zeroing_shadow(pp, x, n);
      c.expect(s.changed == oracle::hamming(x, s.y), "changed recount");
      c.expect(s.density <= bound, "density " + str(s.density));
      bool in_all = true;
      for (const LabeledGraph& g : next_factors) in_all = in_all && accepts(g, s.y);
      c.expect(in_all, "zeroed word in every factor");
      c.expect(best_trace(proximal_coupling(pp, n + 1), s.y).cost == 0, "trace cost zero");
    }
  }
  // A full Viterbi pass over the materialized Y_2 on a few shadows.
  const LabeledGraph y2 = proximal_intersection(pp, 2).presentation();
  const SoficShift y1 = proximal_intersection(pp, 1);
  for (int i = 0; i < 3; ++i) {
    const auto s = proximal_zeroing_shadow(pp, random_path_word(y1.presentation(), 100000, rng), 1);
    c.expect(best_trace(y2, s.y).cost == 0, "materialized trace");
  }
}

void coded_system(Checker& c) {
  CodedParams params;
  params.t = {4, 2};
  const CodedSystem sys(params);
  c.expect(coded_min_t(sys.stats(1), TMode::Structural) == 4, "least t(1)");
  const auto& st = sys.stats(1);
  c.expect(Rational(3) * (2 * Rational(st.l) - 3 * Rational(st.s)) <= Rational(st.tau_len), "t = 3 fails");
  const auto& b2 = sys.words(2);
  std::set<std::size_t> lengths;
  for (const Word& x : b2) lengths.insert(x.size());
  c.expect(b2.size() == 16 && as_set(b2).size() == 16, "16 words");
  c.expect(lengths == std::set<std::size_t>{7, 8, 9, 10, 11}, "length set");
  for (const Word& x : b2)
    for (const Word& b : sys.words(1)) c.expect(oracle::has_factor(x, b), "B_1 factor");

  std::mt19937_64 rng(11);
  std::vector<Word> blocks;
  for (int i = 0; i < 10000; ++i) blocks.push_back(sys.random_member(1, rng));
  const auto s = coded_shadow_next(sys, blocks, 1);
  const Rational bound = make_rational(long(st.tau_len.get_si() + 3 * st.l.get_si()),
                                       long(st.tau_len.get_si() + st.s.get_si() * 4));
  const Word y = concat(blocks), z = concat(s.z_blocks);
  const std::size_t mism = oracle::hamming(Word(y.begin(), y.begin() + std::ptrdiff_t(z.size())), z);
  c.expect(z.size() <= y.size() && mism == s.mismatches, "mismatch recount");
  c.expect(make_rational(long(mism), long(z.size())) <= bound, "density " + str(s.density) + " <= " + str(bound));
  const std::set<Word> b2set = as_set(b2);
  for (const Word& b : s.z_blocks) c.expect(b2set.count(b) > 0, "z block in B_2");
  c.expect(verify_coded_shadow(sys, blocks, s.z_blocks, 1).ok, "shadow verifier");

  const std::uint64_t lo = 2 * sys.s(1), hi = (2 * sys.t(1) - 2) * sys.l(1) + sys.tau(1).size();
  for (const Word& u : sys.words(1))
    for (const Word& v : sys.words(1))
      for (std::uint64_t m = lo; m <= hi; ++m) {
        const auto r = coded_connect(sys, u, v, m, 1);
        Word uwv = u;
        uwv.insert(uwv.end(), r.w.begin(), r.w.end());
        uwv.insert(uwv.end(), v.begin(), v.end());
        const Word host = concat(r.certificate.words);
        bool found = r.w.size() == m && host.size() >= r.certificate.offset + uwv.size() &&
                     std::equal(uwv.begin(), uwv.end(), host.begin() + std::ptrdiff_t(r.certificate.offset));
        for (const Word& h : r.certificate.words) found = found && sys.is_member(r.certificate.level, h);
        c.expect(found && verify_connect(sys, u, v, m, r), "connect m=" + std::to_string(m));
      }
}

void tower_bounds(Checker& c) {
  const TowerParams params = geometric_tower_params(3, make_rational(1, 4));
  const Tower t = tower_build(params, 3);
  c.expect(t.levels.size() == 4 && !t.truncated, "depth 3 built");
  c.expect(tower_verify(t).passed(), "verifier");
  for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) {
    const Rational d = dbar_up(UPPoint({}, t.levels[k].v), UPPoint({}, t.levels[k + 1].v));
    c.expect(d <= params.deltas[k], "dbar at k=" + std::to_string(k) + " is " + str(d));
  }
  for (std::size_t k = 0; k < t.levels.size(); ++k)
    for (std::size_t n = k + 1; n < t.levels.size(); ++n) {
      Rational rhs = make_rational(1, long(t.levels[k].v.size()));
      for (std::size_t j = k + 1; j <= n; ++j) rhs *= 1 - params.deltas[j - 1];
      const Rational lhs = from_periodic(t.levels[n].v, int(params.words[k].size()), kBin)[params.words[k]];
      c.expect(lhs >= rhs && lhs == oracle::cyclic_frequency(t.levels[n].v, params.words[k]),
               "cylinder k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
}

void dbar_suite(Checker& c) {
  std::mt19937_64 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    const UPPoint x = oracle::random_point(rng, 2, 5, 6), y = oracle::random_point(rng, 2, 5, 6),
                  z = oracle::random_point(rng, 2, 5, 6);
    const Rational xy = dbar_up(x, y);
    c.expect(dbar_up(x, x) == 0, "identity");
    c.expect(xy == dbar_up(y, x), "symmetry");
    c.expect(dbar_up(x, z) <= xy + dbar_up(y, z), "triangle");
    c.expect(dbar_up(x.shifted(), y.shifted()) == xy, "shift invariance");
    if (i < 50) {
      const std::size_t L = std::lcm(x.period().size(), y.period().size());
      const std::size_t start = std::max(x.preperiod().size(), y.preperiod().size());
      c.expect(oracle::window_mismatch(x, y, start, 1000 / L * L) == xy, "window recount");
    }
  }
  const UPPoint a = parse_point("1|0", kBin), b = parse_point("|0", kBin);
  c.expect(!(a == b) && dbar_up(a, b) == 0, "distinct points at distance zero");
}

void measure_center_soundness(Checker& c) {
  // {0^inf, 1^inf} with transient words: loops at 0 and 1 plus one-way edges.
  std::vector<LabeledGraph> graphs{
      LabeledGraph(kBin, 3, {{0, 0, 0}, {1, 1, 1}, {0, 2, 1}, {2, 1, 0}, {0, 1, 1}}),
      LabeledGraph(kBin, 4, {{0, 0, 0}, {1, 1, 1}, {1, 2, 0}, {2, 3, 0}, {3, 0, 1}, {2, 0, 0}}),
      LabeledGraph(kBin, 4, {{0, 1, 0}, {1, 0, 1}, {1, 2, 1}, {2, 3, 1}, {3, 3, 0}, {3, 2, 1}})};
  std::mt19937_64 rng(11);
  while (graphs.size() < 12) {
    std::vector<Edge> edges;
    const Vertex n = 5;
    for (int e = 0; e < 8; ++e) edges.push_back({Vertex(rng() % n), Vertex(rng() % n), Symbol(rng() % 2)});
    try {
      const LabeledGraph g = prune(LabeledGraph(kBin, n, edges));
      if (!is_strongly_connected(g)) graphs.push_back(g);
    } catch (const EmptyShift&) {
    }
  }
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const SoficShift x(graphs[gi]);
    const LabeledGraph center = measure_center(x).presentation();
    std::size_t transient = 0;
    for (std::size_t n = 1; n <= 7; ++n)
      for (const Word& u : oracle::path_labels(x.presentation(), n)) {
        const Rational lam = Lambda(x, u).value;
        if (accepts(center, u)) {
          c.expect(lam > 0, "center word " + format_word(u, kBin) + " has positive frequency");
        } else {
          ++transient;
          c.expect(lam == 0, "transient word " + format_word(u, kBin) + " has zero frequency");
        }
      }
    if (gi < 3) c.expect(transient > 0, "graph has transient words");
  }
  const auto two_points = oracle::path_labels(measure_center(SoficShift(graphs[0])).presentation(), 6);
  c.expect(two_points == std::set<Word>{Word(6, 0), Word(6, 1)}, "center is {0^inf, 1^inf}");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Checker&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "Markov approximation identity", 1, markov_identity},
      {2, "coupling of safe graphs with coprime periods", 10, coprime_couplings},
      {3, "Oxtoby counting", 30, oxtoby_counting},
      {4, "transportation distances", 60, transport_distances},
      {5, "best_trace oracle equivalence", 10, best_trace_golden_mean},
      {6, "Lambda via Karp", 30, lambda_karp},
      {7, "proximal family", 120, proximal_family},
      {8, "coded system", 120, coded_system},
      {9, "tower", 30, tower_bounds},
      {10, "d-bar pseudometric suite", 10, dbar_suite},
      {11, "measure center", 10, measure_center_soundness},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    Checker c;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      k.body(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= k.budget_seconds;
    const bool pass = error.empty() && c.ok() && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s, %.2fs of %.0fs%s%s\n", pass ? "PASS" : "FAIL", k.id, k.name, c.summary().c_str(), secs,
                k.budget_seconds, in_time ? "" : " (over budget)", error.empty() ? "" : (", threw: " + error).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
