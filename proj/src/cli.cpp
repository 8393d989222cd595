#include "symdyn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "symdyn/coded.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/markov.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/metrics.hpp"
#include "symdyn/oxtoby.hpp"
#include "symdyn/proximal.hpp"
#include "symdyn/sofic.hpp"
#include "symdyn/spectra.hpp"
#include "symdyn/tower.hpp"

namespace sdyn::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t max_words = kDefaultWordCap;
  std::uint64_t max_vertices = 1'000'000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> horizon;
  std::string format = "json";
  std::string output;
};

struct Outcome {
  json config = json::object();
  json result = json::object();
  std::optional<LabeledGraph> graph;
  bool bounds_ok = true;
};

struct ShiftInput {
  std::string graph;
  std::vector<std::string> forbidden;
  int alphabet = 2;
};

void add_shift_options(CLI::App* sub, ShiftInput& in) {
  sub->add_option("--graph", in.graph, "Presentation file (JSON graph or DOT)");
  sub->add_option("--forbidden", in.forbidden, "Forbidden words of a shift of finite type")->delimiter(',');
  sub->add_option("--alphabet", in.alphabet, "Alphabet size for --forbidden and word arguments")
      ->check(CLI::Range(2, 256));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LabeledGraph load_graph_file(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == 'd') return graph_from_dot(text);
    return graph_from_text(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

LabeledGraph load_shift(const ShiftInput& in, const Globals& g) {
  if (in.graph.empty() == in.forbidden.empty()) throw UsageError("give exactly one of --graph or --forbidden");
  if (!in.graph.empty()) return load_graph_file(in.graph);
  const Alphabet alphabet(in.alphabet);
  std::vector<Word> words;
  for (const auto& w : in.forbidden) words.push_back(parse_word(w, alphabet));
  return SftOracle(alphabet, std::move(words), g.max_words).presentation();
}

json shift_echo(const ShiftInput& in) {
  json j;
  if (!in.graph.empty()) {
    j["graph"] = in.graph;
  } else {
    j["forbidden"] = in.forbidden;
    j["alphabet"] = in.alphabet;
  }
  return j;
}

json symbols_json(const std::vector<Symbol>& s) {
  auto j = json::array();
  for (Symbol a : s) j.push_back(static_cast<int>(a));
  return j;
}

json shift_summary(const SoficShift& x) {
  json j;
  j["vertices"] = x.presentation().vertex_count();
  j["edges"] = x.presentation().edges().size();
  j["strongly_connected"] = x.strongly_connected();
  j["period"] = x.period();
  j["safe_symbols"] = symbols_json(x.safe_symbols());
  j["mixing"] = x.mixing_presentation();
  return j;
}

json check_json(const std::string& name, const Rational& lhs, const std::string& rel, const Rational& rhs, bool ok) {
  json j;
  j["name"] = name;
  j["lhs"] = to_string(lhs);
  j["relation"] = rel;
  j["rhs"] = to_string(rhs);
  j["ok"] = ok;
  return j;
}

std::vector<std::uint64_t> parse_uint_list(const std::vector<std::string>& items, const char* what) {
  std::vector<std::uint64_t> out;
  for (const auto& s : items) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(std::string(what) + ": '" + s + "' is not a nonnegative integer");
    out.push_back(std::stoull(s));
  }
  return out;
}

// ---- shift analysis -------------------------------------------------------

Outcome cmd_analyze(const ShiftInput& in, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  const SoficShift x(load_shift(in, g));
  const std::size_t n = g.horizon.value_or(12);
  o.config["horizon"] = n;
  o.result = shift_summary(x);
  o.result["connected"] = x.strongly_connected();
  auto comps = json::array();
  for (const auto& c : component_periods(x.presentation())) {
    json jc;
    jc["component"] = c.component;
    jc["vertices"] = c.vertices;
    jc["period"] = c.period;
    comps.push_back(std::move(jc));
  }
  o.result["components"] = std::move(comps);
  const auto eb = entropy_bounds(x.presentation(), n, g.max_words);
  json je;
  je["horizon"] = eb.horizon;
  je["lower"] = eb.lower;
  je["upper"] = eb.upper;
  je["cycle_length"] = eb.cycle_length;
  o.result["entropy_bounds"] = std::move(je);
  o.graph = x.presentation();
  return o;
}

Outcome cmd_couple(const std::vector<std::string>& files, const Globals& g) {
  Outcome o;
  o.config["graphs"] = files;
  std::vector<LabeledGraph> graphs;
  auto factors = json::array();
  std::vector<std::uint64_t> periods;
  std::optional<std::vector<Symbol>> common;
  for (const auto& f : files) {
    graphs.push_back(load_graph_file(f));
    json jf;
    jf["graph"] = f;
    try {
      const SoficShift s(graphs.back());
      jf["summary"] = shift_summary(s);
      periods.push_back(s.period());
      std::vector<Symbol> safe = s.safe_symbols();
      if (common) {
        std::vector<Symbol> both;
        std::set_intersection(common->begin(), common->end(), safe.begin(), safe.end(), std::back_inserter(both));
        common = both;
      } else {
        common = safe;
      }
    } catch (const EmptyShift&) {
      jf["summary"] = nullptr;
      periods.push_back(0);
      common = std::vector<Symbol>{};
    }
    factors.push_back(std::move(jf));
  }
  bool coprime = true;
  for (std::size_t i = 0; i < periods.size(); ++i)
    for (std::size_t j = i + 1; j < periods.size(); ++j)
      if (periods[i] == 0 || periods[j] == 0 || std::gcd(periods[i], periods[j]) != 1) coprime = false;
  o.result["factors"] = std::move(factors);
  o.result["common_safe_symbols"] = symbols_json(common.value_or(std::vector<Symbol>{}));
  o.result["pairwise_coprime_periods"] = coprime;
  try {
    const SoficShift c(couple(graphs, g.max_vertices));
    o.result["empty"] = false;
    o.result["connected"] = c.strongly_connected();
    o.result["coupling"] = shift_summary(c);
    o.graph = c.presentation();
  } catch (const EmptyShift&) {
    o.result["empty"] = true;
    o.result["connected"] = false;
  }
  return o;
}

Outcome cmd_language(const ShiftInput& in, std::size_t n, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  o.config["n"] = n;
  const LabeledGraph graph = load_shift(in, g);
  const auto words = language(graph, n, g.max_words);
  o.result["n"] = n;
  o.result["size"] = words.size();
  auto jw = json::array();
  for (const Word& w : words) jw.push_back(format_word(w, graph.alphabet()));
  o.result["words"] = std::move(jw);
  return o;
}

Outcome cmd_rauzy(const ShiftInput& in, std::size_t n, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  o.config["n"] = n;
  const LabeledGraph graph = load_shift(in, g);
  const SoficOracle oracle(graph, g.max_words);
  const LabeledGraph r = rauzy_graph(oracle, n);
  const SoficShift s(r);
  o.result["n"] = n;
  o.result["vertices"] = r.vertex_count();
  o.result["edges"] = r.edges().size();
  o.result["strongly_connected"] = s.strongly_connected();
  o.result["period"] = s.period();
  auto labels = json::array();
  for (const Word& w : oracle.words(n)) labels.push_back(format_word(w, graph.alphabet()));
  o.result["vertex_words"] = std::move(labels);
  o.graph = r;
  return o;
}

Outcome cmd_probe(const ShiftInput& in, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  const std::size_t n = g.horizon.value_or(8);
  o.config["horizon"] = n;
  const SoficOracle oracle(load_shift(in, g), g.max_words);
  o.result = to_json(chain_mixing_probe(oracle, n));
  return o;
}

Outcome cmd_trace(const ShiftInput& in, const std::string& word, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  o.config["word"] = word;
  const SoficShift x(load_shift(in, g));
  const Word target = parse_word(word, x.presentation().alphabet());
  const auto t = best_trace(x.presentation(), target);
  o.result["length"] = target.size();
  o.result["cost"] = to_string(t.cost);
  o.result["mismatches"] = t.mismatches;
  o.result["witness"] = format_word(t.witness, x.presentation().alphabet());
  return o;
}

Outcome cmd_gamma(const ShiftInput& in, const std::string& word, std::size_t n, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  o.config["word"] = word;
  o.config["n"] = n;
  const SoficShift x(load_shift(in, g));
  const Word w = parse_word(word, x.presentation().alphabet());
  o.result["word"] = word;
  o.result["n"] = n;
  o.result["value"] = Gamma(x, w, n);
  return o;
}

Outcome cmd_lambda(const ShiftInput& in, const std::string& word, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  o.config["word"] = word;
  const SoficShift x(load_shift(in, g));
  const Word w = parse_word(word, x.presentation().alphabet());
  o.result = to_json(Lambda(x, w), w, x.presentation().alphabet());
  return o;
}

Outcome cmd_center(const ShiftInput& in, const Globals& g) {
  Outcome o;
  o.config = shift_echo(in);
  const SoficShift x(load_shift(in, g));
  o.result["input"] = shift_summary(x);
  try {
    const SoficShift c = measure_center(x);
    o.result["empty"] = false;
    o.result["center"] = shift_summary(c);
    o.graph = c.presentation();
  } catch (const EmptyShift&) {
    o.result["empty"] = true;
  }
  return o;
}

Outcome cmd_dbar(const std::string& xs, const std::string& ys, int alphabet) {
  Outcome o;
  o.config["x"] = xs;
  o.config["y"] = ys;
  o.config["alphabet"] = alphabet;
  const Alphabet a(alphabet);
  const UPPoint x = parse_point(xs, a), y = parse_point(ys, a);
  o.result["x"] = format_point(x, a);
  o.result["y"] = format_point(y, a);
  o.result["value"] = to_string(dbar_up(x, y));
  return o;
}

Outcome cmd_transport(const std::string& xs, const std::string& ys, int n, int alphabet, bool dstar) {
  Outcome o;
  o.config["x"] = xs;
  o.config["y"] = ys;
  o.config["n"] = n;
  o.config["alphabet"] = alphabet;
  const Alphabet a(alphabet);
  const auto mu = from_periodic(parse_word(xs, a), n, a);
  const auto nu = from_periodic(parse_word(ys, a), n, a);
  const auto t = transport_dbar_n(mu, nu, n);
  o.result["n"] = n;
  o.result["value"] = to_string(t.value);
  o.result["mu"] = distribution_to_json(mu);
  o.result["nu"] = distribution_to_json(nu);
  o.result["joining"] = joining_to_json(t.witness, a);
  if (dstar) o.result["dstar"] = to_string(dstar_n(mu, nu, n));
  return o;
}

Outcome cmd_distance(const std::string& xf, const std::string& yf, std::uint64_t samples, const Globals& g) {
  Outcome o;
  const std::size_t n = g.horizon.value_or(8);
  o.config["x"] = xf;
  o.config["y"] = yf;
  o.config["horizon"] = n;
  o.config["samples"] = samples;
  const SoficShift x(load_graph_file(xf)), y(load_graph_file(yf));
  const auto d = samples == 0 ? lang_hausdorff_hamming_exact(x, y, n, g.max_words)
                              : lang_hausdorff_hamming_sampled(x, y, n, samples, g.seed);
  o.result = to_json(d, x.presentation().alphabet());
  return o;
}

// ---- constructions --------------------------------------------------------

Outcome cmd_oxtoby_gen(const std::vector<std::string>& p, std::uint64_t len) {
  Outcome o;
  o.config["p"] = p;
  o.config["length"] = len;
  const OxtobyScale scale(parse_uint_list(p, "--p"));
  o.result["length"] = len;
  o.result["prefix"] = format_word(oxtoby_prefix(scale, len), Alphabet(2));
  return o;
}

Outcome cmd_oxtoby_verify(const std::vector<std::string>& p, const std::string& delta, std::size_t k) {
  Outcome o;
  o.config["p"] = p;
  o.config["delta"] = delta;
  const OxtobyScale scale(parse_uint_list(p, "--p"));
  if (k == 0) k = scale.max_level();
  o.config["k"] = k;
  const auto report = oxtoby_verify(scale, parse_rational(delta), k);
  o.result = to_json(report);
  auto counts = json::array();
  for (std::size_t kk = 1; kk <= k; ++kk)
    for (std::size_t l = 1; l <= kk; ++l) {
      json c;
      c["l"] = l;
      c["k"] = kk;
      c["count"] = oxtoby_window_counts(scale, l, kk);
      counts.push_back(std::move(c));
    }
  o.result["window_counts"] = std::move(counts);
  o.bounds_ok = report.passed();
  return o;
}

TowerParams tower_params(std::size_t depth, const std::string& ratio) {
  const Rational r = parse_rational(ratio);
  if (r <= 0 || r >= 1) throw UsageError("--ratio must lie strictly between 0 and 1");
  return geometric_tower_params(depth, r);
}

Outcome cmd_tower_build(std::size_t depth, const std::string& ratio, bool words) {
  Outcome o;
  o.config["depth"] = depth;
  o.config["ratio"] = ratio;
  const Tower t = tower_build(tower_params(depth, ratio), depth);
  o.result = to_json(t, words);
  return o;
}

Outcome cmd_tower_verify(std::size_t depth, const std::string& ratio, std::optional<std::size_t> flip) {
  Outcome o;
  o.config["depth"] = depth;
  o.config["ratio"] = ratio;
  if (flip) o.config["flip_level"] = *flip;
  Tower t = tower_build(tower_params(depth, ratio), depth);
  if (t.truncated) throw UsageError("tower exceeds the length cap; lower --depth");
  if (flip) {
    if (*flip >= t.levels.size() || t.levels[*flip].v.empty()) throw UsageError("--flip-level out of range");
    t.levels[*flip].v[0] ^= 1;
  }
  const auto report = tower_verify(t);
  o.result = to_json(report);
  o.bounds_ok = report.passed();
  return o;
}

ProximalParams proximal_params(std::uint64_t base, std::uint64_t gap_base, std::size_t n) {
  ProximalParams p;
  p.base = base;
  p.gap_base = gap_base;
  p.depth = n + 1;
  p.validate();
  return p;
}

json proximal_echo(std::uint64_t base, std::uint64_t gap_base, std::size_t n) {
  json j;
  j["n"] = n;
  j["base"] = base;
  j["gap_base"] = gap_base;
  return j;
}

Outcome cmd_proximal_build(std::uint64_t base, std::uint64_t gap_base, std::size_t n, const Globals& g) {
  Outcome o;
  o.config = proximal_echo(base, gap_base, n);
  const auto params = proximal_params(base, gap_base, n);
  const SoficShift s(proximal_graph(params, n, g.max_vertices));
  o.result = shift_summary(s);
  o.result["gap"] = params.gap(n);
  o.graph = s.presentation();
  return o;
}

Outcome cmd_proximal_intersect(std::uint64_t base, std::uint64_t gap_base, std::size_t n, const Globals& g) {
  Outcome o;
  o.config = proximal_echo(base, gap_base, n);
  const auto params = proximal_params(base, gap_base, n);
  const SoficShift s = proximal_intersection(params, n, g.max_vertices);
  o.result = shift_summary(s);
  o.graph = s.presentation();
  return o;
}

Outcome cmd_proximal_shadow(std::uint64_t base, std::uint64_t gap_base, std::size_t n, std::uint64_t len,
                            std::uint64_t count, const Globals& g) {
  Outcome o;
  o.config = proximal_echo(base, gap_base, n);
  o.config["length"] = len;
  o.config["count"] = count;
  const auto params = proximal_params(base, gap_base, n);
  const SoficShift yn = proximal_intersection(params, n, g.max_vertices);
  std::mt19937_64 rng(g.seed);
  auto points = json::array();
  Rational worst = 0;
  bool all_ok = true;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Word x = random_path_word(yn.presentation(), len, rng);
    const auto s = proximal_zeroing_shadow(params, x, n);
    json jp = to_json(s, false);
    jp["index"] = i;
    jp["check"] = check_json("changed density", s.density, "<=", s.bound, s.within_bound);
    points.push_back(std::move(jp));
    worst = std::max(worst, s.density);
    all_ok = all_ok && s.within_bound;
  }
  o.result["n"] = n;
  o.result["y_n"] = shift_summary(yn);
  o.result["points"] = std::move(points);
  o.result["max_density"] = to_string(worst);
  o.result["all_within_bound"] = all_ok;
  o.bounds_ok = all_ok;
  return o;
}

struct CodedOptions {
  std::vector<std::string> b1{"0", "11"};
  std::vector<std::string> t;
  std::size_t levels = 1;
  std::string mode = "both";
  std::string eps;
};

void add_coded_options(CLI::App* sub, CodedOptions& c) {
  sub->add_option("--b1", c.b1, "Generating words of B_1 (a binary prefix code)")->delimiter(',');
  sub->add_option("--t", c.t, "Explicit t(1), t(2), ...")->delimiter(',');
  sub->add_option("--levels", c.levels, "Number of automatically chosen t values")->check(CLI::PositiveNumber);
  sub->add_option("--mode", c.mode, "Inequalities for automatic t: structural|cauchy|mixing|both");
  sub->add_option("--eps", c.eps, "Epsilon for the Cauchy inequality");
}

CodedSystem coded_system(const CodedOptions& c) {
  CodedParams p;
  p.b1.clear();
  for (const auto& w : c.b1) p.b1.push_back(parse_word(w, Alphabet(2)));
  p.t = parse_uint_list(c.t, "--t");
  p.levels = c.levels;
  p.mode = parse_tmode(c.mode);
  if (!c.eps.empty()) p.epsilon = parse_rational(c.eps);
  if ((p.mode == TMode::Cauchy || p.mode == TMode::Both) && p.t.empty() && !p.epsilon)
    throw UsageError("--mode " + c.mode + " needs --eps");
  return CodedSystem(std::move(p));
}

json coded_echo(const CodedOptions& c) {
  json j;
  j["b1"] = c.b1;
  if (!c.t.empty()) {
    j["t"] = c.t;
  } else {
    j["levels"] = c.levels;
    j["mode"] = c.mode;
  }
  if (!c.eps.empty()) j["eps"] = c.eps;
  return j;
}

json t_values(const CodedSystem& sys) {
  auto j = json::array();
  for (std::size_t n = 1; n < sys.levels(); ++n) j.push_back(sys.t(n));
  return j;
}

Outcome cmd_coded_stats(const CodedOptions& c) {
  Outcome o;
  o.config = coded_echo(c);
  const CodedSystem sys = coded_system(c);
  o.result["t"] = t_values(sys);
  auto levels = json::array();
  for (std::size_t n = 1; n <= sys.levels(); ++n) {
    json j = to_json(sys.stats(n));
    if (sys.enumerable(n)) {
      std::vector<std::size_t> lens;
      for (const Word& w : sys.words(n)) lens.push_back(w.size());
      std::sort(lens.begin(), lens.end());
      lens.erase(std::unique(lens.begin(), lens.end()), lens.end());
      j["length_set"] = lens;
    }
    levels.push_back(std::move(j));
  }
  o.result["levels"] = std::move(levels);
  return o;
}

Outcome cmd_coded_min_t(const CodedOptions& c) {
  Outcome o;
  o.config = coded_echo(c);
  const CodedSystem sys = coded_system(c);
  std::optional<Rational> eps;
  if (!c.eps.empty()) eps = parse_rational(c.eps);
  auto rows = json::array();
  for (std::size_t n = 1; n < sys.levels(); ++n) {
    const auto& st = sys.stats(n);
    json j;
    j["n"] = n;
    j["structural"] = to_string(coded_t_bound(st, TInequality::Structural));
    if (eps) j["cauchy"] = to_string(coded_t_bound(st, TInequality::Cauchy, eps));
    j["mixing_ratio"] = to_string(coded_t_bound(st, TInequality::MixingRatio));
    j["mixing_length"] = to_string(coded_t_bound(st, TInequality::MixingLength));
    j["t"] = sys.t(n);
    const BigInt tt(static_cast<unsigned long>(sys.t(n)));
    const Rational ratio = make_rational(st.s * tt + st.tau_len, st.l * tt + st.tau_len);
    j["check"] = check_json("s(n+1)/l(n+1)", ratio, "<", make_rational(2, 3), ratio < make_rational(2, 3));
    o.bounds_ok = o.bounds_ok && ratio < make_rational(2, 3);
    rows.push_back(std::move(j));
  }
  o.result["levels"] = std::move(rows);
  return o;
}

Outcome cmd_coded_sample(const CodedOptions& c, std::size_t n, std::uint64_t count, const Globals& g) {
  Outcome o;
  o.config = coded_echo(c);
  o.config["n"] = n;
  o.config["count"] = count;
  const CodedSystem sys = coded_system(c);
  std::mt19937_64 rng(g.seed);
  auto words = json::array();
  for (std::uint64_t i = 0; i < count; ++i) {
    const Word w = sys.random_member(n, rng);
    if (w.size() > g.max_words) throw CapExceeded("member longer than --max-words", w.size());
    words.push_back(format_word(w, Alphabet(2)));
  }
  o.result["n"] = n;
  o.result["members"] = std::move(words);
  return o;
}

Outcome cmd_coded_shadow(const CodedOptions& c, std::size_t n, std::uint64_t blocks, const Globals& g) {
  Outcome o;
  o.config = coded_echo(c);
  o.config["n"] = n;
  o.config["blocks"] = blocks;
  const CodedSystem sys = coded_system(c);
  std::mt19937_64 rng(g.seed);
  std::vector<Word> stream;
  for (std::uint64_t i = 0; i < blocks; ++i) stream.push_back(sys.random_member(n, rng));
  const auto s = coded_shadow_next(sys, stream, n);
  const auto check = verify_coded_shadow(sys, stream, s.z_blocks, n);
  o.result = to_json(s);
  o.result["check"] = check_json("mismatch density", s.density, "<=", s.bound, s.density <= s.bound);
  o.result["independent_check"] = check.ok;
  if (!check.ok) o.result["independent_check_reason"] = check.reason;
  o.bounds_ok = check.ok && s.density <= s.bound;
  return o;
}

Outcome cmd_coded_connect(const CodedOptions& c, std::size_t n, const std::string& us, const std::string& vs,
                          std::optional<std::uint64_t> m) {
  Outcome o;
  o.config = coded_echo(c);
  o.config["n"] = n;
  const CodedSystem sys = coded_system(c);
  const Word u = us.empty() ? sys.word_of_length(n, sys.s(n)) : parse_word(us, Alphabet(2));
  const Word v = vs.empty() ? sys.word_of_length(n, sys.l(n)) : parse_word(vs, Alphabet(2));
  o.config["u"] = format_word(u, Alphabet(2));
  o.config["v"] = format_word(v, Alphabet(2));
  if (m) {
    o.config["m"] = *m;
    const auto r = coded_connect(sys, u, v, *m, n);
    o.result = to_json(r, Alphabet(2));
    o.result["verified"] = verify_connect(sys, u, v, *m, r);
    o.bounds_ok = o.result["verified"].get<bool>();
    return o;
  }
  // Sweep the two direct cases: 2 s(n) <= m <= (2 t(n) - 2) l(n) + |tau(n)|.
  const std::uint64_t lo = 2 * sys.s(n);
  const std::uint64_t hi = (2 * sys.t(n) - 2) * sys.l(n) + sys.tau(n).size();
  std::uint64_t ok = 0, failed = 0;
  std::map<int, std::uint64_t> by_case;
  auto failures = json::array();
  for (std::uint64_t mm = lo; mm <= hi; ++mm) {
    try {
      const auto r = coded_connect(sys, u, v, mm, n);
      ++by_case[r.case_used];
      if (verify_connect(sys, u, v, mm, r)) {
        ++ok;
        continue;
      }
    } catch (const std::invalid_argument&) {
    }
    ++failed;
    failures.push_back(mm);
  }
  o.result["m_min"] = lo;
  o.result["m_max"] = hi;
  o.result["verified"] = ok;
  o.result["failed"] = failed;
  json cases;
  for (const auto& [k, cnt] : by_case) cases[std::to_string(k)] = cnt;
  o.result["by_case"] = std::move(cases);
  o.result["failures"] = std::move(failures);
  o.bounds_ok = failed == 0;
  return o;
}

Outcome cmd_coded_witness(const CodedOptions& c, std::size_t n, const std::string& us, std::uint64_t samples,
                          const Globals& g) {
  Outcome o;
  o.config = coded_echo(c);
  o.config["n"] = n;
  o.config["u"] = us;
  o.config["samples"] = samples;
  const CodedSystem sys = coded_system(c);
  const auto w = coded_minimality_witness(sys, n, parse_word(us, Alphabet(2)), samples, g.seed);
  o.result["holds"] = w.holds;
  o.result["exhaustive"] = w.exhaustive;
  o.result["checked"] = w.checked;
  if (w.counterexample) o.result["counterexample"] = format_word(*w.counterexample, Alphabet(2));
  o.bounds_ok = w.holds;
  return o;
}

int emit(const Outcome& o, const std::string& command, const std::vector<std::string>& args, const Globals& g,
         std::ostream& out) {
  std::string text;
  if (g.format == "json") {
    json doc;
    doc["tool"] = {{"name", "symdyn"}, {"version", kVersion}};
    doc["command"] = command;
    doc["argv"] = args;
    doc["config"] = o.config;
    doc["caps"] = {{"max_words", g.max_words}, {"max_vertices", g.max_vertices}};
    doc["seed"] = g.seed;
    doc["result"] = o.result;
    doc["status"] = o.bounds_ok ? "ok" : "bound_failed";
    text = doc.dump(2) + "\n";
  } else {
    if (!o.graph) throw UsageError("--format " + g.format + " needs a command that produces a graph");
    text = g.format == "dot" ? graph_to_dot(*o.graph) : graph_to_text(*o.graph);
  }
  if (g.output.empty()) {
    out << text;
  } else {
    std::ofstream f(g.output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + g.output + "'");
    f << text;
  }
  return o.bounds_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite computations on shift spaces and verifiers for their constructions", "symdyn"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--max-words", g.max_words, "Cap on enumerated words")->check(CLI::PositiveNumber);
  app.add_option("--max-vertices", g.max_vertices, "Cap on graph vertices")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--horizon", g.horizon, "Word length horizon")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("-o,--output", g.output, "Write the report to a file");

  ShiftInput shift;
  std::string word;
  std::size_t n = 1;

  auto* analyze = app.add_subcommand("analyze", "Structure and entropy bounds of a sofic shift");
  add_shift_options(analyze, shift);

  std::vector<std::string> couple_files;
  auto* couple_cmd = app.add_subcommand("couple", "Coupling (intersection) of presented shifts");
  couple_cmd->add_option("graphs", couple_files, "Graph files")->required();

  auto* lang = app.add_subcommand("language", "Words of length n");
  add_shift_options(lang, shift);
  lang->add_option("--n", n, "Word length")->required();

  auto* rauzy = app.add_subcommand("rauzy", "Rauzy graph of order n");
  add_shift_options(rauzy, shift);
  rauzy->add_option("--n", n, "Order")->required()->check(CLI::PositiveNumber);

  auto* probe = app.add_subcommand("probe", "Mixing of Markov approximations up to --horizon");
  add_shift_options(probe, shift);

  auto* trace = app.add_subcommand("trace", "Least Hamming distance from a word to the language");
  add_shift_options(trace, shift);
  trace->add_option("--word", word, "Target word")->required();

  auto* gamma_cmd = app.add_subcommand("gamma", "Largest occurrence count of a word in L_n");
  add_shift_options(gamma_cmd, shift);
  gamma_cmd->add_option("--word", word, "Pattern")->required();
  gamma_cmd->add_option("--n", n, "Length")->required();

  auto* lambda_cmd = app.add_subcommand("lambda", "Largest limiting frequency of a word");
  add_shift_options(lambda_cmd, shift);
  lambda_cmd->add_option("--word", word, "Pattern")->required();

  auto* center = app.add_subcommand("center", "Measure center of a sofic shift");
  add_shift_options(center, shift);

  std::string xs, ys;
  int alphabet = 2;
  auto* dbar = app.add_subcommand("dbar", "Upper-density distance of two eventually periodic points");
  dbar->add_option("--x", xs, "Point 'preperiod|period'")->required();
  dbar->add_option("--y", ys, "Point 'preperiod|period'")->required();
  dbar->add_option("--alphabet", alphabet, "Alphabet size")->check(CLI::Range(2, 256));

  int level = 1;
  bool with_dstar = false;
  auto* transport = app.add_subcommand("transport", "Level-n transport distance of two periodic measures");
  transport->add_option("--x", xs, "Period word of the first point")->required();
  transport->add_option("--y", ys, "Period word of the second point")->required();
  transport->add_option("--n", level, "Block level")->required()->check(CLI::PositiveNumber);
  transport->add_option("--alphabet", alphabet, "Alphabet size")->check(CLI::Range(2, 256));
  transport->add_flag("--dstar", with_dstar, "Also compute the good-joining distance");

  std::uint64_t samples = 0;
  auto* distance = app.add_subcommand("distance", "Hausdorff-Hamming distance of two languages at --horizon");
  distance->add_option("--x", xs, "First graph file")->required();
  distance->add_option("--y", ys, "Second graph file")->required();
  distance->add_option("--samples", samples, "Sample this many words instead of enumerating (0 = exact)");

  auto* oxtoby = app.add_subcommand("oxtoby", "Oxtoby sequences");
  oxtoby->require_subcommand(1);
  std::vector<std::string> scale{"1", "100", "10000", "1000000"};
  std::uint64_t length = 1000;
  std::string delta = "1/10";
  std::size_t k = 0;
  auto* ox_gen = oxtoby->add_subcommand("gen", "Prefix of the sequence");
  ox_gen->add_option("--p", scale, "Scale p_0, p_1, ...")->delimiter(',');
  ox_gen->add_option("--len", length, "Prefix length");
  auto* ox_verify = oxtoby->add_subcommand("verify", "Counting and frequency bounds up to level k");
  ox_verify->add_option("--p", scale, "Scale p_0, p_1, ...")->delimiter(',');
  ox_verify->add_option("--delta", delta, "Target distance");
  ox_verify->add_option("--k", k, "Largest level (default: the deepest the scale allows)")->check(CLI::PositiveNumber);

  auto* tower = app.add_subcommand("tower", "Nested periodic words");
  tower->require_subcommand(1);
  std::size_t depth = 3;
  std::string ratio = "1/4";
  bool include_words = false;
  std::optional<std::size_t> flip;
  auto* tw_build = tower->add_subcommand("build", "Build V_0 .. V_depth");
  tw_build->add_option("--depth", depth, "Number of levels");
  tw_build->add_option("--ratio", ratio, "delta_k = ratio^k");
  tw_build->add_flag("--words", include_words, "Include the words");
  auto* tw_verify = tower->add_subcommand("verify", "Check the distance, cylinder and sum bounds");
  tw_verify->add_option("--depth", depth, "Number of levels");
  tw_verify->add_option("--ratio", ratio, "delta_k = ratio^k");
  tw_verify->add_option("--flip-level", flip, "Flip the first symbol of V_k before checking");

  auto* proximal = app.add_subcommand("proximal", "Proximal hereditary family");
  proximal->require_subcommand(1);
  std::uint64_t base = 10, gap_base = 2, count = 1;
  auto add_prox = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Index")->check(CLI::PositiveNumber);
    sub->add_option("--base", base, "Cycle length base");
    sub->add_option("--gap-base", gap_base, "Gap base");
  };
  auto* px_build = proximal->add_subcommand("build", "The graph G_n");
  add_prox(px_build);
  auto* px_intersect = proximal->add_subcommand("intersect", "Y_n = X(G_1) cap ... cap X(G_n)");
  add_prox(px_intersect);
  auto* px_shadow = proximal->add_subcommand("shadow", "Zeroing shadows of random points of Y_n");
  add_prox(px_shadow);
  px_shadow->add_option("--len", length, "Point length");
  px_shadow->add_option("--count", count, "Number of points");

  auto* coded = app.add_subcommand("coded", "Coded system B_1, B_2, ...");
  coded->require_subcommand(1);
  CodedOptions copts;
  std::uint64_t blocks = 10000;
  std::string us, vs;
  std::optional<std::uint64_t> m;
  auto* cd_stats = coded->add_subcommand("stats", "Sizes and lengths per level");
  add_coded_options(cd_stats, copts);
  auto* cd_min_t = coded->add_subcommand("min-t", "The lower bounds on t(n)");
  add_coded_options(cd_min_t, copts);
  auto* cd_sample = coded->add_subcommand("sample", "Random members of B_n");
  add_coded_options(cd_sample, copts);
  cd_sample->add_option("--n", n, "Level")->check(CLI::PositiveNumber);
  cd_sample->add_option("--count", count, "Number of members");
  auto* cd_shadow = coded->add_subcommand("shadow", "Shadow a random B_n stream by B_{n+1} words");
  add_coded_options(cd_shadow, copts);
  cd_shadow->add_option("--n", n, "Level")->check(CLI::PositiveNumber);
  cd_shadow->add_option("--blocks", blocks, "Stream length in blocks");
  auto* cd_connect = coded->add_subcommand("connect", "Connecting words of length m (all direct m if omitted)");
  add_coded_options(cd_connect, copts);
  cd_connect->add_option("--n", n, "Level")->check(CLI::PositiveNumber);
  cd_connect->add_option("--u", us, "Left word (default: shortest canonical member)");
  cd_connect->add_option("--v", vs, "Right word (default: longest canonical member)");
  cd_connect->add_option("--m", m, "Length of the connecting word");
  auto* cd_witness = coded->add_subcommand("witness", "Check that u occurs in every member of B_{n+2}");
  add_coded_options(cd_witness, copts);
  cd_witness->add_option("--n", n, "Level")->check(CLI::PositiveNumber);
  cd_witness->add_option("--u", us, "The word u")->required();
  cd_witness->add_option("--samples", samples, "Random members checked when B_{n+2} is too large")
      ->default_val(1000);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome o;
    std::string command;
    if (analyze->parsed()) {
      command = "analyze";
      o = cmd_analyze(shift, g);
    } else if (couple_cmd->parsed()) {
      command = "couple";
      o = cmd_couple(couple_files, g);
    } else if (lang->parsed()) {
      command = "language";
      o = cmd_language(shift, n, g);
    } else if (rauzy->parsed()) {
      command = "rauzy";
      o = cmd_rauzy(shift, n, g);
    } else if (probe->parsed()) {
      command = "probe";
      o = cmd_probe(shift, g);
    } else if (trace->parsed()) {
      command = "trace";
      o = cmd_trace(shift, word, g);
    } else if (gamma_cmd->parsed()) {
      command = "gamma";
      o = cmd_gamma(shift, word, n, g);
    } else if (lambda_cmd->parsed()) {
      command = "lambda";
      o = cmd_lambda(shift, word, g);
    } else if (center->parsed()) {
      command = "center";
      o = cmd_center(shift, g);
    } else if (dbar->parsed()) {
      command = "dbar";
      o = cmd_dbar(xs, ys, alphabet);
    } else if (transport->parsed()) {
      command = "transport";
      o = cmd_transport(xs, ys, level, alphabet, with_dstar);
    } else if (distance->parsed()) {
      command = "distance";
      o = cmd_distance(xs, ys, samples, g);
    } else if (ox_gen->parsed()) {
      command = "oxtoby gen";
      o = cmd_oxtoby_gen(scale, length);
    } else if (ox_verify->parsed()) {
      command = "oxtoby verify";
      o = cmd_oxtoby_verify(scale, delta, k);
    } else if (tw_build->parsed()) {
      command = "tower build";
      o = cmd_tower_build(depth, ratio, include_words);
    } else if (tw_verify->parsed()) {
      command = "tower verify";
      o = cmd_tower_verify(depth, ratio, flip);
    } else if (px_build->parsed()) {
      command = "proximal build";
      o = cmd_proximal_build(base, gap_base, n, g);
    } else if (px_intersect->parsed()) {
      command = "proximal intersect";
      o = cmd_proximal_intersect(base, gap_base, n, g);
    } else if (px_shadow->parsed()) {
      command = "proximal shadow";
      o = cmd_proximal_shadow(base, gap_base, n, length, count, g);
    } else if (cd_stats->parsed()) {
      command = "coded stats";
      o = cmd_coded_stats(copts);
    } else if (cd_min_t->parsed()) {
      command = "coded min-t";
      o = cmd_coded_min_t(copts);
    } else if (cd_sample->parsed()) {
      command = "coded sample";
      o = cmd_coded_sample(copts, n, count, g);
    } else if (cd_shadow->parsed()) {
      command = "coded shadow";
      o = cmd_coded_shadow(copts, n, blocks, g);
    } else if (cd_connect->parsed()) {
      command = "coded connect";
      o = cmd_coded_connect(copts, n, us, vs, m);
    } else if (cd_witness->parsed()) {
      command = "coded witness";
      o = cmd_coded_witness(copts, n, us, samples, g);
    } else {
      err << "no command given\n";
      return 2;
    }
    return emit(o, command, args, g, out);
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const EmptyShift& e) {
    err << "empty shift: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sdyn::cli
