#include "symdyn/sofic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "symdyn/errors.hpp"

namespace sdyn {

LabeledGraph::LabeledGraph(Alphabet alphabet, Vertex vertex_count, std::vector<Edge> edges)
    : alphabet_(alphabet), vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ == 0) throw std::invalid_argument("a graph needs at least one vertex");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.src >= vertex_count_ || e.dst >= vertex_count_)
      throw std::invalid_argument("edge " + std::to_string(i) + " references a vertex >= " +
                                  std::to_string(vertex_count_));
    if (!alphabet_.contains(e.label))
      throw std::invalid_argument("edge " + std::to_string(i) + " has label " + std::to_string(e.label) +
                                  " outside the alphabet");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  offsets_.assign(static_cast<std::size_t>(vertex_count_) + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.src + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

LabeledGraph prune(const LabeledGraph& g) {
  const Vertex n = g.vertex_count();
  std::vector<std::uint32_t> in_deg(n, 0), out_deg(n, 0);
  std::vector<std::vector<Vertex>> preds(n);
  for (const Edge& e : g.edges()) {
    ++out_deg[e.src];
    ++in_deg[e.dst];
    preds[e.dst].push_back(e.src);
  }
  std::vector<char> alive(n, 1);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v)
    if (in_deg[v] == 0 || out_deg[v] == 0) {
      alive[v] = 0;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const Edge& e : g.out_edges(v)) {
      if (alive[e.dst] && --in_deg[e.dst] == 0) {
        alive[e.dst] = 0;
        queue.push_back(e.dst);
      }
    }
    for (Vertex u : preds[v]) {
      if (alive[u] && --out_deg[u] == 0) {
        alive[u] = 0;
        queue.push_back(u);
      }
    }
  }
  std::vector<Vertex> index(n, 0);
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) index[v] = next++;
  if (next == 0) throw EmptyShift("graph presents the empty shift");
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges())
    if (alive[e.src] && alive[e.dst]) edges.push_back({index[e.src], index[e.dst], e.label});
  return LabeledGraph(g.alphabet(), next, std::move(edges));
}

Components strongly_connected_components(const LabeledGraph& g) {
  const Vertex n = g.vertex_count();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  Components out;
  out.component_of.assign(n, kUnset);
  std::uint32_t counter = 0;
  // Explicit call stack: (vertex, next out-edge position).
  std::vector<std::pair<Vertex, std::size_t>> call;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto succ = g.out_edges(v);
      if (pos < succ.size()) {
        const Vertex w = succ[pos++].dst;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          const Vertex w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.component_of[w] = out.count;
          if (w == v) break;
        }
        ++out.count;
      }
      const Vertex finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  return out;
}

bool is_strongly_connected(const LabeledGraph& g) {
  if (g.vertex_count() == 0) return false;
  return strongly_connected_components(g).count == 1;
}

namespace {

// gcd of level differences over the edges inside one component, BFS from
// `root` restricted to that component.
std::uint64_t component_period(const LabeledGraph& g, const Components& comps, Vertex root) {
  const std::uint32_t c = comps.component_of[root];
  std::map<Vertex, std::int64_t> level;
  std::deque<Vertex> queue{root};
  level[root] = 0;
  std::uint64_t d = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const Edge& e : g.out_edges(v)) {
      if (comps.component_of[e.dst] != c) continue;
      auto it = level.find(e.dst);
      if (it == level.end()) {
        level[e.dst] = level[v] + 1;
        queue.push_back(e.dst);
      } else {
        const std::int64_t diff = level[v] + 1 - it->second;
        d = std::gcd(d, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
      }
    }
  }
  return d;
}

}  // namespace

std::uint64_t period(const LabeledGraph& g) {
  const Components comps = strongly_connected_components(g);
  if (comps.count != 1) throw std::invalid_argument("period: graph is not strongly connected");
  // Tree edges contribute difference 0, so the gcd over non-tree edges is
  // the gcd over all edges.
  const std::uint64_t d = component_period(g, comps, 0);
  if (d == 0) throw std::invalid_argument("period: graph has no cycle");
  return d;
}

std::vector<ComponentPeriod> component_periods(const LabeledGraph& g) {
  const Components comps = strongly_connected_components(g);
  std::vector<Vertex> root(comps.count, std::numeric_limits<Vertex>::max());
  std::vector<std::uint64_t> size(comps.count, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto c = comps.component_of[v];
    if (root[c] == std::numeric_limits<Vertex>::max()) root[c] = v;
    ++size[c];
  }
  std::vector<ComponentPeriod> out;
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    const std::uint64_t d = component_period(g, comps, root[c]);
    if (d > 0) out.push_back({c, size[c], d});
  }
  return out;
}

std::vector<Symbol> safe_symbols(const LabeledGraph& g) {
  std::vector<Symbol> candidates(g.alphabet().size());
  std::iota(candidates.begin(), candidates.end(), Symbol{0});
  // Edges are sorted by (src, label, dst); collect labels per (src, dst).
  std::map<std::pair<Vertex, Vertex>, std::vector<Symbol>> labels;
  for (const Edge& e : g.edges()) labels[{e.src, e.dst}].push_back(e.label);
  for (auto& [pair, ls] : labels) {
    std::sort(ls.begin(), ls.end());
    std::vector<Symbol> kept;
    std::set_intersection(candidates.begin(), candidates.end(), ls.begin(), ls.end(), std::back_inserter(kept));
    candidates.swap(kept);
    if (candidates.empty()) break;
  }
  return candidates;
}

namespace {

LabeledGraph couple_pair(const LabeledGraph& a, const LabeledGraph& b, std::uint64_t vertex_cap) {
  const std::uint64_t size = std::uint64_t{a.vertex_count()} * b.vertex_count();
  if (size > vertex_cap)
    throw CapExceeded("coupling has " + std::to_string(size) + " vertices, cap is " + std::to_string(vertex_cap),
                      size);
  const Vertex nb = b.vertex_count();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a.vertex_count(); ++u) {
    const auto ea = a.out_edges(u);
    for (Vertex v = 0; v < nb; ++v) {
      const auto eb = b.out_edges(v);
      // Both ranges are sorted by label; walk them in step.
      std::size_t i = 0, j = 0;
      while (i < ea.size() && j < eb.size()) {
        if (ea[i].label < eb[j].label) {
          ++i;
        } else if (eb[j].label < ea[i].label) {
          ++j;
        } else {
          const Symbol l = ea[i].label;
          std::size_t i_end = i, j_end = j;
          while (i_end < ea.size() && ea[i_end].label == l) ++i_end;
          while (j_end < eb.size() && eb[j_end].label == l) ++j_end;
          for (std::size_t x = i; x < i_end; ++x)
            for (std::size_t y = j; y < j_end; ++y)
              edges.push_back({static_cast<Vertex>(u * nb + v), static_cast<Vertex>(ea[x].dst * nb + eb[y].dst), l});
          i = i_end;
          j = j_end;
        }
      }
    }
  }
  return prune(LabeledGraph(a.alphabet(), static_cast<Vertex>(size), std::move(edges)));
}

}  // namespace

LabeledGraph couple(std::span<const LabeledGraph> graphs, std::uint64_t vertex_cap) {
  if (graphs.empty()) throw std::invalid_argument("couple needs at least one graph");
  for (const auto& g : graphs)
    if (!(g.alphabet() == graphs.front().alphabet()))
      throw std::invalid_argument("couple: graphs have different alphabets");
  LabeledGraph acc = prune(graphs.front());
  for (std::size_t i = 1; i < graphs.size(); ++i) acc = couple_pair(acc, prune(graphs[i]), vertex_cap);
  return acc;
}

bool is_mixing_presentation(const LabeledGraph& g) { return is_strongly_connected(g) && period(g) == 1; }

namespace {

// Vertices reachable from `from` by one edge labeled `a`, sorted.
void step(const LabeledGraph& g, const std::vector<Vertex>& from, Symbol a, std::vector<Vertex>& to) {
  to.clear();
  for (Vertex v : from) {
    const auto out = g.out_edges(v);
    auto it = std::lower_bound(out.begin(), out.end(), a, [](const Edge& e, Symbol s) { return e.label < s; });
    for (; it != out.end() && it->label == a; ++it) to.push_back(it->dst);
  }
  std::sort(to.begin(), to.end());
  to.erase(std::unique(to.begin(), to.end()), to.end());
}

std::vector<Vertex> all_vertices(const LabeledGraph& g) {
  std::vector<Vertex> v(g.vertex_count());
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

// Depth-first enumeration of label words from a frontier, in lexicographic
// order. `visit` is called on complete words with their final frontier.
template <typename Visit>
void enumerate_words(const LabeledGraph& g, std::vector<Vertex> frontier, std::size_t n, Visit&& visit) {
  Word word;
  word.reserve(n);
  std::vector<std::vector<Vertex>> frontiers(n + 1);
  frontiers[0] = std::move(frontier);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      visit(word, frontiers[depth]);
      return;
    }
    for (int a = 0; a < g.alphabet().size(); ++a) {
      step(g, frontiers[depth], static_cast<Symbol>(a), frontiers[depth + 1]);
      if (frontiers[depth + 1].empty()) continue;
      word.push_back(static_cast<Symbol>(a));
      rec(depth + 1);
      word.pop_back();
    }
  };
  if (!frontiers[0].empty()) rec(0);
}

struct StopEnumeration {};

}  // namespace

bool accepts(const LabeledGraph& g, const Word& w) {
  std::vector<Vertex> frontier = all_vertices(g), next;
  for (Symbol s : w) {
    if (frontier.empty()) return false;
    step(g, frontier, s, next);
    frontier.swap(next);
  }
  return !frontier.empty();
}

std::vector<Word> language(const LabeledGraph& g, std::size_t n, std::uint64_t cap) {
  std::vector<Word> out;
  enumerate_words(g, all_vertices(g), n, [&](const Word& w, const std::vector<Vertex>&) {
    if (out.size() >= cap)
      throw CapExceeded("language of length " + std::to_string(n) + " has more than " + std::to_string(cap) +
                            " words",
                        cap + 1);
    out.push_back(w);
  });
  return out;
}

std::uint64_t language_size(const LabeledGraph& g, std::size_t n, std::uint64_t cap) {
  std::uint64_t count = 0;
  enumerate_words(g, all_vertices(g), n, [&](const Word&, const std::vector<Vertex>&) {
    if (count >= cap)
      throw CapExceeded("language of length " + std::to_string(n) + " has more than " + std::to_string(cap) +
                            " words",
                        cap + 1);
    ++count;
  });
  return count;
}

EntropyBounds entropy_bounds(const LabeledGraph& g, std::size_t n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("entropy_bounds needs n >= 1");
  EntropyBounds out;
  out.horizon = n;
  out.upper = std::log(static_cast<double>(language_size(g, n, cap))) / static_cast<double>(n);
  // Closed-path label families at each vertex; bounded work so large
  // presentations only probe their first vertices.
  const std::size_t max_cycle = std::min<std::size_t>(n, 10);
  const Vertex probe = std::min<Vertex>(g.vertex_count(), 256);
  for (std::size_t c = 1; c <= max_cycle; ++c) {
    for (Vertex v = 0; v < probe; ++v) {
      std::uint64_t closed = 0, visited = 0;
      try {
        enumerate_words(g, {v}, c, [&](const Word&, const std::vector<Vertex>& fr) {
          if (++visited > cap) throw StopEnumeration{};
          if (std::binary_search(fr.begin(), fr.end(), v)) ++closed;
        });
      } catch (const StopEnumeration&) {
      }
      if (closed > 1) {
        const double h = std::log(static_cast<double>(closed)) / static_cast<double>(c);
        if (h > out.lower) {
          out.lower = h;
          out.cycle_length = c;
        }
      }
    }
  }
  return out;
}

SoficShift::SoficShift(const LabeledGraph& g) : graph_(prune(g)) {
  strongly_connected_ = is_strongly_connected(graph_);
  period_ = strongly_connected_ ? sdyn::period(graph_) : 0;
  safe_ = sdyn::safe_symbols(graph_);
}

Coupling::Coupling(std::vector<LabeledGraph> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("coupling needs at least one graph");
  for (const auto& g : factors_)
    if (!(g.alphabet() == factors_.front().alphabet()))
      throw std::invalid_argument("coupling: graphs have different alphabets");
  factorwise_ = true;
  std::vector<Symbol> common;
  for (std::size_t i = 0; i < factors_.size() && factorwise_; ++i) {
    const auto& g = factors_[i];
    if (!(prune(g) == g)) factorwise_ = false;
    const auto safe = safe_symbols(g);
    if (i == 0) {
      common = safe;
    } else {
      std::vector<Symbol> kept;
      std::set_intersection(common.begin(), common.end(), safe.begin(), safe.end(), std::back_inserter(kept));
      common.swap(kept);
    }
  }
  if (common.empty()) factorwise_ = false;
}

std::uint64_t Coupling::product_size() const {
  std::uint64_t size = 1;
  for (const auto& g : factors_) size *= g.vertex_count();
  return size;
}

LabeledGraph Coupling::materialize(std::uint64_t vertex_cap) const { return couple(factors_, vertex_cap); }

bool Coupling::accepts(const Word& w) const {
  if (!factorwise_) return sdyn::accepts(materialize(), w);
  return std::all_of(factors_.begin(), factors_.end(), [&](const LabeledGraph& g) { return sdyn::accepts(g, w); });
}

Word random_path_word(const LabeledGraph& g, std::size_t length, std::mt19937_64& rng, std::optional<Vertex> start) {
  if (g.vertex_count() == 0) throw std::invalid_argument("random walk on an empty graph");
  Vertex v = start ? *start : static_cast<Vertex>(std::uniform_int_distribution<std::uint64_t>(
                                                      0, g.vertex_count() - 1)(rng));
  Word w;
  w.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto out = g.out_edges(v);
    if (out.empty()) throw std::invalid_argument("random walk reached a vertex without out-edges");
    const Edge& e = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    w.push_back(e.label);
    v = e.dst;
  }
  return w;
}

namespace {

// First length at which w stops labeling a path of g, if any.
std::optional<std::size_t> rejection_length(const LabeledGraph& g, const Word& w) {
  std::vector<Vertex> frontier = all_vertices(g), next;
  for (std::size_t i = 0; i < w.size(); ++i) {
    step(g, frontier, w[i], next);
    frontier.swap(next);
    if (frontier.empty()) return i + 1;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Word> find_language_gap(const LabeledGraph& a, const LabeledGraph& b, std::size_t max_length,
                                      std::size_t state_cap) {
  std::optional<Word> best;
  auto consider = [&](const Word& w) {
    if (auto len = rejection_length(b, w)) {
      Word cut(w.begin(), w.begin() + *len);
      if (!best || cut.size() < best->size() || (cut.size() == best->size() && cut < *best)) best = cut;
    }
  };
  for (int greedy_max = 1; greedy_max >= 0; --greedy_max) {
    for (Vertex start = 0; start < a.vertex_count(); ++start) {
      Word w;
      Vertex v = start;
      for (std::size_t i = 0; i < max_length; ++i) {
        const auto out = a.out_edges(v);
        if (out.empty()) break;
        const Edge& e = greedy_max ? out.back() : out.front();
        w.push_back(e.label);
        v = e.dst;
      }
      consider(w);
    }
  }
  // Breadth-first over (vertex of a, reachable set of b).
  using State = std::pair<Vertex, std::vector<Vertex>>;
  std::map<State, std::pair<std::size_t, Symbol>> parent;  // state -> (index of predecessor, label)
  std::vector<State> states;
  std::vector<std::size_t> depth;
  for (Vertex v = 0; v < a.vertex_count(); ++v) {
    State s{v, all_vertices(b)};
    if (parent.emplace(s, std::make_pair(std::size_t(-1), Symbol{0})).second) {
      states.push_back(s);
      depth.push_back(0);
    }
  }
  std::vector<Vertex> next;
  for (std::size_t head = 0; head < states.size(); ++head) {
    if (depth[head] >= max_length || (best && depth[head] + 1 >= best->size())) break;
    const State cur = states[head];
    for (const Edge& e : a.out_edges(cur.first)) {
      step(b, cur.second, e.label, next);
      State nxt{e.dst, next};
      if (parent.count(nxt)) continue;
      parent.emplace(nxt, std::make_pair(head, e.label));
      if (next.empty()) {
        Word w{e.label};
        for (std::size_t i = head; parent.at(states[i]).first != std::size_t(-1); i = parent.at(states[i]).first)
          w.push_back(parent.at(states[i]).second);
        std::reverse(w.begin(), w.end());
        if (!best || w.size() < best->size() || (w.size() == best->size() && w < *best)) best = w;
        continue;
      }
      if (states.size() >= state_cap) return best;
      states.push_back(nxt);
      depth.push_back(depth[head] + 1);
    }
  }
  return best;
}

nlohmann::ordered_json graph_to_json(const LabeledGraph& g) {
  nlohmann::ordered_json j;
  j["alphabet_size"] = g.alphabet().size();
  j["vertices"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json je;
    je["src"] = e.src;
    je["dst"] = e.dst;
    je["label"] = static_cast<int>(e.label);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

LabeledGraph graph_from_json(const nlohmann::json& j) {
  auto need_uint = [](const nlohmann::json& obj, const char* key, const std::string& where) -> std::uint64_t {
    if (!obj.is_object() || !obj.contains(key)) throw std::invalid_argument(where + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw std::invalid_argument(where + ": field '" + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
  };
  const auto k = need_uint(j, "alphabet_size", "graph");
  const auto n = need_uint(j, "vertices", "graph");
  if (n > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("graph: too many vertices");
  if (!j.contains("edges") || !j.at("edges").is_array()) throw std::invalid_argument("graph: 'edges' must be an array");
  std::vector<Edge> edges;
  const auto& je = j.at("edges");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const auto src = need_uint(je[i], "src", where), dst = need_uint(je[i], "dst", where),
               label = need_uint(je[i], "label", where);
    if (label > 255) throw std::invalid_argument(where + ": label out of range");
    if (src >= n || dst >= n) throw std::invalid_argument(where + ": vertex out of range");
    edges.push_back({static_cast<Vertex>(src), static_cast<Vertex>(dst), static_cast<Symbol>(label)});
  }
  return LabeledGraph(Alphabet(static_cast<int>(k)), static_cast<Vertex>(n), std::move(edges));
}

std::string graph_to_text(const LabeledGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

LabeledGraph graph_from_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed graph JSON at byte ") + std::to_string(e.byte) + ": " +
                                e.what());
  }
  return graph_from_json(j);
}

std::string graph_to_dot(const LabeledGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  os << "  alphabet_size=" << g.alphabet().size() << ";\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) os << "  v" << v << ";\n";
  for (const Edge& e : g.edges())
    os << "  v" << e.src << " -> v" << e.dst << " [label=\"" << static_cast<int>(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

LabeledGraph graph_from_dot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("DOT line " + std::to_string(line_no) + ": " + why);
  };
  int alphabet = -1;
  std::uint64_t vertices = 0;
  std::vector<Edge> edges;
  bool opened = false, closed = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const std::string t = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (closed) fail("text after closing brace");
    if (!opened) {
      if (t.rfind("digraph", 0) != 0 || t.back() != '{') fail("expected 'digraph NAME {'");
      opened = true;
      continue;
    }
    if (t == "}") {
      closed = true;
      continue;
    }
    unsigned long a = 0, c = 0;
    int label = 0;
    int used = 0;
    if (std::sscanf(t.c_str(), "alphabet_size=%lu;%n", &a, &used) == 1 && used == int(t.size())) {
      alphabet = static_cast<int>(a);
    } else if (std::sscanf(t.c_str(), "v%lu -> v%lu [label=\"%d\"];%n", &a, &c, &label, &used) == 3 &&
               used == int(t.size())) {
      if (label < 0 || label > 255) fail("label out of range");
      edges.push_back({Vertex(a), Vertex(c), Symbol(label)});
    } else if (std::sscanf(t.c_str(), "v%lu;%n", &a, &used) == 1 && used == int(t.size())) {
      if (a != vertices) fail("vertices must be declared in order v0, v1, ...");
      ++vertices;
    } else {
      fail("unrecognized statement '" + t + "'");
    }
  }
  if (!closed) fail("missing closing brace");
  if (alphabet < 1) throw std::invalid_argument("DOT input lacks alphabet_size");
  return LabeledGraph(Alphabet(alphabet), Vertex(vertices), std::move(edges));
}

}  // namespace sdyn
