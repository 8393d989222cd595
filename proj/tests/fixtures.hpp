#pragma once

#include <random>
#include <set>

#include "symdyn/sofic.hpp"

namespace fixture {

using sdyn::Alphabet;
using sdyn::Edge;
using sdyn::LabeledGraph;
using sdyn::Vertex;

// No two consecutive 1s.
inline LabeledGraph golden_mean() { return LabeledGraph(Alphabet(2), 2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}); }

// Blocks of 1s between 0s have even length.
inline LabeledGraph even_shift() { return LabeledGraph(Alphabet(2), 2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}}); }

inline LabeledGraph full_shift(int k = 2) {
  std::vector<sdyn::Edge> edges;
  for (int a = 0; a < k; ++a) edges.push_back({0, 0, static_cast<sdyn::Symbol>(a)});
  return LabeledGraph(Alphabet(k), 1, edges);
}

// A directed cycle of the given length labelled 1, with a parallel 0 edge
// on every step, so 0 is safe and the period is `length`.
inline LabeledGraph safe_cycle(sdyn::Vertex length) {
  std::vector<sdyn::Edge> edges;
  for (sdyn::Vertex v = 0; v < length; ++v) {
    edges.push_back({v, (v + 1) % length, 0});
    edges.push_back({v, (v + 1) % length, 1});
  }
  return LabeledGraph(Alphabet(2), length, edges);
}

// Blocks of 1s between 0s have odd length.
inline LabeledGraph odd_shift() {
  return LabeledGraph(Alphabet(2), 3, {{0, 0, 0}, {0, 1, 1}, {1, 2, 1}, {2, 1, 1}, {1, 0, 0}});
}

// Random strongly connected graph of exact period p in which every edge
// has a parallel 0-labelled edge. Vertices are arranged in p classes;
// edges only go from class c to class c+1, a long cycle visits every
// vertex and a short cycle of length p pins the period.
inline LabeledGraph random_safe_graph(std::mt19937_64& rng, Vertex p) {
  const Vertex s = std::uniform_int_distribution<Vertex>(1, 3)(rng);
  auto id = [&](Vertex c, Vertex i) { return c * s + i; };
  std::set<std::pair<Vertex, Vertex>> arcs;
  for (Vertex i = 0; i < s; ++i)
    for (Vertex c = 0; c < p; ++c)
      arcs.insert(c + 1 < p ? std::pair{id(c, i), id(c + 1, i)} : std::pair{id(c, i), id(0, (i + 1) % s)});
  arcs.insert({id(p - 1, 0), id(0, 0)});
  const int extra = std::uniform_int_distribution<int>(0, int(p * s))(rng);
  for (int e = 0; e < extra; ++e) {
    const Vertex c = std::uniform_int_distribution<Vertex>(0, p - 1)(rng);
    const Vertex i = std::uniform_int_distribution<Vertex>(0, s - 1)(rng);
    const Vertex j = std::uniform_int_distribution<Vertex>(0, s - 1)(rng);
    arcs.insert({id(c, i), id((c + 1) % p, j)});
  }
  std::vector<Edge> edges;
  for (const auto& [a, b] : arcs) {
    edges.push_back({a, b, 0});
    if (rng() % 2) edges.push_back({a, b, 1});
  }
  return LabeledGraph(Alphabet(2), p * s, edges);
}

}  // namespace fixture
