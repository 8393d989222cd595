#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "symdyn/rational.hpp"

namespace sdyn {

/// One nonzero cell of a transportation plan.
struct FlowEntry {
  std::size_t source = 0;
  std::size_t sink = 0;
  Rational mass;
};

struct TransportPlan {
  Rational cost;
  std::vector<FlowEntry> entries;  ///< sorted by (source, sink)
};

/// Exact balanced transportation problem: move `supply` onto `demand`
/// (each a probability vector over its own index set, equal totals) at
/// minimal total cost sum mass * cost(i, j). Costs must be nonnegative.
///
/// The masses are scaled to integers by the lcm of their denominators and
/// solved by successive shortest paths with Dijkstra on reduced costs. The
/// final node potentials are checked as a dual certificate before
/// returning; a failed check throws VerificationFailure.
TransportPlan solve_transport(const std::vector<Rational>& supply, const std::vector<Rational>& demand,
                              const std::function<std::int64_t(std::size_t, std::size_t)>& cost);

}  // namespace sdyn
