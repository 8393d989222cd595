#include "symdyn/transport.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "symdyn/errors.hpp"

namespace sdyn {

namespace {

BigInt lcm_of_denominators(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  BigInt l = 1;
  for (const auto* v : {&a, &b})
    for (const Rational& r : *v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
  return l;
}

}  // namespace

TransportPlan solve_transport(const std::vector<Rational>& supply, const std::vector<Rational>& demand,
                              const std::function<std::int64_t(std::size_t, std::size_t)>& cost) {
  const std::size_t S = supply.size(), T = demand.size();
  Rational total_s = 0, total_t = 0;
  for (const auto& r : supply) {
    if (r < 0) throw std::invalid_argument("transport: negative supply");
    total_s += r;
  }
  for (const auto& r : demand) {
    if (r < 0) throw std::invalid_argument("transport: negative demand");
    total_t += r;
  }
  if (total_s != total_t) throw std::invalid_argument("transport: supply and demand totals differ");

  const BigInt scale = lcm_of_denominators(supply, demand);
  std::vector<BigInt> left(S), need(T);
  for (std::size_t i = 0; i < S; ++i) left[i] = BigInt(supply[i] * scale);
  for (std::size_t j = 0; j < T; ++j) need[j] = BigInt(demand[j] * scale);

  std::vector<std::int64_t> c(S * T);
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      c[i * T + j] = cost(i, j);
      if (c[i * T + j] < 0) throw std::invalid_argument("transport: negative cost");
    }
  std::vector<BigInt> flow(S * T, 0);

  // Node layout: sources 0..S-1, sinks S..S+T-1, super sink S+T. The
  // super source is implicit: sources with remaining supply start at
  // distance 0 and keep potential 0 because they are always reached first.
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t N = S + T;
  std::vector<std::int64_t> pot(N + 1, 0), dist(N + 1);
  std::vector<std::size_t> prev(N);
  std::vector<char> done(N);

  BigInt remaining = 0;
  for (const auto& v : left) remaining += v;

  while (remaining > 0) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < S; ++i)
      if (left[i] > 0) {
        dist[i] = 0;
        prev[i] = N;
      }
    // Dense Dijkstra on reduced costs c + pot[u] - pot[v].
    std::size_t target = N;
    while (true) {
      std::size_t u = N;
      for (std::size_t v = 0; v < N; ++v)
        if (!done[v] && dist[v] < kInf && (u == N || dist[v] < dist[u])) u = v;
      if (u == N || (target != N && dist[u] >= dist[N])) break;
      done[u] = 1;
      if (u < S) {
        for (std::size_t j = 0; j < T; ++j) {
          const std::size_t v = S + j;
          const std::int64_t nd = dist[u] + c[u * T + j] + pot[u] - pot[v];
          if (nd < dist[v]) {
            dist[v] = nd;
            prev[v] = u;
          }
        }
      } else {
        const std::size_t j = u - S;
        if (need[j] > 0) {
          const std::int64_t nd = dist[u] + pot[u] - pot[N];
          if (nd < dist[N]) {
            dist[N] = nd;
            target = u;
          }
        }
        for (std::size_t i = 0; i < S; ++i) {
          if (flow[i * T + j] == 0) continue;
          const std::int64_t nd = dist[u] - c[i * T + j] + pot[u] - pot[i];
          if (nd < dist[i]) {
            dist[i] = nd;
            prev[i] = u;
          }
        }
      }
    }
    if (target == N) throw VerificationFailure("transport: no augmenting path");
    const std::int64_t cap_dist = dist[N];
    for (std::size_t v = 0; v <= N; ++v) pot[v] += std::min(dist[v], cap_dist);

    BigInt delta = need[target - S];
    std::size_t v = target;
    while (prev[v] != N) {
      const std::size_t u = prev[v];
      if (u >= S) delta = std::min(delta, flow[v * T + (u - S)]);  // backward arc sink u -> source v
      v = u;
    }
    delta = std::min(delta, left[v]);
    left[v] -= delta;
    need[target - S] -= delta;
    v = target;
    while (prev[v] != N) {
      const std::size_t u = prev[v];
      if (u < S)
        flow[u * T + (v - S)] += delta;
      else
        flow[v * T + (u - S)] -= delta;
      v = u;
    }
    remaining -= delta;
  }

  // Dual certificate: every forward arc has nonnegative reduced cost and
  // every arc carrying flow has reduced cost zero.
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      const std::int64_t rc = c[i * T + j] + pot[i] - pot[S + j];
      if (rc < 0 || (flow[i * T + j] > 0 && rc != 0))
        throw VerificationFailure("transport: optimality certificate failed");
    }

  TransportPlan plan;
  BigInt total_cost = 0;
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      const BigInt& f = flow[i * T + j];
      if (f == 0) continue;
      total_cost += f * c[i * T + j];
      plan.entries.push_back({i, j, make_rational(f, scale)});
    }
  plan.cost = make_rational(total_cost, scale);
  return plan;
}

}  // namespace sdyn
