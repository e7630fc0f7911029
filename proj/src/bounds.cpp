#include "percolab/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <queue>
#include <thread>

#include "percolab/counter_rng.hpp"
#include "percolab/errors.hpp"

namespace percolab {

const char* to_string(BoundaryMethod m) noexcept {
  return m == BoundaryMethod::exhaustive ? "exhaustive" : "branch-and-bound";
}

std::uint64_t boundary_of_set(const GraphView& g, std::span<const VertexCode> set) {
  const std::uint64_t order = g.order();
  if (set.empty()) throw InvalidSet("set must be nonempty");
  if (set.size() >= order) throw InvalidSet("set must be a proper subset");
  std::vector<VertexCode> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidSet("set has repeated vertices");
  }
  if (sorted.back() >= order) throw InvalidSet("set vertex out of range");
  std::uint64_t boundary = 0;
  for (VertexCode v : sorted) {
    for (VertexCode w : g.neighbors(v)) {
      if (!std::binary_search(sorted.begin(), sorted.end(), w)) ++boundary;
    }
  }
  return boundary;
}

namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > 1e18L) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(c));
}

std::vector<Vertex> mask_to_vertices(std::uint64_t mask) {
  std::vector<Vertex> out;
  while (mask) {
    out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

struct MaskBest {
  std::uint64_t value = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t mask = 0;
  void offer(std::uint64_t v, std::uint64_t m) {
    if (v < value || (v == value && m < mask)) {
      value = v;
      mask = m;
    }
  }
};

// All s-subsets of an order <= 64 graph, blocked by their smallest vertex.
MinBoundaryResult exhaustive_min_boundary(const SimpleGraph& g, std::uint64_t s, unsigned workers) {
  const std::uint32_t order = g.order();
  std::vector<std::uint64_t> nbr(order, 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= std::uint64_t{1} << e.v;
    nbr[e.v] |= std::uint64_t{1} << e.u;
  }
  auto boundary = [&](std::uint64_t mask) {
    std::uint64_t b = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      b += static_cast<std::uint64_t>(std::popcount(nbr[std::countr_zero(rest)] & ~mask));
    }
    return b;
  };
  auto block = [&](std::uint32_t first, MaskBest& best) {
    const std::uint64_t lead = std::uint64_t{1} << first;
    const std::uint32_t width = order - first - 1;
    const std::uint64_t rest = s - 1;
    if (rest == 0) {
      best.offer(boundary(lead), lead);
      return;
    }
    if (rest > width) return;
    const std::uint64_t limit = std::uint64_t{1} << width;  // width <= 63
    std::uint64_t x = (std::uint64_t{1} << rest) - 1;
    while (x < limit) {
      const std::uint64_t mask = lead | (x << (first + 1));
      best.offer(boundary(mask), mask);
      const std::uint64_t c = x & (~x + 1);
      const std::uint64_t r = x + c;
      x = (((r ^ x) >> 2) / c) | r;
    }
  };

  MaskBest overall;
  const std::uint32_t blocks = static_cast<std::uint32_t>(order - s + 1);
  if (workers <= 1) {
    for (std::uint32_t i = 0; i < blocks; ++i) block(i, overall);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::mutex merge;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        MaskBest local;
        for (std::uint32_t i; (i = next.fetch_add(1)) < blocks;) block(i, local);
        std::lock_guard lock(merge);
        overall.offer(local.value, local.mask);
      });
    }
  }
  return {overall.value, BoundaryMethod::exhaustive, mask_to_vertices(overall.mask)};
}

// Depth-first include/exclude search over vertices in BFS order. The bound for
// a partial set P with r vertices still to add is
//   b(P) + sum of the r smallest  deg(c) - 2|N(c)∩P| - min(r-1, deg(c)-|N(c)∩P|)
// over the undecided candidates c, which never exceeds b(P ∪ R) for any
// completion R.
class BoundarySearch {
 public:
  BoundarySearch(const SimpleGraph& g, std::uint64_t s, std::uint64_t node_budget)
      : g_(g), s_(s), budget_(node_budget), in_set_(g.order(), 0), inside_(g.order(), 0) {
    bfs_order();
    // Incumbent: the first s vertices of the BFS order.
    for (std::uint64_t i = 0; i < s_; ++i) add(order_[i]);
    best_ = partial_;
    best_set_.assign(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(s_));
    for (std::uint64_t i = s_; i-- > 0;) remove(order_[i]);
  }

  MinBoundaryResult run() {
    descend(0);
    std::vector<Vertex> witness = best_set_;
    std::sort(witness.begin(), witness.end());
    return {best_, BoundaryMethod::branch_and_bound, witness};
  }

 private:
  void bfs_order() {
    const std::uint32_t n = g_.order();
    std::vector<char> seen(n, 0);
    for (Vertex start = 0; start < n; ++start) {
      if (seen[start]) continue;
      std::queue<Vertex> frontier;
      frontier.push(start);
      seen[start] = 1;
      while (!frontier.empty()) {
        const Vertex v = frontier.front();
        frontier.pop();
        order_.push_back(v);
        for (Vertex w : g_.neighbors(v)) {
          if (!seen[w]) {
            seen[w] = 1;
            frontier.push(w);
          }
        }
      }
    }
  }

  void add(Vertex v) {
    partial_ += g_.degree(v);
    partial_ -= 2 * inside_[v];
    in_set_[v] = 1;
    ++chosen_;
    current_.push_back(v);
    for (Vertex w : g_.neighbors(v)) ++inside_[w];
  }

  void remove(Vertex v) {
    for (Vertex w : g_.neighbors(v)) --inside_[w];
    --chosen_;
    in_set_[v] = 0;
    current_.pop_back();
    partial_ += 2 * inside_[v];
    partial_ -= g_.degree(v);
  }

  std::uint64_t lower_bound(std::size_t pos) {
    const std::uint64_t r = s_ - chosen_;
    if (r == 0) return partial_;
    scores_.clear();
    for (std::size_t i = pos; i < order_.size(); ++i) {
      const Vertex c = order_[i];
      const std::int64_t deg = g_.degree(c);
      const std::int64_t in = inside_[c];
      const std::int64_t internal = std::min<std::int64_t>(static_cast<std::int64_t>(r) - 1, deg - in);
      scores_.push_back(deg - 2 * in - internal);
    }
    std::nth_element(scores_.begin(), scores_.begin() + static_cast<std::ptrdiff_t>(r - 1),
                     scores_.end());
    std::int64_t sum = static_cast<std::int64_t>(partial_);
    for (std::uint64_t i = 0; i < r; ++i) sum += scores_[i];
    return sum < 0 ? 0 : static_cast<std::uint64_t>(sum);
  }

  void descend(std::size_t pos) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("branch-and-bound node budget exhausted for s = " + std::to_string(s_),
                           best_);
    }
    if (chosen_ == s_) {
      if (partial_ < best_) {
        best_ = partial_;
        best_set_ = current_;
      }
      return;
    }
    if (s_ - chosen_ > order_.size() - pos) return;
    if (lower_bound(pos) >= best_) return;
    const Vertex v = order_[pos];
    add(v);
    descend(pos + 1);
    remove(v);
    descend(pos + 1);
  }

  const SimpleGraph& g_;
  std::uint64_t s_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Vertex> order_;
  std::vector<char> in_set_;
  std::vector<std::uint32_t> inside_;
  std::vector<Vertex> current_;
  std::vector<std::int64_t> scores_;
  std::uint64_t partial_ = 0;
  std::uint64_t chosen_ = 0;
  std::uint64_t best_ = 0;
  std::vector<Vertex> best_set_;
};

}  // namespace

MinBoundaryResult min_boundary(const SimpleGraph& g, std::uint64_t s,
                               const MinBoundaryOptions& options) {
  const std::uint64_t order = g.order();
  if (s < 1 || s > order / 2) {
    throw InvalidArgument("s must satisfy 1 <= s <= order/2 (s = " + std::to_string(s) + ")");
  }
  if (order <= 64 && binomial_saturating(order, s) <= options.enumeration_budget) {
    return exhaustive_min_boundary(g, s, options.workers);
  }
  return BoundarySearch(g, s, options.node_budget).run();
}

MinBoundaryResult min_boundary(const GraphView& g, std::uint64_t s,
                               const MinBoundaryOptions& options) {
  return min_boundary(materialize(g), s, options);
}

IsoperimetricProfile isoperimetric_profile(const GraphView& g, std::string graph_id,
                                           std::optional<std::uint64_t> s_max,
                                           const MinBoundaryOptions& options) {
  const SimpleGraph graph = materialize(g);
  IsoperimetricProfile profile;
  profile.graph_id = std::move(graph_id);
  const std::uint64_t top = s_max.value_or(graph.order() / 2);
  for (std::uint64_t s = 1; s <= top; ++s) {
    auto r = min_boundary(graph, s, options);
    if (r.method == BoundaryMethod::branch_and_bound) profile.method = r.method;
    profile.values.push_back(r.value);
  }
  return profile;
}

bool ConditionsReport::all_pass() const noexcept {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
}

namespace {

double log_base(std::uint64_t s, std::uint32_t k) {
  if (k == 2) return std::log2(static_cast<double>(s));
  return std::log(static_cast<double>(s)) / std::log(static_cast<double>(k));
}

bool at_least(double lhs, double rhs) { return lhs >= rhs - 1e-9 * std::max(1.0, std::abs(rhs)); }

}  // namespace

double condition5_rhs(double epsilon, std::uint32_t max_degree, std::uint64_t s, std::uint32_t k,
                      int n) {
  return epsilon * max_degree * static_cast<double>(s) * (1.0 - log_base(s, k) / n);
}

ConditionsReport check_basic_conditions_at(const GraphView& g, int n, std::uint32_t k,
                                           const BasicConditionsParams& params,
                                           const MinBoundaryOptions& options) {
  if (!(params.epsilon_prime > 0 && params.c > 0 && params.epsilon > 0)) {
    throw InvalidArgument("epsilon', c and epsilon must be positive");
  }
  if (n < 1 || k < 2) throw InvalidArgument("need n >= 1 and k >= 2");

  ConditionsReport rep;
  rep.n = n;
  rep.k = k;
  for (int i = 0; i < 5; ++i) rep.conditions[static_cast<std::size_t>(i)].condition = i + 1;

  const std::uint64_t order = g.order();
  const double k_pow_n = std::pow(static_cast<double>(k), n);

  // 1: order = k^n
  auto& c1 = rep.conditions[0];
  c1.lhs = static_cast<double>(order);
  c1.rhs = k_pow_n;
  c1.pass = c1.lhs == c1.rhs;
  c1.detail = "order " + std::to_string(order) + (c1.pass ? " = " : " != ") + "k^n";

  VertexCode argmin = 0;
  VertexCode argmax = 0;
  std::uint32_t delta = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t big_delta = 0;
  for (VertexCode v = 0; v < order; ++v) {
    const auto d = g.degree(v);
    if (d < delta) {
      delta = d;
      argmin = v;
    }
    if (d > big_delta) {
      big_delta = d;
      argmax = v;
    }
  }

  // 2: min degree >= n
  auto& c2 = rep.conditions[1];
  c2.lhs = delta;
  c2.rhs = n;
  c2.pass = delta >= static_cast<std::uint32_t>(n);
  c2.witness_vertex = argmin;
  c2.detail = "min degree " + std::to_string(delta) + " at vertex " + std::to_string(argmin);

  // 3: Delta / delta <= n^(1 - eps')
  auto& c3 = rep.conditions[2];
  c3.lhs = delta == 0 ? std::numeric_limits<double>::infinity()
                      : static_cast<double>(big_delta) / static_cast<double>(delta);
  c3.rhs = std::pow(static_cast<double>(n), 1.0 - params.epsilon_prime);
  c3.pass = at_least(c3.rhs, c3.lhs);
  c3.witness_vertex = argmax;
  c3.detail = "degree ratio " + std::to_string(c3.lhs);

  // 4: Delta <= n^c
  auto& c4 = rep.conditions[3];
  c4.lhs = big_delta;
  c4.rhs = std::pow(static_cast<double>(n), params.c);
  c4.pass = at_least(c4.rhs, c4.lhs);
  c4.witness_vertex = argmax;
  c4.detail = "max degree " + std::to_string(big_delta) + " at vertex " + std::to_string(argmax);

  // 5: b(s) >= eps * Delta * s * (1 - log_k(s)/n) for s in [ceil(n^(1-eps')), floor(k^n/2)]
  auto& c5 = rep.conditions[4];
  const double lower = std::pow(static_cast<double>(n), 1.0 - params.epsilon_prime);
  const auto s_lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(lower - 1e-12)));
  const auto s_hi = std::min(static_cast<std::uint64_t>(std::floor(k_pow_n / 2)), order / 2);
  c5.pass = true;
  double tightest = std::numeric_limits<double>::infinity();
  if (s_lo <= s_hi) {
    const SimpleGraph graph = materialize(g);
    for (std::uint64_t s = s_lo; s <= s_hi; ++s) {
      const std::uint64_t b = min_boundary(graph, s, options).value;
      const double rhs = condition5_rhs(params.epsilon, big_delta, s, k, n);
      c5.checked.emplace_back(s, b);
      const bool ok = at_least(static_cast<double>(b), rhs);
      const double slack = static_cast<double>(b) - rhs;
      if (!ok && c5.pass) {
        c5.pass = false;
        c5.witness_s = s;
        c5.witness_boundary = b;
        c5.lhs = static_cast<double>(b);
        c5.rhs = rhs;
      }
      if (c5.pass && slack < tightest) {
        tightest = slack;
        c5.witness_s = s;
        c5.witness_boundary = b;
        c5.lhs = static_cast<double>(b);
        c5.rhs = rhs;
      }
    }
    c5.detail = (c5.pass ? "tightest" : "violated") + std::string(" at s = ") +
                std::to_string(*c5.witness_s) + ", b(s) = " + std::to_string(*c5.witness_boundary);
  } else {
    c5.detail = "empty s-range";
  }
  return rep;
}

std::vector<ConditionsReport> check_basic_conditions(const GraphFamily& family, std::uint32_t k,
                                                     const BasicConditionsParams& params,
                                                     std::span<const int> n_values,
                                                     const MinBoundaryOptions& options) {
  std::vector<ConditionsReport> out;
  for (int n : n_values) out.push_back(check_basic_conditions_at(family(n), n, k, params, options));
  return out;
}

TillichEstimate tillich_constant_estimate(const BaseGraph& base, std::span<const int> n_values,
                                          const MinBoundaryOptions& options) {
  if (n_values.empty()) throw InvalidArgument("tillich estimate needs at least one n");
  TillichEstimate est;
  est.constant = std::numeric_limits<double>::infinity();
  for (int n : n_values) {
    const GraphView g(PowerGraph(base, n));
    const auto profile = isoperimetric_profile(g, {}, std::nullopt, options);
    const std::uint64_t order = g.order();
    for (std::uint64_t s = 1; s < order; ++s) {
      const std::uint64_t b = profile.at(std::min(s, order - s));
      const double denom = static_cast<double>(s) * (n - log_base(s, base.k()));
      if (!(denom > 0)) continue;
      const double ratio = static_cast<double>(b) / denom;
      if (ratio < est.constant) {
        est.constant = ratio;
        est.n_at = n;
        est.s_at = s;
      }
    }
  }
  return est;
}

bool dominates(const SimpleGraph& g, std::span<const VertexCode> set,
               std::span<const VertexCode> given) {
  std::vector<char> covered(g.order(), 0);
  auto cover = [&](VertexCode v) {
    if (v >= g.order()) return false;
    covered[v] = 1;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) covered[w] = 1;
    return true;
  };
  for (auto v : set) {
    if (!cover(v)) return false;
  }
  for (auto v : given) {
    if (!cover(v)) return false;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool ell_dominates(const SimpleGraph& g, std::span<const VertexCode> set, std::uint32_t ell) {
  constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.order(), unseen);
  std::queue<Vertex> frontier;
  for (auto v : set) {
    if (v >= g.order()) return false;
    if (dist[v] == unseen) {
      dist[v] = 0;
      frontier.push(static_cast<Vertex>(v));
    }
  }
  while (!frontier.empty()) {
    const Vertex v = frontier.front();
    frontier.pop();
    if (dist[v] == ell) continue;
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == unseen) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == unseen; });
}

DominatingSetResult randomized_dominating_set(const GraphView& g, std::span<const VertexCode> given,
                                              std::uint32_t delta, std::uint64_t seed) {
  const SimpleGraph graph = materialize(g);
  const std::uint32_t order = graph.order();
  std::vector<char> in_given(order, 0);
  for (auto v : given) {
    if (v >= order) throw InvalidSet("W contains an out-of-range vertex");
    in_given[v] = 1;
  }
  std::vector<VertexCode> w_sorted;
  for (Vertex v = 0; v < order; ++v) {
    if (in_given[v]) {
      w_sorted.push_back(v);
    } else if (graph.degree(v) < delta) {
      throw InvalidArgument("vertex " + std::to_string(v) + " outside W has degree " +
                            std::to_string(graph.degree(v)) + " < delta");
    }
  }
  const double outside = static_cast<double>(order - w_sorted.size());
  const double d1 = static_cast<double>(delta) + 1.0;
  const double p = std::log(d1) / d1;
  const double bound = (1.0 + std::log(d1)) / d1 * outside;

  DominatingSetResult result;
  result.given = w_sorted;
  result.bound = bound;
  std::vector<char> in_u0(order);
  for (int attempt = 0; attempt < kDominationAttemptCap; ++attempt) {
    const CounterStream stream(seed, static_cast<std::uint64_t>(attempt));
    std::fill(in_u0.begin(), in_u0.end(), 0);
    std::vector<VertexCode> u;
    for (Vertex v = 0; v < order; ++v) {
      if (!in_given[v] && stream.uniform(v) < p) {
        in_u0[v] = 1;
        u.push_back(v);
      }
    }
    for (Vertex v = 0; v < order; ++v) {
      if (in_given[v] || in_u0[v]) continue;
      const auto nb = graph.neighbors(v);
      const bool seen = std::any_of(nb.begin(), nb.end(),
                                    [&](Vertex w) { return in_u0[w] || in_given[w]; });
      if (!seen) u.push_back(v);
    }
    if (static_cast<double>(u.size()) <= bound + 1e-9) {
      std::sort(u.begin(), u.end());
      result.set = std::move(u);
      result.attempts = attempt + 1;
      result.verified = dominates(graph, result.set, result.given);
      if (!result.verified) throw InternalError("randomized dominating set failed verification");
      return result;
    }
  }
  throw AttemptsCapReached("no dominating set within the bound after " +
                           std::to_string(kDominationAttemptCap) + " attempts");
}

DominatingSetResult ell_dominating_set(const GraphView& g, std::uint32_t ell) {
  if (ell < 1) throw InvalidArgument("ell must be at least 1");
  const SimpleGraph graph = materialize(g);
  const std::uint32_t order = graph.order();
  constexpr Vertex none = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> parent(order, none);
  std::vector<std::uint32_t> depth(order, 0);
  std::vector<char> seen(order, 0);
  std::vector<char> removed(order, 0);
  std::vector<std::vector<Vertex>> children(order);

  DominatingSetResult result;
  result.bound = static_cast<double>(order) / (ell + 1.0);
  for (Vertex root = 0; root < order; ++root) {
    if (seen[root]) continue;
    // Breadth-first spanning tree of this component.
    std::vector<Vertex> layer_order{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < layer_order.size(); ++i) {
      const Vertex v = layer_order[i];
      for (Vertex w : graph.neighbors(v)) {
        if (seen[w]) continue;
        seen[w] = 1;
        parent[w] = v;
        depth[w] = depth[v] + 1;
        children[v].push_back(w);
        layer_order.push_back(w);
      }
    }
    if (layer_order.size() < ell + 1) {
      throw ComponentTooSmall("component of vertex " + std::to_string(root) + " has " +
                              std::to_string(layer_order.size()) + " vertices, need at least " +
                              std::to_string(ell + 1));
    }
    // Peel subtrees: take the deepest remaining vertex, select its ell-th
    // ancestor and drop that ancestor's remaining subtree (>= ell+1 vertices,
    // all within distance ell of it).
    std::size_t remaining = layer_order.size();
    std::size_t cursor = layer_order.size();
    std::vector<Vertex> stack;
    while (remaining > 0) {
      while (removed[layer_order[cursor - 1]]) --cursor;
      const Vertex deepest = layer_order[cursor - 1];
      if (depth[deepest] <= ell) {
        result.set.push_back(root);
        break;
      }
      Vertex a = deepest;
      for (std::uint32_t i = 0; i < ell; ++i) a = parent[a];
      result.set.push_back(a);
      stack.assign(1, a);
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        removed[v] = 1;
        --remaining;
        for (Vertex c : children[v]) {
          if (!removed[c]) stack.push_back(c);
        }
      }
      // Fewer than ell+1 leftovers form a connected piece containing a's
      // parent, so a already reaches all of them.
      if (remaining <= ell) break;
    }
  }
  std::sort(result.set.begin(), result.set.end());
  result.verified = ell_dominates(graph, result.set, ell);
  if (!result.verified) throw InternalError("ell-dominating set failed verification");
  return result;
}

}  // namespace percolab
