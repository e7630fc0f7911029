#include "percolab/percolation.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <thread>

#include "percolab/counter_rng.hpp"

namespace percolab {

namespace {

void require_trial_size(const GraphView& g) {
  if (g.order() >= std::numeric_limits<std::uint32_t>::max()) {
    throw OutOfRange("graph too large for a percolation trial");
  }
}

TrialOutcome summarize(UnionFind& uf, std::uint64_t retained, std::vector<std::uint64_t>& sizes) {
  TrialOutcome out;
  out.retained_edges = retained;
  const std::uint64_t order = uf.element_count();
  const std::uint64_t half = order / 2;
  sizes.clear();
  for (std::uint32_t v = 0; v < order; ++v) {
    if (!uf.is_root(v)) continue;
    const std::uint64_t s = uf.root_size(v);
    if (s == 1) {
      ++out.isolated_count;
    } else if (s <= half) {
      sizes.push_back(s);
    } else {
      ++out.census.large_components;
      out.census.large_vertices += s;
    }
  }
  std::sort(sizes.begin(), sizes.end());
  for (std::size_t i = 0; i < sizes.size();) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    out.census.middle.emplace_back(sizes[i], j - i);
    i = j;
  }
  out.connected = uf.components() == 1;
  return out;
}

}  // namespace

bool edge_retained(const TrialPlan& plan, std::uint64_t edge_index) {
  switch (plan.retention) {
    case Retention::all:
      return true;
    case Retention::none:
      return false;
    case Retention::sampled:
      break;
  }
  const CounterStream stream(plan.master_seed, plan.trial_index);
  return BernoulliThreshold(plan.p).accept(stream.bits(edge_index));
}

TrialOutcome run_trial(const GraphView& g, const TrialPlan& plan, TrialScratch& scratch,
                       unsigned workers) {
  require_trial_size(g);
  const auto order = static_cast<std::uint32_t>(g.order());
  const std::uint64_t m = g.size();
  UnionFind& uf = scratch.components;
  uf.reset(order);
  std::uint64_t retained = 0;

  if (plan.retention != Retention::sampled) {
    if (plan.retention == Retention::all) {
      g.for_each_edge([&](std::uint64_t, VertexCode u, VertexCode w) {
        uf.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(w));
      });
      retained = m;
    }
    return summarize(uf, retained, scratch.middle_sizes);
  }

  // Retention decisions are drawn into a bitmap first (branch-free, optionally
  // by disjoint word ranges in parallel); unions then run in stream order.
  const CounterStream stream(plan.master_seed, plan.trial_index);
  const BernoulliThreshold keep(plan.p);
  const std::uint64_t words = (m + 63) / 64;
  auto& bits = scratch.retained_bits;
  bits.resize(words);
  auto fill = [&](std::uint64_t w0, std::uint64_t w1) {
    for (std::uint64_t w = w0; w < w1; ++w) {
      const std::uint64_t i0 = w * 64;
      const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(64, m - i0));
      std::uint64_t word = 0;
      for (unsigned b = 0; b < count; ++b) {
        word |= std::uint64_t{keep.accept(stream.bits(i0 + b))} << b;
      }
      bits[w] = word;
    }
  };
  if (workers <= 1 || m < 4096) {
    fill(0, words);
  } else {
    const std::uint64_t per_worker = (words + workers - 1) / workers;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t w0 = std::min(words, w * per_worker);
      const std::uint64_t w1 = std::min(words, w0 + per_worker);
      if (w0 == w1) break;
      pool.emplace_back(fill, w0, w1);
    }
  }
  for (std::uint64_t w : bits) retained += static_cast<std::uint64_t>(std::popcount(w));

  if (const PowerGraph* power = g.as_power()) {
    power->for_each_run([&](std::uint64_t index, std::uint64_t u, std::uint64_t v,
                            std::uint64_t len, std::uint64_t step) {
      const std::uint64_t end = index + len;
      for (std::uint64_t i = index; i < end;) {
        const unsigned shift = static_cast<unsigned>(i & 63);
        const std::uint64_t take = std::min<std::uint64_t>(64 - shift, end - i);
        std::uint64_t word = bits[i >> 6] >> shift;
        if (take < 64) word &= (std::uint64_t{1} << take) - 1;
        while (word) {
          const std::uint64_t offset = (i - index + static_cast<unsigned>(std::countr_zero(word))) * step;
          uf.unite(static_cast<std::uint32_t>(u + offset), static_cast<std::uint32_t>(v + offset));
          word &= word - 1;
        }
        i += take;
      }
    });
  } else {
    const auto edges = g.as_explicit()->graph().edges();
    for (std::uint64_t w = 0; w < words; ++w) {
      for (std::uint64_t word = bits[w]; word; word &= word - 1) {
        const Edge& e = edges[w * 64 + static_cast<unsigned>(std::countr_zero(word))];
        uf.unite(e.u, e.v);
      }
    }
  }
  return summarize(uf, retained, scratch.middle_sizes);
}

TrialOutcome run_trial(const GraphView& g, const TrialPlan& plan, unsigned workers) {
  TrialScratch scratch;
  return run_trial(g, plan, scratch, workers);
}

namespace {

// Depth-first walk over include/exclude decisions, one edge per level, with
// incremental component and isolated-vertex bookkeeping undone on backtrack.
class SubsetEnumerator {
 public:
  SubsetEnumerator(std::uint32_t order, std::vector<Edge> edges, double p)
      : edges_(std::move(edges)),
        p_(p),
        q_(1.0L - static_cast<long double>(p)),
        uf_(order),
        degree_(order, 0),
        isolated_(order),
        distribution_(static_cast<std::size_t>(order) + 1, 0.0L) {}

  void run() { descend(0, 1.0L); }

  double connected() const { return static_cast<double>(connected_); }
  std::vector<double> distribution() const {
    return {distribution_.begin(), distribution_.end()};
  }

 private:
  void descend(std::size_t i, long double weight) {
    if (i == edges_.size()) {
      if (uf_.components() == 1) connected_ += weight;
      distribution_[isolated_] += weight;
      return;
    }
    const Edge e = edges_[i];
    touch(e.u, +1);
    touch(e.v, +1);
    uf_.unite(e.u, e.v);
    descend(i + 1, weight * p_);
    uf_.undo();
    touch(e.u, -1);
    touch(e.v, -1);
    descend(i + 1, weight * q_);
  }

  void touch(Vertex v, int delta) {
    if (delta > 0 && degree_[v]++ == 0) --isolated_;
    if (delta < 0 && --degree_[v] == 0) ++isolated_;
  }

  std::vector<Edge> edges_;
  long double p_;
  long double q_;
  RollbackUnionFind uf_;
  std::vector<std::uint32_t> degree_;
  std::uint64_t isolated_;
  long double connected_ = 0;
  std::vector<long double> distribution_;
};

}  // namespace

ExactSummary exact_percolation(const GraphView& g, double p) {
  if (g.size() > kExactEdgeCap) {
    throw TooManyEdges(std::to_string(g.size()) + " edges exceeds the exact-enumeration cap of " +
                       std::to_string(kExactEdgeCap));
  }
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("p must lie in [0, 1]");
  require_trial_size(g);
  SubsetEnumerator walk(static_cast<std::uint32_t>(g.order()), edge_stream(g), p);
  walk.run();
  return {walk.connected(), walk.distribution()};
}

double exact_connectivity_probability(const GraphView& g, double p) {
  return exact_percolation(g, p).connected;
}

std::vector<double> exact_isolated_distribution(const GraphView& g, double p) {
  return exact_percolation(g, p).isolated_distribution;
}

}  // namespace percolab
