#include "cu/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cu {

namespace {

// double-precision cu_quad_partition; avoids bignum arithmetic in the inner
// enumeration loops (near-ties are re-verified exactly)
double quad_partition_fast(const Dataset& d, const Category& c) {
  int ndim = d.schema().dimension_count();
  double wtot = to_double(d.total_weight());
  double wc = 0.0;
  for (int i : c.indices()) wc += to_double(d.instances()[i].weight);
  double pc = wc / wtot;
  double total = 0.0;
  std::vector<double> marg, in_c;
  for (int dim = 0; dim < ndim; ++dim) {
    marg.assign(d.schema().cardinality(dim), 0.0);
    in_c.assign(d.schema().cardinality(dim), 0.0);
    for (int i = 0; i < d.size(); ++i)
      marg[d.instances()[i].values[dim]] += to_double(d.instances()[i].weight);
    for (int i : c.indices())
      in_c[d.instances()[i].values[dim]] += to_double(d.instances()[i].weight);
    double s_marg = 0.0, s_c = 0.0, s_nc = 0.0;
    for (size_t v = 0; v < marg.size(); ++v) {
      double pm = marg[v] / wtot;
      double pin = wc > 0.0 ? in_c[v] / wc : 0.0;
      double pout = (marg[v] - in_c[v]) / (wtot - wc);
      s_marg += pm * pm;
      s_c += pin * pin;
      s_nc += pout * pout;
    }
    total += pc * s_c + (1.0 - pc) * s_nc - s_marg;
  }
  return total;
}

double block_score(const Dataset& d, const Category& c,
                   const ClusterOptions& opts) {
  if (c.is_population(d)) return 0.0;
  if (opts.objective == ClusterObjective::InfoPartition)
    return cu_info_partition(d, c, opts.measure_opts);
  if (opts.measure_opts.dimensions.empty())
    return quad_partition_fast(d, c);
  return cu_quad_partition(d, c, opts.measure_opts);
}

Rational block_score_exact(const Dataset& d, const Category& c,
                           const ClusterOptions& opts) {
  if (c.is_population(d)) return Rational(0);
  return cu_quad_partition_exact(d, c, opts.measure_opts);
}

double aggregate(double sum, size_t n, Aggregation agg) {
  return agg == Aggregation::Mean ? sum / static_cast<double>(n) : sum;
}

// near-tie margin for double-precision objective comparisons; candidates
// within it are re-ranked exactly when the objective is rational
constexpr double kTieSlack = 1e-12;

}  // namespace

double partition_objective(const Dataset& d,
                           const std::vector<Category>& blocks,
                           const ClusterOptions& opts) {
  if (blocks.empty()) throw ValidationError("empty partition");
  double sum = 0.0;
  for (const auto& b : blocks) sum += block_score(d, b, opts);
  return aggregate(sum, blocks.size(), opts.aggregation);
}

Partitioning best_split_exhaustive(const Dataset& d,
                                   const ClusterOptions& opts) {
  int n = d.size();
  if (n < 2) throw ValidationError("need at least 2 instances to split");
  if (n > 20)
    throw ValidationError("exhaustive split limited to 20 instances");

  // Enumerate proper subsets containing instance 0; a binary split and its
  // mirror are the same partition, so this covers each split exactly once.
  // Masks run in increasing numeric order, which is lexicographic order of
  // the member index set of the block holding instance 0, so keeping strict
  // improvements only makes the result deterministic under exact ties.
  auto split_of = [&](uint32_t mask) {
    std::vector<int> in, out;
    for (int i = 0; i < n; ++i)
      (mask >> i & 1u ? in : out).push_back(i);
    return std::pair{Category(d, std::move(in)), Category(d, std::move(out))};
  };
  auto score = [&](uint32_t mask) {
    auto [a, b] = split_of(mask);
    return aggregate(block_score(d, a, opts) + block_score(d, b, opts), 2,
                     opts.aggregation);
  };

  uint32_t limit = 1u << (n - 1);
  uint32_t full = (n == 32 ? 0u : 1u << n) - 1u;
  uint32_t best_mask = 1;
  double best = score(1);
  for (uint32_t half = 1; half < limit; ++half) {
    uint32_t mask = half << 1 | 1u;
    if (mask == 1 || mask == full) continue;
    double s = score(mask);
    if (s > best + kTieSlack) {
      best = s;
      best_mask = mask;
    } else if (opts.objective == ClusterObjective::QuadPartition &&
               s > best - kTieSlack) {
      // near tie in doubles: settle it exactly
      auto [a1, b1] = split_of(best_mask);
      auto [a2, b2] = split_of(mask);
      Rational r1 = block_score_exact(d, a1, opts) +
                    block_score_exact(d, b1, opts);
      Rational r2 = block_score_exact(d, a2, opts) +
                    block_score_exact(d, b2, opts);
      if (r2 > r1) {
        best = s;
        best_mask = mask;
      }
    } else if (s > best) {
      best = s;
      best_mask = mask;
    }
  }

  Partitioning result;
  auto [a, b] = split_of(best_mask);
  result.objective = score(best_mask);
  result.blocks = {std::move(a), std::move(b)};
  return result;
}

Partitioning greedy_agglomerate(const Dataset& d, int k,
                                const ClusterOptions& opts,
                                MergeTrace* trace) {
  int n = d.size();
  if (k < 1 || k > n)
    throw ValidationError("cluster count must be between 1 and the number "
                          "of instances");

  std::vector<Category> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) blocks.emplace_back(d, std::vector<int>{i});
  if (trace) trace->snapshots = {blocks};

  std::vector<double> scores(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i)
    scores[i] = block_score(d, blocks[i], opts);

  while (static_cast<int>(blocks.size()) > k) {
    double base_sum = std::accumulate(scores.begin(), scores.end(), 0.0);
    size_t bi = 0, bj = 1;
    double best = -HUGE_VAL;
    Category best_merged;
    double best_merged_score = 0.0;
    // pairs in lexicographic (i, j) order; strict improvement keeps the
    // first-seen maximizer, which is deterministic
    for (size_t i = 0; i + 1 < blocks.size(); ++i) {
      for (size_t j = i + 1; j < blocks.size(); ++j) {
        std::vector<int> merged_idx = blocks[i].indices();
        merged_idx.insert(merged_idx.end(), blocks[j].indices().begin(),
                          blocks[j].indices().end());
        std::sort(merged_idx.begin(), merged_idx.end());
        Category merged(d, std::move(merged_idx));
        double ms = block_score(d, merged, opts);
        double sum = base_sum - scores[i] - scores[j] + ms;
        double obj = aggregate(sum, blocks.size() - 1, opts.aggregation);
        if (obj > best) {
          best = obj;
          bi = i;
          bj = j;
          best_merged = std::move(merged);
          best_merged_score = ms;
        }
      }
    }
    blocks[bi] = std::move(best_merged);
    scores[bi] = best_merged_score;
    blocks.erase(blocks.begin() + static_cast<long>(bj));
    scores.erase(scores.begin() + static_cast<long>(bj));
    if (trace) trace->snapshots.push_back(blocks);
  }

  Partitioning result;
  result.objective = partition_objective(d, blocks, opts);
  result.blocks = std::move(blocks);
  return result;
}

Hierarchy hierarchy_from_merges(const MergeTrace& trace, const Dataset& d,
                                const std::vector<int>& block_counts) {
  if (trace.snapshots.empty()) throw ValidationError("empty merge trace");

  std::vector<int> counts = block_counts;
  if (counts.empty())
    counts = {static_cast<int>(trace.snapshots.back().size())};
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  std::vector<HierarchyLevel> levels;
  std::vector<int> all(d.size());
  std::iota(all.begin(), all.end(), 0);
  levels.push_back(
      {"root", {NamedCategory{"population", Category(d, std::move(all))}}});

  for (int count : counts) {
    if (count <= 1) continue;
    const std::vector<Category>* snap = nullptr;
    for (const auto& s : trace.snapshots)
      if (static_cast<int>(s.size()) == count) snap = &s;
    if (!snap)
      throw ValidationError("merge trace has no partition with " +
                            std::to_string(count) + " blocks");
    HierarchyLevel level;
    level.name = "k" + std::to_string(count);
    for (size_t b = 0; b < snap->size(); ++b)
      level.categories.push_back(
          {"c" + std::to_string(b + 1), (*snap)[b]});
    levels.push_back(std::move(level));
  }
  return Hierarchy(d, std::move(levels));
}

}  // namespace cu
