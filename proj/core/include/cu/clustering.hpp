#pragma once

#include <vector>

#include "cu/hierarchy_analysis.hpp"
#include "cu/measures.hpp"

namespace cu {

enum class ClusterObjective { QuadPartition, InfoPartition };
enum class Aggregation { Mean, Sum };

struct ClusterOptions {
  ClusterObjective objective = ClusterObjective::QuadPartition;
  Aggregation aggregation = Aggregation::Mean;
  MeasureOptions measure_opts;
};

struct Partitioning {
  std::vector<Category> blocks;
  double objective = 0.0;
};

// Snapshots of the partition after every merge, from the singleton start
// (largest block count) down to the final partition.
struct MergeTrace {
  std::vector<std::vector<Category>> snapshots;
};

// Objective of a given block partition: aggregated cu_*_partition of each
// block against its complement. A single all-population block scores 0.
double partition_objective(const Dataset& d,
                           const std::vector<Category>& blocks,
                           const ClusterOptions& opts = {});

// Optimal proper binary split by enumeration; instance count <= 20.
// Deterministic: ties resolved toward the lexicographically smallest member
// index set of the block containing the first instance.
Partitioning best_split_exhaustive(const Dataset& d,
                                   const ClusterOptions& opts = {});

// Greedy agglomeration from singletons to k blocks, each step merging the
// pair that maximizes the aggregated objective (ties lexicographic).
Partitioning greedy_agglomerate(const Dataset& d, int k,
                                const ClusterOptions& opts = {},
                                MergeTrace* trace = nullptr);

// Build a strict hierarchy from merge-trace snapshots: a population root
// plus the snapshots at the requested block counts (default: the final
// snapshot only).
Hierarchy hierarchy_from_merges(const MergeTrace& trace, const Dataset& d,
                                const std::vector<int>& block_counts = {});

}  // namespace cu
