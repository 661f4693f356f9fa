#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cu/dataset.hpp"

namespace cu {

enum class FeatureRule { Modal, AllWeighted };

FeatureRule feature_rule_from_name(std::string_view name);
std::string feature_rule_name(FeatureRule rule);

struct MeasureOptions {
  double log_base = 2.0;
  // empty = all dimensions
  std::vector<int> dimensions;
  FeatureRule feature_rule = FeatureRule::Modal;
  double tie_epsilon = 1e-9;  // relative

  std::vector<int> selected_dimensions(const Dataset& d) const;
};

enum class MeasureId {
  CuInfoPartition,
  CuInfoCategory,
  CuQuadPartition,
  CuQuadCategory,
  CueValidity,
  CategoryValidity,
  Collocation,
};

inline constexpr MeasureId kAllMeasures[] = {
    MeasureId::CuInfoPartition, MeasureId::CuInfoCategory,
    MeasureId::CuQuadPartition, MeasureId::CuQuadCategory,
    MeasureId::CueValidity,     MeasureId::CategoryValidity,
    MeasureId::Collocation,
};

std::string measure_name(MeasureId id);  // kebab-case id
MeasureId measure_from_name(std::string_view name);
// entropy-based measures compare with the epsilon rule, the others exactly
bool is_entropy_measure(MeasureId id);

// Shannon uncertainty of one value distribution, in units of opts.log_base.
double uncertainty(const Distribution& p, const MeasureOptions& opts = {});

// Expected reduction in attribute uncertainty from the two-block partition
// {c, not-c}; equals the information transmitted between the partition and
// each dimension, summed over dimensions.
double cu_info_partition(const Dataset& d, const Category& c,
                         const MeasureOptions& opts = {});
std::vector<double> cu_info_partition_by_dim(const Dataset& d,
                                             const Category& c,
                                             const MeasureOptions& opts = {});

// P(c) * [U(F) - U(F|c)] summed over dimensions; may be negative.
double cu_info_category(const Dataset& d, const Category& c,
                        const MeasureOptions& opts = {});
std::vector<double> cu_info_category_by_dim(const Dataset& d,
                                            const Category& c,
                                            const MeasureOptions& opts = {});

// Guessing-game (quadratic) forms; exact over rationals.
Rational cu_quad_partition_exact(const Dataset& d, const Category& c,
                                 const MeasureOptions& opts = {});
Rational cu_quad_category_exact(const Dataset& d, const Category& c,
                                const MeasureOptions& opts = {});
double cu_quad_partition(const Dataset& d, const Category& c,
                         const MeasureOptions& opts = {});
double cu_quad_category(const Dataset& d, const Category& c,
                        const MeasureOptions& opts = {});

struct RivalValues {
  Rational cue_validity;
  Rational category_validity;
  Rational collocation;
};

// Cue validity p(c|f), category validity p(f|c) and their product, averaged
// over dimensions. Under the Modal rule f is the modal value of c per
// dimension (ties to the lowest schema value index); under AllWeighted the
// averages run over all values weighted by P(f|c).
RivalValues rival_measures(const Dataset& d, const Category& c,
                           const MeasureOptions& opts = {});

}  // namespace cu
