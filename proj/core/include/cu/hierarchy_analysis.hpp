#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cu/measures.hpp"

namespace cu {

struct MeasureCell {
  double value = 0.0;
  // exact value for quadratic / rival measures; empty for entropy measures
  std::optional<Rational> exact;
};

struct LevelRow {
  int level_index = 0;  // 1-based, most general level first
  std::string name;
  int category_count = 0;
  std::array<MeasureCell, 7> means;  // indexed by MeasureId order

  const MeasureCell& cell(MeasureId id) const {
    return means[static_cast<int>(id)];
  }
};

struct MeasureReport {
  FeatureRule feature_rule = FeatureRule::Modal;
  double log_base = 2.0;
  bool weighted_means = false;
  std::vector<LevelRow> rows;
};

// Unweighted (default) per-level arithmetic means of every measure.
// Partition measures treat each category against its complement in the full
// dataset; a category equal to the whole population scores 0 on all four CU
// forms. With weighted = true, means are weighted by P(c).
MeasureReport level_report(const Dataset& d, const Hierarchy& h,
                           const MeasureOptions& opts = {},
                           bool weighted = false);

struct BasicLevelPrediction {
  MeasureId measure;
  std::vector<int> levels;  // best level, or the tied set (1-based indices)
  bool tie_break_used = false;

  bool decided() const { return levels.size() == 1; }
};

// Level with the maximal mean of the chosen measure. Ties under cu-info-*
// are broken by the corresponding cu-quad-* measure and vice versa; if still
// tied the tied set is returned.
BasicLevelPrediction predict_basic_level(const MeasureReport& report,
                                         MeasureId measure,
                                         double tie_epsilon = 1e-9);

// Levels sorted by descending mean, ties grouped (1-based level indices).
std::vector<std::vector<int>> ordering(const MeasureReport& report,
                                       MeasureId measure,
                                       double tie_epsilon = 1e-9);

std::string report_tsv(const MeasureReport& report);
std::string report_json(const MeasureReport& report);

}  // namespace cu
