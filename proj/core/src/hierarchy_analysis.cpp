#include "cu/hierarchy_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace cu {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

MeasureCell& cell_of(LevelRow& row, MeasureId id) {
  return row.means[static_cast<int>(id)];
}

}  // namespace

MeasureReport level_report(const Dataset& d, const Hierarchy& h,
                           const MeasureOptions& opts, bool weighted) {
  MeasureReport report;
  report.feature_rule = opts.feature_rule;
  report.log_base = opts.log_base;
  report.weighted_means = weighted;

  for (int li = 0; li < h.level_count(); ++li) {
    const HierarchyLevel& level = h.levels()[li];
    LevelRow row;
    row.level_index = li + 1;
    row.name = level.name;
    row.category_count = static_cast<int>(level.categories.size());

    std::array<double, 7> dsum{};
    std::array<Rational, 7> qsum{};
    Rational weight_sum = 0;
    for (const auto& nc : level.categories) {
      const Category& c = nc.category;
      bool full = c.is_population(d);
      double info_part = full ? 0.0 : cu_info_partition(d, c, opts);
      double info_cat = full ? 0.0 : cu_info_category(d, c, opts);
      Rational quad_part = full ? Rational(0)
                                : cu_quad_partition_exact(d, c, opts);
      Rational quad_cat = full ? Rational(0)
                               : cu_quad_category_exact(d, c, opts);
      RivalValues rival = rival_measures(d, c, opts);

      Rational w = weighted ? c.weight(d) / d.total_weight() : Rational(1);
      weight_sum += w;
      double wd = to_double(w);
      dsum[0] += wd * info_part;
      dsum[1] += wd * info_cat;
      qsum[2] += w * quad_part;
      qsum[3] += w * quad_cat;
      qsum[4] += w * rival.cue_validity;
      qsum[5] += w * rival.category_validity;
      qsum[6] += w * rival.collocation;
    }
    double wtot = to_double(weight_sum);
    cell_of(row, MeasureId::CuInfoPartition).value = dsum[0] / wtot;
    cell_of(row, MeasureId::CuInfoCategory).value = dsum[1] / wtot;
    for (MeasureId id : {MeasureId::CuQuadPartition, MeasureId::CuQuadCategory,
                         MeasureId::CueValidity, MeasureId::CategoryValidity,
                         MeasureId::Collocation}) {
      Rational mean = qsum[static_cast<int>(id)] / weight_sum;
      cell_of(row, id).exact = mean;
      cell_of(row, id).value = to_double(mean);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

// -1 / 0 / +1 comparison of one measure's mean between two rows, exact for
// rational measures, relative-epsilon for entropy measures.
int compare_means(const LevelRow& a, const LevelRow& b, MeasureId id,
                  double eps) {
  const MeasureCell& ca = a.cell(id);
  const MeasureCell& cb = b.cell(id);
  if (ca.exact && cb.exact) {
    if (*ca.exact == *cb.exact) return 0;
    return *ca.exact < *cb.exact ? -1 : 1;
  }
  double x = ca.value, y = cb.value;
  double tol = eps * std::max({std::fabs(x), std::fabs(y), 1.0});
  if (std::fabs(x - y) <= tol) return 0;
  return x < y ? -1 : 1;
}

std::optional<MeasureId> tie_break_partner(MeasureId id) {
  switch (id) {
    case MeasureId::CuInfoPartition: return MeasureId::CuQuadPartition;
    case MeasureId::CuInfoCategory: return MeasureId::CuQuadCategory;
    case MeasureId::CuQuadPartition: return MeasureId::CuInfoPartition;
    case MeasureId::CuQuadCategory: return MeasureId::CuInfoCategory;
    default: return std::nullopt;
  }
}

std::vector<int> maximal_rows(const MeasureReport& report,
                              const std::vector<int>& candidates,
                              MeasureId id, double eps) {
  std::vector<int> best;
  for (int r : candidates) {
    if (best.empty()) {
      best.push_back(r);
      continue;
    }
    int cmp = compare_means(report.rows[r], report.rows[best.front()], id, eps);
    if (cmp > 0) best = {r};
    else if (cmp == 0) best.push_back(r);
  }
  return best;
}

}  // namespace

BasicLevelPrediction predict_basic_level(const MeasureReport& report,
                                         MeasureId measure,
                                         double tie_epsilon) {
  if (report.rows.empty()) throw ValidationError("empty report");
  std::vector<int> all(report.rows.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

  BasicLevelPrediction pred;
  pred.measure = measure;
  std::vector<int> best = maximal_rows(report, all, measure, tie_epsilon);
  if (best.size() > 1) {
    if (auto partner = tie_break_partner(measure)) {
      std::vector<int> broken =
          maximal_rows(report, best, *partner, tie_epsilon);
      if (broken.size() < best.size()) {
        pred.tie_break_used = true;
        best = std::move(broken);
      }
    }
  }
  for (int r : best) pred.levels.push_back(report.rows[r].level_index);
  return pred;
}

std::vector<std::vector<int>> ordering(const MeasureReport& report,
                                       MeasureId measure, double tie_epsilon) {
  if (report.rows.empty()) throw ValidationError("empty report");
  std::vector<int> idx(report.rows.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return compare_means(report.rows[a], report.rows[b], measure,
                         tie_epsilon) > 0;
  });
  std::vector<std::vector<int>> groups;
  for (int r : idx) {
    if (!groups.empty()) {
      int head_row = groups.back().front() - 1;  // level index -> row position
      if (compare_means(report.rows[head_row], report.rows[r], measure,
                        tie_epsilon) == 0) {
        groups.back().push_back(report.rows[r].level_index);
        continue;
      }
    }
    groups.push_back({report.rows[r].level_index});
  }
  return groups;
}

std::string report_tsv(const MeasureReport& report) {
  std::ostringstream out;
  out << "# feature-rule: " << feature_rule_name(report.feature_rule)
      << "\tlog-base: " << fmt12(report.log_base)
      << "\tmeans: " << (report.weighted_means ? "weighted" : "unweighted")
      << "\n";
  out << "level\tname\tcategories";
  for (MeasureId id : kAllMeasures) out << "\t" << measure_name(id);
  out << "\n";
  for (const auto& row : report.rows) {
    out << row.level_index << "\t" << row.name << "\t" << row.category_count;
    for (MeasureId id : kAllMeasures) out << "\t" << fmt12(row.cell(id).value);
    out << "\n";
  }
  return out.str();
}

std::string report_json(const MeasureReport& report) {
  nlohmann::json j;
  j["feature_rule"] = feature_rule_name(report.feature_rule);
  j["log_base"] = report.log_base;
  j["weighted_means"] = report.weighted_means;
  j["levels"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json jr;
    jr["level"] = row.level_index;
    jr["name"] = row.name;
    jr["categories"] = row.category_count;
    for (MeasureId id : kAllMeasures)
      jr["measures"][measure_name(id)] = row.cell(id).value;
    j["levels"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

}  // namespace cu
