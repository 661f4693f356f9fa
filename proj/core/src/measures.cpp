#include "cu/measures.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cu {

FeatureRule feature_rule_from_name(std::string_view name) {
  if (name == "modal") return FeatureRule::Modal;
  if (name == "all-weighted") return FeatureRule::AllWeighted;
  throw ValidationError("unknown feature rule: " + std::string(name));
}

std::string feature_rule_name(FeatureRule rule) {
  return rule == FeatureRule::Modal ? "modal" : "all-weighted";
}

std::vector<int> MeasureOptions::selected_dimensions(const Dataset& d) const {
  if (dimensions.empty()) {
    std::vector<int> all(d.schema().dimension_count());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  for (int dim : dimensions)
    if (dim < 0 || dim >= d.schema().dimension_count())
      throw ValidationError("dimension index out of range");
  return dimensions;
}

std::string measure_name(MeasureId id) {
  switch (id) {
    case MeasureId::CuInfoPartition: return "cu-info-partition";
    case MeasureId::CuInfoCategory: return "cu-info-category";
    case MeasureId::CuQuadPartition: return "cu-quad-partition";
    case MeasureId::CuQuadCategory: return "cu-quad-category";
    case MeasureId::CueValidity: return "cue-validity";
    case MeasureId::CategoryValidity: return "category-validity";
    case MeasureId::Collocation: return "collocation";
  }
  throw std::logic_error("bad measure id");
}

MeasureId measure_from_name(std::string_view name) {
  for (MeasureId id : kAllMeasures)
    if (measure_name(id) == name) return id;
  throw ValidationError("unknown measure: " + std::string(name));
}

bool is_entropy_measure(MeasureId id) {
  return id == MeasureId::CuInfoPartition || id == MeasureId::CuInfoCategory;
}

namespace {

double entropy(const std::vector<double>& p, double log_base) {
  double h = 0.0;
  for (double pi : p)
    if (pi > 0.0) h -= pi * std::log(pi);
  return h / std::log(log_base);
}

void check_log_base(const MeasureOptions& opts) {
  if (!(opts.log_base > 1.0))
    throw ValidationError("log base must be > 1");
}

void require_proper(const Dataset& d, const Category& c) {
  if (c.empty()) throw ValidationError("empty category");
  if (c.size() == d.size())
    throw ValidationError("partition measure needs a proper category");
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

Rational sum_squares(const std::vector<Rational>& p) {
  Rational s = 0;
  for (const auto& pi : p) s += pi * pi;
  return s;
}

}  // namespace

double uncertainty(const Distribution& p, const MeasureOptions& opts) {
  check_log_base(opts);
  return entropy(p.probabilities, opts.log_base);
}

std::vector<double> cu_info_partition_by_dim(const Dataset& d,
                                             const Category& c,
                                             const MeasureOptions& opts) {
  check_log_base(opts);
  require_proper(d, c);
  Category not_c = c.complement(d);
  double pc = to_double(c.weight(d) / d.total_weight());
  std::vector<double> result;
  for (int dim : opts.selected_dimensions(d)) {
    double u_marg = entropy(conditional_distribution(d, dim).probabilities,
                            opts.log_base);
    double u_c = entropy(conditional_distribution(d, dim, &c).probabilities,
                         opts.log_base);
    double u_nc = entropy(
        conditional_distribution(d, dim, &not_c).probabilities, opts.log_base);
    result.push_back(u_marg - (pc * u_c + (1.0 - pc) * u_nc));
  }
  return result;
}

double cu_info_partition(const Dataset& d, const Category& c,
                         const MeasureOptions& opts) {
  auto by_dim = cu_info_partition_by_dim(d, c, opts);
  return std::accumulate(by_dim.begin(), by_dim.end(), 0.0);
}

std::vector<double> cu_info_category_by_dim(const Dataset& d,
                                            const Category& c,
                                            const MeasureOptions& opts) {
  check_log_base(opts);
  if (c.empty()) throw ValidationError("empty category");
  double pc = to_double(c.weight(d) / d.total_weight());
  std::vector<double> result;
  for (int dim : opts.selected_dimensions(d)) {
    double u_marg = entropy(conditional_distribution(d, dim).probabilities,
                            opts.log_base);
    double u_c = entropy(conditional_distribution(d, dim, &c).probabilities,
                         opts.log_base);
    result.push_back(pc * (u_marg - u_c));
  }
  return result;
}

double cu_info_category(const Dataset& d, const Category& c,
                        const MeasureOptions& opts) {
  auto by_dim = cu_info_category_by_dim(d, c, opts);
  return std::accumulate(by_dim.begin(), by_dim.end(), 0.0);
}

Rational cu_quad_partition_exact(const Dataset& d, const Category& c,
                                 const MeasureOptions& opts) {
  require_proper(d, c);
  Category not_c = c.complement(d);
  Rational pc = c.weight(d) / d.total_weight();
  Rational total = 0;
  for (int dim : opts.selected_dimensions(d)) {
    Rational s_marg = sum_squares(exact_conditional(d, dim));
    Rational s_c = sum_squares(exact_conditional(d, dim, &c));
    Rational s_nc = sum_squares(exact_conditional(d, dim, &not_c));
    total += pc * s_c + (1 - pc) * s_nc - s_marg;
  }
  return total;
}

Rational cu_quad_category_exact(const Dataset& d, const Category& c,
                                const MeasureOptions& opts) {
  if (c.empty()) throw ValidationError("empty category");
  Rational pc = c.weight(d) / d.total_weight();
  Rational total = 0;
  for (int dim : opts.selected_dimensions(d)) {
    Rational s_marg = sum_squares(exact_conditional(d, dim));
    Rational s_c = sum_squares(exact_conditional(d, dim, &c));
    total += pc * (s_c - s_marg);
  }
  return total;
}

double cu_quad_partition(const Dataset& d, const Category& c,
                         const MeasureOptions& opts) {
  return to_double(cu_quad_partition_exact(d, c, opts));
}

double cu_quad_category(const Dataset& d, const Category& c,
                        const MeasureOptions& opts) {
  return to_double(cu_quad_category_exact(d, c, opts));
}

RivalValues rival_measures(const Dataset& d, const Category& c,
                           const MeasureOptions& opts) {
  if (c.empty()) throw ValidationError("empty category");
  Rational cat_weight = c.weight(d);
  if (cat_weight == 0) throw ValidationError("category has zero weight");
  auto dims = opts.selected_dimensions(d);

  RivalValues out{0, 0, 0};
  for (int dim : dims) {
    std::vector<Rational> marg_mass(d.schema().cardinality(dim), Rational(0));
    std::vector<Rational> cat_mass(d.schema().cardinality(dim), Rational(0));
    for (int i = 0; i < d.size(); ++i) {
      const Instance& inst = d.instances()[i];
      marg_mass[inst.values[dim]] += inst.weight;
      if (c.contains(i)) cat_mass[inst.values[dim]] += inst.weight;
    }
    if (opts.feature_rule == FeatureRule::Modal) {
      int modal = 0;
      for (int v = 1; v < static_cast<int>(cat_mass.size()); ++v)
        if (cat_mass[v] > cat_mass[modal]) modal = v;  // tie -> lowest index
      Rational p_f_given_c = cat_mass[modal] / cat_weight;
      Rational p_c_given_f = cat_mass[modal] / marg_mass[modal];
      out.cue_validity += p_c_given_f;
      out.category_validity += p_f_given_c;
      out.collocation += p_c_given_f * p_f_given_c;
    } else {
      Rational cue = 0, catval = 0, col = 0;
      for (int v = 0; v < static_cast<int>(cat_mass.size()); ++v) {
        if (cat_mass[v] == 0) continue;
        Rational p_f_given_c = cat_mass[v] / cat_weight;
        Rational p_c_given_f = cat_mass[v] / marg_mass[v];
        cue += p_f_given_c * p_c_given_f;
        catval += p_f_given_c * p_f_given_c;
        col += p_f_given_c * (p_c_given_f * p_f_given_c);
      }
      out.cue_validity += cue;
      out.category_validity += catval;
      out.collocation += col;
    }
  }
  int n = static_cast<int>(dims.size());
  out.cue_validity /= n;
  out.category_validity /= n;
  out.collocation /= n;
  return out;
}

}  // namespace cu
