// cu: category-utility analysis of nominal datasets.
//
// Subcommands: analyze, basic-level, simulate, cluster.
// Exit codes: 0 success, 1 validation error (bad input data), 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cu/clustering.hpp"
#include "cu/dataset.hpp"
#include "cu/guessing_game.hpp"
#include "cu/hierarchy_analysis.hpp"
#include "cu/measures.hpp"

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// round a double to 12 significant digits so JSON output matches the
// documented precision
double round12(double v) { return std::stod(fmt12(v)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cu::ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string data_path;
  double log_base = 2.0;
  std::string feature_rule = "modal";
  std::string format = "tsv";

  cu::MeasureOptions measure_options() const {
    cu::MeasureOptions opts;
    opts.log_base = log_base;
    opts.feature_rule = cu::feature_rule_from_name(feature_rule);
    return opts;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_format = true) {
  cmd->add_option("--data", c.data_path, "input dataset CSV")->required();
  cmd->add_option("--log-base", c.log_base, "logarithm base for entropy")
      ->check(CLI::Range(1.0 + 1e-12, 1e6));
  cmd->add_option("--feature-rule", c.feature_rule,
                  "rival-measure feature rule")
      ->check(CLI::IsMember({"modal", "all-weighted"}));
  if (with_format)
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));
}

std::string ordering_text(const std::vector<std::vector<int>>& groups) {
  std::string out;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (g) out += " > ";
    for (size_t i = 0; i < groups[g].size(); ++i) {
      if (i) out += " = ";
      out += std::to_string(groups[g][i]);
    }
  }
  return out;
}

int run_analyze(const CommonOpts& c, const std::string& hierarchy_path) {
  cu::Dataset d = cu::parse_dataset(slurp(c.data_path));
  cu::Hierarchy h = cu::parse_hierarchy(slurp(hierarchy_path), d);
  cu::MeasureReport report = cu::level_report(d, h, c.measure_options());
  std::cout << (c.format == "json" ? cu::report_json(report)
                                   : cu::report_tsv(report));
  return 0;
}

int run_basic_level(const CommonOpts& c, const std::string& hierarchy_path,
                    const std::string& measure_name) {
  cu::Dataset d = cu::parse_dataset(slurp(c.data_path));
  cu::Hierarchy h = cu::parse_hierarchy(slurp(hierarchy_path), d);
  cu::MeasureOptions opts = c.measure_options();
  cu::MeasureReport report = cu::level_report(d, h, opts);
  cu::MeasureId measure = cu::measure_from_name(measure_name);
  cu::BasicLevelPrediction pred =
      cu::predict_basic_level(report, measure, opts.tie_epsilon);

  if (c.format == "json") {
    nlohmann::json j;
    j["measure"] = cu::measure_name(measure);
    j["predicted_levels"] = pred.levels;
    j["tie_break_used"] = pred.tie_break_used;
    for (cu::MeasureId id : cu::kAllMeasures)
      j["orderings"][cu::measure_name(id)] =
          cu::ordering(report, id, opts.tie_epsilon);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "# feature-rule: " << c.feature_rule
            << "\tlog-base: " << fmt12(c.log_base)
            << "\tmeasure: " << cu::measure_name(measure) << "\n";
  std::cout << "prediction";
  for (int level : pred.levels) std::cout << "\t" << level;
  std::cout << "\n";
  std::cout << "tie-break-used\t" << (pred.tie_break_used ? "yes" : "no")
            << "\n";
  for (cu::MeasureId id : cu::kAllMeasures)
    std::cout << "ordering\t" << cu::measure_name(id) << "\t"
              << ordering_text(cu::ordering(report, id, opts.tie_epsilon))
              << "\n";
  return 0;
}

int run_simulate(const CommonOpts& c, const std::string& category_path,
                 const std::string& condition, const std::string& strategy,
                 long long trials, uint64_t seed) {
  cu::Dataset d = cu::parse_dataset(slurp(c.data_path));
  cu::GameCondition cond = cu::condition_from_name(condition);
  cu::Strategy strat = cu::strategy_from_name(strategy);
  cu::Category cat;
  const cu::Category* cat_ptr = nullptr;
  if (!category_path.empty()) {
    cat = cu::parse_category(slurp(category_path), d);
    cat_ptr = &cat;
  }
  cu::MeasureOptions opts = c.measure_options();
  cu::ScoreEstimate est = cu::simulate(d, cat_ptr, cond, strat, trials, seed);
  double closed = cu::closed_form_score(d, cat_ptr, cond, strat, opts);

  nlohmann::json j;
  j["condition"] = condition;
  j["strategy"] = strategy;
  j["estimate"] = {{"mean", round12(est.mean)},
                   {"stderr", round12(est.stderr_)},
                   {"trials", est.trials},
                   {"seed", est.seed}};
  j["closed_form"] = round12(closed);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_cluster(const CommonOpts& c, int k, const std::string& method,
                const std::string& objective, const std::string& out_path) {
  cu::Dataset d = cu::parse_dataset(slurp(c.data_path));
  cu::ClusterOptions opts;
  opts.measure_opts = c.measure_options();
  opts.objective = objective == "info" ? cu::ClusterObjective::InfoPartition
                                       : cu::ClusterObjective::QuadPartition;

  cu::Partitioning part;
  cu::MergeTrace trace;
  if (method == "exhaustive") {
    if (k != 2)
      throw CLI::ValidationError("--k", "exhaustive method requires --k 2");
    part = cu::best_split_exhaustive(d, opts);
    trace.snapshots.push_back(part.blocks);
  } else {
    part = cu::greedy_agglomerate(d, k, opts, &trace);
  }

  std::vector<int> counts;
  for (const auto& snap : trace.snapshots)
    if (snap.size() > 1) counts.push_back(static_cast<int>(snap.size()));
  cu::Hierarchy h = cu::hierarchy_from_merges(trace, d, counts);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw cu::ValidationError("cannot write file: " + out_path);
  out << cu::serialize_hierarchy(h, d);

  nlohmann::json j;
  j["method"] = method;
  j["objective"] = round12(part.objective);
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : part.blocks) j["blocks"].push_back(b.member_ids(d));
  j["output"] = out_path;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"category-utility analysis toolkit"};
  app.require_subcommand(1);

  CommonOpts copts;
  std::string hierarchy_path, category_path, measure = "cu-info-partition";
  std::string condition = "none", strategy = "matching";
  std::string method = "greedy", objective = "quad", out_path;
  long long trials = 100000;
  uint64_t seed = 0;
  int k = 2;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "per-level measure report for a hierarchy");
  add_common(analyze, copts);
  analyze->add_option("--hierarchy", hierarchy_path, "hierarchy JSON")
      ->required();

  CLI::App* basic = app.add_subcommand(
      "basic-level", "predict the basic level of a hierarchy");
  add_common(basic, copts);
  basic->add_option("--hierarchy", hierarchy_path, "hierarchy JSON")
      ->required();
  basic->add_option("--measure", measure, "measure used for the prediction");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo guessing game vs. closed form");
  add_common(simulate, copts, /*with_format=*/false);
  simulate->add_option("--category-file", category_path, "category JSON");
  simulate->add_option("--condition", condition, "receiver knowledge")
      ->check(CLI::IsMember({"none", "partition", "category-only"}));
  simulate->add_option("--strategy", strategy, "guessing strategy")
      ->check(CLI::IsMember({"matching", "modal"}));
  simulate->add_option("--trials", trials, "trial count")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "RNG seed");

  CLI::App* cluster = app.add_subcommand(
      "cluster", "CU-maximizing clustering; writes a hierarchy file");
  add_common(cluster, copts, /*with_format=*/false);
  cluster->add_option("--k", k, "target block count")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--method", method, "search method")
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  cluster->add_option("--objective", objective, "partition objective")
      ->check(CLI::IsMember({"quad", "info"}));
  cluster->add_option("--output", out_path, "hierarchy output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // any parse failure is a usage error
  }

  try {
    if (*analyze) return run_analyze(copts, hierarchy_path);
    if (*basic) return run_basic_level(copts, hierarchy_path, measure);
    if (*simulate)
      return run_simulate(copts, category_path, condition, strategy, trials,
                          seed);
    if (*cluster) return run_cluster(copts, k, method, objective, out_path);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const cu::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
