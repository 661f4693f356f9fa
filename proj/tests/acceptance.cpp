// Acceptance gate: one pass/fail line per criterion, exit = failure count.
//
// Usage: acceptance <cli-binary> <data-dir>
// The data dir holds the frozen fixtures (d1/d2/d3, ms_tools, hz_*).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"

#include "cu/clustering.hpp"
#include "cu/dataset.hpp"
#include "cu/guessing_game.hpp"
#include "cu/hierarchy_analysis.hpp"
#include "cu/measures.hpp"

namespace {

std::string g_cli;
std::string g_data;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cu::Dataset load_dataset(const std::string& name) {
  return cu::parse_dataset(slurp(g_data + "/" + name));
}

cu::Category cat(const cu::Dataset& d, std::vector<int> idx) {
  return cu::Category(d, std::move(idx));
}

struct Criterion {
  int number;
  std::string summary;
  bool (*run)(std::string& detail);
};

// ---------------------------------------------------------------- ensemble

std::vector<cu::Dataset> make_ensemble(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  oracle::RandomSpec spec;
  spec.random_weights = true;
  std::vector<cu::Dataset> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(oracle::random_dataset(rng, spec));
  return out;
}

bool criterion1(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  auto ensemble = make_ensemble(1000, 1001);
  int bad = 0;
  for (const auto& d : ensemble) {
    std::vector<int> members = oracle::random_subset(rng, d.size());
    cu::Category c = cat(d, members);
    cu::Category nc = c.complement(d);
    double ip = cu::cu_info_partition(d, c);
    double mi = oracle::cu_info_partition(d, members);
    double icsum = cu::cu_info_category(d, c) + cu::cu_info_category(d, nc);
    bool ok = std::fabs(ip - mi) <= 1e-9 && std::fabs(ip - icsum) <= 1e-9 &&
              cu::cu_quad_partition_exact(d, c) ==
                  cu::cu_quad_category_exact(d, c) +
                      cu::cu_quad_category_exact(d, nc);
    if (!ok) ++bad;
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  detail = "violations=" + std::to_string(bad) +
           " runtime=" + std::to_string(secs) + "s";
  return bad == 0 && secs < 10.0;
}

bool criterion2(std::string& detail) {
  std::mt19937_64 rng(22);
  int bad = 0;
  for (int iter = 0; iter < 300; ++iter) {
    cu::Dataset d = oracle::random_dataset(rng);
    std::vector<int> members = oracle::random_subset(rng, d.size());
    cu::Category c = cat(d, members);
    if (cu::cu_info_partition(d, c) < -1e-12) ++bad;
    if (cu::cu_quad_partition_exact(d, c) < 0) ++bad;

    // population category: category forms are exactly zero
    std::vector<int> all(d.size());
    std::iota(all.begin(), all.end(), 0);
    cu::Category pop = cat(d, all);
    if (cu::cu_quad_category_exact(d, pop) != 0) ++bad;
    if (std::fabs(cu::cu_info_category(d, pop)) > 1e-12) ++bad;

    // independence by duplication: all CU forms exactly zero
    std::vector<cu::Instance> twice = d.instances();
    for (const auto& inst : d.instances()) {
      cu::Instance copy = inst;
      copy.id = inst.id + "b";
      twice.push_back(copy);
    }
    cu::Dataset dd(d.schema(), std::move(twice));
    std::vector<int> half(d.size());
    std::iota(half.begin(), half.end(), 0);
    cu::Category hc = cat(dd, half);
    if (cu::cu_quad_partition_exact(dd, hc) != 0) ++bad;
    if (cu::cu_quad_category_exact(dd, hc) != 0) ++bad;
    if (std::fabs(cu::cu_info_partition(dd, hc)) > 1e-9) ++bad;
    if (std::fabs(cu::cu_info_category(dd, hc)) > 1e-9) ++bad;
  }
  detail = "violations=" + std::to_string(bad);
  return bad == 0;
}

bool criterion3(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  using GC = cu::GameCondition;
  using ST = cu::Strategy;
  cu::Dataset d1 = load_dataset("d1.csv");
  cu::Dataset d2 = load_dataset("d2.csv");
  cu::Dataset d3 = load_dataset("d3.csv");
  cu::Category d1c = cat(d1, {0, 1});
  cu::Category d3a = cat(d3, {0, 1, 2, 3});
  cu::Category d3b = cat(d3, {0, 1});

  struct Case {
    const cu::Dataset* d;
    const cu::Category* c;
    GC cond;
    ST strat;
    uint64_t seed;
  };
  const Case cases[] = {
      {&d1, nullptr, GC::None, ST::ProbabilityMatching, 101},
      {&d1, &d1c, GC::Partition, ST::ProbabilityMatching, 102},
      {&d2, nullptr, GC::None, ST::Modal, 103},
      {&d3, &d3a, GC::CategoryOnly, ST::ProbabilityMatching, 104},
      {&d3, &d3b, GC::Partition, ST::ProbabilityMatching, 105},
  };
  const long long kTrials = 1000000;
  int bad = 0;
  std::ostringstream log;
  for (const Case& cs : cases) {
    cu::ScoreEstimate est =
        cu::simulate(*cs.d, cs.c, cs.cond, cs.strat, kTrials, cs.seed);
    double closed = cu::closed_form_score(*cs.d, cs.c, cs.cond, cs.strat);
    if (std::fabs(est.mean - closed) > 3.0 * std::max(est.stderr_, 1e-12)) {
      ++bad;
      log << " case seed=" << cs.seed << " mean=" << est.mean
          << " closed=" << closed;
    }
  }
  cu::GainEstimate g1 = cu::empirical_gain(d1, &d1c, GC::Partition,
                                           ST::ProbabilityMatching, kTrials,
                                           201);
  if (std::fabs(g1.gain - cu::cu_quad_partition(d1, d1c)) >
      3.0 * g1.stderr_) {
    ++bad;
    log << " gain-d1=" << g1.gain;
  }
  cu::GainEstimate g2 = cu::empirical_gain(d3, &d3a, GC::CategoryOnly,
                                           ST::ProbabilityMatching, kTrials,
                                           202);
  if (std::fabs(g2.gain - cu::cu_quad_category(d3, d3a)) >
      3.0 * g2.stderr_) {
    ++bad;
    log << " gain-d3=" << g2.gain;
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  detail = "violations=" + std::to_string(bad) +
           " runtime=" + std::to_string(secs) + "s" + log.str();
  return bad == 0 && secs < 30.0;
}

bool criterion4(std::string& detail) {
  std::mt19937_64 rng(44);
  int hierarchies = 0, bad = 0;
  while (hierarchies < 100) {
    cu::Dataset d = oracle::random_dataset(rng);
    if (d.size() < 4) continue;
    ++hierarchies;
    // random nested chain c ⊂ c' built by splitting a random subset
    std::vector<int> outer = oracle::random_subset(rng, d.size());
    if (outer.size() < 2) outer = {0, 1};
    std::vector<int> inner(outer.begin(), outer.begin() + outer.size() / 2);
    if (inner.empty()) inner = {outer[0]};
    for (int dim = 0; dim < d.schema().dimension_count(); ++dim) {
      for (int v = 0; v < d.schema().cardinality(dim); ++v) {
        cu::Rational f = 0, in_i = 0, in_o = 0;
        for (int i = 0; i < d.size(); ++i) {
          if (d.instances()[i].values[dim] != v) continue;
          f += d.instances()[i].weight;
          if (std::binary_search(outer.begin(), outer.end(), i))
            in_o += d.instances()[i].weight;
          if (std::binary_search(inner.begin(), inner.end(), i))
            in_i += d.instances()[i].weight;
        }
        if (f != 0 && in_o < in_i) ++bad;  // p(c'|f) < p(c|f) is impossible
      }
    }
  }
  // §2.2 behavior: level-average cue validity is maximal at the most general
  // level of every noiseless nested fixture
  for (std::string tag : {"hz_top", "hz_middle", "hz_bottom", "ms_tools"}) {
    cu::Dataset d = load_dataset(tag + ".csv");
    cu::Hierarchy h =
        cu::parse_hierarchy(slurp(g_data + "/" + tag + "_hierarchy.json"), d);
    cu::MeasureReport rep = cu::level_report(d, h, {});
    auto groups = cu::ordering(rep, cu::MeasureId::CueValidity, 1e-9);
    if (groups[0] != std::vector<int>{1}) ++bad;
  }
  detail = "violations=" + std::to_string(bad) +
           " hierarchies=" + std::to_string(hierarchies);
  return bad == 0;
}

bool check_fixture(const std::string& tag, int designed_ip_level,
                   bool expect_ip_tie12, std::string& log) {
  cu::Dataset d = load_dataset(tag + ".csv");
  cu::Hierarchy h =
      cu::parse_hierarchy(slurp(g_data + "/" + tag + "_hierarchy.json"), d);
  cu::MeasureReport rep = cu::level_report(d, h, {});
  using MI = cu::MeasureId;
  bool ok = true;
  auto top = [&](MI id) { return cu::ordering(rep, id, 1e-9)[0]; };
  if (expect_ip_tie12) {
    if (top(MI::CuInfoPartition) != std::vector<int>{1, 2}) ok = false;
  } else if (top(MI::CuInfoPartition) != std::vector<int>{designed_ip_level}) {
    ok = false;
  }
  if (top(MI::CueValidity) != std::vector<int>{1}) ok = false;
  if (top(MI::Collocation) != std::vector<int>{1}) ok = false;
  if (top(MI::CategoryValidity) != std::vector<int>{1, 2, 3}) ok = false;
  if (!ok) log += " " + tag;
  return ok;
}

bool criterion5(std::string& detail) {
  std::string log;
  bool ok = check_fixture("ms_tools", 0, /*expect_ip_tie12=*/true, log);
  // cu-info-category must order basic > superordinate > subordinate
  cu::Dataset d = load_dataset("ms_tools.csv");
  cu::Hierarchy h =
      cu::parse_hierarchy(slurp(g_data + "/ms_tools_hierarchy.json"), d);
  cu::MeasureReport rep = cu::level_report(d, h, {});
  auto groups = cu::ordering(rep, cu::MeasureId::CuInfoCategory, 1e-9);
  std::vector<std::vector<int>> want = {{2}, {1}, {3}};
  if (groups != want) {
    ok = false;
    log += " ic-order";
  }
  detail = ok ? "all qualitative targets reproduced" : "failed:" + log;
  return ok;
}

bool criterion6(std::string& detail) {
  std::string log;
  bool ok = true;
  int designed = 1;
  for (std::string tag : {"hz_top", "hz_middle", "hz_bottom"}) {
    ok = check_fixture(tag, designed, false, log) && ok;
    ++designed;
  }
  detail = ok ? "designed level selected in all three" : "failed:" + log;
  return ok;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    size_t i = 0;
    while (i < idx.size()) {
      size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      double avg = 0.5 * (i + j) + 1.0;  // average rank for the tie group
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> rx = ranks(x), ry = ranks(y);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 1.0;  // constant ranks: trivially agreeing
  return sxy / std::sqrt(sxx * syy);
}

bool criterion7(std::string& detail) {
  auto ensemble = make_ensemble(1000, 1001);  // same ensemble as criterion 1
  std::mt19937_64 rng(77);
  int agreeing = 0, total = 0;
  std::ostringstream log;
  for (const auto& d : ensemble) {
    std::vector<std::vector<int>> cats;
    int n = d.size();
    if (n <= 10) {
      for (uint32_t bits = 1; bits + 1 < (1u << n); ++bits) {
        std::vector<int> m;
        for (int i = 0; i < n; ++i)
          if (bits >> i & 1) m.push_back(i);
        cats.push_back(std::move(m));
      }
    } else {
      for (int s = 0; s < 100; ++s)
        cats.push_back(oracle::random_subset(rng, n));
    }
    std::vector<double> ic, qc;
    for (const auto& m : cats) {
      cu::Category c = cat(d, m);
      ic.push_back(cu::cu_info_category(d, c));
      qc.push_back(cu::cu_quad_category(d, c));
    }
    double rho = spearman(ic, qc);
    ++total;
    if (rho >= 0.9) {
      ++agreeing;
    } else {
      log << " dataset#" << total - 1 << " rho=" << rho;
    }
  }
  double frac = static_cast<double>(agreeing) / total;
  detail = "agreement=" + std::to_string(agreeing) + "/" +
           std::to_string(total);
  std::string low = log.str();
  if (!low.empty())
    detail += " low-correlation datasets (logged):" +
              low.substr(0, 400);
  return frac >= 0.95;
}

bool criterion8(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  // seed fixed once per the flaky-test budget: greedy agglomeration is not
  // guaranteed within 0.9x of the optimum on arbitrary inputs
  std::mt19937_64 rng(113);
  oracle::RandomSpec spec;
  spec.min_instances = 3;
  spec.max_instances = 10;
  int total = 60, matches = 0, ratio_bad = 0, oracle_bad = 0;
  for (int iter = 0; iter < total; ++iter) {
    cu::Dataset d = oracle::random_dataset(rng, spec);
    cu::Partitioning ex = cu::best_split_exhaustive(d);
    cu::Partitioning gr = cu::greedy_agglomerate(d, 2);
    if (std::fabs(ex.objective - gr.objective) <= 1e-9) ++matches;
    double ratio = ex.objective <= 1e-15
                       ? 1.0
                       : gr.objective / ex.objective;
    if (ratio < 0.9) ++ratio_bad;
    if (d.size() <= 6 &&
        std::fabs(ex.objective - oracle::best_split_enumerated(d)) > 1e-9)
      ++oracle_bad;
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  detail = "greedy-matches=" + std::to_string(matches) + "/" +
           std::to_string(total) + " ratio-failures=" +
           std::to_string(ratio_bad) + " oracle-mismatches=" +
           std::to_string(oracle_bad) + " runtime=" + std::to_string(secs) +
           "s";
  return matches * 5 >= total * 4 && ratio_bad == 0 && oracle_bad == 0 &&
         secs < 20.0;
}

std::string run_cli(const std::string& args, int* exit_code) {
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  if (exit_code) *exit_code = WEXITSTATUS(status);
  return out;
}

bool criterion9(std::string& detail) {
  const std::string tmp = "/tmp/cu_acceptance";
  std::string mk = "mkdir -p " + tmp;
  if (std::system(mk.c_str()) != 0) return false;
  std::vector<std::string> commands = {
      "analyze --data " + g_data + "/ms_tools.csv --hierarchy " + g_data +
          "/ms_tools_hierarchy.json --format tsv",
      "analyze --data " + g_data + "/ms_tools.csv --hierarchy " + g_data +
          "/ms_tools_hierarchy.json --format json",
      "basic-level --data " + g_data + "/hz_top.csv --hierarchy " + g_data +
          "/hz_top_hierarchy.json --measure cu-info-partition",
      "simulate --data " + g_data + "/d1.csv --category-file " + g_data +
          "/d1_category.json --condition partition --strategy matching "
          "--trials 100000 --seed 42",
      "cluster --data " + g_data + "/d3.csv --k 2 --method exhaustive "
          "--output " + tmp + "/h1.json",
      "cluster --data " + g_data + "/d3.csv --k 3 --method greedy "
          "--output " + tmp + "/h2.json",
  };
  int bad = 0;
  std::ostringstream log;
  for (size_t i = 0; i < commands.size(); ++i) {
    int code1 = 0, code2 = 0;
    std::string out1 = run_cli(commands[i], &code1);
    std::string first_file, second_file;
    if (commands[i].find("--output") != std::string::npos)
      first_file = slurp(tmp + "/h" + std::to_string(i - 3) + ".json");
    std::string out2 = run_cli(commands[i], &code2);
    if (commands[i].find("--output") != std::string::npos)
      second_file = slurp(tmp + "/h" + std::to_string(i - 3) + ".json");
    if (out1 != out2 || code1 != code2 || code1 != 0 ||
        first_file != second_file) {
      ++bad;
      log << " command#" << i << " code=" << code1;
    }
  }
  // exit-code contract: usage error 2, validation error 1
  int code = 0;
  run_cli("analyze --no-such-flag", &code);
  if (code != 2) {
    ++bad;
    log << " usage-exit=" << code;
  }
  run_cli("analyze --data /nonexistent.csv --hierarchy " + g_data +
              "/ms_tools_hierarchy.json",
          &code);
  if (code != 1) {
    ++bad;
    log << " validation-exit=" << code;
  }
  detail = bad == 0 ? "all commands byte-identical across reruns"
                    : "failures:" + log.str();
  return bad == 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <cli-binary> <data-dir>\n";
    return 64;
  }
  g_cli = argv[1];
  g_data = argv[2];

  const Criterion criteria[] = {
      {1, "identity suite over 1000 random datasets", criterion1},
      {2, "nonnegativity and exact zero cases", criterion2},
      {3, "guessing-game convergence at 1e6 trials", criterion3},
      {4, "cue-validity monotonicity and generality preference", criterion4},
      {5, "Murphy & Smith-style reconstruction", criterion5},
      {6, "Hoffmann & Ziessler-style family", criterion6},
      {7, "info/quad rank agreement (Spearman >= 0.9)", criterion7},
      {8, "clustering oracle comparison", criterion8},
      {9, "CLI determinism and exit codes", criterion9},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number
              << ": " << c.summary << " (" << detail << ")\n";
  }
  return failures;
}
