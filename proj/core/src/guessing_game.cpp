#include "cu/guessing_game.hpp"

#include <algorithm>
#include <cmath>

#include "cu/rng.hpp"

namespace cu {

Strategy strategy_from_name(std::string_view name) {
  if (name == "matching") return Strategy::ProbabilityMatching;
  if (name == "modal") return Strategy::Modal;
  throw ValidationError("unknown strategy: " + std::string(name));
}

std::string strategy_name(Strategy s) {
  return s == Strategy::ProbabilityMatching ? "matching" : "modal";
}

GameCondition condition_from_name(std::string_view name) {
  if (name == "none") return GameCondition::None;
  if (name == "partition") return GameCondition::Partition;
  if (name == "category-only") return GameCondition::CategoryOnly;
  throw ValidationError("unknown condition: " + std::string(name));
}

std::string condition_name(GameCondition c) {
  switch (c) {
    case GameCondition::None: return "none";
    case GameCondition::Partition: return "partition";
    case GameCondition::CategoryOnly: return "category-only";
  }
  return "";
}

namespace {

void check_category(const Dataset& d, const Category* c, GameCondition cond) {
  if (cond == GameCondition::None) return;
  if (c == nullptr)
    throw ValidationError("condition requires a category");
  if (c->empty()) throw ValidationError("empty category");
  if (cond == GameCondition::Partition && c->size() == d.size())
    throw ValidationError("partition condition needs a proper category");
}

double match_score(const std::vector<double>& p) {
  double s = 0.0;
  for (double pi : p) s += pi * pi;
  return s;
}

double modal_score(const std::vector<double>& p) {
  return *std::max_element(p.begin(), p.end());
}

// expected per-dimension hit rate for a guesser drawing from `guess` while
// the truth is distributed as `truth`
double cross_score(const std::vector<double>& guess,
                   const std::vector<double>& truth, Strategy strat) {
  if (strat == Strategy::Modal) {
    int best = 0;
    for (int v = 1; v < static_cast<int>(guess.size()); ++v)
      if (guess[v] > guess[best]) best = v;
    return truth[best];
  }
  double s = 0.0;
  for (size_t v = 0; v < guess.size(); ++v) s += guess[v] * truth[v];
  return s;
}

}  // namespace

double closed_form_score(const Dataset& d, const Category* c,
                         GameCondition cond, Strategy strat,
                         const MeasureOptions& opts) {
  check_category(d, c, cond);
  auto dims = opts.selected_dimensions(d);
  double total = 0.0;
  double pc = 0.0;
  Category not_c;
  if (cond != GameCondition::None) {
    pc = to_double(c->weight(d) / d.total_weight());
    if (cond == GameCondition::Partition) not_c = c->complement(d);
  }
  auto self_score = [&](const std::vector<double>& p) {
    return strat == Strategy::Modal ? modal_score(p) : match_score(p);
  };
  for (int dim : dims) {
    auto marg = conditional_distribution(d, dim).probabilities;
    switch (cond) {
      case GameCondition::None:
        total += self_score(marg);
        break;
      case GameCondition::Partition: {
        auto in_c = conditional_distribution(d, dim, c).probabilities;
        auto out_c = conditional_distribution(d, dim, &not_c).probabilities;
        total += pc * self_score(in_c) + (1.0 - pc) * self_score(out_c);
        break;
      }
      case GameCondition::CategoryOnly: {
        // not-c trials are no-message baseline trials (see simulate)
        auto in_c = conditional_distribution(d, dim, c).probabilities;
        total += pc * self_score(in_c) + (1.0 - pc) * self_score(marg);
        break;
      }
    }
  }
  return total;
}

namespace {

struct GuessTables {
  std::vector<int> dims;
  // per selected dimension: distribution the receiver guesses from
  std::vector<std::vector<double>> in_c;   // when told "c"
  std::vector<std::vector<double>> other;  // otherwise
  std::vector<int> in_c_modal;
  std::vector<int> other_modal;
};

int modal_index(const std::vector<double>& p) {
  int best = 0;
  for (int v = 1; v < static_cast<int>(p.size()); ++v)
    if (p[v] > p[best]) best = v;
  return best;
}

int sample_discrete(const std::vector<double>& p, double u) {
  double acc = 0.0;
  int last = 0;
  for (int v = 0; v < static_cast<int>(p.size()); ++v) {
    if (p[v] <= 0.0) continue;
    acc += p[v];
    last = v;
    if (u < acc) return v;
  }
  return last;  // guard against rounding at u ~ 1
}

ScoreEstimate simulate_stream(const Dataset& d, const Category* c,
                              GameCondition cond, Strategy strat,
                              long long trials, uint64_t seed,
                              uint64_t stream, const MeasureOptions& opts) {
  check_category(d, c, cond);
  if (trials < 1) throw ValidationError("trial count must be >= 1");

  GuessTables tab;
  tab.dims = opts.selected_dimensions(d);
  Category not_c;
  if (cond == GameCondition::Partition) not_c = c->complement(d);
  for (int dim : tab.dims) {
    switch (cond) {
      case GameCondition::None:
        tab.other.push_back(conditional_distribution(d, dim).probabilities);
        break;
      case GameCondition::Partition:
        tab.in_c.push_back(conditional_distribution(d, dim, c).probabilities);
        tab.other.push_back(
            conditional_distribution(d, dim, &not_c).probabilities);
        break;
      case GameCondition::CategoryOnly:
        tab.in_c.push_back(conditional_distribution(d, dim, c).probabilities);
        tab.other.push_back(conditional_distribution(d, dim).probabilities);
        break;
    }
  }
  for (const auto& p : tab.in_c) tab.in_c_modal.push_back(modal_index(p));
  for (const auto& p : tab.other) tab.other_modal.push_back(modal_index(p));

  std::vector<double> cum;
  cum.reserve(d.size());
  double acc = 0.0;
  double wtot = to_double(d.total_weight());
  for (const auto& inst : d.instances()) {
    acc += to_double(inst.weight) / wtot;
    cum.push_back(acc);
  }
  auto draw_item = [&](TrialRng& rng) {
    double u = rng.next_double() * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    int i = static_cast<int>(it - cum.begin());
    return std::min(i, d.size() - 1);
  };

  unsigned long long sum = 0, sumsq = 0;
  for (long long t = 0; t < trials; ++t) {
    TrialRng rng(seed, stream, static_cast<uint64_t>(t));
    int item = draw_item(rng);
    bool told_c = cond != GameCondition::None && c->contains(item);
    if (cond == GameCondition::CategoryOnly && !told_c) {
      // no category message: the trial plays out as a baseline trial over
      // the whole population, so not-c trials score the baseline exactly
      item = draw_item(rng);
    }
    const auto& dists = told_c ? tab.in_c : tab.other;
    const auto& modals = told_c ? tab.in_c_modal : tab.other_modal;
    unsigned score = 0;
    for (size_t k = 0; k < tab.dims.size(); ++k) {
      int truth = d.instances()[item].values[tab.dims[k]];
      int guess = strat == Strategy::Modal
                      ? modals[k]
                      : sample_discrete(dists[k], rng.next_double());
      if (guess == truth) ++score;
    }
    sum += score;
    sumsq += static_cast<unsigned long long>(score) * score;
  }

  ScoreEstimate est;
  est.trials = trials;
  est.seed = seed;
  double n = static_cast<double>(trials);
  est.mean = static_cast<double>(sum) / n;
  if (trials > 1) {
    double var =
        (static_cast<double>(sumsq) - n * est.mean * est.mean) / (n - 1.0);
    est.stderr_ = var > 0.0 ? std::sqrt(var / n) : 0.0;
  }
  return est;
}

}  // namespace

ScoreEstimate simulate(const Dataset& d, const Category* c,
                       GameCondition cond, Strategy strat, long long trials,
                       uint64_t seed, const MeasureOptions& opts) {
  return simulate_stream(d, c, cond, strat, trials, seed, 0, opts);
}

GainEstimate empirical_gain(const Dataset& d, const Category* c,
                            GameCondition cond, Strategy strat,
                            long long trials, uint64_t seed,
                            const MeasureOptions& opts) {
  GainEstimate g;
  g.with_message = simulate_stream(d, c, cond, strat, trials, seed, 1, opts);
  g.baseline = simulate_stream(d, nullptr, GameCondition::None, strat, trials,
                               seed, 2, opts);
  g.gain = g.with_message.mean - g.baseline.mean;
  g.stderr_ = std::hypot(g.with_message.stderr_, g.baseline.stderr_);
  return g;
}

}  // namespace cu
