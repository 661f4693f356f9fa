#pragma once

#include <cstdint>
#include <string>

#include "cu/measures.hpp"

namespace cu {

enum class Strategy { ProbabilityMatching, Modal };
enum class GameCondition { None, Partition, CategoryOnly };

Strategy strategy_from_name(std::string_view name);
std::string strategy_name(Strategy s);
GameCondition condition_from_name(std::string_view name);
std::string condition_name(GameCondition c);

struct ScoreEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long trials = 0;
  uint64_t seed = 0;
};

// Expected per-trial score (one point per correctly guessed dimension).
// c may be null only for GameCondition::None.
double closed_form_score(const Dataset& d, const Category* c,
                         GameCondition cond, Strategy strat,
                         const MeasureOptions& opts = {});

// Monte Carlo estimate; identical (inputs, seed) give identical output.
ScoreEstimate simulate(const Dataset& d, const Category* c,
                       GameCondition cond, Strategy strat, long long trials,
                       uint64_t seed, const MeasureOptions& opts = {});

struct GainEstimate {
  double gain = 0.0;
  double stderr_ = 0.0;
  ScoreEstimate with_message;
  ScoreEstimate baseline;
};

// simulate(cond) - simulate(None) on independent substreams. With the
// probability-matching strategy this converges to cu_quad_partition
// (Partition) or cu_quad_category (CategoryOnly).
GainEstimate empirical_gain(const Dataset& d, const Category* c,
                            GameCondition cond, Strategy strat,
                            long long trials, uint64_t seed,
                            const MeasureOptions& opts = {});

}  // namespace cu
