#pragma once

// Monte-Carlo rank-stability simulation, one-at-a-time sensitivity and
// run-to-run rank shift comparison.
//
// `simulate` is the OpenMP kernel; `simulate_serial` is the single-threaded
// reference it must match bit for bit.

#include <span>
#include <string>
#include <vector>

#include "stpaprio/model.hpp"
#include "stpaprio/saw.hpp"

namespace stpaprio {

struct SimulationOutcome {
  std::string req_id;
  std::vector<double> ranks;  // one fractional rank per iteration
  double mean_rank = 0.0;
  double rank_sigma = 0.0;    // population standard deviation
  double requirement_score = 0.0;
  double ci_upper = 0.0;
};

struct RankStatistics {
  double mean_rank;
  double rank_sigma;
  double requirement_score;
  double ci_upper;
};

// Mean, population sigma, mean + sigma and mean + z * sigma / sqrt(N).
RankStatistics rank_statistics(std::span<const double> ranks, double ci_z);

// Desirabilities used by requirement `j` in iteration `s`.
Desirabilities sample_desirabilities(const FactorAssessment& assessment,
                                     const AnalysisConfig& config, std::uint64_t iteration,
                                     std::uint64_t requirement);

std::vector<SimulationOutcome> simulate(std::span<const RequirementRecord> requirements,
                                        const AnalysisConfig& config);

std::vector<SimulationOutcome> simulate_serial(std::span<const RequirementRecord> requirements,
                                               const AnalysisConfig& config);

struct SensitivityResult {
  std::string req_id;
  Factor factor = Factor::Type;
  double rank_at_mode = 0.0;
  double rank_at_lower = 0.0;
  double rank_at_upper = 0.0;
  double max_shift = 0.0;
};

// For every requirement and factor, moves only that factor to its lower and
// upper bracket value (everything else at mode) and re-ranks the full set.
std::vector<SensitivityResult> sensitivity_oat(std::span<const RequirementRecord> requirements,
                                               const AnalysisConfig& config);

// Final order of a run: requirement_score ascending, ties by req_id.
// Returns 1-based positions aligned with `outcomes`.
std::vector<int> final_positions(std::span<const SimulationOutcome> outcomes);

struct RankShift {
  std::string req_id;
  int rank_a = 0;
  int rank_b = 0;
  int shift = 0;
  bool flagged = false;
};

// Entries follow run_a's order. Throws MismatchedSets.
std::vector<RankShift> rank_shift(std::span<const SimulationOutcome> run_a,
                                  std::span<const SimulationOutcome> run_b,
                                  double flag_threshold = 5.0);

}  // namespace stpaprio
