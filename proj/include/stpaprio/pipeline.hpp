#pragma once

// End-to-end prioritisation: UCA banding and pre-filter, SAW + Monte-Carlo
// scoring, matrix placement and duplicate filtering.

#include <optional>
#include <vector>

#include "stpaprio/dataset.hpp"
#include "stpaprio/filter.hpp"
#include "stpaprio/matrix.hpp"
#include "stpaprio/simulation.hpp"
#include "stpaprio/uca_priority.hpp"

namespace stpaprio {

struct PipelineResult {
  AnalysisConfig config;
  std::vector<UCAPriorityResult> ucas;           // every UCA, banded
  std::vector<RequirementRecord> requirements;   // requirements that passed the pre-filter
  std::vector<SimulationOutcome> outcomes;       // aligned with `requirements`
  Prioritisation prioritisation;                 // aligned with `requirements`
  std::vector<FilteredRow> rows;
  std::vector<RankShift> shifts;                 // empty unless a second seed was given
};

// Requirements whose UCA survives the P1/P2 pre-filter (all of them when
// config.prefilter is false), in dataset order.
std::vector<RequirementRecord> select_requirements(const Dataset& dataset,
                                                   const std::vector<UCAPriorityResult>& banded,
                                                   const AnalysisConfig& config);

PipelineResult run_pipeline(const Dataset& dataset, const AnalysisConfig& config,
                            std::optional<std::uint64_t> second_seed = std::nullopt);

}  // namespace stpaprio
