#include "stpaprio/pipeline.hpp"

#include <map>
#include <set>

namespace stpaprio {

std::vector<RequirementRecord> select_requirements(const Dataset& dataset,
                                                   const std::vector<UCAPriorityResult>& banded,
                                                   const AnalysisConfig& config) {
  std::set<std::string> kept;
  const auto survivors = config.prefilter ? prefilter_p1_p2(banded) : banded;
  for (const auto& u : survivors) kept.insert(u.uca_id);
  std::vector<RequirementRecord> out;
  for (const auto& r : dataset.requirements) {
    if (kept.count(r.uca_id)) out.push_back(r);
  }
  return out;
}

PipelineResult run_pipeline(const Dataset& dataset, const AnalysisConfig& config,
                            std::optional<std::uint64_t> second_seed) {
  PipelineResult result;
  result.config = config;
  config.validate();
  if (dataset.ucas.empty()) throw Error(ErrorCode::TooFewRequirements, "dataset has no UCAs");
  result.ucas = rank_ucas(dataset.ucas, config.ej_ceiling);
  result.requirements = select_requirements(dataset, result.ucas, config);
  result.outcomes = simulate(result.requirements, config);

  std::map<std::string, const UCAPriorityResult*> by_id;
  for (const auto& u : result.ucas) by_id.emplace(u.uca_id, &u);

  std::vector<double> p_uca;
  p_uca.reserve(result.requirements.size());
  for (const auto& r : result.requirements) p_uca.push_back(by_id.at(r.uca_id)->priority_score);
  result.prioritisation = prioritise(result.outcomes, p_uca);

  std::vector<PrioritisedRequirement> rows;
  rows.reserve(result.requirements.size());
  for (std::size_t k = 0; k < result.requirements.size(); ++k) {
    const auto& r = result.requirements[k];
    const auto* uca = dataset.find_uca(r.uca_id);
    rows.push_back({r.req_id, uca ? uca->description : std::string{}, r.causal_factors, r.description,
                    result.prioritisation.assignments[k].label});
  }
  result.rows = filter_requirements(std::span<const PrioritisedRequirement>(rows));

  if (second_seed) {
    auto other = config;
    other.seed = *second_seed;
    const auto run_b = simulate(result.requirements, other);
    result.shifts = rank_shift(result.outcomes, run_b, config.shift_flag);
  }
  return result;
}

}  // namespace stpaprio
