#include "stpaprio/saw.hpp"

#include <algorithm>
#include <numeric>

namespace stpaprio {

double desirability_of(Factor factor, double v) {
  switch (factor) {
    case Factor::Type: return (v - 1.0) / 4.0;
    case Factor::Likelihood: return v;
    case Factor::Time: return (3.0 - v) / 2.0;
    case Factor::Cost: return (3.0 - v) / 2.0;
  }
  return 0.0;
}

Desirabilities desirability(const FactorAssessment& assessment) {
  Desirabilities d{};
  for (auto f : kFactors) {
    d[static_cast<std::size_t>(f)] = desirability_of(f, assessment.mode(f));
  }
  return d;
}

double saw_value(const Desirabilities& d, const Weights& w) {
  return w.type * d[0] + w.likelihood * d[1] + w.time * d[2] + w.cost * d[3];
}

SawScore saw(const RequirementRecord& requirement, const AnalysisConfig& config) {
  SawScore s;
  s.req_id = requirement.req_id;
  s.desirabilities = desirability(requirement.assessment);
  s.value = saw_value(s.desirabilities, config.weights);
  return s;
}

double saw(const FactorAssessment& assessment, const AnalysisConfig& config) {
  return saw_value(desirability(assessment), config.weights);
}

void rank_into(std::span<const double> values, std::span<double> ranks,
               std::span<std::size_t> order) {
  const std::size_t n = values.size();
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i+1 .. j share their mean
    const double shared = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
}

std::vector<double> rank_once(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "rank_once needs at least one value");
  std::vector<double> ranks(values.size());
  std::vector<std::size_t> order(values.size());
  rank_into(values, ranks, order);
  return ranks;
}

std::vector<double> rank_once(std::span<const SawScore> scores) {
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.value);
  return rank_once(values);
}

}  // namespace stpaprio
