#pragma once

// Simple Additive Weighting over the four requirement factors, and the
// fractional ranking used by every Monte-Carlo iteration.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stpaprio/model.hpp"

namespace stpaprio {

// Indexed by Factor; each entry in [0, 1], 1 = most priority-raising.
using Desirabilities = std::array<double, kFactorCount>;

// Affine map from a (possibly fractional) ordinal value to [0, 1].
double desirability_of(Factor factor, double ordinal_value);

Desirabilities desirability(const FactorAssessment& assessment);

// w_Type*d_type + w_Likelihood*d_likelihood + w_Time*d_time + w_Cost*d_cost,
// always summed in that order.
double saw_value(const Desirabilities& d, const Weights& w);

struct SawScore {
  std::string req_id;
  Desirabilities desirabilities{};
  double value = 0.0;
};

SawScore saw(const RequirementRecord& requirement, const AnalysisConfig& config);
double saw(const FactorAssessment& assessment, const AnalysisConfig& config);

// Descending value gets rank 1; exact ties share the average of the
// positions they span. Throws EmptyInput.
std::vector<double> rank_once(std::span<const double> values);
std::vector<double> rank_once(std::span<const SawScore> scores);

// Allocation-free variant for the simulation kernels. `order` is scratch
// of the same length as `values`.
void rank_into(std::span<const double> values, std::span<double> ranks,
               std::span<std::size_t> order);

}  // namespace stpaprio
