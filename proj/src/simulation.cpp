#include "stpaprio/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "stpaprio/sampling.hpp"

namespace stpaprio {

namespace {

constexpr std::uint64_t kBracketStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

void check_inputs(std::span<const RequirementRecord> requirements, const AnalysisConfig& config) {
  config.validate();
  if (requirements.size() < 2) {
    throw Error(ErrorCode::TooFewRequirements,
                fmt::format("simulation needs at least 2 requirements, got {}", requirements.size()));
  }
}

SimulationOutcome make_outcome(const RequirementRecord& r, std::vector<double> ranks, double ci_z) {
  const auto stats = rank_statistics(ranks, ci_z);
  return {r.req_id, std::move(ranks), stats.mean_rank, stats.rank_sigma, stats.requirement_score,
          stats.ci_upper};
}

}  // namespace

RankStatistics rank_statistics(std::span<const double> ranks, double ci_z) {
  if (ranks.empty()) throw Error(ErrorCode::EmptyInput, "no ranks to summarise");
  const double n = static_cast<double>(ranks.size());
  double sum = 0.0;
  for (double r : ranks) sum += r;
  const double mean = sum / n;
  double ss = 0.0;
  for (double r : ranks) ss += (r - mean) * (r - mean);
  const double sigma = std::sqrt(ss / n);
  return {mean, sigma, mean + sigma, mean + ci_z * sigma / std::sqrt(n)};
}

Desirabilities sample_desirabilities(const FactorAssessment& assessment,
                                     const AnalysisConfig& config, std::uint64_t iteration,
                                     std::uint64_t requirement) {
  Desirabilities d{};
  const double p = config.perturbation;
  for (auto f : kFactors) {
    const auto fi = static_cast<std::size_t>(f);
    const auto& b = assessment.bracket(f);
    double value;
    if (config.mode == SamplingMode::UniformPct) {
      value = desirability_of(f, b.mode);
    } else {
      const double u = uniform01({config.seed, iteration, requirement, fi, kBracketStream});
      value = desirability_of(f, triangular_quantile(b.lower, b.mode, b.upper, u));
    }
    if (config.mode != SamplingMode::Triangular) {
      const double u = uniform01({config.seed, iteration, requirement, fi, kNoiseStream});
      value = std::clamp(value * (1.0 - p + 2.0 * p * u), 0.0, 1.0);
    }
    d[fi] = value;
  }
  return d;
}

std::vector<SimulationOutcome> simulate_serial(std::span<const RequirementRecord> requirements,
                                               const AnalysisConfig& config) {
  check_inputs(requirements, config);
  const std::size_t n = requirements.size();
  const auto iterations = static_cast<std::size_t>(config.iterations);

  std::vector<std::vector<double>> ranks(n, std::vector<double>(iterations));
  for (std::size_t s = 0; s < iterations; ++s) {
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = saw_value(sample_desirabilities(requirements[j].assessment, config, s, j),
                            config.weights);
    }
    const auto iteration_ranks = rank_once(values);
    for (std::size_t j = 0; j < n; ++j) ranks[j][s] = iteration_ranks[j];
  }

  std::vector<SimulationOutcome> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back(make_outcome(requirements[j], std::move(ranks[j]), config.ci_z));
  return out;
}

std::vector<SimulationOutcome> simulate(std::span<const RequirementRecord> requirements,
                                        const AnalysisConfig& config) {
  check_inputs(requirements, config);
  const std::size_t n = requirements.size();
  const auto iterations = static_cast<std::int64_t>(config.iterations);

  // ranks stored requirement-major so each outcome is a contiguous slice
  std::vector<double> ranks(n * static_cast<std::size_t>(iterations));

#ifdef _OPENMP
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
#endif

#pragma omp parallel num_threads(threads)
  {
    std::vector<double> values(n);
    std::vector<double> local(n);
    std::vector<std::size_t> order(n);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < iterations; ++s) {
      const auto si = static_cast<std::uint64_t>(s);
      for (std::size_t j = 0; j < n; ++j) {
        values[j] = saw_value(sample_desirabilities(requirements[j].assessment, config, si, j),
                              config.weights);
      }
      rank_into(values, local, order);
      for (std::size_t j = 0; j < n; ++j) ranks[j * static_cast<std::size_t>(iterations) + si] = local[j];
    }
  }

  std::vector<SimulationOutcome> out(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t j = 0; j < count; ++j) {
    const auto begin = ranks.begin() + j * iterations;
    out[static_cast<std::size_t>(j)] =
        make_outcome(requirements[static_cast<std::size_t>(j)],
                     std::vector<double>(begin, begin + iterations), config.ci_z);
  }
  return out;
}

std::vector<SensitivityResult> sensitivity_oat(std::span<const RequirementRecord> requirements,
                                               const AnalysisConfig& config) {
  config.validate();
  std::vector<SensitivityResult> out;
  if (requirements.empty()) return out;

  std::vector<double> base;
  base.reserve(requirements.size());
  for (const auto& r : requirements) base.push_back(saw(r.assessment, config));
  const auto base_ranks = rank_once(base);

  auto rank_with = [&](std::size_t i, Factor f, int value) {
    auto values = base;
    values[i] = saw(requirements[i].assessment.with_mode(f, value), config);
    return rank_once(values)[i];
  };

  out.reserve(requirements.size() * kFactorCount);
  for (std::size_t i = 0; i < requirements.size(); ++i) {
    for (auto f : kFactors) {
      const auto& b = requirements[i].assessment.bracket(f);
      SensitivityResult r;
      r.req_id = requirements[i].req_id;
      r.factor = f;
      r.rank_at_mode = base_ranks[i];
      r.rank_at_lower = rank_with(i, f, b.lower);
      r.rank_at_upper = rank_with(i, f, b.upper);
      r.max_shift = std::max(std::abs(r.rank_at_mode - r.rank_at_lower),
                             std::abs(r.rank_at_mode - r.rank_at_upper));
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<int> final_positions(std::span<const SimulationOutcome> outcomes) {
  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (outcomes[a].requirement_score != outcomes[b].requirement_score) {
      return outcomes[a].requirement_score < outcomes[b].requirement_score;
    }
    return outcomes[a].req_id < outcomes[b].req_id;
  });
  std::vector<int> positions(outcomes.size());
  for (std::size_t k = 0; k < order.size(); ++k) positions[order[k]] = static_cast<int>(k + 1);
  return positions;
}

std::vector<RankShift> rank_shift(std::span<const SimulationOutcome> run_a,
                                  std::span<const SimulationOutcome> run_b,
                                  double flag_threshold) {
  const auto pos_a = final_positions(run_a);
  const auto pos_b = final_positions(run_b);

  std::map<std::string, int> b_by_id;
  for (std::size_t k = 0; k < run_b.size(); ++k) {
    if (!b_by_id.emplace(run_b[k].req_id, pos_b[k]).second) {
      throw Error(ErrorCode::MismatchedSets, "duplicate requirement " + run_b[k].req_id);
    }
  }
  if (run_a.size() != run_b.size()) {
    throw Error(ErrorCode::MismatchedSets,
                fmt::format("runs cover {} and {} requirements", run_a.size(), run_b.size()));
  }

  std::map<std::string, int> seen_a;
  for (const auto& o : run_a) {
    if (!seen_a.emplace(o.req_id, 0).second) {
      throw Error(ErrorCode::MismatchedSets, "duplicate requirement " + o.req_id);
    }
  }

  std::vector<RankShift> out;
  out.reserve(run_a.size());
  for (std::size_t k = 0; k < run_a.size(); ++k) {
    auto it = b_by_id.find(run_a[k].req_id);
    if (it == b_by_id.end()) {
      throw Error(ErrorCode::MismatchedSets, run_a[k].req_id + " missing from the second run");
    }
    RankShift r{run_a[k].req_id, pos_a[k], it->second, std::abs(pos_a[k] - it->second), false};
    r.flagged = r.shift >= flag_threshold;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace stpaprio
