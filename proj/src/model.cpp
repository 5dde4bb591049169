#include "stpaprio/model.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include <fmt/format.h>

namespace stpaprio {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Ph0_1: return "Ph0.1";
    case Phase::Ph0_2: return "Ph0.2";
    case Phase::Ph1: return "Ph1";
    case Phase::Ph2: return "Ph2";
    case Phase::Ph3: return "Ph3";
  }
  return "?";
}

Phase parse_phase(std::string_view token) {
  if (token == "Ph0.1") return Phase::Ph0_1;
  if (token == "Ph0.2") return Phase::Ph0_2;
  if (token == "Ph1") return Phase::Ph1;
  if (token == "Ph2") return Phase::Ph2;
  if (token == "Ph3") return Phase::Ph3;
  throw Error(ErrorCode::UnknownPhase, fmt::format("'{}' is not one of Ph0.1, Ph0.2, Ph1, Ph2, Ph3", token));
}

std::string to_string(UcaBand band) { return fmt::format("UCA_P{}", static_cast<int>(band)); }

std::string_view to_string(Factor factor) {
  switch (factor) {
    case Factor::Type: return "type";
    case Factor::Likelihood: return "likelihood";
    case Factor::Time: return "time";
    case Factor::Cost: return "cost";
  }
  return "?";
}

OrdinalRange ordinal_range(Factor factor) {
  switch (factor) {
    case Factor::Type: return {1, 5};
    case Factor::Likelihood: return {0, 1};
    case Factor::Time: return {1, 3};
    case Factor::Cost: return {1, 3};
  }
  return {0, 0};
}

namespace {

void check_bracket(Factor f, const Bracket& b) {
  const auto range = ordinal_range(f);
  if (!(b.lower <= b.mode && b.mode <= b.upper) || b.lower < range.min || b.upper > range.max) {
    throw Error(ErrorCode::InvalidIntensityToken,
                fmt::format("{} bracket ({}, {}, {}) must satisfy {} <= a <= c <= b <= {}",
                            to_string(f), b.lower, b.mode, b.upper, range.min, range.max));
  }
}

}  // namespace

FactorAssessment::FactorAssessment(const std::array<Bracket, kFactorCount>& brackets)
    : brackets_(brackets) {
  for (auto f : kFactors) check_bracket(f, bracket(f));
}

FactorAssessment::FactorAssessment(TimeEffort time, CostLevel cost, MitigationType type,
                                   int covered_gap)
    : FactorAssessment(std::array<Bracket, kFactorCount>{
          Bracket::point(static_cast<int>(type)), Bracket::point(covered_gap),
          Bracket::point(static_cast<int>(time)), Bracket::point(static_cast<int>(cost))}) {}

FactorAssessment FactorAssessment::with_brackets(const std::array<Bracket, kFactorCount>& brackets) {
  return FactorAssessment(brackets);
}

FactorAssessment FactorAssessment::with_mode(Factor f, int value) const {
  auto copy = brackets_;
  auto& b = copy[static_cast<std::size_t>(f)];
  b.mode = value;
  b.lower = std::min(b.lower, value);
  b.upper = std::max(b.upper, value);
  return FactorAssessment(copy);
}

UCARecord UCARecord::make(std::string uca_id, Phase phase, std::string description,
                          std::optional<double> pms, std::optional<double> cif,
                          std::optional<double> sif, double ej) {
  UCARecord r;
  r.uca_id = std::move(uca_id);
  r.phase = phase;
  r.description = std::move(description);
  r.pms = pms;
  r.cif = cif;
  r.ej = ej;
  if (pms && *pms <= 0.0) throw Error(ErrorCode::NonPositiveSIF, r.uca_id + ": pms must be > 0");
  if (cif && *cif <= 0.0) throw Error(ErrorCode::NonPositiveSIF, r.uca_id + ": cif must be > 0");
  if (pms && cif) {
    const double product = *pms * *cif;
    if (sif && std::abs(*sif - product) > 1e-9 * std::abs(product)) {
      throw Error(ErrorCode::InvalidConfig,
                  fmt::format("{}: sif {} disagrees with pms x cif = {}", r.uca_id, *sif, product));
    }
    r.sif = product;
  } else if (sif) {
    r.sif = *sif;
  } else {
    throw Error(ErrorCode::NonPositiveSIF, r.uca_id + ": needs sif or both pms and cif");
  }
  if (!(r.sif > 0.0)) throw Error(ErrorCode::NonPositiveSIF, r.uca_id + ": sif must be > 0");
  if (!(ej >= 0.0)) throw Error(ErrorCode::NegativeEJ, r.uca_id + ": ej must be >= 0");
  return r;
}

std::string ReqId::str() const {
  return fmt::format("{}-RQ{}{}", uca_id, dotted ? "." : "", number);
}

ReqId parse_req_id(std::string_view raw) {
  static const std::regex grammar(R"(^(UCA\(([^()]*)\)-[0-9]+(?:\.[0-9]+)*)-RQ(\.?)([1-9][0-9]*)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (raw.empty() || !std::regex_match(raw.begin(), raw.end(), m, grammar)) {
    throw Error(ErrorCode::MalformedId,
                fmt::format("'{}' does not match UCA(<phase>)-<n.n.n>-RQ<k>", raw));
  }
  ReqId id;
  try {
    id.phase = parse_phase(m[2].str());
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedId, fmt::format("'{}' has an invalid phase token", raw));
  }
  id.uca_id = m[1].str();
  id.dotted = m[3].length() == 1;
  const auto digits = m[4].str();
  if (digits.size() > 9) throw Error(ErrorCode::MalformedId, fmt::format("'{}' requirement number too large", raw));
  id.number = std::stoi(digits);
  return id;
}

Phase parse_uca_id(std::string_view raw) {
  static const std::regex grammar(R"(^UCA\(([^()]*)\)-[0-9]+(?:\.[0-9]+)*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(raw.begin(), raw.end(), m, grammar)) {
    throw Error(ErrorCode::MalformedId, fmt::format("'{}' does not match UCA(<phase>)-<n.n.n>", raw));
  }
  try {
    return parse_phase(m[1].str());
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedId, fmt::format("'{}' has an invalid phase token", raw));
  }
}

RequirementRecord RequirementRecord::make(std::string req_id, std::string description,
                                          std::vector<std::string> causal_factors,
                                          FactorAssessment assessment) {
  auto parsed = parse_req_id(req_id);
  return RequirementRecord{std::move(req_id), std::move(parsed.uca_id), std::move(description),
                           std::move(causal_factors), assessment};
}

std::string_view to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::UniformPct: return "uniform-pct";
    case SamplingMode::Triangular: return "triangular";
    case SamplingMode::Combined: return "combined";
  }
  return "?";
}

SamplingMode parse_sampling_mode(std::string_view token) {
  if (token == "uniform-pct") return SamplingMode::UniformPct;
  if (token == "triangular") return SamplingMode::Triangular;
  if (token == "combined") return SamplingMode::Combined;
  throw Error(ErrorCode::InvalidConfig,
              fmt::format("mode '{}' is not one of uniform-pct, triangular, combined", token));
}

double Weights::operator[](Factor f) const {
  switch (f) {
    case Factor::Type: return type;
    case Factor::Likelihood: return likelihood;
    case Factor::Time: return time;
    case Factor::Cost: return cost;
  }
  return 0.0;
}

std::optional<std::string> AnalysisConfig::validate() const {
  if (iterations < 1) throw Error(ErrorCode::InvalidConfig, "iterations must be ≥ 1");
  if (!(perturbation >= 0.0 && perturbation < 1.0)) {
    throw Error(ErrorCode::InvalidPerturbation, fmt::format("perturbation {} must be in [0, 1)", perturbation));
  }
  for (auto f : kFactors) {
    if (!(weights[f] >= 0.0)) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("weight for {} must be >= 0", to_string(f)));
    }
  }
  if (!(ej_ceiling > 0.0)) throw Error(ErrorCode::InvalidConfig, "ej_ceiling must be > 0");
  if (workers < 0) throw Error(ErrorCode::InvalidConfig, "workers must be >= 0");
  if (std::abs(weights.sum() - 1.0) > 1e-9) {
    return fmt::format("weights sum to {} rather than 1", weights.sum());
  }
  return std::nullopt;
}

}  // namespace stpaprio
