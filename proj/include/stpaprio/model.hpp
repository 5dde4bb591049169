#pragma once

// Domain types shared by every stage of the prioritisation pipeline.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stpaprio/error.hpp"

namespace stpaprio {

enum class Phase { Ph0_1, Ph0_2, Ph1, Ph2, Ph3 };

std::string_view to_string(Phase phase);
Phase parse_phase(std::string_view token);  // throws UnknownPhase

enum class UcaBand { P1 = 1, P2, P3, P4, P5 };

std::string to_string(UcaBand band);  // "UCA_P1" ...

// Ordinal encodings of the SME factor intensities. Higher desirability
// always means higher priority; the encodings themselves follow the
// intensity tables (Time/Cost 1..3, mitigation Type A=5 .. E=1).
enum class TimeEffort { Minor = 1, Moderate = 2, Significant = 3 };
enum class CostLevel { Low = 1, Medium = 2, High = 3 };
enum class MitigationType { E = 1, D = 2, C = 3, B = 4, A = 5 };

// Factor order matches the weight vector (w_Type, w_Likelihood, w_Time, w_Cost).
enum class Factor { Type = 0, Likelihood = 1, Time = 2, Cost = 3 };
inline constexpr std::size_t kFactorCount = 4;
inline constexpr std::array<Factor, kFactorCount> kFactors{Factor::Type, Factor::Likelihood,
                                                           Factor::Time, Factor::Cost};

std::string_view to_string(Factor factor);

struct OrdinalRange {
  int min;
  int max;
};

// Valid ordinal range of each factor.
OrdinalRange ordinal_range(Factor factor);

// Triangular bracket Tri(lower, mode, upper) on a factor's ordinal scale.
struct Bracket {
  int lower = 0;
  int mode = 0;
  int upper = 0;

  static Bracket point(int v) { return {v, v, v}; }
  bool is_point() const { return lower == mode && mode == upper; }
  friend bool operator==(const Bracket&, const Bracket&) = default;
};

class FactorAssessment {
 public:
  // Point assessment (a = c = b for every factor).
  FactorAssessment(TimeEffort time, CostLevel cost, MitigationType type, int covered_gap);

  // Full triangular assessment; validates a <= c <= b inside each ordinal range.
  static FactorAssessment with_brackets(const std::array<Bracket, kFactorCount>& brackets);

  const Bracket& bracket(Factor f) const { return brackets_[static_cast<std::size_t>(f)]; }
  int mode(Factor f) const { return bracket(f).mode; }

  TimeEffort time() const { return static_cast<TimeEffort>(mode(Factor::Time)); }
  CostLevel cost() const { return static_cast<CostLevel>(mode(Factor::Cost)); }
  MitigationType type() const { return static_cast<MitigationType>(mode(Factor::Type)); }
  int covered_gap() const { return mode(Factor::Likelihood); }

  // Copy with one factor's modal value replaced (bounds widened if needed).
  FactorAssessment with_mode(Factor f, int value) const;

  friend bool operator==(const FactorAssessment&, const FactorAssessment&) = default;

 private:
  explicit FactorAssessment(const std::array<Bracket, kFactorCount>& brackets);
  std::array<Bracket, kFactorCount> brackets_;
};

struct UCARecord {
  std::string uca_id;
  Phase phase = Phase::Ph0_1;
  std::string description;
  std::optional<double> pms;
  std::optional<double> cif;
  double sif = 0.0;
  double ej = 0.0;

  // Builds a record, deriving sif = pms * cif when sif is absent and
  // checking consistency when all three are present.
  static UCARecord make(std::string uca_id, Phase phase, std::string description,
                        std::optional<double> pms, std::optional<double> cif,
                        std::optional<double> sif, double ej);

  friend bool operator==(const UCARecord&, const UCARecord&) = default;
};

// Parsed requirement identifier: UCA(<phase>)-<dotted-number>-RQ<k> or ...-RQ.<k>.
struct ReqId {
  Phase phase = Phase::Ph0_1;
  std::string uca_id;
  int number = 0;
  bool dotted = false;

  std::string str() const;
  friend bool operator==(const ReqId&, const ReqId&) = default;
};

ReqId parse_req_id(std::string_view raw);  // throws MalformedId

// Validates a UCA id of the form UCA(<phase>)-<n.n.n> and returns its phase.
Phase parse_uca_id(std::string_view raw);  // throws MalformedId

struct RequirementRecord {
  std::string req_id;
  std::string uca_id;  // derived from req_id
  std::string description;
  std::vector<std::string> causal_factors;
  FactorAssessment assessment;

  static RequirementRecord make(std::string req_id, std::string description,
                                std::vector<std::string> causal_factors,
                                FactorAssessment assessment);

  friend bool operator==(const RequirementRecord&, const RequirementRecord&) = default;
};

enum class SamplingMode { UniformPct, Triangular, Combined };

std::string_view to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view token);  // throws InvalidConfig

struct Weights {
  double type = 0.4;
  double likelihood = 0.3;
  double time = 0.15;
  double cost = 0.15;

  double operator[](Factor f) const;
  double sum() const { return type + likelihood + time + cost; }
  friend bool operator==(const Weights&, const Weights&) = default;
};

struct AnalysisConfig {
  Weights weights{};
  int iterations = 1000;
  double perturbation = 0.10;
  std::uint64_t seed = 42;
  SamplingMode mode = SamplingMode::UniformPct;
  double ci_z = 1.96;
  double ej_ceiling = 100.0;
  bool prefilter = true;     // keep only UCA_P1/UCA_P2 UCAs
  double shift_flag = 5.0;   // rank shift at or above this is flagged
  int workers = 0;           // 0 = OpenMP default

  // Throws InvalidConfig / InvalidPerturbation. Returns a warning message
  // when the weights do not sum to one (not an error).
  std::optional<std::string> validate() const;
};

}  // namespace stpaprio
