#pragma once

// Dataset ingestion and persistence. A dataset is either a directory holding
// `ucas.csv`, `requirements.csv` and an optional `config.json`, or a single
// structured-records `.json` file with the same fields.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stpaprio/model.hpp"

namespace stpaprio {

enum class DatasetFormat { DelimitedTable, StructuredRecords };

struct ConfigOverrides {
  std::optional<Weights> weights;
  std::optional<int> iterations;
  std::optional<double> perturbation;
  std::optional<std::uint64_t> seed;
  std::optional<SamplingMode> mode;
  std::optional<double> ci_z;
  std::optional<bool> all_bands;

  void apply(AnalysisConfig& config) const;
  bool empty() const;
  friend bool operator==(const ConfigOverrides&, const ConfigOverrides&) = default;
};

struct Dataset {
  DatasetFormat format = DatasetFormat::DelimitedTable;
  std::vector<UCARecord> ucas;
  std::vector<RequirementRecord> requirements;
  ConfigOverrides config;

  const UCARecord* find_uca(std::string_view uca_id) const;
};

// Intensity tokens as written in input files.
TimeEffort parse_time_token(std::string_view token);
CostLevel parse_cost_token(std::string_view token);
MitigationType parse_type_token(std::string_view token);
int parse_covered_token(std::string_view token);
std::string ordinal_token(Factor factor, int value);

// Throws ParseError (with line or record position), UnknownPhase,
// UnresolvedUCA, InvalidIntensityToken, DuplicateId, MalformedId, IoError.
Dataset load_dataset(const std::filesystem::path& path);

// Writes `ucas.csv`, `requirements.csv` and (if overrides are set) `config.json`.
void save_dataset_csv(const Dataset& dataset, const std::filesystem::path& directory);
void save_dataset_json(const Dataset& dataset, const std::filesystem::path& file);

}  // namespace stpaprio
