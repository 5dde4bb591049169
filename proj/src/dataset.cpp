#include "stpaprio/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "stpaprio/csv.hpp"

namespace stpaprio {

using nlohmann::json;
namespace fs = std::filesystem;

void ConfigOverrides::apply(AnalysisConfig& config) const {
  if (weights) config.weights = *weights;
  if (iterations) config.iterations = *iterations;
  if (perturbation) config.perturbation = *perturbation;
  if (seed) config.seed = *seed;
  if (mode) config.mode = *mode;
  if (ci_z) config.ci_z = *ci_z;
  if (all_bands) config.prefilter = !*all_bands;
}

bool ConfigOverrides::empty() const { return *this == ConfigOverrides{}; }

const UCARecord* Dataset::find_uca(std::string_view uca_id) const {
  auto it = std::find_if(ucas.begin(), ucas.end(), [&](const auto& u) { return u.uca_id == uca_id; });
  return it == ucas.end() ? nullptr : &*it;
}

TimeEffort parse_time_token(std::string_view t) {
  if (t == "Minor effort") return TimeEffort::Minor;
  if (t == "Moderate effort") return TimeEffort::Moderate;
  if (t == "Significant effort") return TimeEffort::Significant;
  throw Error(ErrorCode::InvalidIntensityToken, fmt::format("time token '{}'", t));
}

CostLevel parse_cost_token(std::string_view t) {
  if (t == "Low (below 30%)" || t == "Low(below 30%)") return CostLevel::Low;
  if (t == "Medium (30–60%)" || t == "Medium(30–60%)" || t == "Medium (30-60%)") return CostLevel::Medium;
  if (t == "High (above 60%)" || t == "High(above 60%)") return CostLevel::High;
  throw Error(ErrorCode::InvalidIntensityToken, fmt::format("cost token '{}'", t));
}

MitigationType parse_type_token(std::string_view t) {
  if (t.size() == 6 && t.substr(0, 5) == "Type " && t[5] >= 'A' && t[5] <= 'E') {
    return static_cast<MitigationType>(5 - (t[5] - 'A'));
  }
  throw Error(ErrorCode::InvalidIntensityToken, fmt::format("type token '{}'", t));
}

int parse_covered_token(std::string_view t) {
  if (t == "0") return 0;
  if (t == "1") return 1;
  throw Error(ErrorCode::InvalidIntensityToken, fmt::format("covered token '{}'", t));
}

std::string ordinal_token(Factor factor, int value) {
  switch (factor) {
    case Factor::Time: {
      static constexpr const char* names[] = {"Minor effort", "Moderate effort", "Significant effort"};
      return names[value - 1];
    }
    case Factor::Cost: {
      static constexpr const char* names[] = {"Low (below 30%)", "Medium (30–60%)", "High (above 60%)"};
      return names[value - 1];
    }
    case Factor::Type: return fmt::format("Type {}", static_cast<char>('A' + (5 - value)));
    case Factor::Likelihood: return std::to_string(value);
  }
  return {};
}

namespace {

int parse_factor_token(Factor f, std::string_view t) {
  switch (f) {
    case Factor::Time: return static_cast<int>(parse_time_token(t));
    case Factor::Cost: return static_cast<int>(parse_cost_token(t));
    case Factor::Type: return static_cast<int>(parse_type_token(t));
    case Factor::Likelihood: return parse_covered_token(t);
  }
  return 0;
}

std::string_view column_stem(Factor f) {
  switch (f) {
    case Factor::Time: return "time";
    case Factor::Cost: return "cost";
    case Factor::Type: return "type";
    case Factor::Likelihood: return "covered";
  }
  return "";
}

// Re-throws any library error with a location prefix, keeping its code.
template <typename Fn>
auto at(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", where, e.message()));
  }
}

double parse_number(std::string_view text, std::string_view field) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, fmt::format("{} '{}' is not a number", field, text));
  }
  return v;
}

std::optional<double> optional_number(std::string_view text, std::string_view field) {
  if (text.empty()) return std::nullopt;
  return parse_number(text, field);
}

std::vector<std::string> split_factors(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(start, end - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    start = end + 1;
  }
  return out;
}

std::string join_factors(const std::vector<std::string>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "; ";
    out += factors[i];
  }
  return out;
}

struct RawRequirement {
  std::string where;
  std::string req_id;
  std::string description;
  std::vector<std::string> causal_factors;
  std::array<std::string, kFactorCount> mode_tokens;
  std::array<std::string, kFactorCount> lower_tokens;
  std::array<std::string, kFactorCount> upper_tokens;
  std::optional<std::string> explicit_uca_id;
};

RequirementRecord build_requirement(const RawRequirement& raw) {
  return at(raw.where, [&] {
    if (raw.req_id.empty()) throw Error(ErrorCode::ParseError, "req_id is empty");
    std::array<Bracket, kFactorCount> brackets{};
    for (auto f : kFactors) {
      const auto i = static_cast<std::size_t>(f);
      Bracket b;
      b.mode = parse_factor_token(f, raw.mode_tokens[i]);
      b.lower = raw.lower_tokens[i].empty() ? b.mode : parse_factor_token(f, raw.lower_tokens[i]);
      b.upper = raw.upper_tokens[i].empty() ? b.mode : parse_factor_token(f, raw.upper_tokens[i]);
      brackets[i] = b;
    }
    auto record = RequirementRecord::make(raw.req_id, raw.description, raw.causal_factors,
                                          FactorAssessment::with_brackets(brackets));
    if (raw.explicit_uca_id && !raw.explicit_uca_id->empty() && *raw.explicit_uca_id != record.uca_id) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("uca_id '{}' disagrees with the UCA encoded in {}", *raw.explicit_uca_id,
                              raw.req_id));
    }
    return record;
  });
}

UCARecord build_uca(const std::string& where, const std::string& uca_id, const std::string& phase,
                    const std::string& description, std::optional<double> pms,
                    std::optional<double> cif, std::optional<double> sif, std::optional<double> ej) {
  return at(where, [&] {
    const Phase id_phase = parse_uca_id(uca_id);
    const Phase column_phase = parse_phase(phase);
    if (id_phase != column_phase) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("phase {} disagrees with uca_id {}", phase, uca_id));
    }
    if (!ej) throw Error(ErrorCode::ParseError, "ej is required");
    return UCARecord::make(uca_id, column_phase, description, pms, cif, sif, *ej);
  });
}

void check_integrity(const Dataset& d) {
  std::set<std::string> uca_ids;
  for (const auto& u : d.ucas) {
    if (!uca_ids.insert(u.uca_id).second) throw Error(ErrorCode::DuplicateId, "duplicate uca_id " + u.uca_id);
  }
  std::set<std::string> req_ids;
  for (const auto& r : d.requirements) {
    if (!req_ids.insert(r.req_id).second) throw Error(ErrorCode::DuplicateId, "duplicate req_id " + r.req_id);
    if (!uca_ids.count(r.uca_id)) {
      throw Error(ErrorCode::UnresolvedUCA, fmt::format("{} links to unknown {}", r.req_id, r.uca_id));
    }
  }
}

class ColumnMap {
 public:
  ColumnMap(const csv::Record& header, const std::vector<std::string>& required,
            const std::vector<std::string>& optional, const std::string& file) {
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
      const auto& name = header.fields[i];
      const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                         std::find(optional.begin(), optional.end(), name) != optional.end();
      if (!known) throw Error(ErrorCode::ParseError, fmt::format("{}:1: unknown column '{}'", file, name));
      if (!index_.emplace(name, i).second) {
        throw Error(ErrorCode::ParseError, fmt::format("{}:1: duplicate column '{}'", file, name));
      }
    }
    for (const auto& name : required) {
      if (!index_.count(name)) {
        throw Error(ErrorCode::ParseError, fmt::format("{}:1: missing column '{}'", file, name));
      }
    }
    width_ = header.fields.size();
  }

  bool has(const std::string& name) const { return index_.count(name) > 0; }

  std::string get(const csv::Record& r, const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? std::string{} : r.fields[it->second];
  }

  std::size_t width() const { return width_; }

 private:
  std::map<std::string, std::size_t> index_;
  std::size_t width_ = 0;
};

std::vector<csv::Record> read_csv_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return csv::read(in);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}:{}", path.filename().string(), e.message()));
  }
}

const std::vector<std::string> kUcaColumns{"uca_id", "description", "phase", "pms", "cif", "sif", "ej"};
const std::vector<std::string> kRequirementColumns{"req_id", "description", "causal_factors", "time",
                                                   "cost", "type", "covered"};
std::vector<std::string> bound_columns() {
  std::vector<std::string> out;
  for (auto f : kFactors) {
    out.push_back(fmt::format("{}_a", column_stem(f)));
    out.push_back(fmt::format("{}_b", column_stem(f)));
  }
  return out;
}

ConfigOverrides parse_overrides(const json& j, const std::string& where) {
  ConfigOverrides o;
  if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "weights") {
        auto w = value.get<std::vector<double>>();
        if (w.size() != 4) throw Error(ErrorCode::InvalidConfig, where + ": weights needs 4 values");
        o.weights = Weights{w[0], w[1], w[2], w[3]};
      } else if (key == "iterations") {
        o.iterations = value.get<int>();
      } else if (key == "perturbation") {
        o.perturbation = value.get<double>();
      } else if (key == "seed") {
        o.seed = value.get<std::uint64_t>();
      } else if (key == "mode") {
        o.mode = parse_sampling_mode(value.get<std::string>());
      } else if (key == "ci_z") {
        o.ci_z = value.get<double>();
      } else if (key == "all_bands") {
        o.all_bands = value.get<bool>();
      } else {
        throw Error(ErrorCode::ParseError, fmt::format("{}: unknown config key '{}'", where, key));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", where, e.what()));
  }
  return o;
}

json overrides_to_json(const ConfigOverrides& o) {
  json j = json::object();
  if (o.weights) j["weights"] = {o.weights->type, o.weights->likelihood, o.weights->time, o.weights->cost};
  if (o.iterations) j["iterations"] = *o.iterations;
  if (o.perturbation) j["perturbation"] = *o.perturbation;
  if (o.seed) j["seed"] = *o.seed;
  if (o.mode) j["mode"] = std::string(to_string(*o.mode));
  if (o.ci_z) j["ci_z"] = *o.ci_z;
  if (o.all_bands) j["all_bands"] = *o.all_bands;
  return j;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", path.filename().string(), e.what()));
  }
}

Dataset load_csv_directory(const fs::path& dir) {
  Dataset d;
  d.format = DatasetFormat::DelimitedTable;

  const auto uca_rows = read_csv_file(dir / "ucas.csv");
  if (uca_rows.empty()) throw Error(ErrorCode::ParseError, "ucas.csv:1: missing header");
  const ColumnMap ucols(uca_rows.front(), kUcaColumns, {}, "ucas.csv");
  for (std::size_t i = 1; i < uca_rows.size(); ++i) {
    const auto& r = uca_rows[i];
    const auto where = fmt::format("ucas.csv:{}", r.line);
    if (r.fields.size() != ucols.width()) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("{}: expected {} fields, got {}", where, ucols.width(), r.fields.size()));
    }
    auto number = [&](const char* name) {
      return at(where, [&] { return optional_number(ucols.get(r, name), name); });
    };
    d.ucas.push_back(build_uca(where, ucols.get(r, "uca_id"), ucols.get(r, "phase"),
                               ucols.get(r, "description"), number("pms"), number("cif"),
                               number("sif"), number("ej")));
  }

  const auto req_rows = read_csv_file(dir / "requirements.csv");
  if (req_rows.empty()) throw Error(ErrorCode::ParseError, "requirements.csv:1: missing header");
  auto optional_cols = bound_columns();
  optional_cols.push_back("uca_id");
  const ColumnMap rcols(req_rows.front(), kRequirementColumns, optional_cols, "requirements.csv");
  for (std::size_t i = 1; i < req_rows.size(); ++i) {
    const auto& r = req_rows[i];
    RawRequirement raw;
    raw.where = fmt::format("requirements.csv:{}", r.line);
    if (r.fields.size() != rcols.width()) {
      throw Error(ErrorCode::ParseError,
                  fmt::format("{}: expected {} fields, got {}", raw.where, rcols.width(), r.fields.size()));
    }
    raw.req_id = rcols.get(r, "req_id");
    raw.description = rcols.get(r, "description");
    raw.causal_factors = split_factors(rcols.get(r, "causal_factors"));
    for (auto f : kFactors) {
      const auto i_f = static_cast<std::size_t>(f);
      const std::string stem(column_stem(f));
      raw.mode_tokens[i_f] = rcols.get(r, stem);
      raw.lower_tokens[i_f] = rcols.get(r, stem + "_a");
      raw.upper_tokens[i_f] = rcols.get(r, stem + "_b");
    }
    if (rcols.has("uca_id")) raw.explicit_uca_id = rcols.get(r, "uca_id");
    d.requirements.push_back(build_requirement(raw));
  }

  if (fs::exists(dir / "config.json")) {
    d.config = parse_overrides(read_json_file(dir / "config.json"), "config.json");
  }
  return d;
}

std::string json_string(const json& obj, const char* key, const std::string& where, bool required = true) {
  if (!obj.contains(key)) {
    if (required) throw Error(ErrorCode::ParseError, fmt::format("{}: missing field '{}'", where, key));
    return {};
  }
  const auto& v = obj.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::ParseError, fmt::format("{}: field '{}' must be a string", where, key));
}

std::optional<double> json_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number()) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: field '{}' must be a number", where, key));
  }
  return obj.at(key).get<double>();
}

Dataset load_json_file(const fs::path& path) {
  const json root = read_json_file(path);
  Dataset d;
  d.format = DatasetFormat::StructuredRecords;
  if (!root.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
  for (const auto& [key, _] : root.items()) {
    if (key != "ucas" && key != "requirements" && key != "config") {
      throw Error(ErrorCode::ParseError, fmt::format("unknown top-level field '{}'", key));
    }
  }
  if (!root.contains("ucas") || !root["ucas"].is_array()) throw Error(ErrorCode::ParseError, "'ucas' array missing");
  if (!root.contains("requirements") || !root["requirements"].is_array()) {
    throw Error(ErrorCode::ParseError, "'requirements' array missing");
  }

  const std::set<std::string> uca_fields(kUcaColumns.begin(), kUcaColumns.end());
  std::size_t k = 0;
  for (const auto& u : root["ucas"]) {
    const auto where = fmt::format("ucas[{}]", k++);
    if (!u.is_object()) throw Error(ErrorCode::ParseError, where + ": must be an object");
    for (const auto& [key, _] : u.items()) {
      if (!uca_fields.count(key)) throw Error(ErrorCode::ParseError, fmt::format("{}: unknown field '{}'", where, key));
    }
    d.ucas.push_back(build_uca(where, json_string(u, "uca_id", where), json_string(u, "phase", where),
                               json_string(u, "description", where, false), json_number(u, "pms", where),
                               json_number(u, "cif", where), json_number(u, "sif", where),
                               json_number(u, "ej", where)));
  }

  std::set<std::string> req_fields(kRequirementColumns.begin(), kRequirementColumns.end());
  for (const auto& c : bound_columns()) req_fields.insert(c);
  req_fields.insert("uca_id");
  k = 0;
  for (const auto& r : root["requirements"]) {
    RawRequirement raw;
    raw.where = fmt::format("requirements[{}]", k++);
    if (!r.is_object()) throw Error(ErrorCode::ParseError, raw.where + ": must be an object");
    for (const auto& [key, _] : r.items()) {
      if (!req_fields.count(key)) {
        throw Error(ErrorCode::ParseError, fmt::format("{}: unknown field '{}'", raw.where, key));
      }
    }
    raw.req_id = json_string(r, "req_id", raw.where);
    raw.description = json_string(r, "description", raw.where, false);
    if (r.contains("causal_factors")) {
      const auto& cf = r["causal_factors"];
      if (!cf.is_array()) throw Error(ErrorCode::ParseError, raw.where + ": causal_factors must be an array");
      for (const auto& c : cf) {
        if (!c.is_string()) throw Error(ErrorCode::ParseError, raw.where + ": causal factor must be a string");
        raw.causal_factors.push_back(c.get<std::string>());
      }
    }
    for (auto f : kFactors) {
      const auto i_f = static_cast<std::size_t>(f);
      const std::string stem(column_stem(f));
      raw.mode_tokens[i_f] = json_string(r, stem.c_str(), raw.where);
      raw.lower_tokens[i_f] = json_string(r, (stem + "_a").c_str(), raw.where, false);
      raw.upper_tokens[i_f] = json_string(r, (stem + "_b").c_str(), raw.where, false);
    }
    if (r.contains("uca_id")) raw.explicit_uca_id = json_string(r, "uca_id", raw.where);
    d.requirements.push_back(build_requirement(raw));
  }

  if (root.contains("config")) d.config = parse_overrides(root["config"], "config");
  return d;
}

std::string number_field(std::optional<double> v) { return v ? fmt::format("{}", *v) : std::string{}; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace

Dataset load_dataset(const fs::path& path) {
  Dataset d;
  if (fs::is_directory(path)) {
    d = load_csv_directory(path);
  } else if (fs::is_regular_file(path)) {
    d = load_json_file(path);
  } else {
    throw Error(ErrorCode::IoError, fmt::format("{} is neither a dataset directory nor a file", path.string()));
  }
  check_integrity(d);
  return d;
}

void save_dataset_csv(const Dataset& dataset, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + directory.string());

  std::string ucas = csv::join_row(kUcaColumns) + "\n";
  for (const auto& u : dataset.ucas) {
    const bool derived = u.pms && u.cif;
    ucas += csv::join_row({u.uca_id, u.description, std::string(to_string(u.phase)), number_field(u.pms),
                           number_field(u.cif), derived ? std::string{} : fmt::format("{}", u.sif),
                           fmt::format("{}", u.ej)}) + "\n";
  }
  write_text(directory / "ucas.csv", ucas);

  auto header = kRequirementColumns;
  for (const auto& c : bound_columns()) header.push_back(c);
  std::string reqs = csv::join_row(header) + "\n";
  for (const auto& r : dataset.requirements) {
    std::vector<std::string> row{r.req_id, r.description, join_factors(r.causal_factors)};
    for (auto f : {Factor::Time, Factor::Cost, Factor::Type, Factor::Likelihood}) {
      row.push_back(ordinal_token(f, r.assessment.mode(f)));
    }
    for (auto f : kFactors) {
      const auto& b = r.assessment.bracket(f);
      row.push_back(b.is_point() ? std::string{} : ordinal_token(f, b.lower));
      row.push_back(b.is_point() ? std::string{} : ordinal_token(f, b.upper));
    }
    reqs += csv::join_row(row) + "\n";
  }
  write_text(directory / "requirements.csv", reqs);

  if (!dataset.config.empty()) write_text(directory / "config.json", overrides_to_json(dataset.config).dump(2) + "\n");
}

void save_dataset_json(const Dataset& dataset, const fs::path& file) {
  json root;
  root["ucas"] = json::array();
  for (const auto& u : dataset.ucas) {
    json j{{"uca_id", u.uca_id}, {"phase", std::string(to_string(u.phase))}, {"description", u.description},
           {"ej", u.ej}};
    if (u.pms) j["pms"] = *u.pms;
    if (u.cif) j["cif"] = *u.cif;
    if (!(u.pms && u.cif)) j["sif"] = u.sif;
    root["ucas"].push_back(std::move(j));
  }
  root["requirements"] = json::array();
  for (const auto& r : dataset.requirements) {
    json j{{"req_id", r.req_id}, {"description", r.description}, {"causal_factors", r.causal_factors}};
    for (auto f : kFactors) {
      const std::string stem(column_stem(f));
      const auto& b = r.assessment.bracket(f);
      j[stem] = ordinal_token(f, b.mode);
      if (!b.is_point()) {
        j[stem + "_a"] = ordinal_token(f, b.lower);
        j[stem + "_b"] = ordinal_token(f, b.upper);
      }
    }
    root["requirements"].push_back(std::move(j));
  }
  if (!dataset.config.empty()) root["config"] = overrides_to_json(dataset.config);
  write_text(file, root.dump(2) + "\n");
}

}  // namespace stpaprio
