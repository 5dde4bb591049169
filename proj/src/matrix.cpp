#include "stpaprio/matrix.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace stpaprio {

std::string to_string(ReqPriority p) { return fmt::format("ReqP{}", static_cast<int>(p)); }

ReqPriority parse_req_priority(std::string_view token) {
  if (token.size() == 5 && token.substr(0, 4) == "ReqP" && token[4] >= '1' && token[4] <= '5') {
    return static_cast<ReqPriority>(token[4] - '0');
  }
  throw Error(ErrorCode::MissingPriority, fmt::format("'{}' is not a ReqP1..ReqP5 label", token));
}

ReqPriority label_for_level(int level) { return static_cast<ReqPriority>(5 - level); }
int level_for_label(ReqPriority p) { return 5 - static_cast<int>(p); }

std::string_view colour_for_level(int level) {
  return kColourRamp.at(static_cast<std::size_t>(level));
}

int scale_to_grid(double value, double max_value) {
  if (!(max_value > 0.0)) {
    throw Error(ErrorCode::NonPositiveMax, fmt::format("scale maximum {} must be > 0", max_value));
  }
  if (!(value >= 0.0 && value <= max_value)) {
    throw Error(ErrorCode::OutOfRange, fmt::format("{} outside [0, {}]", value, max_value));
  }
  return static_cast<int>(std::floor(value / max_value * 4.0));
}

DatasetMaxima compute_maxima(std::span<const SimulationOutcome> outcomes,
                             std::span<const double> p_uca) {
  if (outcomes.empty()) throw Error(ErrorCode::EmptyInput, "no outcomes to prioritise");
  if (outcomes.size() != p_uca.size()) {
    throw Error(ErrorCode::MismatchedSets, "one UCA score is needed per outcome");
  }
  DatasetMaxima m;
  m.p_uca_max = *std::max_element(p_uca.begin(), p_uca.end());
  const auto [lo, hi] = std::minmax_element(outcomes.begin(), outcomes.end(), [](const auto& a, const auto& b) {
    return a.requirement_score < b.requirement_score;
  });
  m.rs_min = lo->requirement_score;
  m.rs_max = hi->requirement_score;
  return m;
}

PriorityAssignment assign_priority(const SimulationOutcome& outcome, double p_uca,
                                   const DatasetMaxima& maxima) {
  PriorityAssignment a;
  a.req_id = outcome.req_id;
  a.p_uca = p_uca;
  a.rs = outcome.requirement_score;
  a.p_requirement = p_uca * a.rs;
  // Degenerate axes (every value equal) collapse to the critical end.
  a.y_cell = maxima.p_uca_max > 0.0 ? scale_to_grid(p_uca, maxima.p_uca_max) : 4;
  a.x_cell = maxima.rs_max > maxima.rs_min
                 ? 4 - scale_to_grid(a.rs - maxima.rs_min, maxima.rs_max - maxima.rs_min)
                 : 4;
  a.level = PriorityMatrix::cell_level(a.x_cell, a.y_cell);
  a.label = label_for_level(a.level);
  a.colour = std::string(colour_for_level(a.level));
  return a;
}

std::size_t PriorityMatrix::size() const {
  std::size_t total = 0;
  for (const auto& row : cells)
    for (const auto& cell : row) total += cell.size();
  return total;
}

Prioritisation prioritise(std::span<const SimulationOutcome> outcomes,
                          std::span<const double> p_uca) {
  const auto maxima = compute_maxima(outcomes, p_uca);
  Prioritisation out;
  out.matrix.p_uca_max = maxima.p_uca_max;
  out.matrix.rs_max = maxima.rs_max;
  out.assignments.reserve(outcomes.size());
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    auto a = assign_priority(outcomes[k], p_uca[k], maxima);
    out.matrix.cells[static_cast<std::size_t>(a.y_cell)][static_cast<std::size_t>(a.x_cell)].push_back(a.req_id);
    out.assignments.push_back(std::move(a));
  }
  for (auto& row : out.matrix.cells)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  return out;
}

}  // namespace stpaprio
