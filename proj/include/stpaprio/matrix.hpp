#pragma once

// Composition of Requirement Scores with UCA priority scores and the
// dynamically scaled 5x5 prioritisation matrix.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stpaprio/simulation.hpp"
#include "stpaprio/uca_priority.hpp"

namespace stpaprio {

inline constexpr int kGridSize = 5;

// Colour per criticality level 0 (green) .. 4 (dark red).
inline constexpr std::array<std::string_view, kGridSize> kColourRamp{"00FF00", "FFFF00", "FFA400",
                                                                     "FF5100", "C30000"};

enum class ReqPriority { P1 = 1, P2, P3, P4, P5 };

std::string to_string(ReqPriority p);             // "ReqP1" ...
ReqPriority parse_req_priority(std::string_view);  // throws MissingPriority
ReqPriority label_for_level(int level);           // level 4 -> ReqP1
int level_for_label(ReqPriority p);
std::string_view colour_for_level(int level);

// floor(value / max_value * 4). Throws NonPositiveMax, OutOfRange.
int scale_to_grid(double value, double max_value);

struct DatasetMaxima {
  double p_uca_max = 0.0;
  double rs_min = 0.0;
  double rs_max = 0.0;
};

struct PriorityAssignment {
  std::string req_id;
  double p_uca = 0.0;
  double rs = 0.0;
  double p_requirement = 0.0;
  int x_cell = 0;  // requirement-score axis, 4 = lowest (best) score
  int y_cell = 0;  // UCA priority axis, 4 = highest score
  int level = 0;
  ReqPriority label = ReqPriority::P5;
  std::string colour;
};

DatasetMaxima compute_maxima(std::span<const SimulationOutcome> outcomes,
                             std::span<const double> p_uca);

PriorityAssignment assign_priority(const SimulationOutcome& outcome, double p_uca,
                                   const DatasetMaxima& maxima);

struct PriorityMatrix {
  // cells[y][x]
  std::array<std::array<std::vector<std::string>, kGridSize>, kGridSize> cells{};
  double p_uca_max = 0.0;
  double rs_max = 0.0;

  std::size_t size() const;
  static int cell_level(int x, int y) { return (x + y) / 2; }
};

struct Prioritisation {
  std::vector<PriorityAssignment> assignments;
  PriorityMatrix matrix;
};

// p_uca[k] belongs to outcomes[k].
Prioritisation prioritise(std::span<const SimulationOutcome> outcomes,
                          std::span<const double> p_uca);

}  // namespace stpaprio
