#pragma once

// UCA priority scores (SIF x inverted EJ), quintile banding and the
// P1/P2 pre-filter that gates which UCAs go on to requirement analysis.

#include <span>
#include <string>
#include <vector>

#include "stpaprio/model.hpp"

namespace stpaprio {

inline constexpr double kDefaultEjCeiling = 100.0;

struct UCAPriorityResult {
  std::string uca_id;
  double sif = 0.0;
  double ej = 0.0;
  double inverted_ej = 0.0;
  double priority_score = 0.0;
  UcaBand band = UcaBand::P5;
};

// max(0, 1 - ej / ceiling). Throws NegativeEJ.
double invert_ej(double ej, double ceiling = kDefaultEjCeiling);

// sif * invert_ej(ej). Throws NonPositiveSIF / NegativeEJ.
double uca_priority_score(double sif, double ej, double ceiling = kDefaultEjCeiling);

UCAPriorityResult score_uca(const UCARecord& uca, double ceiling = kDefaultEjCeiling);

// Splits scores into five bands using nearest-rank cut points at the
// 20/40/60/80th percentiles. Band membership depends only on the score, so
// equal scores always share a band. The top band is closed below at the
// 80th cut and wins when cut points coincide; the bottom band is closed
// above at the 20th cut. Throws EmptyInput.
std::vector<UCAPriorityResult> band_ucas(std::span<const UCAPriorityResult> scores);

// Keeps UCA_P1 and UCA_P2 entries in input order.
std::vector<UCAPriorityResult> prefilter_p1_p2(std::span<const UCAPriorityResult> ucas);

// score_uca + band_ucas over a whole dataset.
std::vector<UCAPriorityResult> rank_ucas(std::span<const UCARecord> ucas,
                                         double ceiling = kDefaultEjCeiling);

}  // namespace stpaprio
