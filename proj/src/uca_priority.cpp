#include "stpaprio/uca_priority.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace stpaprio {

double invert_ej(double ej, double ceiling) {
  if (!(ej >= 0.0)) throw Error(ErrorCode::NegativeEJ, fmt::format("ej {} is negative", ej));
  return std::max(0.0, 1.0 - ej / ceiling);
}

double uca_priority_score(double sif, double ej, double ceiling) {
  if (!(sif > 0.0)) throw Error(ErrorCode::NonPositiveSIF, fmt::format("sif {} must be > 0", sif));
  return sif * invert_ej(ej, ceiling);
}

UCAPriorityResult score_uca(const UCARecord& uca, double ceiling) {
  UCAPriorityResult r;
  r.uca_id = uca.uca_id;
  r.sif = uca.sif;
  r.ej = uca.ej;
  r.inverted_ej = invert_ej(uca.ej, ceiling);
  r.priority_score = uca.sif * r.inverted_ej;
  return r;
}

std::vector<UCAPriorityResult> band_ucas(std::span<const UCAPriorityResult> scores) {
  if (scores.empty()) throw Error(ErrorCode::EmptyInput, "band_ucas needs at least one score");

  std::vector<double> sorted;
  sorted.reserve(scores.size());
  for (const auto& s : scores) sorted.push_back(s.priority_score);
  std::sort(sorted.begin(), sorted.end());

  // Nearest-rank percentile: the ceil(p * n)-th smallest value.
  const auto n = sorted.size();
  std::array<double, 4> cut{};
  for (std::size_t k = 1; k <= 4; ++k) {
    auto rank = (k * n + 4) / 5;  // ceil(k * n / 5)
    cut[k - 1] = sorted[std::max<std::size_t>(rank, 1) - 1];
  }

  std::vector<UCAPriorityResult> out(scores.begin(), scores.end());
  for (auto& r : out) {
    const double s = r.priority_score;
    if (s >= cut[3]) r.band = UcaBand::P1;
    else if (s <= cut[0]) r.band = UcaBand::P5;
    else if (s >= cut[2]) r.band = UcaBand::P2;
    else if (s >= cut[1]) r.band = UcaBand::P3;
    else r.band = UcaBand::P4;
  }
  return out;
}

std::vector<UCAPriorityResult> prefilter_p1_p2(std::span<const UCAPriorityResult> ucas) {
  std::vector<UCAPriorityResult> out;
  std::copy_if(ucas.begin(), ucas.end(), std::back_inserter(out), [](const auto& u) {
    return u.band == UcaBand::P1 || u.band == UcaBand::P2;
  });
  return out;
}

std::vector<UCAPriorityResult> rank_ucas(std::span<const UCARecord> ucas, double ceiling) {
  std::vector<UCAPriorityResult> scored;
  scored.reserve(ucas.size());
  for (const auto& u : ucas) scored.push_back(score_uca(u, ceiling));
  return band_ucas(scored);
}

}  // namespace stpaprio
