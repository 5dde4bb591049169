#pragma once

// Rendering of the filtered report table, the structured results file and
// the SVG artifacts (prioritisation matrix, UCA matrix, rank-shift diagram).
// All output is deterministic for fixed input.

#include <filesystem>
#include <span>
#include <string>

#include "stpaprio/filter.hpp"
#include "stpaprio/matrix.hpp"
#include "stpaprio/pipeline.hpp"
#include "stpaprio/simulation.hpp"
#include "stpaprio/uca_priority.hpp"

namespace stpaprio {

inline constexpr std::string_view kReportHeader =
    "Req ID,UCA Description,Causal Factor(s),Req Description,Priority,Colour";

std::string report_csv(std::span<const FilteredRow> rows);
void emit_report(std::span<const FilteredRow> rows, const std::filesystem::path& path);

std::string results_json(const PipelineResult& result);
void emit_results(const PipelineResult& result, const std::filesystem::path& path);

std::string matrix_svg(const PriorityMatrix& matrix);
void emit_matrix(const PriorityMatrix& matrix, const std::filesystem::path& path);

// UCA matrix: x = SIF scaled to its maximum, y = inverted EJ scaled to its
// maximum, cell level = floor((x + y) / 2).
PriorityMatrix uca_matrix(std::span<const UCAPriorityResult> ucas);
std::string uca_matrix_svg(const PriorityMatrix& matrix);
void emit_uca_matrix(const PriorityMatrix& matrix, const std::filesystem::path& path);

std::string rank_shift_svg(std::span<const RankShift> shifts, double flag_threshold = 5.0);
void emit_rank_shift(std::span<const RankShift> shifts, const std::filesystem::path& path,
                     double flag_threshold = 5.0);

}  // namespace stpaprio
