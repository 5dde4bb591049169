#include "stpaprio/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "stpaprio/csv.hpp"

namespace stpaprio {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Matplotlib's default colour cycle; carries no meaning.
constexpr std::array<std::string_view, 10> kLineColours{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                         "#bcbd22", "#17becf"};

struct GridStyle {
  std::string title;
  std::string x_title;
  std::string y_title;
  std::string x_prefix;  // column x labelled x_prefix + (5 - x)
  std::string y_prefix;  // row y labelled y_prefix + (5 - y)
};

constexpr std::size_t kMaxIdsPerCell = 12;

std::string grid_svg(const PriorityMatrix& matrix, const GridStyle& style) {
  std::size_t most = 0;
  for (const auto& row : matrix.cells)
    for (const auto& cell : row) most = std::max(most, cell.size());
  const std::size_t shown = std::min(most, kMaxIdsPerCell);
  const int line_h = 14;
  const int cell_w = 200;
  const int cell_h = std::max<int>(80, 24 + line_h * static_cast<int>(shown + (most > kMaxIdsPerCell ? 1 : 0)));
  const int left = 110, top = 60;
  const int grid_w = kGridSize * cell_w, grid_h = kGridSize * cell_h;
  const int bar_x = left + grid_w + 40;
  const int width = bar_x + 90, height = top + grid_h + 80;

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"DejaVu Sans, Arial, sans-serif\">\n",
      width, height, width, height);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", width, height);
  s += fmt::format("<text x=\"{}\" y=\"30\" font-size=\"18\" text-anchor=\"middle\">{}</text>\n",
                   left + grid_w / 2, xml_escape(style.title));

  for (int y = 0; y < kGridSize; ++y) {
    const int py = top + (kGridSize - 1 - y) * cell_h;
    for (int x = 0; x < kGridSize; ++x) {
      const int px = left + x * cell_w;
      const int level = PriorityMatrix::cell_level(x, y);
      s += fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#{}\" stroke=\"#333333\" "
          "data-level=\"{}\"/>\n",
          px, py, cell_w, cell_h, colour_for_level(level), level);
      const auto& ids = matrix.cells[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      const char* ink = level == 4 ? "#ffffff" : "#000000";
      for (std::size_t k = 0; k < std::min(ids.size(), kMaxIdsPerCell); ++k) {
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{}\">{}</text>\n", px + 6,
                         py + 18 + line_h * static_cast<int>(k), ink, xml_escape(ids[k]));
      }
      if (ids.size() > kMaxIdsPerCell) {
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" font-style=\"italic\" fill=\"{}\">+{} more</text>\n",
                         px + 6, py + 18 + line_h * static_cast<int>(kMaxIdsPerCell), ink,
                         ids.size() - kMaxIdsPerCell);
      }
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"end\">{}{}</text>\n", left - 10,
                     py + cell_h / 2 + 4, xml_escape(style.y_prefix), kGridSize - y);
  }
  for (int x = 0; x < kGridSize; ++x) {
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{}{}</text>\n",
                     left + x * cell_w + cell_w / 2, top + grid_h + 22, xml_escape(style.x_prefix),
                     kGridSize - x);
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                   left + grid_w / 2, top + grid_h + 50, xml_escape(style.x_title));
  s += fmt::format(
      "<text x=\"24\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 24 {})\">{}</text>\n",
      top + grid_h / 2, top + grid_h / 2, xml_escape(style.y_title));

  // colour bar, level 0 at the bottom
  const int bar_h = grid_h / kGridSize;
  for (int level = 0; level < kGridSize; ++level) {
    const int py = top + (kGridSize - 1 - level) * bar_h;
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"24\" height=\"{}\" fill=\"#{}\" stroke=\"#333333\"/>\n",
                     bar_x, py, bar_h, colour_for_level(level));
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n", bar_x + 32, py + bar_h / 2 + 4, level);
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">criticality</text>\n", bar_x - 4, top - 8);
  s += "</svg>\n";
  return s;
}

json outcome_json(const SimulationOutcome& o) {
  return {{"req_id", o.req_id}, {"mean_rank", o.mean_rank}, {"rank_sigma", o.rank_sigma},
          {"requirement_score", o.requirement_score}, {"ci_upper", o.ci_upper}};
}

}  // namespace

std::string report_csv(std::span<const FilteredRow> rows) {
  std::string out(kReportHeader);
  out += "\n";
  for (const auto& r : rows) {
    out += csv::join_row({r.canonical_req_id, join(r.uca_descriptions, " | "), join(r.causal_factors, "; "),
                          r.description, to_string(r.priority), r.colour});
    out += "\n";
  }
  return out;
}

void emit_report(std::span<const FilteredRow> rows, const fs::path& path) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "report has no rows; nothing written");
  write_file(path, report_csv(rows));
}

std::string results_json(const PipelineResult& result) {
  json root;
  const auto& c = result.config;
  root["config"] = {{"weights", {c.weights.type, c.weights.likelihood, c.weights.time, c.weights.cost}},
                    {"iterations", c.iterations},
                    {"perturbation", c.perturbation},
                    {"seed", c.seed},
                    {"mode", std::string(to_string(c.mode))},
                    {"ci_z", c.ci_z},
                    {"all_bands", !c.prefilter}};
  root["ucas"] = json::array();
  for (const auto& u : result.ucas) {
    root["ucas"].push_back({{"uca_id", u.uca_id}, {"sif", u.sif}, {"ej", u.ej}, {"inverted_ej", u.inverted_ej},
                            {"priority_score", u.priority_score}, {"band", to_string(u.band)}});
  }
  root["requirements"] = json::array();
  for (std::size_t k = 0; k < result.outcomes.size(); ++k) {
    auto j = outcome_json(result.outcomes[k]);
    const auto& a = result.prioritisation.assignments[k];
    j["p_uca"] = a.p_uca;
    j["p_requirement"] = a.p_requirement;
    j["x_cell"] = a.x_cell;
    j["y_cell"] = a.y_cell;
    j["level"] = a.level;
    j["priority"] = to_string(a.label);
    j["colour"] = a.colour;
    root["requirements"].push_back(std::move(j));
  }
  root["rows"] = json::array();
  for (const auto& r : result.rows) {
    json notes = json::array();
    for (auto p : r.conflict_note) notes.push_back(to_string(p));
    root["rows"].push_back({{"canonical_req_id", r.canonical_req_id}, {"merged_req_ids", r.merged_req_ids},
                            {"uca_descriptions", r.uca_descriptions}, {"causal_factors", r.causal_factors},
                            {"description", r.description}, {"priority", to_string(r.priority)},
                            {"colour", r.colour}, {"conflict_note", notes}});
  }
  if (!result.shifts.empty()) {
    root["rank_shift"] = json::array();
    for (const auto& s : result.shifts) {
      root["rank_shift"].push_back({{"req_id", s.req_id}, {"rank_a", s.rank_a}, {"rank_b", s.rank_b},
                                    {"shift", s.shift}, {"flagged", s.flagged}});
    }
  }
  return root.dump(2) + "\n";
}

void emit_results(const PipelineResult& result, const fs::path& path) { write_file(path, results_json(result)); }

std::string matrix_svg(const PriorityMatrix& matrix) {
  return grid_svg(matrix, {"Prioritisation Matrix of Requirements", "Requirement Score class (RS1 = lowest score)",
                           "UCA priority", "RS", "UCA_P"});
}

void emit_matrix(const PriorityMatrix& matrix, const fs::path& path) { write_file(path, matrix_svg(matrix)); }

PriorityMatrix uca_matrix(std::span<const UCAPriorityResult> ucas) {
  PriorityMatrix m;
  double sif_max = 0.0, inv_max = 0.0;
  for (const auto& u : ucas) {
    sif_max = std::max(sif_max, u.sif);
    inv_max = std::max(inv_max, u.inverted_ej);
  }
  m.p_uca_max = sif_max;
  for (const auto& u : ucas) {
    const int x = sif_max > 0.0 ? scale_to_grid(u.sif, sif_max) : 4;
    const int y = inv_max > 0.0 ? scale_to_grid(u.inverted_ej, inv_max) : 4;
    m.cells[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)].push_back(u.uca_id);
  }
  for (auto& row : m.cells)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  return m;
}

std::string uca_matrix_svg(const PriorityMatrix& matrix) {
  return grid_svg(matrix, {"Prioritisation Matrix of UCAs", "SIF class (SIF1 = highest)",
                           "Inverted EJ class (EJ1 = most critical)", "SIF", "EJ"});
}

void emit_uca_matrix(const PriorityMatrix& matrix, const fs::path& path) {
  write_file(path, uca_matrix_svg(matrix));
}

std::string rank_shift_svg(std::span<const RankShift> shifts, double flag_threshold) {
  const int n = static_cast<int>(shifts.size());
  int max_rank = 1;
  for (const auto& s : shifts) max_rank = std::max({max_rank, s.rank_a, s.rank_b});
  const int col_w = 36, step = 22, left = 70, top = 60, label_h = 220;
  const int plot_w = std::max(1, n) * col_w, plot_h = (max_rank - 1) * step;
  const int width = left + plot_w + 40, height = top + plot_h + label_h;
  auto ry = [&](int rank) { return top + (rank - 1) * step; };

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"DejaVu Sans, Arial, sans-serif\">\n",
      width, height, width, height);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", width, height);
  s += fmt::format("<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">Rank shift between two Monte-Carlo runs</text>\n",
                   left + plot_w / 2);
  s += fmt::format("<text x=\"{}\" y=\"44\" font-size=\"11\" text-anchor=\"middle\">dot = unchanged; dashed outline = shift of {} places or more</text>\n",
                   left + plot_w / 2, flag_threshold);
  for (int r = 1; r <= max_rank; ++r) {
    s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#e0e0e0\"/>\n", left, ry(r),
                     left + plot_w, ry(r));
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n", left - 8,
                     ry(r) + 4, r);
  }
  s += fmt::format("<text x=\"18\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">Rank</text>\n",
                   top + plot_h / 2, top + plot_h / 2);

  for (int k = 0; k < n; ++k) {
    const auto& e = shifts[static_cast<std::size_t>(k)];
    const int cx = left + k * col_w + col_w / 2;
    const auto colour = kLineColours[static_cast<std::size_t>(k) % kLineColours.size()];
    const int y1 = ry(std::min(e.rank_a, e.rank_b));
    const int y2 = ry(std::max(e.rank_a, e.rank_b));
    if (e.shift == 0) {
      s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{}\"/>\n", cx, y1, colour);
    } else {
      s += fmt::format(
          "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"5\" stroke-linecap=\"round\"/>\n",
          cx, y1, cx, y2, colour);
    }
    if (e.flagged) {
      s += fmt::format(
          "<rect class=\"flagged\" x=\"{}\" y=\"{}\" width=\"18\" height=\"{}\" fill=\"none\" stroke=\"#000000\" "
          "stroke-dasharray=\"4 3\"/>\n",
          cx - 9, y1 - 9, y2 - y1 + 18);
      s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n", cx, y1 - 13,
                       e.shift);
    }
    const int ly = top + plot_h + 16;
    s += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\" transform=\"rotate(-60 {} {})\">{}</text>\n", cx,
        ly, cx, ly, xml_escape(e.req_id));
  }
  s += "</svg>\n";
  return s;
}

void emit_rank_shift(std::span<const RankShift> shifts, const fs::path& path, double flag_threshold) {
  if (shifts.empty()) throw Error(ErrorCode::EmptyInput, "no rank shifts to draw");
  write_file(path, rank_shift_svg(shifts, flag_threshold));
}

}  // namespace stpaprio
