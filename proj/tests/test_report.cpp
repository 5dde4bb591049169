#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stpaprio/pipeline.hpp"
#include "stpaprio/report.hpp"
#include "test_support.hpp"

using namespace stpaprio;
namespace fs = std::filesystem;

namespace {

const PipelineResult& casestudy() {
  static const PipelineResult result = [] {
    const auto d = load_dataset(fixtures::casestudy_dir());
    AnalysisConfig config;
    d.config.apply(config);
    return run_pipeline(d, config, config.seed + 1);
  }();
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(ReportCsv, HeaderAndCaseStudyRows) {
  const auto csv = report_csv(casestudy().rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kReportHeader);
  std::istringstream lines(csv);
  std::string line;
  bool top = false, bottom = false;
  while (std::getline(lines, line)) {
    if (line.rfind("UCA(Ph0.1)-13.5.2-RQ1,", 0) == 0) top = line.ends_with(",ReqP1,C30000");
    if (line.rfind("UCA(Ph1)-18.5.1-RQ2,", 0) == 0) bottom = line.ends_with(",ReqP5,00FF00");
  }
  EXPECT_TRUE(top) << csv;
  EXPECT_TRUE(bottom) << csv;
}

TEST(ReportCsv, QuotesAndJoins) {
  FilteredRow row;
  row.canonical_req_id = "UCA(Ph1)-1.1-RQ1";
  row.merged_req_ids = {row.canonical_req_id};
  row.uca_descriptions = {"first, with comma", "second"};
  row.causal_factors = {"a", "b"};
  row.description = "says \"hi\"";
  row.priority = ReqPriority::P2;
  row.colour = "FF5100";
  const std::vector<FilteredRow> rows{row};
  EXPECT_EQ(report_csv(rows), std::string(kReportHeader) +
                                  "\nUCA(Ph1)-1.1-RQ1,\"first, with comma | second\",a; b,\"says \"\"hi\"\"\",ReqP2,FF5100\n");
}

TEST(ReportCsv, EmptyRowsWriteNothing) {
  const auto path = fixtures::scratch_dir("empty-report") / "report.csv";
  try {
    emit_report(std::vector<FilteredRow>{}, path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  EXPECT_FALSE(fs::exists(path));
}

TEST(ResultsJson, CarriesConfigAndRows) {
  const auto j = nlohmann::json::parse(results_json(casestudy()));
  EXPECT_EQ(j["config"]["seed"], 42);
  EXPECT_EQ(j["ucas"].size(), 14u);
  EXPECT_EQ(j["requirements"].size(), 15u);
  EXPECT_EQ(j["rows"].size(), casestudy().rows.size());
  EXPECT_EQ(j["rank_shift"].size(), 15u);
}

TEST(MatrixSvg, CaseStudyCornerAndCells) {
  const auto svg = matrix_svg(casestudy().prioritisation.matrix);
  EXPECT_EQ(count(svg, "data-level="), 25u);
  EXPECT_EQ(count(svg, "data-level=\"4\""), 1u);
  const std::string corner_rect = "fill=\"#C30000\" stroke=\"#333333\" data-level=\"4\"";
  const auto corner = svg.find(corner_rect);
  ASSERT_NE(corner, std::string::npos);
  const auto next_cell = svg.find("data-level=", corner + corner_rect.size());
  const auto id = svg.find("UCA(Ph0.1)-13.5.2-RQ1", corner);
  EXPECT_LT(id, next_cell);
  EXPECT_NE(svg.find(">RS5<"), std::string::npos);
  EXPECT_NE(svg.find(">UCA_P1<"), std::string::npos);
}

TEST(MatrixSvg, EmptyAndSingleton) {
  PriorityMatrix empty;
  EXPECT_EQ(count(matrix_svg(empty), "data-level="), 25u);
  PriorityMatrix one;
  one.cells[4][4].push_back("UCA(Ph1)-1.1-RQ1");
  EXPECT_EQ(count(matrix_svg(one), "UCA(Ph1)-1.1-RQ1"), 1u);
  PriorityMatrix crowded;
  for (int i = 0; i < 20; ++i) crowded.cells[0][0].push_back(fmt::format("R{}", i));
  EXPECT_NE(matrix_svg(crowded).find("+8 more"), std::string::npos);
}

TEST(MatrixSvg, ColoursStayOnRamp) {
  const std::regex fill("fill=\"#([0-9A-F]{6})\" stroke=\"#333333\" data-level");
  const auto svg = matrix_svg(casestudy().prioritisation.matrix);
  for (std::sregex_iterator it(svg.begin(), svg.end(), fill), end; it != end; ++it) {
    EXPECT_NE(std::find(kColourRamp.begin(), kColourRamp.end(), (*it)[1].str()), kColourRamp.end());
  }
  for (const auto& row : casestudy().rows) {
    EXPECT_NE(std::find(kColourRamp.begin(), kColourRamp.end(), row.colour), kColourRamp.end());
  }
}

TEST(UcaMatrix, PlacesEveryUca) {
  const auto m = uca_matrix(casestudy().ucas);
  EXPECT_EQ(m.size(), 14u);
  EXPECT_NE(uca_matrix_svg(m).find("UCA(Ph0.1)-13.5.2"), std::string::npos);
}

TEST(RankShiftSvg, DotsAndFlags) {
  const std::vector<RankShift> shifts{{"A", 1, 6, 5, true}, {"B", 2, 2, 0, false}, {"F", 6, 1, 5, true}};
  const auto svg = rank_shift_svg(shifts, 5);
  EXPECT_EQ(count(svg, "<circle"), 1u);
  EXPECT_EQ(count(svg, "class=\"flagged\""), 2u);
  try {
    rank_shift_svg(std::vector<RankShift>{});
    emit_rank_shift(std::vector<RankShift>{}, fixtures::scratch_dir("rs") / "x.svg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(Emit, ByteDeterministic) {
  const auto dir = fixtures::scratch_dir("det");
  for (const char* sub : {"a", "b"}) {
    fs::create_directories(dir / sub);
    const auto d = load_dataset(fixtures::casestudy_dir());
    AnalysisConfig config;
    d.config.apply(config);
    const auto r = run_pipeline(d, config, 43);
    emit_report(r.rows, dir / sub / "report.csv");
    emit_matrix(r.prioritisation.matrix, dir / sub / "matrix.svg");
    emit_rank_shift(r.shifts, dir / sub / "rank_shift.svg");
    emit_results(r, dir / sub / "results.json");
  }
  for (const char* f : {"report.csv", "matrix.svg", "rank_shift.svg", "results.json"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}
