#include <gtest/gtest.h>

#include "stpaprio/model.hpp"
#include "test_support.hpp"

using namespace stpaprio;

TEST(ParseReqId, DottedRequirementNumber) {
  const auto id = parse_req_id("UCA(Ph2)-7.5.2-RQ.5");
  EXPECT_EQ(id.phase, Phase::Ph2);
  EXPECT_EQ(id.uca_id, "UCA(Ph2)-7.5.2");
  EXPECT_EQ(id.number, 5);
  EXPECT_TRUE(id.dotted);
}

TEST(ParseReqId, UndottedRequirementNumber) {
  const auto id = parse_req_id("UCA(Ph0.1)-13.5.2-RQ1");
  EXPECT_EQ(id.phase, Phase::Ph0_1);
  EXPECT_EQ(id.uca_id, "UCA(Ph0.1)-13.5.2");
  EXPECT_EQ(id.number, 1);
  EXPECT_FALSE(id.dotted);
}

TEST(ParseReqId, RejectsMalformed) {
  for (const char* bad : {"UCA-Ph9-xx", "", "UCA(Ph9)-1.2-RQ1", "UCA(Ph1)-1.2-RQ", "UCA(Ph1)-1.2-RQ01",
                          "UCA(Ph1)-.2-RQ1", "UCA(Ph1)-1.2-RQ1 ", "uca(Ph1)-1.2-RQ1", "UCA(Ph1)1.2-RQ1"}) {
    try {
      parse_req_id(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedId) << bad;
    }
  }
}

TEST(ParseReqId, RoundTripsEveryTableId) {
  for (const auto& row : fixtures::casestudy_scores()) {
    EXPECT_EQ(parse_req_id(row.req_id).str(), row.req_id);
  }
}

TEST(ParseReqId, RoundTripProperty) {
  std::mt19937_64 rng(11);
  const char* phases[] = {"Ph0.1", "Ph0.2", "Ph1", "Ph2", "Ph3"};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string raw = fmt::format("UCA({})-{}", phases[rng() % 5], rng() % 90 + 1);
    for (int parts = static_cast<int>(rng() % 4); parts > 0; --parts) raw += fmt::format(".{}", rng() % 20);
    raw += fmt::format("-RQ{}{}", rng() % 2 ? "." : "", rng() % 500 + 1);
    EXPECT_EQ(parse_req_id(raw).str(), raw);
  }
}

TEST(Phase, OnlyFiveIdentifiers) {
  EXPECT_EQ(parse_phase("Ph0.2"), Phase::Ph0_2);
  EXPECT_EQ(parse_phase("Ph3"), Phase::Ph3);
  EXPECT_THROW(parse_phase("Ph4"), Error);
  EXPECT_THROW(parse_phase("ph1"), Error);
  EXPECT_THROW(parse_phase("Ph0.3"), Error);
}

TEST(ParseUcaId, ExtractsPhase) {
  EXPECT_EQ(parse_uca_id("UCA(Ph0.2)-33.7.2"), Phase::Ph0_2);
  EXPECT_THROW(parse_uca_id("UCA(Ph0.2)-33.7.2-RQ1"), Error);
}

TEST(FactorAssessment, PointAssessmentHasDegenerateBrackets) {
  FactorAssessment a(TimeEffort::Moderate, CostLevel::Low, MitigationType::B, 1);
  for (auto f : kFactors) EXPECT_TRUE(a.bracket(f).is_point());
  EXPECT_EQ(a.mode(Factor::Type), 4);
  EXPECT_EQ(a.mode(Factor::Time), 2);
  EXPECT_EQ(a.covered_gap(), 1);
}

TEST(FactorAssessment, RejectsInvalidBrackets) {
  auto ok = std::array<Bracket, kFactorCount>{Bracket{1, 3, 5}, Bracket{0, 1, 1}, Bracket{1, 2, 3}, Bracket::point(1)};
  EXPECT_NO_THROW(FactorAssessment::with_brackets(ok));
  auto unordered = ok;
  unordered[2] = {2, 1, 3};
  EXPECT_THROW(FactorAssessment::with_brackets(unordered), Error);
  auto out_of_range = ok;
  out_of_range[0] = {0, 3, 5};
  EXPECT_THROW(FactorAssessment::with_brackets(out_of_range), Error);
  EXPECT_THROW(FactorAssessment(TimeEffort::Minor, CostLevel::Low, MitigationType::A, 2), Error);
}

TEST(FactorAssessment, OrdinalEncodingsAreTotalOrders) {
  // Type A > B > ... > E, Minor < Moderate < Significant, Low < Medium < High.
  EXPECT_LT(static_cast<int>(MitigationType::E), static_cast<int>(MitigationType::D));
  EXPECT_LT(static_cast<int>(MitigationType::B), static_cast<int>(MitigationType::A));
  EXPECT_LT(static_cast<int>(TimeEffort::Minor), static_cast<int>(TimeEffort::Significant));
  EXPECT_LT(static_cast<int>(CostLevel::Medium), static_cast<int>(CostLevel::High));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = fixtures::random_assessment(rng), b = fixtures::random_assessment(rng), c = fixtures::random_assessment(rng);
    for (auto f : kFactors) {
      if (a.mode(f) <= b.mode(f) && b.mode(f) <= a.mode(f)) EXPECT_EQ(a.mode(f), b.mode(f));
      if (a.mode(f) <= b.mode(f) && b.mode(f) <= c.mode(f)) EXPECT_LE(a.mode(f), c.mode(f));
    }
  }
}

TEST(UCARecord, DerivesSifFromPmsAndCif) {
  auto u = UCARecord::make("UCA(Ph1)-1.1.1", Phase::Ph1, "", 20.0, 7.0, std::nullopt, 10.0);
  EXPECT_DOUBLE_EQ(u.sif, 140.0);
  EXPECT_NO_THROW(UCARecord::make("UCA(Ph1)-1.1.1", Phase::Ph1, "", 20.0, 7.0, 140.0, 10.0));
  EXPECT_THROW(UCARecord::make("UCA(Ph1)-1.1.1", Phase::Ph1, "", 20.0, 7.0, 141.0, 10.0), Error);
  EXPECT_THROW(UCARecord::make("UCA(Ph1)-1.1.1", Phase::Ph1, "", std::nullopt, std::nullopt, std::nullopt, 1.0), Error);
  EXPECT_THROW(UCARecord::make("UCA(Ph1)-1.1.1", Phase::Ph1, "", std::nullopt, std::nullopt, 60.0, -1.0), Error);
}

TEST(RequirementRecord, UcaLinkComesFromId) {
  auto r = RequirementRecord::make("UCA(Ph0.1)-13.5.2-RQ1", "text", {},
                                   FactorAssessment(TimeEffort::Minor, CostLevel::Low, MitigationType::A, 1));
  EXPECT_EQ(r.uca_id, "UCA(Ph0.1)-13.5.2");
}

TEST(AnalysisConfig, DefaultsAndValidation) {
  AnalysisConfig c;
  EXPECT_DOUBLE_EQ(c.weights.type, 0.4);
  EXPECT_DOUBLE_EQ(c.weights.likelihood, 0.3);
  EXPECT_DOUBLE_EQ(c.weights.time, 0.15);
  EXPECT_DOUBLE_EQ(c.weights.cost, 0.15);
  EXPECT_EQ(c.iterations, 1000);
  EXPECT_DOUBLE_EQ(c.perturbation, 0.10);
  EXPECT_DOUBLE_EQ(c.ci_z, 1.96);
  EXPECT_EQ(c.mode, SamplingMode::UniformPct);
  EXPECT_FALSE(c.validate().has_value());

  auto bad = c;
  bad.iterations = 0;
  EXPECT_THROW(bad.validate(), Error);
  bad = c;
  bad.perturbation = 1.0;
  try {
    bad.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPerturbation);
  }
  auto unnormalised = c;
  unnormalised.weights.type = 0.5;
  EXPECT_TRUE(unnormalised.validate().has_value());
}

TEST(SamplingMode, Tokens) {
  for (auto m : {SamplingMode::UniformPct, SamplingMode::Triangular, SamplingMode::Combined}) {
    EXPECT_EQ(parse_sampling_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_sampling_mode("gaussian"), Error);
}
