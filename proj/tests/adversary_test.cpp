// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqss/adversary.hpp"

#include <vector>

#include "gtest/gtest.h"

namespace vqss::adversary {
namespace {

using stats::Rational;

AttackConfig config(std::uint64_t d, std::size_t t, std::size_t n,
                    std::size_t m, std::uint64_t trials, std::uint64_t seed) {
  PrimeModulus mod(d);
  return {SessionParams::standard(d, t, n, m), FieldElement(mod, d - 1),
          FieldElement(mod, 2), trials, seed};
}

void expect_model_matches(const ExactReport& exact) {
  if (exact.model.detection) {
    EXPECT_EQ(exact.detection, *exact.model.detection)
        << to_string(exact.strategy);
  }
  if (exact.model.undetected_wrong_secret) {
    EXPECT_EQ(exact.undetected_wrong_secret, *exact.model.undetected_wrong_secret)
        << to_string(exact.strategy);
  }
  if (exact.model.disturbance) {
    EXPECT_EQ(exact.disturbance, *exact.model.disturbance)
        << to_string(exact.strategy);
  }
}

TEST(StrategyNames, RoundTrip) {
  for (Strategy s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_FALSE(parse_strategy("eavesdrop").has_value());
}

TEST(AttackConfigTest, Validation) {
  auto cfg = config(7, 2, 3, 2, 10, 1);
  EXPECT_NO_THROW(cfg.validate(Strategy::intercept_resend));
  cfg.position = 2;
  EXPECT_THROW(cfg.validate(Strategy::intercept_resend), ValidationError);
  EXPECT_THROW(cfg.validate(Strategy::state_replacement), ValidationError);
  cfg.position = 1;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(Strategy::fake_share), ValidationError);
  cfg.trials = 1;
  cfg.cheater = 3;
  EXPECT_THROW(cfg.validate(Strategy::fake_share), ValidationError);
  auto single = config(7, 1, 1, 1, 10, 1);
  EXPECT_THROW(single.validate(Strategy::intercept_resend), ValidationError);
  EXPECT_NO_THROW(single.validate(Strategy::lying_measurer));
}

// Hand-derived values at d=3 for the default sampling rules.
TEST(ModelPredictionTest, ClosedFormsAtD3) {
  auto cfg = config(3, 2, 2, 2, 1, 0);
  auto ir = model_prediction(Strategy::intercept_resend, cfg);
  EXPECT_EQ(*ir.detection, Rational(4, 9));
  EXPECT_EQ(*ir.undetected_wrong_secret, Rational(16, 81));
  EXPECT_EQ(*ir.disturbance, Rational(2, 3));
  auto fs = model_prediction(Strategy::fake_share, cfg);
  EXPECT_EQ(*fs.detection, Rational(2, 3));
  EXPECT_EQ(*fs.undetected_wrong_secret, Rational(8, 27));
  auto lm = model_prediction(Strategy::lying_measurer, cfg);
  EXPECT_EQ(*lm.detection, Rational(9, 13));
  EXPECT_EQ(*lm.undetected_wrong_secret, Rational(4, 13));
  auto sr = model_prediction(Strategy::state_replacement, cfg);
  EXPECT_EQ(*sr.detection, Rational(2, 3));
  EXPECT_EQ(*sr.disturbance, Rational(728, 729));
  EXPECT_NEAR(nominal_prediction(31), 30.0 / 31.0, 1e-15);
}

TEST(CountVerifyingTriples, AlwaysDSquared) {
  for (std::uint64_t d : {3u, 5u, 7u}) {
    PrimeModulus mod(d);
    for (std::uint64_t a = 0; a < d; ++a)
      for (std::uint64_t b = 0; b < d; b += 2)
        for (std::uint64_t c = 0; c < d; c += 3) {
          Triple masks{FieldElement(mod, a), FieldElement(mod, b),
                       FieldElement(mod, c)};
          ASSERT_EQ(count_verifying_triples(mod, masks), d * d);
        }
  }
}

struct Variant {
  Strategy strategy;
  bool inclusive;
  bool per_qudit;
  bool noop;
};

class ExhaustiveTest : public ::testing::TestWithParam<Variant> {};

TEST_P(ExhaustiveTest, ModelMatchesEnumeration) {
  const Variant v = GetParam();
  for (std::uint64_t seed : {1u, 2u}) {
    auto cfg = config(3, 2, 2, 2, 1, seed);
    cfg.inclusive = v.inclusive;
    cfg.per_qudit_basis = v.per_qudit;
    cfg.force_noop = v.noop;
    cfg.cheater = 2;
    auto exact = enumerate_attack(v.strategy, cfg);
    EXPECT_GT(exact.leaves, 0u);
    expect_model_matches(exact);
    if (v.strategy == Strategy::state_replacement) {
      EXPECT_EQ(exact.attacker_learned_secret, Rational(0));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Variants, ExhaustiveTest,
    ::testing::Values(
        Variant{Strategy::intercept_resend, false, false, false},
        Variant{Strategy::intercept_resend, false, true, false},
        Variant{Strategy::intercept_resend, false, false, true},
        Variant{Strategy::fake_share, false, false, false},
        Variant{Strategy::fake_share, true, false, false},
        Variant{Strategy::fake_share, false, false, true},
        Variant{Strategy::lying_measurer, false, false, false},
        Variant{Strategy::lying_measurer, true, false, false},
        Variant{Strategy::lying_measurer, false, false, true},
        Variant{Strategy::state_replacement, false, false, false},
        Variant{Strategy::state_replacement, false, false, true}));

TEST(ExhaustiveTest, LeafCapIsEnforced) {
  auto cfg = config(7, 2, 3, 3, 1, 0);
  EXPECT_THROW(enumerate_attack(Strategy::fake_share, cfg, 1000),
               ValidationError);
}

class MonteCarloTest : public ::testing::TestWithParam<Strategy> {};

TEST_P(MonteCarloTest, RatesWithinThreeSigmaOfModel) {
  const Strategy s = GetParam();
  auto cfg = config(7, 2, 4, 3, 6000, 12345);
  cfg.position = 2;
  cfg.cheater = 2;
  auto report = run_attack(s, cfg);
  ASSERT_EQ(report.trials, 6000u);
  EXPECT_TRUE(stats::within_sigma(report.detected, report.trials,
                                  stats::to_double(*report.model.detection)));
  EXPECT_TRUE(stats::within_sigma(
      report.undetected_wrong_secret, report.trials,
      stats::to_double(*report.model.undetected_wrong_secret)));
  if (report.model.disturbance) {
    EXPECT_TRUE(stats::within_sigma(report.disturbed, report.trials,
                                    stats::to_double(*report.model.disturbance)));
  }
  auto ci = report.ci95();
  EXPECT_LE(ci.low, report.detection_rate());
  EXPECT_GE(ci.high, report.detection_rate());
}

INSTANTIATE_TEST_SUITE_P(AllStrategies, MonteCarloTest,
                         ::testing::ValuesIn(kAllStrategies));

TEST(MonteCarloTest, HonestControlNeverDetects) {
  for (Strategy s : kAllStrategies) {
    auto cfg = config(11, 3, 5, 4, 500, 3);
    cfg.force_noop = true;
    auto report = run_attack(s, cfg);
    EXPECT_EQ(report.detected, 0u) << to_string(s);
    EXPECT_EQ(report.undetected_wrong_secret, 0u) << to_string(s);
    EXPECT_EQ(report.disturbed, 0u) << to_string(s);
  }
}

TEST(MonteCarloTest, PublishedValuesAreUniform) {
  auto cfg = config(7, 2, 3, 3, 7000, 99);
  auto report = run_attack(Strategy::intercept_resend, cfg);
  EXPECT_GT(stats::chi_square_uniform(report.published_histogram).p_value, 0.01);
}

TEST(MonteCarloTest, WorkerCountDoesNotChangeResults) {
  auto cfg = config(5, 2, 3, 3, 800, 17);
  auto one = run_attack(Strategy::fake_share, cfg);
  cfg.workers = 3;
  auto three = run_attack(Strategy::fake_share, cfg);
  EXPECT_EQ(one.detected, three.detected);
  EXPECT_EQ(one.undetected_wrong_secret, three.undetected_wrong_secret);
  EXPECT_EQ(one.attacker_learned_secret, three.attacker_learned_secret);
  EXPECT_EQ(one.published_histogram, three.published_histogram);
}

TEST(MonteCarloTest, NamedRunnersDelegate) {
  auto cfg = config(5, 2, 3, 2, 50, 8);
  EXPECT_EQ(run_intercept_resend(cfg).detected,
            run_attack(Strategy::intercept_resend, cfg).detected);
  EXPECT_EQ(run_fake_share(cfg).detected,
            run_attack(Strategy::fake_share, cfg).detected);
  EXPECT_EQ(run_lying_measurer(cfg).detected,
            run_attack(Strategy::lying_measurer, cfg).detected);
  EXPECT_EQ(run_state_replacement(cfg).detected,
            run_attack(Strategy::state_replacement, cfg).detected);
}

TEST(SummaryTest, PredictionGrowsWithD) {
  std::vector<AttackReport> reports;
  for (std::uint64_t d : {3u, 7u, 31u}) {
    reports.push_back(run_attack(Strategy::fake_share, config(d, 2, 2, 2, 300, d)));
  }
  auto rows = detection_summary(reports);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].prediction, rows[i - 1].prediction);
    EXPECT_GT(rows[i].nominal_prediction, rows[i - 1].nominal_prediction);
  }
  EXPECT_THROW(detection_summary({}), ValidationError);
}

}  // namespace
}  // namespace vqss::adversary
