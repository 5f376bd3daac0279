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

#include "vqss/io.hpp"

#include <string>

#include "gtest/gtest.h"

namespace vqss::io {
namespace {

using protocol::SessionParams;

FieldElement F(std::uint64_t d, std::uint64_t v) {
  return FieldElement(PrimeModulus(d), v);
}

// Single unmasked hop; every field of the export is fixed by hand.
protocol::Transcript unmasked_transcript() {
  auto params = SessionParams::standard(7, 1, 1, 1);
  protocol::Session s(params);
  s.prepare(F(7, 6), F(7, 3), F(7, 0));
  Rng rng(0);
  protocol::HopOptions opt;
  opt.randoms = protocol::Triple{F(7, 0), F(7, 0), F(7, 0)};
  s.hop({F(7, 1), F(7, 0)}, rng, opt);
  s.publish(s.measure(rng));
  s.exchange(1);
  s.recover();
  s.verify();
  return std::move(s).release();
}

TEST(TranscriptJson, Golden) {
  const std::string expected = R"({
  "version": 1,
  "d": 7,
  "t": 1,
  "n": 1,
  "m": 1,
  "xs": [
    1
  ],
  "R": [
    6,
    3,
    2
  ],
  "exchanged": [
    [
      0,
      0,
      0
    ]
  ],
  "recovered": [
    6,
    3,
    2
  ],
  "verdict": "accepted",
  "events": [
    "prepare",
    "hop:1",
    "measure",
    "publish",
    "exchange:1",
    "recover",
    "verify"
  ]
}
)";
  EXPECT_EQ(dump(transcript_to_json(unmasked_transcript())), expected);
}

TEST(TranscriptJson, SecretsOnlyWhenRequested) {
  auto tr = unmasked_transcript();
  auto plain = transcript_to_json(tr);
  EXPECT_FALSE(plain.contains("secrets"));
  EXPECT_FALSE(plain.contains("shares"));
  auto full = transcript_to_json(tr, {.include_secrets = true});
  EXPECT_EQ(full["secrets"]["N"], 2);
  EXPECT_EQ(full["hops"][0]["labels"][0], Json::array({6, 0}));
  EXPECT_EQ(full["shares"][0]["x"], 1);
}

TEST(TranscriptJson, CheckAcceptsHonestAndRejectsTampering) {
  auto params = SessionParams::standard(11, 2, 4, 3);
  Rng rng(31);
  auto deal = protocol::deal_classical(params, rng);
  auto tr = protocol::run_honest_session(params, deal, F(11, 8), F(11, 4), rng);
  auto doc = transcript_to_json(tr);
  EXPECT_EQ(check_transcript(doc), protocol::Verdict::accepted);

  auto early = doc;
  auto& ev = early["events"];
  // prepare, hop:1..3, measure, publish, exchange:1 -> swap the last two.
  std::swap(ev[5], ev[6]);
  EXPECT_THROW(check_transcript(early), ProtocolError);

  auto forged = doc;
  forged["recovered"][0] = (doc["recovered"][0].get<int>() + 1) % 11;
  EXPECT_THROW(check_transcript(forged), ProtocolError);

  auto flipped = doc;
  flipped["verdict"] = "rejected";
  EXPECT_THROW(check_transcript(flipped), ProtocolError);

  auto missing = doc;
  missing["exchanged"].erase(0);
  EXPECT_THROW(check_transcript(missing), ProtocolError);
}

TEST(TranscriptJson, ReproducibleForSameSeed) {
  auto params = SessionParams::standard(13, 3, 5, 4);
  auto once = [&] {
    Rng rng(2718);
    auto deal = protocol::deal_classical(params, rng);
    return dump(transcript_to_json(
        protocol::run_honest_session(params, deal, F(13, 1), F(13, 5), rng),
        {.include_secrets = true}));
  };
  EXPECT_EQ(once(), once());
}

TEST(ShareJson, RoundTrip) {
  PrimeModulus d(7);
  std::vector<sss::Share> shares{{F(7, 1), F(7, 5)}, {F(7, 2), F(7, 0)}};
  auto doc = shares_to_json(d, 2, shares);
  auto back = shares_from_json(doc);
  EXPECT_EQ(back.d, 7u);
  EXPECT_EQ(back.t, 2u);
  EXPECT_EQ(back.shares, shares);
  doc["n"] = 3;
  EXPECT_THROW(shares_from_json(doc), ValidationError);
  EXPECT_THROW(shares_from_json(Json::object()), ValidationError);
}

TEST(ReportJson, KeyOrderAndRates) {
  adversary::AttackConfig cfg{SessionParams::standard(5, 2, 3, 2), F(5, 4),
                              F(5, 2), 200, 6};
  auto report = adversary::run_attack(adversary::Strategy::fake_share, cfg);
  auto doc = report_to_json(report);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> head{
      "strategy", "d", "t", "n", "m", "trials", "detected",
      "undetected_wrong_secret", "attacker_learned_secret", "detection_rate",
      "ci95", "prediction", "seed"};
  ASSERT_GE(keys.size(), head.size());
  EXPECT_TRUE(std::equal(head.begin(), head.end(), keys.begin()));
  EXPECT_EQ(doc["strategy"], "fake-share");
  EXPECT_DOUBLE_EQ(doc["detection_rate"].get<double>(),
                   static_cast<double>(report.detected) / 200);
  EXPECT_EQ(doc["ci95"].size(), 2u);
}

TEST(Csv, FlattensNestedValues) {
  Json doc;
  doc["a"] = 1;
  doc["b"] = Json::array({1, 2});
  doc["c"] = Json{{"x", "y"}};
  doc["e"] = Json::array({Json::array({1, 2}), Json::array({3})});
  EXPECT_EQ(to_csv(doc), "a,b,c.x,e\n1,1;2,y,1 2;3\n");
  Json rows = Json::array({Json{{"k", 1}}, Json{{"k", 2}}});
  EXPECT_EQ(to_csv(rows), "k\n1\n2\n");
}

}  // namespace
}  // namespace vqss::io
