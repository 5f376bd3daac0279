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

#include "vqss/sss.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

namespace vqss::sss {
namespace {

std::vector<FieldElement> ids(PrimeModulus d, std::vector<std::uint64_t> v) {
  std::vector<FieldElement> out;
  for (auto x : v) out.emplace_back(d, x);
  return out;
}

// Oracle: enumerate every polynomial of degree < t and collect the a_0
// values consistent with the shares.
std::vector<std::uint64_t> brute_secrets(PrimeModulus d, std::size_t t,
                                         const std::vector<Share>& shares) {
  std::vector<std::uint64_t> found;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < t; ++i) total *= d.value();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint64_t> a(t);
    std::uint64_t rest = idx;
    for (auto& c : a) {
      c = rest % d.value();
      rest /= d.value();
    }
    bool ok = true;
    for (const auto& s : shares) {
      std::uint64_t y = 0, xp = 1;
      for (auto c : a) {
        y = (y + c * xp) % d.value();
        xp = xp * s.x.value() % d.value();
      }
      ok = ok && y == s.y.value();
    }
    if (ok) found.push_back(a[0]);
  }
  return found;
}

TEST(PolynomialTest, WorkedExample) {
  PrimeModulus d(7);
  Polynomial f({FieldElement(d, 3), FieldElement(d, 2)});
  auto xs = ids(d, {1, 2});
  auto shares = evaluate_shares(f, xs);
  ASSERT_EQ(shares.size(), 2u);
  EXPECT_EQ(shares[0].y.value(), 5u);
  EXPECT_EQ(shares[1].y.value(), 0u);
  auto c1 = component(shares[0], xs);
  auto c2 = component(shares[1], xs);
  EXPECT_EQ(c1.value.value(), 3u);
  EXPECT_EQ(c2.value.value(), 0u);
  std::vector<Component> cs{c1, c2};
  EXPECT_EQ(reconstruct(cs).value(), 3u);
  EXPECT_EQ(f.secret().value(), 3u);
  EXPECT_EQ(f.threshold(), 2u);
}

TEST(PolynomialTest, HornerMatchesPowerSum) {
  PrimeModulus d(101);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = Polynomial::random(rng.field(d), 1 + rng.below(6), rng);
    auto x = rng.field(d);
    auto expect = FieldElement::zero(d);
    auto xp = FieldElement::one(d);
    for (const auto& c : f.coefficients()) {
      expect += c * xp;
      xp *= x;
    }
    EXPECT_EQ(f(x), expect);
  }
}

TEST(DealTest, ValidationErrors) {
  PrimeModulus d(7);
  Rng rng(1);
  auto s = FieldElement(d, 3);
  auto xs = ids(d, {1, 2, 3});
  EXPECT_THROW(deal(s, 4, xs, rng), ValidationError);
  EXPECT_THROW(deal(s, 0, xs, rng), ValidationError);
  auto dup = ids(d, {1, 2, 2});
  EXPECT_THROW(deal(s, 2, dup, rng), ValidationError);
  auto zero = ids(d, {0, 1});
  EXPECT_THROW(deal(s, 2, zero, rng), ValidationError);
  auto too_many = ids(d, {1, 2, 3, 4, 5, 6});
  EXPECT_NO_THROW(deal(s, 2, too_many, rng));
  auto other = ids(PrimeModulus(5), {1, 2});
  EXPECT_THROW(deal(s, 2, other, rng), ArithmeticError);
}

TEST(ComponentTest, OwnerMustBeActive) {
  PrimeModulus d(7);
  Share sh{FieldElement(d, 4), FieldElement(d, 1)};
  auto active = ids(d, {1, 2});
  EXPECT_THROW(component(sh, active), ValidationError);
}

// Random subsets of size >= t reconstruct the dealt secret and agree with
// the brute-force oracle.
TEST(ReconstructProperty, AnyQualifiedSubsetRecovers) {
  Rng rng(2024);
  for (std::uint64_t dv : {3u, 5u, 7u, 11u}) {
    PrimeModulus d(dv);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng.below(dv - 1);
      std::size_t t = 1 + rng.below(std::min<std::size_t>(n, 3));
      std::vector<std::uint64_t> pool(dv - 1);
      std::iota(pool.begin(), pool.end(), 1);
      for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[rng.below(i)]);
      }
      auto xs = ids(d, {pool.begin(), pool.begin() + n});
      auto secret = rng.field(d);
      auto shares = deal(secret, t, xs, rng);
      std::size_t m = t + rng.below(n - t + 1);
      std::vector<Share> subset(shares.begin(), shares.begin() + m);
      std::vector<FieldElement> active;
      for (const auto& s : subset) active.push_back(s.x);
      std::vector<Component> cs;
      for (const auto& s : subset) cs.push_back(component(s, active));
      ASSERT_EQ(reconstruct(cs), secret);
      ASSERT_EQ(interpolate_secret(subset), secret);
      auto oracle = brute_secrets(d, t, subset);
      ASSERT_EQ(oracle.size(), 1u);
      ASSERT_EQ(oracle.front(), secret.value());
    }
  }
}

TEST(SecrecyCensus, UnqualifiedSetIsFlat) {
  PrimeModulus d(5);
  std::vector<Share> fixed{{FieldElement(d, 1), FieldElement(d, 2)},
                           {FieldElement(d, 3), FieldElement(d, 4)}};
  // k < t fixed shares leave d^(t-1-k) polynomials per secret.
  for (std::size_t k : {0u, 1u, 2u}) {
    std::vector<Share> some(fixed.begin(), fixed.begin() + k);
    std::uint64_t per_secret = 1;
    for (std::size_t i = k; i + 1 < 3; ++i) per_secret *= 5;
    EXPECT_EQ(secrecy_census(d, 3, some),
              std::vector<std::uint64_t>(5, per_secret));
    auto oracle = brute_secrets(d, 3, some);
    EXPECT_EQ(oracle.size(), 5 * per_secret);
    for (std::uint64_t a = 0; a < 5; ++a) {
      EXPECT_EQ(static_cast<std::uint64_t>(
                    std::count(oracle.begin(), oracle.end(), a)),
                per_secret);
    }
  }
}

TEST(SecrecyCensus, QualifiedSetIsPoint) {
  PrimeModulus d(5);
  std::vector<Share> fixed{{FieldElement(d, 1), FieldElement(d, 2)},
                           {FieldElement(d, 3), FieldElement(d, 4)}};
  auto hist = secrecy_census(d, 2, fixed);
  EXPECT_EQ(std::count(hist.begin(), hist.end(), 0u), 4);
  EXPECT_EQ(std::accumulate(hist.begin(), hist.end(), std::uint64_t{0}), 1u);
}

TEST(SecrecyCensus, CapIsEnforced) {
  PrimeModulus d(101);
  EXPECT_THROW(secrecy_census(d, 4, {}, 1'000'000), ValidationError);
}

// A second implementation of the interface: (n,n) additive sharing.
class AdditiveNofN final : public AdditiveComponentScheme {
 public:
  std::vector<Share> deal(FieldElement secret, std::size_t threshold,
                          std::span<const FieldElement> xs,
                          Rng& rng) const override {
    if (threshold != xs.size()) throw ValidationError("n-of-n only");
    std::vector<Share> out;
    auto rest = secret;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      auto r = rng.field(secret.modulus());
      out.push_back({xs[i], r});
      rest -= r;
    }
    out.push_back({xs.back(), rest});
    return out;
  }
  Component component(const Share& share,
                      std::span<const FieldElement>) const override {
    return {share.y, share.x};
  }
};

void check_scheme_law(const AdditiveComponentScheme& scheme, std::size_t n,
                      std::size_t t) {
  PrimeModulus d(11);
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FieldElement> xs;
    for (std::size_t i = 1; i <= n; ++i) xs.emplace_back(d, i);
    auto secret = rng.field(d);
    auto shares = scheme.deal(secret, t, xs, rng);
    std::vector<Component> cs;
    for (const auto& s : shares) cs.push_back(scheme.component(s, xs));
    ASSERT_EQ(reconstruct(cs), secret);
  }
}

TEST(SchemeInterface, ComponentsSumToSecret) {
  check_scheme_law(shamir(), 5, 3);
  check_scheme_law(AdditiveNofN{}, 4, 4);
}

}  // namespace
}  // namespace vqss::sss
