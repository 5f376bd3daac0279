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

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/rational.hpp>

#include "vqss/error.hpp"

namespace vqss::stats {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for k successes in n trials.
inline Interval wilson_interval(std::uint64_t k, std::uint64_t n,
                                double z = 1.959963984540054) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Standard deviation of an empirical rate over n trials when the true rate
/// is p.
inline double binomial_sigma(double p, std::uint64_t n) {
  return std::sqrt(p * (1 - p) / static_cast<double>(n));
}

/// |observed - expected| <= k sigma(expected, n).
inline bool within_sigma(std::uint64_t successes, std::uint64_t n,
                         double expected, double k = 3.0) {
  const double rate = static_cast<double>(successes) / static_cast<double>(n);
  return std::abs(rate - expected) <= k * binomial_sigma(expected, n);
}

struct ChiSquare {
  double statistic;
  double p_value;
};

/// Pearson goodness of fit against the uniform distribution.
inline ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw ValidationError("need at least two bins");
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0) throw ValidationError("no observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return {stat, boost::math::cdf(boost::math::complement(dist, stat))};
}

}  // namespace vqss::stats
