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

// Shamir (t, n) sharing exposed through the additive-component interface:
// each participant of an authorized set turns its share into a component
// c_j, and the components sum to the dealt value mod d.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "vqss/error.hpp"
#include "vqss/gf.hpp"
#include "vqss/rng.hpp"

namespace vqss::sss {

/// f(x) = a_0 + a_1 x + ... + a_{t-1} x^{t-1}; a_0 is the dealt value.
class Polynomial {
 public:
  explicit Polynomial(std::vector<FieldElement> coefficients)
      : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw ValidationError("polynomial needs at least a_0");
    for (const auto& c : coeffs_) {
      if (!(c.modulus() == coeffs_.front().modulus())) {
        throw ArithmeticError("polynomial coefficients over different moduli");
      }
    }
  }

  /// a_0 = s, a_1..a_{t-1} uniform over GF(d), zero allowed.
  static Polynomial random(FieldElement secret, std::size_t threshold,
                           Rng& rng) {
    std::vector<FieldElement> c{secret};
    for (std::size_t i = 1; i < threshold; ++i) {
      c.push_back(rng.field(secret.modulus()));
    }
    return Polynomial(std::move(c));
  }

  /// Horner's rule.
  FieldElement operator()(FieldElement x) const {
    FieldElement acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  std::size_t threshold() const { return coeffs_.size(); }
  FieldElement secret() const { return coeffs_.front(); }
  PrimeModulus modulus() const { return coeffs_.front().modulus(); }
  std::span<const FieldElement> coefficients() const { return coeffs_; }

 private:
  std::vector<FieldElement> coeffs_;
};

struct Share {
  FieldElement x;  // public identity, nonzero
  FieldElement y;  // f(x)

  friend bool operator==(const Share&, const Share&) = default;
};

struct Component {
  FieldElement value;
  FieldElement owner;  // x of the share it was computed from
};

namespace detail {

inline void check_identities(std::span<const FieldElement> xs) {
  if (xs.empty()) throw ValidationError("empty participant set");
  std::vector<FieldElement> sorted(xs.begin(), xs.end());
  for (const auto& x : sorted) {
    if (!(x.modulus() == sorted.front().modulus())) {
      throw ArithmeticError("participant identities over different moduli");
    }
    if (x.is_zero()) {
      throw ValidationError("participant identity x=0 is reserved for f(0)");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate participant identity");
  }
}

}  // namespace detail

/// Evaluates f at every identity.
inline std::vector<Share> evaluate_shares(const Polynomial& f,
                                          std::span<const FieldElement> xs) {
  detail::check_identities(xs);
  if (f.threshold() > xs.size()) {
    throw ValidationError("threshold exceeds the number of shareholders");
  }
  std::vector<Share> shares;
  shares.reserve(xs.size());
  for (const auto& x : xs) shares.push_back({x, f(x)});
  return shares;
}

inline std::vector<Share> deal(FieldElement secret, std::size_t threshold,
                               std::span<const FieldElement> xs, Rng& rng) {
  if (threshold < 1) throw ValidationError("threshold must be at least 1");
  if (threshold > xs.size()) {
    throw ValidationError("threshold t=" + std::to_string(threshold) +
                          " exceeds n=" + std::to_string(xs.size()));
  }
  if (xs.size() >= secret.modulus().value()) {
    throw ValidationError("need n < d distinct nonzero identities");
  }
  detail::check_identities(xs);
  for (const auto& x : xs) {
    if (!(x.modulus() == secret.modulus())) {
      throw ArithmeticError("identities and secret over different moduli");
    }
  }
  return evaluate_shares(Polynomial::random(secret, threshold, rng), xs);
}

/// c_j = f(x_j) * prod_{r != j} x_r / (x_r - x_j).
inline Component component(const Share& share,
                           std::span<const FieldElement> active) {
  detail::check_identities(active);
  if (std::find(active.begin(), active.end(), share.x) == active.end()) {
    throw ValidationError("share x=" + std::to_string(share.x.value()) +
                          " is not in the active set");
  }
  FieldElement num = FieldElement::one(share.x.modulus());
  FieldElement den = num;
  for (const auto& xr : active) {
    if (xr == share.x) continue;
    num *= xr;
    den *= xr - share.x;
  }
  return {share.y * num / den, share.x};
}

inline FieldElement reconstruct(std::span<const Component> components) {
  if (components.empty()) throw ValidationError("no components to sum");
  FieldElement sum = FieldElement::zero(components.front().value.modulus());
  for (const auto& c : components) sum += c.value;
  return sum;
}

/// Lagrange interpolation at 0 through the given shares.
inline FieldElement interpolate_secret(std::span<const Share> shares) {
  std::vector<FieldElement> xs;
  for (const auto& s : shares) xs.push_back(s.x);
  std::vector<Component> cs;
  for (const auto& s : shares) cs.push_back(component(s, xs));
  return reconstruct(cs);
}

inline constexpr std::uint64_t kDefaultCensusCap = 10'000'000;

/// Exhaustive count, over all d^t polynomials of degree < t consistent with
/// `fixed`, of how often each a_0 occurs. With fewer than t fixed shares the
/// histogram is flat.
inline std::vector<std::uint64_t> secrecy_census(
    PrimeModulus d, std::size_t threshold, std::span<const Share> fixed,
    std::uint64_t cap = kDefaultCensusCap) {
  if (threshold < 1) throw ValidationError("threshold must be at least 1");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < threshold; ++i) {
    if (total > cap / d.value()) {
      throw ValidationError("census of d^t polynomials exceeds cap " +
                            std::to_string(cap));
    }
    total *= d.value();
  }
  std::vector<std::uint64_t> histogram(d.value(), 0);
  std::vector<FieldElement> coeffs(threshold, FieldElement::zero(d));
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (auto& c : coeffs) {
      c = FieldElement(d, rest % d.value());
      rest /= d.value();
    }
    Polynomial f(coeffs);
    bool consistent = std::all_of(fixed.begin(), fixed.end(),
                                  [&](const Share& s) { return f(s.x) == s.y; });
    if (consistent) ++histogram[coeffs.front().value()];
  }
  return histogram;
}

/// Any classical threshold scheme whose components sum to the secret mod d
/// can drive the qudit protocol.
class AdditiveComponentScheme {
 public:
  virtual ~AdditiveComponentScheme() = default;

  virtual std::vector<Share> deal(FieldElement secret, std::size_t threshold,
                                  std::span<const FieldElement> xs,
                                  Rng& rng) const = 0;

  virtual Component component(const Share& share,
                              std::span<const FieldElement> active) const = 0;
};

class ShamirScheme final : public AdditiveComponentScheme {
 public:
  std::vector<Share> deal(FieldElement secret, std::size_t threshold,
                          std::span<const FieldElement> xs,
                          Rng& rng) const override {
    return sss::deal(secret, threshold, xs, rng);
  }

  Component component(const Share& share,
                      std::span<const FieldElement> active) const override {
    return sss::component(share, active);
  }
};

inline const ShamirScheme& shamir() {
  static const ShamirScheme scheme;
  return scheme;
}

}  // namespace vqss::sss
