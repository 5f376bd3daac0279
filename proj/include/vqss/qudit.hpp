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

// Pure-state simulation of a single d-level system together with the
// d mutually unbiased bases |phi_l^k> = d^{-1/2} sum_j w^{j(l + k j)} |j>,
// w = exp(2 pi i / d), and the diagonal shifts X_d^p Y_d^q that move
// (l, k) to (l + p, k + q).

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vqss/error.hpp"
#include "vqss/gf.hpp"
#include "vqss/rng.hpp"

namespace vqss::qudit {

using Complex = std::complex<double>;

struct Tolerance {
  double assert_eps = 1e-9;
  double norm_drift = 1e-12;
};

/// Statevectors are dense; this bounds memory per state.
inline constexpr std::uint64_t kMaxDimension = 1u << 20;

/// Dimension plus the table of the d roots of unity w^r.
class QuditSpace {
 public:
  explicit QuditSpace(PrimeModulus d) : d_(d) {
    if (d.value() > kMaxDimension) {
      throw ValidationError("qudit dimension " + std::to_string(d.value()) +
                            " exceeds simulator limit");
    }
    roots_.reserve(d.value());
    for (std::uint64_t r = 0; r < d.value(); ++r) {
      roots_.push_back(std::polar(
          1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                   static_cast<double>(d.value())));
    }
    inv_sqrt_d_ = 1.0 / std::sqrt(static_cast<double>(d.value()));
  }

  static std::shared_ptr<const QuditSpace> make(PrimeModulus d) {
    return std::make_shared<const QuditSpace>(d);
  }

  PrimeModulus modulus() const { return d_; }
  std::size_t dimension() const { return roots_.size(); }
  Complex omega() const { return roots_.size() > 1 ? roots_[1] : roots_[0]; }

  /// w^r for r already reduced mod d.
  Complex root(FieldElement r) const { return roots_[r.value()]; }
  /// w^r, r in [0, d).
  Complex root_at(std::uint64_t r) const { return roots_[r]; }
  double inv_sqrt_d() const { return inv_sqrt_d_; }

 private:
  PrimeModulus d_;
  std::vector<Complex> roots_;
  double inv_sqrt_d_;
};

using SpacePtr = std::shared_ptr<const QuditSpace>;

/// Unit-norm amplitude vector in the computational basis.
class QuditState {
 public:
  QuditState(SpacePtr space, std::vector<Complex> amplitudes,
             double tolerance = Tolerance{}.assert_eps)
      : space_(std::move(space)), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_->dimension()) {
      throw ValidationError("amplitude count " + std::to_string(amps_.size()) +
                            " does not match d=" +
                            std::to_string(space_->dimension()));
    }
    if (std::abs(norm_squared() - 1.0) > tolerance) {
      throw ValidationError("state is not normalized");
    }
  }

  const QuditSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t j) const { return amps_[j]; }

  double norm_squared() const {
    double sum = 0;
    for (const auto& a : amps_) sum += std::norm(a);
    return sum;
  }

 private:
  SpacePtr space_;
  std::vector<Complex> amps_;
};

/// Exact symbolic name of |phi_l^k>.
struct MubLabel {
  FieldElement l;
  FieldElement k;

  friend bool operator==(const MubLabel&, const MubLabel&) = default;
};

inline QuditState mub_vector(const SpacePtr& space, MubLabel label) {
  PrimeModulus d = space->modulus();
  if (!(label.l.modulus() == d) || !(label.k.modulus() == d)) {
    throw ArithmeticError("label modulus differs from qudit dimension");
  }
  std::vector<Complex> amps;
  amps.reserve(d.value());
  for (std::uint64_t j = 0; j < d.value(); ++j) {
    FieldElement fj(d, j);
    // exponent j(l + k j) reduced in GF(d) before touching floating point
    amps.push_back(space->root(fj * (label.l + label.k * fj)) *
                   space->inv_sqrt_d());
  }
  return QuditState(space, std::move(amps));
}

/// |j>, the remaining basis that is unbiased to all MUB vectors above.
inline QuditState computational_vector(const SpacePtr& space, FieldElement j) {
  std::vector<Complex> amps(space->dimension(), Complex{0, 0});
  amps.at(j.value()) = 1.0;
  return QuditState(space, std::move(amps));
}

inline Complex inner_product(const QuditState& a, const QuditState& b) {
  if (a.dimension() != b.dimension()) {
    throw ValidationError("inner product of states with different dimension");
  }
  Complex sum{0, 0};
  for (std::size_t j = 0; j < a.dimension(); ++j) {
    sum += std::conj(a[j]) * b[j];
  }
  return sum;
}

/// U_{p,q} = X_d^p Y_d^q, one diagonal phase pass: a_j *= w^{j p + j^2 q}.
inline QuditState apply_unitary(const QuditState& state, FieldElement p,
                                FieldElement q) {
  const QuditSpace& space = state.space();
  PrimeModulus d = space.modulus();
  if (!(p.modulus() == d) || !(q.modulus() == d)) {
    throw ArithmeticError("unitary exponents over a different modulus");
  }
  std::vector<Complex> amps(state.amplitudes().begin(),
                            state.amplitudes().end());
  for (std::uint64_t j = 0; j < d.value(); ++j) {
    FieldElement fj(d, j);
    amps[j] *= space.root(fj * (p + fj * q));
  }
  return QuditState(state.space_ptr(), std::move(amps));
}

/// Symbolic twin of apply_unitary on MUB vectors.
inline MubLabel label_apply(MubLabel label, FieldElement p, FieldElement q) {
  return {label.l + p, label.k + q};
}

/// |<phi_l^k|state>|^2 for l = 0..d-1, clamped at zero and renormalized to
/// sum to exactly one.
inline std::vector<double> born_probabilities(const QuditState& state,
                                              FieldElement k) {
  const QuditSpace& space = state.space();
  PrimeModulus d = space.modulus();
  std::vector<double> probs(d.value());
  // <phi_l^k|psi> = d^{-1/2} sum_j w^{-j l} (w^{-k j^2} psi_j)
  std::vector<Complex> twisted(d.value());
  for (std::uint64_t j = 0; j < d.value(); ++j) {
    FieldElement fj(d, j);
    twisted[j] = space.root(-(k * fj * fj)) * state[j];
  }
  double total = 0;
  const std::uint64_t dim = d.value();
  for (std::uint64_t l = 0; l < dim; ++l) {
    Complex amp{0, 0};
    std::uint64_t phase = 0;  // j * l mod d
    for (std::uint64_t j = 0; j < dim; ++j) {
      amp += space.root_at(phase == 0 ? 0 : dim - phase) * twisted[j];
      phase += l;
      if (phase >= dim) phase -= dim;
    }
    double p = std::norm(amp) / static_cast<double>(d.value());
    probs[l] = p > 0 ? p : 0;
    total += probs[l];
  }
  if (!(total > 0)) throw ValidationError("state has no weight in basis");
  for (auto& p : probs) p /= total;
  return probs;
}

/// Probabilities over the computational basis.
inline std::vector<double> born_probabilities_computational(
    const QuditState& state) {
  std::vector<double> probs;
  double total = 0;
  for (const auto& a : state.amplitudes()) {
    probs.push_back(std::norm(a));
    total += probs.back();
  }
  for (auto& p : probs) p /= total;
  return probs;
}

namespace detail {

inline std::uint64_t sample_index(std::span<const double> probs, Rng& rng) {
  double u = rng.unit();
  double cumulative = 0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0) continue;
    last_nonzero = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return last_nonzero;  // u landed in the rounding slack above the last bin
}

}  // namespace detail

struct Measurement {
  FieldElement outcome;
  QuditState post_state;
};

/// Projective measurement in MUB k; the state collapses to |phi_l^k>.
inline Measurement measure_in_basis(const QuditState& state, FieldElement k,
                                    Rng& rng) {
  auto probs = born_probabilities(state, k);
  FieldElement l(state.space().modulus(), detail::sample_index(probs, rng));
  return {l, mub_vector(state.space_ptr(), {l, k})};
}

inline Measurement measure_computational(const QuditState& state, Rng& rng) {
  auto probs = born_probabilities_computational(state);
  FieldElement j(state.space().modulus(), detail::sample_index(probs, rng));
  return {j, computational_vector(state.space_ptr(), j)};
}

/// Componentwise comparison, no global-phase slack.
inline bool approx_equal(const QuditState& a, const QuditState& b,
                         double eps = Tolerance{}.assert_eps) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t j = 0; j < a.dimension(); ++j) {
    if (std::abs(a[j] - b[j]) > eps) return false;
  }
  return true;
}

}  // namespace vqss::qudit
