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

// Self-check suite over the qudit and sharing layers, run by
// `vqss properties`.

#pragma once

#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "vqss/gf.hpp"
#include "vqss/qudit.hpp"
#include "vqss/sss.hpp"

namespace vqss::properties {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteOptions {
  std::vector<std::uint64_t> dimensions{3, 5, 7, 11};
  double tolerance = qudit::Tolerance{}.assert_eps;
  // Census runs over d^t polynomials; these stay exhaustive but small.
  std::vector<std::pair<std::uint64_t, std::size_t>> census{{3, 2}, {3, 3},
                                                           {5, 2}, {5, 3}};
  // Negative control: rotate the phase of one amplitude of every MUB vector
  // before the checks. The suite must then fail.
  bool perturb_amplitude = false;
};

namespace detail {

inline qudit::QuditState basis_vector(const qudit::SpacePtr& space,
                                      qudit::MubLabel label, bool perturb) {
  auto state = qudit::mub_vector(space, label);
  if (!perturb) return state;
  std::vector<qudit::Complex> amps(state.amplitudes().begin(),
                                   state.amplitudes().end());
  amps.back() *= std::polar(1.0, 0.05);  // norm preserved, overlaps are not
  return qudit::QuditState(space, std::move(amps));
}

}  // namespace detail

/// <phi_l^k|phi_l'^k> = delta_ll' and |<phi_l^k|phi_l'^k'>|^2 = 1/d for
/// k != k', over every pair of vectors; also the computational basis
/// against every MUB.
inline CheckResult check_mub(std::uint64_t d_value, const SuiteOptions& opt) {
  PrimeModulus d(d_value);
  auto space = qudit::QuditSpace::make(d);
  std::vector<qudit::QuditState> vectors;
  std::vector<qudit::MubLabel> labels;
  for (std::uint64_t k = 0; k < d_value; ++k) {
    for (std::uint64_t l = 0; l < d_value; ++l) {
      qudit::MubLabel lab{FieldElement(d, l), FieldElement(d, k)};
      labels.push_back(lab);
      vectors.push_back(detail::basis_vector(space, lab, opt.perturb_amplitude));
    }
  }
  const double unbiased = 1.0 / static_cast<double>(d_value);
  double worst = 0;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      const double overlap =
          std::norm(qudit::inner_product(vectors[a], vectors[b]));
      double expected;
      if (labels[a].k == labels[b].k) {
        expected = labels[a].l == labels[b].l ? 1.0 : 0.0;
      } else {
        expected = unbiased;
      }
      worst = std::max(worst, std::abs(overlap - expected));
    }
    for (std::uint64_t j = 0; j < d_value; ++j) {
      auto e = qudit::computational_vector(space, FieldElement(d, j));
      worst = std::max(
          worst,
          std::abs(std::norm(qudit::inner_product(e, vectors[a])) - unbiased));
    }
  }
  std::ostringstream detail;
  detail << "max deviation " << worst;
  return {"mub d=" + std::to_string(d_value), worst <= opt.tolerance,
          detail.str()};
}

/// U(p1,q1) U(p2,q2) = U(p1+p2, q1+q2) in either order, and U preserves norm.
inline CheckResult check_composition(std::uint64_t d_value,
                                     const SuiteOptions& opt) {
  PrimeModulus d(d_value);
  auto space = qudit::QuditSpace::make(d);
  double worst = 0;
  double drift = 0;
  // Sampled exponent grid keeps large d fast; every residue appears.
  for (std::uint64_t l = 0; l < d_value; ++l) {
    qudit::MubLabel lab{FieldElement(d, l), FieldElement(d, (l * 3) % d_value)};
    auto psi = detail::basis_vector(space, lab, opt.perturb_amplitude);
    for (std::uint64_t e = 0; e < d_value; ++e) {
      FieldElement p1(d, e), q1(d, (e * 2 + 1) % d_value);
      FieldElement p2(d, (e * 5 + l) % d_value), q2(d, (e + l) % d_value);
      auto a = qudit::apply_unitary(qudit::apply_unitary(psi, p1, q1), p2, q2);
      auto b = qudit::apply_unitary(qudit::apply_unitary(psi, p2, q2), p1, q1);
      auto c = qudit::apply_unitary(psi, p1 + p2, q1 + q2);
      for (std::size_t j = 0; j < d_value; ++j) {
        worst = std::max({worst, std::abs(a[j] - c[j]), std::abs(b[j] - c[j])});
      }
      drift = std::max(drift, std::abs(c.norm_squared() - psi.norm_squared()));
    }
  }
  std::ostringstream detail;
  detail << "max deviation " << worst << ", norm drift " << drift;
  return {"composition d=" + std::to_string(d_value),
          worst <= opt.tolerance && drift <= 1e-12, detail.str()};
}

/// apply_unitary on |phi_lab> equals |phi_{label_apply(lab)}> componentwise
/// for every label and exponent pair.
inline CheckResult check_cyclic(std::uint64_t d_value, const SuiteOptions& opt) {
  PrimeModulus d(d_value);
  auto space = qudit::QuditSpace::make(d);
  double worst = 0;
  std::uint64_t cases = 0;
  for (std::uint64_t l = 0; l < d_value; ++l) {
    for (std::uint64_t k = 0; k < d_value; ++k) {
      qudit::MubLabel lab{FieldElement(d, l), FieldElement(d, k)};
      auto psi = detail::basis_vector(space, lab, opt.perturb_amplitude);
      for (std::uint64_t p = 0; p < d_value; ++p) {
        for (std::uint64_t q = 0; q < d_value; ++q) {
          FieldElement fp(d, p), fq(d, q);
          auto numeric = qudit::apply_unitary(psi, fp, fq);
          auto symbolic = qudit::mub_vector(space, qudit::label_apply(lab, fp, fq));
          for (std::size_t j = 0; j < d_value; ++j) {
            worst = std::max(worst, std::abs(numeric[j] - symbolic[j]));
          }
          ++cases;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << cases << " cases, max deviation " << worst;
  return {"cyclic d=" + std::to_string(d_value), worst <= opt.tolerance,
          detail.str()};
}

/// For every choice of t-1 distinct nonzero identities and every value
/// assignment, the census over a_0 is flat.
inline CheckResult check_census(std::uint64_t d_value, std::size_t t) {
  PrimeModulus d(d_value);
  const std::size_t fixed = t - 1;
  std::uint64_t configurations = 0;
  bool flat = true;
  // identities 1..t-1; values enumerated exhaustively
  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < fixed; ++i) assignments *= d_value;
  for (std::uint64_t a = 0; a < assignments && flat; ++a) {
    std::vector<sss::Share> shares;
    std::uint64_t rest = a;
    for (std::size_t i = 0; i < fixed; ++i) {
      shares.push_back({FieldElement::reduce(d, i + 1),
                        FieldElement(d, rest % d_value)});
      rest /= d_value;
    }
    auto hist = sss::secrecy_census(d, t, shares);
    for (auto c : hist) flat = flat && c == hist.front();
    ++configurations;
  }
  return {"census d=" + std::to_string(d_value) + " t=" + std::to_string(t),
          flat, std::to_string(configurations) + " share assignments"};
}

inline std::vector<CheckResult> run_suite(const SuiteOptions& opt) {
  std::vector<CheckResult> results;
  for (auto d : opt.dimensions) {
    results.push_back(check_mub(d, opt));
    results.push_back(check_composition(d, opt));
    results.push_back(check_cyclic(d, opt));
  }
  for (auto [d, t] : opt.census) results.push_back(check_census(d, t));
  return results;
}

}  // namespace vqss::properties
