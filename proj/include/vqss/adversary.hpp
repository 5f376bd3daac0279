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

// Attack strategies run against the session pipeline, Monte Carlo over
// independent seeded trials, and exact enumeration of every random branch
// for small d.
//
// Counters per trial:
//   detected                 verify() rejected the recovered triple
//   undetected_wrong_secret  accepted, but recovered (S1, S2) is wrong
//   disturbed                the attack changed something the honest run
//                            depends on (wrong basis, wrong component, R' != R,
//                            replaced label)
//   attacker_learned_secret  the attacker's own estimate of S1 is correct
//
// Attacker estimates of S1:
//   intercept-resend   Eve's outcome on qudit 1
//   fake-share         the p_0^1 the cheater recovers after the exchange
//   lying-measurer     R_1 - p_m^1, what Bob_m holds before the exchange
//   state-replacement  none; the replaced qudits yield no observation

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "vqss/error.hpp"
#include "vqss/protocol.hpp"
#include "vqss/stats.hpp"

namespace vqss::adversary {

using protocol::QuditTriple;
using protocol::SessionParams;
using protocol::Triple;
using stats::Rational;

enum class Strategy {
  intercept_resend,
  fake_share,
  lying_measurer,
  state_replacement,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::intercept_resend, Strategy::fake_share,
    Strategy::lying_measurer, Strategy::state_replacement};

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::intercept_resend: return "intercept-resend";
    case Strategy::fake_share: return "fake-share";
    case Strategy::lying_measurer: return "lying-measurer";
    case Strategy::state_replacement: return "state-replacement";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

struct AttackConfig {
  SessionParams params;
  FieldElement s1;
  FieldElement s2;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  // Channel Bob_position -> Bob_{position+1}, 1 <= position < m.
  std::size_t position = 1;
  // 1-based line position of the fake-share participant.
  std::size_t cheater = 1;
  // Eve guesses a basis per qudit instead of one for all three.
  bool per_qudit_basis = false;
  // Draw c' and R' from all of GF(d) rather than excluding the honest value.
  bool inclusive = false;
  // Force the honest branch of the strategy (correct basis, c' = c_j,
  // R' = R, identical replacement).
  bool force_noop = false;
  unsigned workers = 1;

  void validate(Strategy strategy) const {
    params.validate();
    if (!(s1.modulus() == params.d) || !(s2.modulus() == params.d)) {
      throw ValidationError("secrets over a different modulus than d");
    }
    if (s2.is_zero()) throw ValidationError("S2 must be nonzero");
    if (trials < 1) throw ValidationError("trials must be at least 1");
    if (workers < 1) throw ValidationError("workers must be at least 1");
    const std::size_t m = params.m();
    if (strategy == Strategy::intercept_resend ||
        strategy == Strategy::state_replacement) {
      if (m < 2) {
        throw ValidationError(std::string(to_string(strategy)) +
                              " acts between participants and needs m >= 2");
      }
      if (position < 1 || position >= m) {
        throw ValidationError("position must lie in [1, " +
                              std::to_string(m - 1) + "]");
      }
    }
    if (strategy == Strategy::fake_share && (cheater < 1 || cheater > m)) {
      throw ValidationError("cheater must lie in [1, " + std::to_string(m) +
                            "]");
    }
  }
};

// ---------------------------------------------------------------------------
// Closed forms

/// Exact rates predicted for a strategy under the configured sampling rule.
/// Absent where no closed form is claimed.
struct ModelPrediction {
  std::optional<Rational> detection;
  std::optional<Rational> undetected_wrong_secret;
  std::optional<Rational> disturbance;
};

inline ModelPrediction model_prediction(Strategy strategy,
                                        const AttackConfig& cfg) {
  const auto d = static_cast<std::int64_t>(cfg.params.d.value());
  const Rational zero(0), one(1);
  if (cfg.force_noop) return {zero, zero, zero};
  const Rational wrong_basis(d - 1, d);
  // A uniformly random recovered triple passes the check with probability
  // d^2/d^3; all but one of the passing triples carry a wrong (S1, S2).
  const Rational random_accept_wrong(d * d - 1, d * d * d);
  switch (strategy) {
    case Strategy::intercept_resend:
      if (cfg.per_qudit_basis) {
        return {std::nullopt, std::nullopt, one - Rational(1, d * d * d)};
      }
      return {wrong_basis * wrong_basis, wrong_basis * random_accept_wrong,
              wrong_basis};
    case Strategy::fake_share:
      if (cfg.inclusive) {
        return {wrong_basis * wrong_basis, wrong_basis * random_accept_wrong,
                wrong_basis};
      }
      return {wrong_basis, random_accept_wrong, one};
    case Strategy::lying_measurer:
      if (cfg.inclusive) {
        return {wrong_basis, random_accept_wrong,
                one - Rational(1, d * d * d)};
      }
      {
        const Rational undetected(d * d - 1, d * d * d - 1);
        return {one - undetected, undetected, one};
      }
    case Strategy::state_replacement: {
      const Rational same_label(1, d * d);
      Rational all_same = same_label * same_label * same_label;
      return {wrong_basis, random_accept_wrong, one - all_same};
    }
  }
  return {};
}

/// Nominal detection rate for each attack: the verification check catches a
/// corrupted run with probability (d-1)/d.
inline double nominal_prediction(std::uint64_t d) {
  return static_cast<double>(d - 1) / static_cast<double>(d);
}

/// Reference predictions used by the acceptance gates: intercept-resend
/// composes the disturbance rate with the verification catch rate.
inline double reference_prediction(Strategy strategy, std::uint64_t d) {
  const double caught = nominal_prediction(d);
  return strategy == Strategy::intercept_resend ? caught * caught : caught;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct TrialOutcome {
  bool detected = false;
  bool wrong_accepted = false;
  bool disturbed = false;
  bool learned = false;
  std::array<std::uint64_t, 3> published{};
};

namespace detail {

class InterceptResend final : public protocol::Interceptor {
 public:
  explicit InterceptResend(const AttackConfig& cfg) : cfg_(cfg) {}

  void on_channel(std::size_t next, QuditTriple& qudits, Rng& rng) override {
    if (next != cfg_.position + 1) return;
    const PrimeModulus d = cfg_.params.d;
    const FieldElement shared_guess = rng.field(d);
    for (std::size_t v = 0; v < 3; ++v) {
      FieldElement guess = cfg_.per_qudit_basis && v > 0 ? rng.field(d)
                                                         : shared_guess;
      if (cfg_.force_noop) guess = qudits[v].label.k;
      disturbed = disturbed || !(guess == qudits[v].label.k);
      auto m = qudit::measure_in_basis(qudits[v].state, guess, rng);
      if (v == 0) estimate = m.outcome;
      qudits[v] = {std::move(m.post_state), {m.outcome, guess}};
    }
  }

  bool disturbed = false;
  std::optional<FieldElement> estimate;

 private:
  const AttackConfig& cfg_;
};

class FakeShare final : public protocol::Interceptor {
 public:
  explicit FakeShare(const AttackConfig& cfg) : cfg_(cfg) {}

  std::optional<FieldElement> substitute_component(std::size_t position,
                                                   FieldElement honest,
                                                   Rng& rng) override {
    if (position != cfg_.cheater || cfg_.force_noop) return std::nullopt;
    FieldElement fake =
        cfg_.inclusive ? rng.field(cfg_.params.d) : rng.field_except(honest);
    disturbed = !(fake == honest);
    return fake;
  }

  bool disturbed = false;

 private:
  const AttackConfig& cfg_;
};

class LyingMeasurer final : public protocol::Interceptor {
 public:
  explicit LyingMeasurer(const AttackConfig& cfg) : cfg_(cfg) {}

  Triple publish(const Triple& measured, Rng& rng) override {
    if (cfg_.force_noop) return measured;
    const PrimeModulus d = cfg_.params.d;
    Triple lie = measured;
    do {
      for (auto& r : lie) r = rng.field(d);
    } while (!cfg_.inclusive && lie == measured);
    disturbed = lie != measured;
    return lie;
  }

  bool disturbed = false;

 private:
  const AttackConfig& cfg_;
};

class StateReplacement final : public protocol::Interceptor {
 public:
  explicit StateReplacement(const AttackConfig& cfg) : cfg_(cfg) {}

  void on_channel(std::size_t next, QuditTriple& qudits, Rng& rng) override {
    if (next != cfg_.position + 1) return;
    const PrimeModulus d = cfg_.params.d;
    for (auto& q : qudits) {
      qudit::MubLabel fresh = q.label;
      if (!cfg_.force_noop) fresh = {rng.field(d), rng.field(d)};
      disturbed = disturbed || !(fresh == q.label);
      q = {qudit::mub_vector(q.state.space_ptr(), fresh), fresh};
    }
  }

  bool disturbed = false;

 private:
  const AttackConfig& cfg_;
};

inline TrialOutcome summarize(const protocol::Transcript& tr, bool disturbed,
                              std::optional<FieldElement> estimate) {
  TrialOutcome out;
  out.detected = tr.verdict == protocol::Verdict::rejected;
  out.wrong_accepted = !out.detected && !protocol::recovered_correctly(tr);
  out.disturbed = disturbed;
  out.learned = estimate && *estimate == tr.secrets->s1;
  for (std::size_t v = 0; v < 3; ++v) out.published[v] = (*tr.published)[v].value();
  return out;
}

}  // namespace detail

/// One trial with its own rng stream derived from (seed, index).
inline TrialOutcome run_trial(Strategy strategy, const AttackConfig& cfg,
                              std::uint64_t index,
                              const qudit::SpacePtr& space) {
  Rng rng = Rng::stream(cfg.seed, index);
  const auto deal = protocol::deal_classical(cfg.params, rng);
  auto run = [&](protocol::Interceptor& attack) {
    return protocol::run_session(cfg.params, deal, cfg.s1, cfg.s2, rng,
                                 &attack, space);
  };
  switch (strategy) {
    case Strategy::intercept_resend: {
      detail::InterceptResend attack(cfg);
      auto tr = run(attack);
      return detail::summarize(tr, attack.disturbed, attack.estimate);
    }
    case Strategy::fake_share: {
      detail::FakeShare attack(cfg);
      auto tr = run(attack);
      return detail::summarize(tr, attack.disturbed, (*tr.recovered)[0]);
    }
    case Strategy::lying_measurer: {
      detail::LyingMeasurer attack(cfg);
      auto tr = run(attack);
      return detail::summarize(tr, attack.disturbed,
                               (*tr.measured)[0] - tr.hops.back().p[0]);
    }
    case Strategy::state_replacement: {
      detail::StateReplacement attack(cfg);
      auto tr = run(attack);
      return detail::summarize(tr, attack.disturbed, std::nullopt);
    }
  }
  throw ValidationError("unknown strategy");
}

struct AttackReport {
  Strategy strategy = Strategy::intercept_resend;
  std::uint64_t d = 0;
  std::size_t t = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t detected = 0;
  std::uint64_t undetected_wrong_secret = 0;
  std::uint64_t attacker_learned_secret = 0;
  std::uint64_t disturbed = 0;
  std::uint64_t seed = 0;
  // Counts of published R_v over GF(d), all three qudits pooled.
  std::vector<std::uint64_t> published_histogram;
  ModelPrediction model;

  double rate(std::uint64_t count) const {
    return static_cast<double>(count) / static_cast<double>(trials);
  }
  double detection_rate() const { return rate(detected); }
  double undetected_rate() const { return rate(undetected_wrong_secret); }
  double learned_rate() const { return rate(attacker_learned_secret); }
  double disturbance_rate() const { return rate(disturbed); }
  stats::Interval ci95() const {
    return stats::wilson_interval(detected, trials);
  }
  double prediction() const { return reference_prediction(strategy, d); }
};

inline AttackReport run_attack(Strategy strategy, const AttackConfig& cfg) {
  cfg.validate(strategy);
  const auto space = qudit::QuditSpace::make(cfg.params.d);
  std::vector<TrialOutcome> outcomes(cfg.trials);
  auto work = [&](unsigned worker) {
    for (std::uint64_t i = worker; i < cfg.trials; i += cfg.workers) {
      outcomes[i] = run_trial(strategy, cfg, i, space);
    }
  };
  if (cfg.workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < cfg.workers; ++w) pool.emplace_back(work, w);
  }

  AttackReport report;
  report.strategy = strategy;
  report.d = cfg.params.d.value();
  report.t = cfg.params.t;
  report.n = cfg.params.n;
  report.m = cfg.params.m();
  report.trials = cfg.trials;
  report.seed = cfg.seed;
  report.published_histogram.assign(report.d, 0);
  report.model = model_prediction(strategy, cfg);
  for (const auto& o : outcomes) {
    report.detected += o.detected;
    report.undetected_wrong_secret += o.wrong_accepted;
    report.attacker_learned_secret += o.learned;
    report.disturbed += o.disturbed;
    for (auto r : o.published) ++report.published_histogram[r];
  }
  return report;
}

inline AttackReport run_intercept_resend(const AttackConfig& cfg) {
  return run_attack(Strategy::intercept_resend, cfg);
}
inline AttackReport run_fake_share(const AttackConfig& cfg) {
  return run_attack(Strategy::fake_share, cfg);
}
inline AttackReport run_lying_measurer(const AttackConfig& cfg) {
  return run_attack(Strategy::lying_measurer, cfg);
}
inline AttackReport run_state_replacement(const AttackConfig& cfg) {
  return run_attack(Strategy::state_replacement, cfg);
}

struct SummaryRow {
  std::string strategy;
  std::uint64_t d;
  std::uint64_t trials;
  double detection_rate;
  double ci_low;
  double ci_high;
  double prediction;
  double nominal_prediction;
};

inline std::vector<SummaryRow> detection_summary(
    std::span<const AttackReport> reports) {
  if (reports.empty()) throw ValidationError("no reports to summarize");
  std::vector<SummaryRow> rows;
  for (const auto& r : reports) {
    auto ci = r.ci95();
    rows.push_back({std::string(to_string(r.strategy)), r.d, r.trials,
                    r.detection_rate(), ci.low, ci.high, r.prediction(),
                    nominal_prediction(r.d)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

/// Number of announced triples R' that pass verification when the
/// participants' mask sums are `masks`: (R1'-N1) = (R2'-N2)(R3'-N3).
inline std::uint64_t count_verifying_triples(PrimeModulus d,
                                             const Triple& masks) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < d.value(); ++a) {
    for (std::uint64_t b = 0; b < d.value(); ++b) {
      for (std::uint64_t c = 0; c < d.value(); ++c) {
        Triple r{FieldElement(d, a), FieldElement(d, b), FieldElement(d, c)};
        if (protocol::verify({r[0] - masks[0], r[1] - masks[1],
                              r[2] - masks[2]}) ==
            protocol::Verdict::accepted) {
          ++count;
        }
      }
    }
  }
  return count;
}

struct ExactReport {
  Strategy strategy = Strategy::intercept_resend;
  std::uint64_t d = 0;
  std::size_t t = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t leaves = 0;
  Rational detection;
  Rational undetected_wrong_secret;
  Rational disturbance;
  Rational attacker_learned_secret;
  ModelPrediction model;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultLeafCap = 100'000'000;

namespace detail {

// Leaf weights are integers proportional to probability. Every choice level
// has a constant fan-out, so each choice gets weight 1; a measurement puts
// weight d on a certain outcome and 1 on each of d equally likely ones.
// Rates are the tallies divided by the total weight.
struct Tally {
  std::uint64_t total = 0;
  std::uint64_t detected = 0;
  std::uint64_t wrong = 0;
  std::uint64_t disturbed = 0;
  std::uint64_t learned = 0;
  std::uint64_t leaves = 0;
};

struct Branch {
  std::uint64_t value;
  std::uint64_t weight;
};

/// Outcome distribution of measuring |phi_l^k> in basis `basis`.
inline std::vector<Branch> measurement_branches(const qudit::MubLabel& label,
                                                FieldElement basis) {
  if (label.k == basis) return {{label.l.value(), label.l.modulus().value()}};
  std::vector<Branch> out;
  for (std::uint64_t l = 0; l < basis.modulus().value(); ++l) out.push_back({l, 1});
  return out;
}

template <class F>
void for_each_triple(const std::array<std::vector<Branch>, 3>& dists, F&& f) {
  for (const auto& a : dists[0]) {
    for (const auto& b : dists[1]) {
      for (const auto& c : dists[2]) {
        f(std::array<std::uint64_t, 3>{a.value, b.value, c.value},
          a.weight * b.weight * c.weight);
      }
    }
  }
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > (std::numeric_limits<std::int64_t>::max)() / b) {
    throw ValidationError("exhaustive enumeration size overflows");
  }
  return a * b;
}

}  // namespace detail

/// Walks every random branch of the attacked session: all masks p_j^v, every
/// attacker choice and every measurement outcome, using exact MUB overlaps
/// (certain outcome in the same basis, uniform in any other). Randomness of
/// the classical deal is fixed from `cfg.seed`.
inline ExactReport enumerate_attack(Strategy strategy, const AttackConfig& cfg,
                                    std::uint64_t leaf_cap = kDefaultLeafCap) {
  cfg.validate(strategy);
  const PrimeModulus d = cfg.params.d;
  const std::uint64_t dv = d.value();
  const std::size_t m = cfg.params.m();

  Rng rng(cfg.seed);
  const auto deal = protocol::deal_classical(cfg.params, rng);
  const auto secrets =
      protocol::DealerSecrets::make(cfg.s1, cfg.s2, deal.private_value);
  const Triple p0 = secrets.p0();
  std::vector<FieldElement> c;
  for (const auto& x : cfg.params.active) {
    c.push_back(sss::component(deal.share_of(x), cfg.params.active).value);
  }

  std::uint64_t masks = 1;
  for (std::size_t i = 0; i < 3 * m; ++i) masks = detail::checked_mul(masks, dv);
  const std::uint64_t cube = dv * dv * dv;
  std::uint64_t choices = 1;
  if (!cfg.force_noop) {
    switch (strategy) {
      case Strategy::intercept_resend:
        choices = cfg.per_qudit_basis ? cube : dv;
        break;
      case Strategy::fake_share:
        choices = cfg.inclusive ? dv : dv - 1;
        break;
      case Strategy::lying_measurer:
        choices = cfg.inclusive ? cube : cube - 1;
        break;
      case Strategy::state_replacement:
        choices = detail::checked_mul(cube, cube);
        break;
    }
  }
  std::uint64_t estimate = detail::checked_mul(masks, choices);
  estimate = detail::checked_mul(estimate, cube);
  if (strategy == Strategy::intercept_resend) {
    estimate = detail::checked_mul(estimate, cube);
  }
  if (estimate > leaf_cap) {
    throw ValidationError("exhaustive enumeration needs about " +
                          std::to_string(estimate) + " leaves, cap is " +
                          std::to_string(leaf_cap));
  }

  detail::Tally tally;
  const FieldElement zero = FieldElement::zero(d);
  auto record = [&](const Triple& recovered, std::uint64_t weight,
                    bool disturbed, std::optional<FieldElement> estimate) {
    ++tally.leaves;
    if (tally.leaves > leaf_cap) {
      throw ValidationError("exhaustive enumeration exceeds leaf cap");
    }
    tally.total += weight;
    const bool accepted =
        protocol::verify(recovered) == protocol::Verdict::accepted;
    if (!accepted) tally.detected += weight;
    if (accepted && !(recovered[0] == cfg.s1 && recovered[1] == cfg.s2)) {
      tally.wrong += weight;
    }
    if (disturbed) tally.disturbed += weight;
    if (estimate && *estimate == cfg.s1) tally.learned += weight;
  };

  // Final measurement in basis 0 of the given labels, then recovery.
  auto finish = [&](const std::array<qudit::MubLabel, 3>& labels,
                    const Triple& mask_sum, std::uint64_t weight, bool disturbed,
                    auto&& estimate_of) {
    std::array<std::vector<detail::Branch>, 3> dists;
    for (std::size_t v = 0; v < 3; ++v) {
      dists[v] = detail::measurement_branches(labels[v], zero);
    }
    detail::for_each_triple(dists, [&](const auto& r, std::uint64_t w) {
      Triple published{FieldElement(d, r[0]), FieldElement(d, r[1]),
                       FieldElement(d, r[2])};
      Triple recovered{published[0] - mask_sum[0], published[1] - mask_sum[1],
                       published[2] - mask_sum[2]};
      record(recovered, weight * w, disturbed, estimate_of(published, recovered));
    });
  };

  std::vector<Triple> p(m, Triple{zero, zero, zero});
  for (std::uint64_t mask_index = 0; mask_index < masks; ++mask_index) {
    std::uint64_t rest = mask_index;
    for (auto& hop : p) {
      for (auto& value : hop) {
        value = FieldElement(d, rest % dv);
        rest /= dv;
      }
    }
    // Labels after the first `upto` hops, honest so far.
    auto honest_labels = [&](std::size_t upto) {
      const FieldElement q0 = secrets.q0();
      std::array<qudit::MubLabel, 3> labels{qudit::MubLabel{p0[0], q0},
                                            qudit::MubLabel{p0[1], q0},
                                            qudit::MubLabel{p0[2], q0}};
      for (std::size_t v = 0; v < 3; ++v) {
        for (std::size_t j = 0; j < upto; ++j) {
          labels[v] = qudit::label_apply(labels[v], p[j][v], c[j]);
        }
      }
      return labels;
    };
    auto advance = [&](std::array<qudit::MubLabel, 3> labels,
                       std::size_t from) {
      for (std::size_t v = 0; v < 3; ++v) {
        for (std::size_t j = from; j < m; ++j) {
          labels[v] = qudit::label_apply(labels[v], p[j][v], c[j]);
        }
      }
      return labels;
    };
    Triple mask_sum{zero, zero, zero};
    for (const auto& hop : p) {
      for (std::size_t v = 0; v < 3; ++v) mask_sum[v] += hop[v];
    }

    switch (strategy) {
      case Strategy::intercept_resend: {
        const auto before = honest_labels(cfg.position);
        for (std::uint64_t g = 0; g < choices; ++g) {
          std::array<FieldElement, 3> guess{zero, zero, zero};
          for (std::size_t v = 0; v < 3; ++v) {
            if (cfg.force_noop) {
              guess[v] = before[v].k;
            } else if (cfg.per_qudit_basis) {
              const std::uint64_t stride = v == 0 ? 1 : v == 1 ? dv : dv * dv;
              guess[v] = FieldElement(d, g / stride % dv);
            } else {
              guess[v] = FieldElement(d, g);
            }
          }
          bool disturbed = false;
          std::array<std::vector<detail::Branch>, 3> eve;
          for (std::size_t v = 0; v < 3; ++v) {
            disturbed = disturbed || !(guess[v] == before[v].k);
            eve[v] = detail::measurement_branches(before[v], guess[v]);
          }
          detail::for_each_triple(eve, [&](const auto& o, std::uint64_t w) {
            const std::array<qudit::MubLabel, 3> collapsed{
                qudit::MubLabel{FieldElement(d, o[0]), guess[0]},
                qudit::MubLabel{FieldElement(d, o[1]), guess[1]},
                qudit::MubLabel{FieldElement(d, o[2]), guess[2]}};
            const FieldElement eve_estimate(d, o[0]);
            finish(advance(collapsed, cfg.position), mask_sum, w,
                   disturbed,
                   [&](const Triple&, const Triple&) {
                     return std::optional<FieldElement>(eve_estimate);
                   });
          });
        }
        break;
      }
      case Strategy::fake_share: {
        const FieldElement honest = c[cfg.cheater - 1];
        std::vector<FieldElement> fakes;
        if (cfg.force_noop) {
          fakes.push_back(honest);
        } else {
          for (std::uint64_t x = 0; x < dv; ++x) {
            if (cfg.inclusive || x != honest.value()) fakes.emplace_back(d, x);
          }
        }
        for (const auto& fake : fakes) {
          auto labels = honest_labels(m);
          for (auto& label : labels) label.k += fake - honest;
          finish(labels, mask_sum, 1, !(fake == honest),
                 [](const Triple&, const Triple& recovered) {
                   return std::optional<FieldElement>(recovered[0]);
                 });
        }
        break;
      }
      case Strategy::lying_measurer: {
        const auto labels = honest_labels(m);
        // The honest measurement is certain, but it is walked like any other
        // so that a broken label track would show up here.
        std::array<std::vector<detail::Branch>, 3> dists;
        for (std::size_t v = 0; v < 3; ++v) {
          dists[v] = detail::measurement_branches(labels[v], zero);
        }
        detail::for_each_triple(dists, [&](const auto& r, std::uint64_t w) {
          Triple measured{FieldElement(d, r[0]), FieldElement(d, r[1]),
                          FieldElement(d, r[2])};
          const FieldElement estimate = measured[0] - p[m - 1][0];
          for (std::uint64_t idx = 0; idx < cube; ++idx) {
            Triple lie{FieldElement(d, idx % dv), FieldElement(d, idx / dv % dv),
                       FieldElement(d, idx / (dv * dv))};
            if (cfg.force_noop ? lie != measured
                               : (!cfg.inclusive && lie == measured)) {
              continue;
            }
            Triple recovered{lie[0] - mask_sum[0], lie[1] - mask_sum[1],
                             lie[2] - mask_sum[2]};
            record(recovered, w, lie != measured, estimate);
          }
        });
        break;
      }
      case Strategy::state_replacement: {
        const auto before = honest_labels(cfg.position);
        for (std::uint64_t idx = 0; idx < choices; ++idx) {
          std::array<qudit::MubLabel, 3> fresh = before;
          if (!cfg.force_noop) {
            std::uint64_t rest2 = idx;
            for (auto& label : fresh) {
              label.l = FieldElement(d, rest2 % dv);
              rest2 /= dv;
              label.k = FieldElement(d, rest2 % dv);
              rest2 /= dv;
            }
          }
          const bool disturbed = fresh != before;
          finish(advance(fresh, cfg.position), mask_sum, 1, disturbed,
                 [](const Triple&, const Triple&) {
                   return std::optional<FieldElement>();
                 });
        }
        break;
      }
    }
  }

  if (tally.total == 0) throw ValidationError("enumeration produced no leaves");
  auto ratio = [&](std::uint64_t x) {
    return Rational(static_cast<std::int64_t>(x),
                    static_cast<std::int64_t>(tally.total));
  };
  ExactReport out;
  out.strategy = strategy;
  out.d = dv;
  out.t = cfg.params.t;
  out.n = cfg.params.n;
  out.m = m;
  out.leaves = tally.leaves;
  out.detection = ratio(tally.detected);
  out.undetected_wrong_secret = ratio(tally.wrong);
  out.disturbance = ratio(tally.disturbed);
  out.attacker_learned_secret = ratio(tally.learned);
  out.model = model_prediction(strategy, cfg);
  out.seed = cfg.seed;
  return out;
}

}  // namespace vqss::adversary
