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

// Command implementations behind the `vqss` executable. Each command
// validates its configuration up front, writes its document to the
// configured output, and returns a process exit code.

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vqss/adversary.hpp"
#include "vqss/io.hpp"
#include "vqss/properties.hpp"
#include "vqss/protocol.hpp"
#include "vqss/sss.hpp"

namespace vqss::harness {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 2;
inline constexpr int rejected = 3;
inline constexpr int io = 4;
inline constexpr int property_failure = 5;
}  // namespace exit_code

enum class Format { json, csv };

struct ExperimentConfig {
  std::string command;
  std::uint64_t d = 7;
  std::size_t t = 2;
  std::size_t n = 4;
  std::size_t m = 3;
  std::optional<std::uint64_t> s1;
  std::optional<std::uint64_t> s2;
  std::uint64_t trials = 10'000;
  std::optional<std::uint64_t> seed;
  Format format = Format::json;
  std::string output;  // empty: stdout
  std::string strategy;
  std::size_t position = 1;
  std::size_t cheater = 1;
  bool exhaustive = false;
  bool unsafe_dump = false;
  bool include_secrets = false;
  bool per_qudit_basis = false;
  bool inclusive = false;
  bool perturb = false;
  std::string shares_path;
  std::optional<std::size_t> corrupt_participant;
  std::vector<std::uint64_t> dims{3, 5, 7, 11};
  unsigned workers = 1;
};

inline std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

namespace detail {

// Stream index reserved for drawing default secrets; trial streams count
// up from zero.
inline constexpr std::uint64_t kSecretStream = ~std::uint64_t{0};

struct Resolved {
  std::uint64_t seed;
  protocol::SessionParams params;
  FieldElement s1;
  FieldElement s2;
};

/// Fills defaults and checks every precondition of the session modules.
/// Secrets not given on the command line are drawn from the seed.
inline Resolved resolve_session(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.seed.value_or(entropy_seed());
  PrimeModulus d(cfg.d);
  auto params = protocol::SessionParams::standard(cfg.d, cfg.t, cfg.n, cfg.m);
  params.validate();
  Rng secret_rng = Rng::stream(seed, kSecretStream);
  FieldElement s1 = cfg.s1 ? FieldElement(d, *cfg.s1) : secret_rng.field(d);
  FieldElement s2 = cfg.s2 ? FieldElement(d, *cfg.s2) : secret_rng.nonzero(d);
  if (s2.is_zero()) throw ValidationError("S2 must be nonzero");
  return {seed, std::move(params), s1, s2};
}

inline std::string render(const io::Json& doc, Format format) {
  return format == Format::csv ? io::to_csv(doc) : io::dump(doc);
}

inline void write_output(const ExperimentConfig& cfg, const std::string& text,
                         std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + cfg.output + "' for writing");
  file << text;
  if (!file.flush()) throw IoError("failed writing '" + cfg.output + "'");
}

/// Human-readable lines go to stdout when the document goes to a file,
/// otherwise to stderr so stdout stays machine-readable.
inline std::ostream& log_stream(const ExperimentConfig& cfg, std::ostream& out,
                                std::ostream& err) {
  return cfg.output.empty() ? err : out;
}

class CorruptComponent final : public protocol::Interceptor {
 public:
  explicit CorruptComponent(std::size_t position) : position_(position) {}

  std::optional<FieldElement> substitute_component(std::size_t position,
                                                   FieldElement honest,
                                                   Rng& rng) override {
    if (position != position_) return std::nullopt;
    return rng.field_except(honest);
  }

 private:
  std::size_t position_;
};

inline adversary::AttackConfig attack_config(const ExperimentConfig& cfg,
                                             const Resolved& r) {
  adversary::AttackConfig a{r.params, r.s1, r.s2};
  a.trials = cfg.trials;
  a.seed = r.seed;
  a.position = cfg.position;
  a.cheater = cfg.cheater;
  a.per_qudit_basis = cfg.per_qudit_basis;
  a.inclusive = cfg.inclusive;
  a.workers = cfg.workers;
  return a;
}

}  // namespace detail

inline int cmd_deal(const ExperimentConfig& cfg, std::ostream& out,
                    std::ostream& err) {
  const std::uint64_t seed = cfg.seed.value_or(entropy_seed());
  PrimeModulus d(cfg.d);
  if (cfg.t < 1 || cfg.t > cfg.n) {
    throw ValidationError("need 1 <= t <= n, got t=" + std::to_string(cfg.t) +
                          " n=" + std::to_string(cfg.n));
  }
  if (cfg.n >= cfg.d) {
    throw ValidationError("need n < d, got n=" + std::to_string(cfg.n));
  }
  std::vector<FieldElement> xs;
  for (std::size_t i = 1; i <= cfg.n; ++i) xs.push_back(FieldElement::reduce(d, i));
  Rng rng(seed);
  const auto f = sss::Polynomial::random(rng.field(d), cfg.t, rng);
  const auto shares = sss::evaluate_shares(f, xs);
  io::Json doc = io::shares_to_json(d, cfg.t, shares);
  doc["seed"] = seed;
  if (cfg.unsafe_dump) {
    doc["private_value"] = f.secret().value();
    io::Json coeffs = io::Json::array();
    for (const auto& c : f.coefficients()) coeffs.push_back(c.value());
    doc["coefficients"] = std::move(coeffs);
  }
  detail::write_output(cfg, detail::render(doc, cfg.format), out);
  detail::log_stream(cfg, out, err)
      << "dealt " << cfg.n << " shares (t=" << cfg.t << ", d=" << cfg.d
      << ", seed=" << seed << ")\n";
  return exit_code::ok;
}

inline io::ShareFile read_share_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open share file '" + path + "'");
  io::Json doc;
  try {
    doc = io::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("share file '" + path + "' is not JSON: " + e.what());
  }
  return io::shares_from_json(doc);
}

inline int cmd_run(const ExperimentConfig& cfg, std::ostream& out,
                   std::ostream& err) {
  ExperimentConfig effective = cfg;
  std::optional<io::ShareFile> file;
  if (!cfg.shares_path.empty()) {
    file = read_share_file(cfg.shares_path);
    effective.d = file->d;
    effective.t = file->t;
    effective.n = file->shares.size();
  }
  const auto r = detail::resolve_session(effective);
  if (cfg.corrupt_participant &&
      (*cfg.corrupt_participant < 1 || *cfg.corrupt_participant > r.params.m())) {
    throw ValidationError("--corrupt-participant must lie in [1, " +
                          std::to_string(r.params.m()) + "]");
  }

  Rng rng(r.seed);
  protocol::ClassicalDeal deal{FieldElement::zero(r.params.d), {}};
  if (file) {
    deal.shares = file->shares;
    for (const auto& x : r.params.active) (void)deal.share_of(x);
    // The simulator plays the dealer, who knows the value behind the shares.
    deal.private_value = sss::interpolate_secret(
        std::span(deal.shares).first(effective.t));
  } else {
    deal = protocol::deal_classical(r.params, rng);
  }

  std::optional<detail::CorruptComponent> corrupt;
  if (cfg.corrupt_participant) corrupt.emplace(*cfg.corrupt_participant);
  const auto tr = protocol::run_session(
      r.params, deal, r.s1, r.s2, rng,
      corrupt ? &*corrupt : static_cast<protocol::Interceptor*>(nullptr));

  io::Json doc = io::transcript_to_json(
      tr, {.include_secrets = cfg.include_secrets || cfg.unsafe_dump});
  doc["seed"] = r.seed;
  detail::write_output(cfg, detail::render(doc, cfg.format), out);

  const auto& rec = *tr.recovered;
  const bool correct = protocol::recovered_correctly(tr);
  detail::log_stream(cfg, out, err)
      << "verdict: " << protocol::to_string(*tr.verdict) << "  recovered S1="
      << rec[0] << " S2=" << rec[1] << " N=" << rec[2] << "  seed=" << r.seed
      << "\n";
  return correct ? exit_code::ok : exit_code::rejected;
}

inline int cmd_attack(const ExperimentConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  std::vector<adversary::Strategy> strategies;
  if (cfg.strategy == "all") {
    strategies.assign(std::begin(adversary::kAllStrategies),
                      std::end(adversary::kAllStrategies));
  } else if (auto s = adversary::parse_strategy(cfg.strategy)) {
    strategies.push_back(*s);
  } else {
    throw ValidationError("unknown strategy '" + cfg.strategy +
                          "' (intercept-resend, fake-share, lying-measurer, "
                          "state-replacement, all)");
  }
  if (cfg.trials < 1) throw ValidationError("trials must be at least 1");
  const auto r = detail::resolve_session(cfg);
  const auto attack = detail::attack_config(cfg, r);
  for (auto s : strategies) attack.validate(s);

  auto& log = detail::log_stream(cfg, out, err);
  if (cfg.exhaustive) {
    io::Json docs = io::Json::array();
    for (auto s : strategies) {
      const auto exact = adversary::enumerate_attack(s, attack);
      log << adversary::to_string(s) << ": detection "
          << exact.detection << " over " << exact.leaves << " leaves\n";
      docs.push_back(io::exact_report_to_json(exact));
    }
    detail::write_output(
        cfg, detail::render(docs.size() == 1 ? docs[0] : docs, cfg.format), out);
    return exit_code::ok;
  }

  std::vector<adversary::AttackReport> reports;
  for (auto s : strategies) {
    reports.push_back(adversary::run_attack(s, attack));
    const auto& rep = reports.back();
    log << adversary::to_string(s) << ": detection " << rep.detection_rate()
        << " (prediction " << rep.prediction() << ", " << rep.trials
        << " trials, seed " << rep.seed << ")\n";
  }
  if (reports.size() == 1) {
    detail::write_output(
        cfg, detail::render(io::report_to_json(reports[0]), cfg.format), out);
    return exit_code::ok;
  }
  const auto rows = adversary::detection_summary(reports);
  if (cfg.format == Format::csv) {
    detail::write_output(cfg, io::to_csv(io::summary_to_json(rows)), out);
  } else {
    io::Json doc;
    io::Json list = io::Json::array();
    for (const auto& rep : reports) list.push_back(io::report_to_json(rep));
    doc["reports"] = std::move(list);
    doc["summary"] = io::summary_to_json(rows);
    detail::write_output(cfg, io::dump(doc), out);
  }
  return exit_code::ok;
}

inline int cmd_properties(const ExperimentConfig& cfg, std::ostream& out,
                          std::ostream& err) {
  properties::SuiteOptions options;
  options.dimensions = cfg.dims;
  options.perturb_amplitude = cfg.perturb;
  for (auto d : cfg.dims) (void)PrimeModulus(d);
  const auto results = properties::run_suite(options);
  bool all = true;
  io::Json checks = io::Json::array();
  auto& log = detail::log_stream(cfg, out, err);
  for (const auto& r : results) {
    all = all && r.passed;
    log << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
    checks.push_back(
        io::Json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (cfg.format == Format::csv) {
    detail::write_output(cfg, io::to_csv(checks), out);
  } else {
    io::Json doc;
    doc["passed"] = all;
    doc["checks"] = std::move(checks);
    detail::write_output(cfg, io::dump(doc), out);
  }
  return all ? exit_code::ok : exit_code::property_failure;
}

/// Dispatches `cfg.command`, mapping library errors to exit codes.
inline int run_command(const ExperimentConfig& cfg, std::ostream& out,
                       std::ostream& err) {
  try {
    if (cfg.command == "deal") return cmd_deal(cfg, out, err);
    if (cfg.command == "run") return cmd_run(cfg, out, err);
    if (cfg.command == "attack") return cmd_attack(cfg, out, err);
    if (cfg.command == "properties") return cmd_properties(cfg, out, err);
    throw ValidationError("unknown command '" + cfg.command + "'");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const ArithmeticError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const ProtocolError& e) {
    err << "rejected: " << e.what() << "\n";
    return exit_code::rejected;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_code::io;
  }
}

}  // namespace vqss::harness
