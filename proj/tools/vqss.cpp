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

// vqss: command-line front end for the threshold qudit secret-sharing
// simulator.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vqss/harness.hpp"

namespace {

using vqss::harness::ExperimentConfig;
using vqss::harness::Format;

void add_session_options(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--d", cfg.d, "qudit dimension, an odd prime")
      ->capture_default_str();
  app->add_option("--t", cfg.t, "threshold")->capture_default_str();
  app->add_option("--n", cfg.n, "number of shareholders")->capture_default_str();
  app->add_option("--m", cfg.m, "participants on the line")->capture_default_str();
  app->add_option("--s1", cfg.s1, "secret S1 (default: drawn from the seed)");
  app->add_option("--s2", cfg.s2, "secret S2, nonzero (default: drawn from the seed)");
}

void add_output_options(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--seed", cfg.seed, "master seed (default: from entropy, echoed)");
  app->add_option("--output", cfg.output, "output path (default: stdout)");
  app->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json},
                                        {"csv", Format::csv}},
          CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifiable (t, n) threshold secret sharing over a single qudit"};
  app.require_subcommand(1);
  ExperimentConfig cfg;

  auto* deal = app.add_subcommand("deal", "deal classical shares");
  add_session_options(deal, cfg);
  add_output_options(deal, cfg);
  deal->add_flag("--unsafe-dump", cfg.unsafe_dump,
                 "also write the private value and polynomial");

  auto* run = app.add_subcommand("run", "run one session end to end");
  add_session_options(run, cfg);
  add_output_options(run, cfg);
  run->add_option("--shares", cfg.shares_path, "share file written by `deal`");
  run->add_option("--corrupt-participant", cfg.corrupt_participant,
                  "line position that uses a random component");
  run->add_flag("--include-secrets", cfg.include_secrets,
                "export secrets, shares and hop records");
  run->add_flag("--unsafe-dump", cfg.unsafe_dump, "same as --include-secrets");

  auto* attack = app.add_subcommand("attack", "Monte Carlo or exhaustive attack run");
  add_session_options(attack, cfg);
  add_output_options(attack, cfg);
  attack->add_option("--strategy", cfg.strategy,
                     "intercept-resend | fake-share | lying-measurer | "
                     "state-replacement | all")
      ->required();
  attack->add_option("--trials", cfg.trials)->capture_default_str();
  attack->add_option("--position", cfg.position,
                     "attacked channel Bob_position -> Bob_position+1")
      ->capture_default_str();
  attack->add_option("--cheater", cfg.cheater, "line position of the fake-share cheater")
      ->capture_default_str();
  attack->add_flag("--exhaustive", cfg.exhaustive,
                   "enumerate every random branch exactly (small d only)");
  attack->add_flag("--per-qudit-basis", cfg.per_qudit_basis,
                   "Eve guesses a basis per qudit");
  attack->add_flag("--inclusive", cfg.inclusive,
                   "allow c' = c_j and R' = R when sampling");
  attack->add_option("--workers", cfg.workers, "worker threads")
      ->capture_default_str();

  auto* props = app.add_subcommand("properties", "run the property suite");
  props->add_option("--dims", cfg.dims, "dimensions to check")
      ->delimiter(',')
      ->capture_default_str();
  props->add_option("--output", cfg.output, "output path (default: stdout)");
  props->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json},
                                        {"csv", Format::csv}},
          CLI::ignore_case));
  props->add_flag("--perturb", cfg.perturb,
                  "negative control: perturb one amplitude of every basis vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : vqss::harness::exit_code::validation;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return vqss::harness::run_command(cfg, std::cout, std::cerr);
}
