// Copyright 2026 The qdesign Authors
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

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdesign/experiment.hpp"
#include "qdesign/kernels.hpp"

namespace {

using Runner = std::function<qdesign::csv::Table(const qdesign::ExperimentPlan&, const qdesign::RunOptions&)>;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
};

void add_common(CLI::App* sub, Flags& f, bool with_output) {
  sub->add_option("--config", f.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "master seed, overrides the config");
  if (with_output) {
    sub->add_option("--threads", f.threads, "worker threads (default: config, else 1)")->check(CLI::PositiveNumber);
    sub->add_option("--out", f.out, "CSV output path (default: config 'output', else stdout)");
  }
}

int run(const Flags& f, const Runner& runner) {
  const qdesign::ExperimentPlan plan = qdesign::load_plan(f.config, f.seed);
  qdesign::RunOptions opts;
  opts.threads = f.threads.value_or(plan.threads.value_or(1));
  const qdesign::csv::Table table = runner(plan, opts);
  const std::optional<std::string> path = f.out ? f.out : plan.output;
  if (path && *path != "-") {
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + *path + "'");
    table.write(out);
  } else {
    table.write(std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-quench unitary designs and randomized-measurement Renyi entropy estimation"};
  app.require_subcommand(1);
  bool show_isa = false;
  app.add_flag("--show-isa", show_isa, "print the kernel instruction set in use to stderr");
  std::string isa;
  app.add_option("--isa", isa, "force the kernel instruction set")->check(CLI::IsMember({"scalar", "avx2"}));

  const std::map<std::string, std::pair<std::string, Runner>> commands = {
      {"converge", {"estimation error of quench unitaries over a sweep", qdesign::run_converge}},
      {"errors", {"statistical error scaling with CUE unitaries", qdesign::run_errors}},
      {"imperfect", {"decoherence, disorder jitter and readout errors", qdesign::run_imperfect}},
      {"chaos", {"IPR and phase-gap ratio diagnostics", qdesign::run_chaos}},
  };
  std::map<std::string, Flags> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    subs[name] = app.add_subcommand(name, entry.first);
    add_common(subs[name], flags[name], true);
  }
  Flags validate_flags;
  CLI::App* validate = app.add_subcommand("validate-config", "check a config file without running it");
  add_common(validate, validate_flags, false);

  CLI11_PARSE(app, argc, argv);
  if (!isa.empty()) {
    try {
      qdesign::kernels::force_isa(isa == "avx2" ? qdesign::kernels::Isa::kAvx2 : qdesign::kernels::Isa::kScalar);
    } catch (const std::invalid_argument& e) {
      std::cerr << "invalid input: " << e.what() << "\n";
      return 2;
    }
  }
  if (show_isa) std::cerr << "kernels: " << qdesign::kernels::isa_name(qdesign::kernels::active_isa()) << "\n";
  try {
    if (validate->parsed()) {
      const auto plan = qdesign::load_plan(validate_flags.config, validate_flags.seed);
      std::cout << "ok: " << plan.points.size() << " grid point(s), config_hash=" << std::hex << plan.hash
                << std::dec << "\n";
      return 0;
    }
    for (const auto& [name, entry] : commands) {
      if (subs[name]->parsed()) return run(flags[name], entry.second);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
