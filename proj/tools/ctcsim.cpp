// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctc/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void add_common(CLI::App *sub, ctc::cli::RunConfig &cfg) {
    sub->add_option("--out", cfg.out, "Write the JSON report to this path");
    sub->add_flag("--json", cfg.json_stdout,
                  "Print the JSON report on stdout (summary goes to stderr)");
    sub->add_option("--fp-tol", cfg.fp_tol,
                    "Relative singular-value cutoff for fixed points")
        ->check(CLI::PositiveNumber);
}

void add_distinguisher_tols(CLI::App *sub, ctc::cli::RunConfig &cfg) {
    sub->add_option("--span-tol", cfg.span_tol, "Span membership tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--distinct-tol", cfg.distinct_tol,
                    "Minimum distinctness 1 - |<a|b>|")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char **argv) {
    ctc::cli::RunConfig cfg;
    CLI::App app{"ctcsim: Deutsch closed-timelike-curve circuit simulator"};
    app.require_subcommand(1);

    auto *demo = app.add_subcommand("demo", "Run the B92 or BB84 circuit");
    demo->add_option("which", cfg.which, "b92 or bb84")
        ->required()
        ->check(CLI::IsMember({"b92", "bb84"}));
    add_common(demo, cfg);

    auto *dist = app.add_subcommand(
        "distinguish", "Build and run a distinguisher for a state file");
    dist->add_option("--states", cfg.states, "State-set JSON file")
        ->required();
    dist->add_option("--pad", cfg.pad, "Pad states with |0..0> to this dim");
    dist->add_option("--order", cfg.order,
                     "Pick order: comma-separated indices or as-given");
    add_common(dist, cfg);
    add_distinguisher_tols(dist, cfg);

    auto *fixed = app.add_subcommand(
        "fixed-point", "Solve the self-consistency condition");
    fixed->add_option("--interaction", cfg.interaction, "Interaction JSON")
        ->required();
    fixed->add_option("--input", cfg.input, "Input state JSON")->required();
    add_common(fixed, cfg);

    auto *qkd = app.add_subcommand("qkd", "Simulate a QKD session");
    qkd->add_option("--protocol", cfg.protocol, "b92 or bb84");
    qkd->add_option("--signals", cfg.signals, "Number of signals");
    qkd->add_option("--eve", cfg.eve, "none, ctc or intercept_resend_z");
    qkd->add_option("--seed", cfg.seed, "Random seed");
    qkd->add_option("--transcript", cfg.transcript,
                    "Write a JSON-lines transcript to this path");
    add_common(qkd, cfg);

    auto *holevo = app.add_subcommand(
        "holevo", "Compare the Holevo quantity with CTC-accessible info");
    holevo->add_option("--states", cfg.states, "Ensemble JSON file")
        ->required();
    holevo->add_option("--pad", cfg.pad, "Padded dimension (default: count)");
    add_common(holevo, cfg);
    add_distinguisher_tols(holevo, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ctc::cli::kExitInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    const auto result = ctc::cli::run_command(cfg);
    const std::string dumped = result.report.dump(2);

    std::ostream &human = cfg.json_stdout ? std::cerr : std::cout;
    human << result.summary;
    if (cfg.json_stdout) {
        std::cout << dumped << "\n";
    }
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        if (!out) {
            std::cerr << "error: cannot write '" << cfg.out << "'\n";
            return ctc::cli::kExitInput;
        }
        out << dumped << "\n";
    }
    return result.exit_code;
}
