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
#pragma once

/**
 * @file commands.hpp
 * @brief Command implementations behind the ctcsim executable.
 *
 * Each command returns an exit code, a JSON report wrapped in the
 * {"version", "command", "config"} envelope, and a short human summary.
 * Exit codes: 0 success, 1 domain failure, 2 input or schema error.
 */

#include "ctc/deutsch.hpp"
#include "ctc/distinguisher.hpp"
#include "ctc/infotheory.hpp"
#include "ctc/json_io.hpp"
#include "ctc/protocols.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ctc::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
    std::string command; // demo | distinguish | fixed-point | qkd | holevo
    std::string which;   // demo: b92 | bb84
    std::string states;
    std::string interaction;
    std::string input;
    std::string out;
    std::string transcript;
    bool json_stdout = false;
    double fp_tol = kDefaultFpTol;
    double span_tol = kDefaultSpanTol;
    double distinct_tol = kDefaultDistinctTol;
    std::uint64_t seed = 0;
    std::size_t signals = 10000;
    std::string eve = "none";
    std::string protocol = "bb84";
    std::optional<std::size_t> pad;
    std::string order = "as-given";
};

struct CommandResult {
    int exit_code = kExitOk;
    json report;
    std::string summary;
};

inline json config_json(const RunConfig &c) {
    json j = {{"fp_tol", c.fp_tol},
              {"span_tol", c.span_tol},
              {"distinct_tol", c.distinct_tol}};
    if (c.command == "demo") {
        j["which"] = c.which;
    } else if (c.command == "distinguish") {
        j["states"] = c.states;
        j["order"] = c.order;
        j["pad"] = c.pad ? json(*c.pad) : json(nullptr);
    } else if (c.command == "fixed-point") {
        j["interaction"] = c.interaction;
        j["input"] = c.input;
    } else if (c.command == "qkd") {
        j["protocol"] = c.protocol;
        j["signals"] = c.signals;
        j["eve"] = c.eve;
        j["seed"] = c.seed;
    } else if (c.command == "holevo") {
        j["states"] = c.states;
        j["pad"] = c.pad ? json(*c.pad) : json(nullptr);
    }
    return j;
}

inline Tolerances tolerances(const RunConfig &c) {
    if (!(c.fp_tol > 0.0) || !(c.span_tol > 0.0) || !(c.distinct_tol > 0.0)) {
        throw InputError("tolerances must be strictly positive");
    }
    return {c.fp_tol, c.span_tol, c.distinct_tol};
}

inline std::optional<std::vector<std::size_t>>
parse_order(const std::string &text) {
    if (text.empty() || text == "as-given") {
        return std::nullopt;
    }
    std::vector<std::size_t> order;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0) {
                throw std::invalid_argument(item);
            }
            order.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception &) {
            throw InputError("--order: '" + item + "' is not an index");
        }
    }
    return order;
}

inline CommandResult cmd_demo(const RunConfig &c) {
    tolerances(c);
    DemoReport report;
    if (c.which == "b92") {
        report = b92_demo(c.fp_tol);
    } else if (c.which == "bb84") {
        report = bb84_demo(c.fp_tol);
    } else {
        throw InputError("demo: expected 'b92' or 'bb84', got '" + c.which +
                         "'");
    }
    std::ostringstream s;
    s << "demo " << report.name << "\n";
    for (const auto &cs : report.cases) {
        s << "  " << cs.input << " -> label " << cs.result.label
          << "  p=" << cs.result.success_prob
          << "  fixed_space_dim=" << cs.result.fp.fixed_space_dim;
        if (!cs.decoded.empty()) {
            s << "  (" << cs.decoded << ")";
        }
        s << "\n";
    }
    for (const auto &f : report.failures) {
        s << "  FAIL " << f << "\n";
    }
    s << (report.passed() ? "all classifications perfect\n"
                          : "demo assertions failed\n");
    return {report.passed() ? kExitOk : kExitDomain, io::to_json(report),
            s.str()};
}

inline CommandResult cmd_distinguish(const RunConfig &c) {
    const auto tol = tolerances(c);
    const auto file = io::parse_state_file(io::load_file(c.states));
    const StateSet set =
        c.pad ? pad_with_ancilla(file.states, *c.pad, tol.distinct_tol)
              : validate_state_set(file.states, tol.distinct_tol);
    const UnitaryFamily fam =
        construct_family(set, parse_order(c.order), tol.span_tol);
    const auto report = verify_family(set, fam);
    const DeutschInteraction ix = build_distinguisher(set, fam);

    json records = json::array();
    bool perfect = true;
    std::ostringstream s;
    s << "distinguish: " << set.size() << " states in dimension " << set.dim()
      << ", floor_margin " << report.floor_margin << "\n";
    for (std::size_t j = 0; j < set.size(); ++j) {
        const auto cls = classify(ix, set, j, tol.fp_tol);
        perfect = perfect && cls.label == j &&
                  cls.success_prob >= 1.0 - kDemoSuccessTol;
        records.push_back(io::classification_record(j, cls));
        s << "  state " << j;
        if (!file.labels.empty() && j < file.labels.size()) {
            s << " (" << file.labels[j] << ")";
        }
        s << " -> label " << cls.label << "  p=" << cls.success_prob << "\n";
    }
    s << (perfect ? "classification perfect\n" : "misclassification\n");
    json result = {{"dim", set.dim()},
                   {"n_states", set.size()},
                   {"family", io::to_json(report)},
                   {"records", std::move(records)},
                   {"perfect", perfect}};
    return {perfect ? kExitOk : kExitDomain, std::move(result), s.str()};
}

inline CommandResult cmd_fixed_point(const RunConfig &c) {
    const auto tol = tolerances(c);
    const auto ix = io::parse_interaction(io::load_file(c.interaction));
    const auto input = io::parse_input_state(io::load_file(c.input));
    const auto fp = fixed_points(ix, input, tol.fp_tol);
    json result = io::to_json(fp);
    std::ostringstream s;
    s << "fixed-point: dimension " << fp.fixed_space_dim
      << (fp.unique ? " (unique)" : " (not unique)") << ", residual "
      << fp.residual << ", spectrum_gap " << fp.spectrum_gap << "\n";
    if (fp.unique) {
        const auto out = output_state(ix, input, *fp.representative);
        result["output"] = io::to_json(out.matrix());
    }
    return {kExitOk, std::move(result), s.str()};
}

inline CommandResult cmd_qkd(const RunConfig &c) {
    tolerances(c);
    const Protocol p = parse_protocol(c.protocol);
    const EveStrategy eve = parse_strategy(c.eve);
    if (c.signals == 0) {
        throw InputError("--signals must be at least 1");
    }
    const auto session = run_qkd(p, c.signals, eve, c.seed, c.fp_tol);
    if (!c.transcript.empty()) {
        std::ofstream out(c.transcript);
        if (!out) {
            throw InputError("cannot write transcript '" + c.transcript + "'");
        }
        for (const auto &rec : session.transcript) {
            out << io::to_json(rec).dump() << "\n";
        }
    }
    const auto &st = session.stats;
    std::ostringstream s;
    s << "qkd " << to_string(p) << " eve=" << to_string(eve) << " seed="
      << st.seed << ": sent " << st.signals_sent << ", sifted " << st.sifted;
    if (st.qber_defined) {
        s << ", qber " << st.qber;
    } else {
        s << ", qber undefined (nothing sifted)";
    }
    s << ", eve_info " << st.eve_info << "\n";
    json result = io::to_json(st);
    result["transcript"] =
        c.transcript.empty() ? json(nullptr) : json(c.transcript);
    return {kExitOk, std::move(result), s.str()};
}

inline CommandResult cmd_holevo(const RunConfig &c) {
    const auto tol = tolerances(c);
    const auto file = io::parse_ensemble(io::load_file(c.states));
    const Ensemble ens(file.priors, file.states);
    const double chi = holevo_chi(ens);
    if (file.pure_states.empty()) {
        throw InputError("holevo: accessible information needs pure states");
    }
    const std::size_t padded = c.pad.value_or(file.pure_states.size());
    const auto info = ctc_accessible_info(ens, file.pure_states, padded, tol);
    const bool violation = info.accessible_bits > chi + 1e-9;
    std::ostringstream s;
    s << "holevo: chi " << chi << " bits, CTC accessible "
      << info.accessible_bits << " bits (" << info.n_states
      << " states, qubit dim " << info.qubit_dim << ", padded dim "
      << info.padded_dim << ")" << (violation ? ", bound violated" : "")
      << "\n";
    json result = {{"chi_bits", chi},
                   {"accessible_bits", info.accessible_bits},
                   {"n_states", info.n_states},
                   {"qubit_dim", info.qubit_dim},
                   {"padded_dim", info.padded_dim},
                   {"violation", violation}};
    return {kExitOk, std::move(result), s.str()};
}

/// Dispatches one command and maps exceptions onto exit codes.
inline CommandResult run_command(const RunConfig &c) {
    CommandResult r;
    try {
        if (c.command == "demo") {
            r = cmd_demo(c);
        } else if (c.command == "distinguish") {
            r = cmd_distinguish(c);
        } else if (c.command == "fixed-point") {
            r = cmd_fixed_point(c);
        } else if (c.command == "qkd") {
            r = cmd_qkd(c);
        } else if (c.command == "holevo") {
            r = cmd_holevo(c);
        } else {
            throw InputError("unknown command '" + c.command + "'");
        }
    } catch (const NonUniqueFixedPoint &e) {
        r = {kExitDomain,
             {{"error", e.what()}, {"fixed_point", io::to_json(e.result())}},
             std::string("error: ") + e.what() + "\n"};
    } catch (const DomainError &e) {
        r = {kExitDomain, {{"error", e.what()}},
             std::string("error: ") + e.what() + "\n"};
    } catch (const InputError &e) {
        r = {kExitInput, {{"error", e.what()}},
             std::string("error: ") + e.what() + "\n"};
    } catch (const nlohmann::json::exception &e) {
        r = {kExitInput, {{"error", e.what()}},
             std::string("error: ") + e.what() + "\n"};
    }
    r.report = {{"version", "1"},
                {"command", c.command},
                {"config", config_json(c)},
                {"exit_code", r.exit_code},
                {"result", std::move(r.report)}};
    return r;
}

} // namespace ctc::cli
