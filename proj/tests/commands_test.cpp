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
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

namespace ctc::cli {
namespace {

using ctc::testing::MatrixNear;

std::string data(const std::string &name) {
    return std::string(CTCSIM_DATA_DIR) + "/" + name;
}

RunConfig config(const std::string &command) {
    RunConfig c;
    c.command = command;
    return c;
}

TEST(IoRoundTrip, MatrixAndFixedPoint) {
    const Matrix h = gates::hadamard();
    EXPECT_TRUE(MatrixNear(io::parse_matrix(io::to_json(h), "h"), h, 0.0));

    const auto ix = io::parse_interaction(io::load_file(data("b92_interaction.json")));
    const auto fp = fixed_points(
        ix, DensityMatrix::pure(states::zero()));
    const json j = io::to_json(fp);
    EXPECT_EQ(j["fixed_space_dim"], 1);
    EXPECT_EQ(j["unique"], true);
    EXPECT_TRUE(j.contains("residual"));
    EXPECT_TRUE(j.contains("spectrum_gap"));
    EXPECT_TRUE(MatrixNear(io::parse_matrix(j["representative"], "rep"),
                           states::zero().projector(), 1e-12));
}

TEST(IoParse, RejectsMalformedInputs) {
    EXPECT_THROW(io::parse_complex(json::array({1.0}), "z"), InputError);
    EXPECT_THROW(io::parse_state_file(json{{"dim", 2}}), InputError);
    EXPECT_THROW(io::parse_state_file(
                     json{{"dim", 3}, {"states", {{{1.0, 0.0}, {0.0, 0.0}}}}}),
                 InputError);
    EXPECT_THROW(io::parse_interaction(io::load_file(
                     data("nonunitary_interaction.json"))),
                 InputError);
    EXPECT_THROW(io::load_file(data("does_not_exist.json")), InputError);
}

TEST(Commands, EnvelopeShape) {
    auto c = config("demo");
    c.which = "b92";
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_EQ(r.report["version"], "1");
    EXPECT_EQ(r.report["command"], "demo");
    EXPECT_EQ(r.report["exit_code"], 0);
    EXPECT_EQ(r.report["config"]["which"], "b92");
    EXPECT_EQ(r.report["result"]["cases"].size(), 2U);
}

TEST(Commands, DemoBb84AbsurdToleranceIsNonzero) {
    auto c = config("demo");
    c.which = "bb84";
    c.fp_tol = 1.0;
    EXPECT_NE(run_command(c).exit_code, kExitOk);
}

TEST(Commands, DemoUnknownNameIsInputError) {
    auto c = config("demo");
    c.which = "e91";
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(Commands, DistinguishBb84WithPadding) {
    auto c = config("distinguish");
    c.states = data("bb84_states.json");
    c.pad = 4;
    const auto r = run_command(c);
    ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
    EXPECT_EQ(r.report["result"]["perfect"], true);
    EXPECT_GE(r.report["result"]["family"]["floor_margin"].get<double>(), 0.24);
}

TEST(Commands, DistinguishDuplicatesIsInputError) {
    auto c = config("distinguish");
    c.states = data("duplicate_states.json");
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(Commands, DistinguishBadOrderIsInputError) {
    auto c = config("distinguish");
    c.states = data("b92_states.json");
    c.order = "0,0";
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
    c.order = "1,x";
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(Commands, FixedPointOfMixedInputMatchesDenseOracle) {
    auto c = config("fixed-point");
    c.interaction = data("b92_interaction.json");
    c.input = data("input_mixed_zero_minus.json");
    const auto r = run_command(c);
    ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
    const json &res = r.report["result"];
    ASSERT_EQ(res["unique"], true);
    const Matrix rep = io::parse_matrix(res["representative"], "rep");

    const auto ix =
        io::parse_interaction(io::load_file(data("b92_interaction.json")));
    const auto input =
        io::parse_input_state(io::load_file(data("input_mixed_zero_minus.json")));
    EXPECT_TRUE(MatrixNear(ctc::testing::apply_map_dense(ix.unitary(), input.matrix(), rep),
                           rep, 1e-9));
    EXPECT_TRUE(res.contains("output"));
}

TEST(Commands, FixedPointOfIdentityIsNotUniqueButSucceeds) {
    auto c = config("fixed-point");
    c.interaction = data("identity_interaction.json");
    c.input = data("input_zero.json");
    const auto r = run_command(c);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_EQ(r.report["result"]["unique"], false);
    EXPECT_EQ(r.report["result"]["fixed_space_dim"], 4);
    EXPECT_FALSE(r.report["result"].contains("output"));
}

TEST(Commands, FixedPointRejectsNonUnitary) {
    auto c = config("fixed-point");
    c.interaction = data("nonunitary_interaction.json");
    c.input = data("input_zero.json");
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(Commands, QkdWritesTranscript) {
    const auto path =
        std::filesystem::temp_directory_path() / "ctcsim_commands_test.jsonl";
    auto c = config("qkd");
    c.signals = 50;
    c.eve = "ctc";
    c.seed = 9;
    c.transcript = path.string();
    const auto r = run_command(c);
    ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
    EXPECT_EQ(r.report["result"]["qber"], 0.0);
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        const json rec = json::parse(line);
        EXPECT_EQ(rec["index"], lines);
        ++lines;
    }
    EXPECT_EQ(lines, 50U);
    std::filesystem::remove(path);
}

TEST(Commands, QkdInvalidStrategyIsInputError) {
    auto c = config("qkd");
    c.eve = "photon_number_splitting";
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(Commands, NonPositiveToleranceIsInputError) {
    auto c = config("qkd");
    c.fp_tol = 0.0;
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

TEST(Commands, HolevoEightStatesViolatesBound) {
    auto c = config("holevo");
    c.states = data("cone8_ensemble.json");
    const auto r = run_command(c);
    ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
    const json &res = r.report["result"];
    EXPECT_NEAR(res["accessible_bits"].get<double>(), 3.0, 1e-9);
    EXPECT_LE(res["chi_bits"].get<double>(), 1.0 + 1e-12);
    EXPECT_EQ(res["violation"], true);
    EXPECT_EQ(res["padded_dim"], 8);
}

TEST(Commands, HolevoMixedEnsembleIsInputError) {
    auto c = config("holevo");
    c.states = data("mixed_ensemble.json");
    EXPECT_EQ(run_command(c).exit_code, kExitInput);
}

} // namespace
} // namespace ctc::cli
