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
 * @file json_io.hpp
 * @brief JSON file schemas and report serialization.
 *
 * A complex scalar is [re, im]; a vector is an array of scalars; a matrix is
 * a row-major array of rows of scalars. Schema problems raise InputError.
 */

#include "ctc/deutsch.hpp"
#include "ctc/distinguisher.hpp"
#include "ctc/infotheory.hpp"
#include "ctc/protocols.hpp"
#include "ctc/qlinalg.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace ctc::io {

using json = nlohmann::json;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

inline json to_json(const Matrix &m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(to_json(m(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline Complex parse_complex(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw InputError(where + ": expected a complex scalar [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Vector parse_vector(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        throw InputError(where + ": expected a non-empty array of [re, im]");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) =
            parse_complex(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

inline Matrix parse_matrix(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw InputError(where + ": expected a matrix (array of rows)");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw InputError(where + ": ragged matrix row " +
                             std::to_string(r));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_complex(j[r][c], where + "[" + std::to_string(r) + "][" +
                                           std::to_string(c) + "]");
        }
    }
    return m;
}

/// A matrix entry is an array of rows; a vector entry is an array of pairs.
inline bool looks_like_matrix(const json &j) {
    return j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() &&
           j[0][0].is_array();
}

inline std::size_t get_count(const json &j, const char *key,
                             const std::string &where) {
    if (!j.contains(key) || !j[key].is_number_integer() ||
        j[key].get<long long>() <= 0) {
        throw InputError(where + ": missing or invalid positive integer '" +
                         key + "'");
    }
    return j[key].get<std::size_t>();
}

inline json load_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError("'" + path.string() + "' is not valid JSON: " +
                         e.what());
    }
}

/// { "d_sys", "d_ctc", "V" } or { "d", "family": [U_0, ...] }.
inline DeutschInteraction parse_interaction(const json &j) {
    const std::string where = "interaction";
    if (!j.is_object()) {
        throw InputError(where + ": expected an object");
    }
    if (j.contains("family")) {
        const std::size_t d = get_count(j, "d", where);
        if (!j["family"].is_array()) {
            throw InputError(where + ": 'family' must be an array");
        }
        std::vector<Matrix> family;
        for (std::size_t k = 0; k < j["family"].size(); ++k) {
            family.push_back(parse_matrix(
                j["family"][k], where + ".family[" + std::to_string(k) + "]"));
        }
        return swap_then_control(d, family);
    }
    if (!j.contains("V")) {
        throw InputError(where + ": needs either 'V' or 'family'");
    }
    return {get_count(j, "d_sys", where), get_count(j, "d_ctc", where),
            parse_matrix(j["V"], where + ".V")};
}

struct StateFile {
    std::size_t dim = 0;
    std::vector<PureState> states;
    std::vector<std::string> labels;
};

/// { "dim", "states": [[[re, im], ...], ...], "labels": [...] }
inline StateFile parse_state_file(const json &j) {
    const std::string where = "state file";
    if (!j.is_object()) {
        throw InputError(where + ": expected an object");
    }
    StateFile out;
    out.dim = get_count(j, "dim", where);
    if (!j.contains("states") || !j["states"].is_array() ||
        j["states"].empty()) {
        throw InputError(where + ": 'states' must be a non-empty array");
    }
    for (std::size_t i = 0; i < j["states"].size(); ++i) {
        const std::string at = where + ".states[" + std::to_string(i) + "]";
        Vector v = parse_vector(j["states"][i], at);
        if (static_cast<std::size_t>(v.size()) != out.dim) {
            throw InputError(at + ": length " + std::to_string(v.size()) +
                             " does not match dim " + std::to_string(out.dim));
        }
        out.states.emplace_back(std::move(v));
    }
    if (j.contains("labels")) {
        if (!j["labels"].is_array() ||
            j["labels"].size() != out.states.size()) {
            throw InputError(where + ": 'labels' must match 'states'");
        }
        for (const auto &l : j["labels"]) {
            out.labels.push_back(l.get<std::string>());
        }
    }
    return out;
}

/// { "dim", "state": vector } or { "dim", "rho": matrix }.
inline DensityMatrix parse_input_state(const json &j) {
    const std::string where = "input state";
    if (!j.is_object()) {
        throw InputError(where + ": expected an object");
    }
    const std::size_t dim = get_count(j, "dim", where);
    std::optional<DensityMatrix> rho;
    if (j.contains("state")) {
        rho = DensityMatrix::pure(PureState(parse_vector(j["state"], where)));
    } else if (j.contains("rho")) {
        rho = DensityMatrix(parse_matrix(j["rho"], where + ".rho"));
    } else {
        throw InputError(where + ": needs 'state' or 'rho'");
    }
    if (rho->dim() != dim) {
        throw InputError(where + ": dimension does not match 'dim'");
    }
    return *rho;
}

struct EnsembleFile {
    std::size_t dim = 0;
    std::vector<double> priors;
    std::vector<PureState> pure_states; // empty if any member is mixed
    std::vector<DensityMatrix> states;
};

/// { "dim", "priors": [...], "states": [...] }; each state a vector (pure)
/// or a matrix (mixed). Missing priors mean uniform.
inline EnsembleFile parse_ensemble(const json &j) {
    const std::string where = "ensemble";
    if (!j.is_object()) {
        throw InputError(where + ": expected an object");
    }
    EnsembleFile out;
    out.dim = get_count(j, "dim", where);
    if (!j.contains("states") || !j["states"].is_array() ||
        j["states"].empty()) {
        throw InputError(where + ": 'states' must be a non-empty array");
    }
    bool all_pure = true;
    for (std::size_t i = 0; i < j["states"].size(); ++i) {
        const json &s = j["states"][i];
        const std::string at = where + ".states[" + std::to_string(i) + "]";
        if (looks_like_matrix(s)) {
            all_pure = false;
            out.states.emplace_back(parse_matrix(s, at));
        } else {
            PureState psi(parse_vector(s, at));
            out.states.push_back(DensityMatrix::pure(psi));
            out.pure_states.push_back(std::move(psi));
        }
        if (out.states.back().dim() != out.dim) {
            throw InputError(at + ": dimension does not match 'dim'");
        }
    }
    if (!all_pure) {
        out.pure_states.clear();
    }
    const std::size_t n = out.states.size();
    if (j.contains("priors")) {
        if (!j["priors"].is_array() || j["priors"].size() != n) {
            throw InputError(where + ": 'priors' must match 'states'");
        }
        for (const auto &p : j["priors"]) {
            if (!p.is_number()) {
                throw InputError(where + ": priors must be numbers");
            }
            out.priors.push_back(p.get<double>());
        }
    } else {
        out.priors.assign(n, 1.0 / static_cast<double>(n));
    }
    return out;
}

/// { "dim", "unitaries": [matrix, ...] }
inline UnitaryFamily parse_family(const json &j) {
    const std::string where = "family file";
    UnitaryFamily fam;
    fam.dim = get_count(j, "dim", where);
    if (!j.contains("unitaries") || !j["unitaries"].is_array()) {
        throw InputError(where + ": 'unitaries' must be an array");
    }
    for (std::size_t k = 0; k < j["unitaries"].size(); ++k) {
        fam.unitaries.push_back(parse_matrix(
            j["unitaries"][k], where + ".unitaries[" + std::to_string(k) + "]"));
    }
    return fam;
}

inline json to_json(const UnitaryFamily &fam) {
    json u = json::array();
    for (const auto &m : fam.unitaries) {
        u.push_back(to_json(m));
    }
    return {{"dim", fam.dim}, {"unitaries", std::move(u)}};
}

inline json to_json(const FixedPointResult &fp) {
    json basis = json::array();
    for (const auto &b : fp.basis) {
        basis.push_back(to_json(b));
    }
    return {{"fixed_space_dim", fp.fixed_space_dim},
            {"representative", fp.representative
                                   ? to_json(fp.representative->matrix())
                                   : json(nullptr)},
            {"basis", std::move(basis)},
            {"unique", fp.unique},
            {"residual", fp.residual},
            {"spectrum_gap", fp.spectrum_gap}};
}

inline json to_json(const FamilyReport &r) {
    return {{"floor_margin", r.floor_margin},
            {"cond1_residual", r.cond1_residual}};
}

/// Per-input classification record.
inline json classification_record(std::size_t j, const Classification &c) {
    return {{"j", j},
            {"label", c.label},
            {"success_prob", c.success_prob},
            {"fixed_space_dim", c.fp.fixed_space_dim},
            {"residual", c.fp.residual}};
}

inline json to_json(const DemoReport &r) {
    json cases = json::array();
    for (const auto &c : r.cases) {
        json entry = {{"input", c.input},
                      {"expected_label", c.expected_label},
                      {"label", c.result.label},
                      {"success_prob", c.result.success_prob},
                      {"fixed_point", to_json(c.result.fp)},
                      {"output", to_json(c.result.output.matrix())}};
        if (!c.decoded.empty()) {
            entry["decoded"] = c.decoded;
        }
        cases.push_back(std::move(entry));
    }
    return {{"demo", r.name},
            {"passed", r.passed()},
            {"failures", r.failures},
            {"cases", std::move(cases)}};
}

inline json to_json(const SessionStats &s) {
    return {{"signals_sent", s.signals_sent},
            {"sifted", s.sifted},
            {"errors", s.errors},
            {"qber", s.qber_defined ? json(s.qber) : json(nullptr)},
            {"qber_defined", s.qber_defined},
            {"eve_info", s.eve_info},
            {"seed", s.seed}};
}

inline json to_json(const TranscriptRecord &r) {
    json out = {{"index", r.index},
                {"alice_bit", r.alice_bit},
                {"alice_basis",
                 r.alice_basis ? json(*r.alice_basis) : json(nullptr)}};
    if (r.eve_label) {
        out["eve_label"] = *r.eve_label;
    }
    out["bob_basis"] = r.bob_basis;
    out["bob_outcome"] = r.bob_outcome;
    out["sifted"] = r.sifted;
    out["error"] = r.error;
    return out;
}

} // namespace ctc::io
