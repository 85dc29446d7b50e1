// Copyright 2026 The qwoa-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file io.hpp
 * JSON and CSV serialization for instances, run traces and circuits.
 */
#pragma once

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circuits.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "problems.hpp"

namespace qwoa {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

inline Json matrix_to_json(const SquareMatrix &m) {
    Json rows = Json::array();
    for (int r = 0; r < m.n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.n; ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline SquareMatrix matrix_from_json(const Json &j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw ValidationError("matrix must have n rows");
    }
    SquareMatrix m(n);
    for (int r = 0; r < n; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) {
            throw ValidationError("matrix must have n columns");
        }
        for (int c = 0; c < n; ++c) {
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

inline Json instance_to_json(const ProblemInstance &p) {
    Json out;
    out["kind"] = kind_name(p);
    std::visit(
        [&](const auto &inst) {
            using T = std::decay_t<decltype(inst)>;
            out["n"] = inst.n;
            Json data;
            if constexpr (std::is_same_v<T, MaxcutInstance>) {
                data["edges"] = Json::array();
                for (const auto &e : inst.edges) {
                    data["edges"].push_back(Json::array({e.i, e.j, e.weight}));
                }
            } else if constexpr (std::is_same_v<T, KMeansInstance>) {
                out["k"] = inst.k;
                data["points"] = inst.points;
            } else if constexpr (std::is_same_v<T, QapInstance>) {
                data["L"] = matrix_to_json(inst.L);
                data["F"] = matrix_to_json(inst.F);
            } else if constexpr (std::is_same_v<T, MisInstance>) {
                data["edges"] = Json::array();
                for (const auto &[a, b] : inst.edges) {
                    data["edges"].push_back(Json::array({a, b}));
                }
            } else {
                out["k"] = inst.k;
                data["R"] = inst.R;
                data["C"] = inst.C;
                data["L"] = inst.L;
                data["F"] = inst.F;
            }
            out["data"] = std::move(data);
        },
        p);
    return out;
}

inline ProblemInstance instance_from_json(const Json &j) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        const int n = j.at("n").get<int>();
        const Json &data = j.at("data");
        ProblemInstance p;
        if (kind == "maxcut") {
            MaxcutInstance inst{n, {}};
            for (const auto &e : data.at("edges")) {
                inst.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
            }
            p = inst;
        } else if (kind == "kmeans") {
            p = KMeansInstance{n, j.at("k").get<int>(),
                               data.at("points").get<std::vector<std::vector<double>>>()};
        } else if (kind == "qap") {
            p = QapInstance{n, matrix_from_json(data.at("L"), n), matrix_from_json(data.at("F"), n)};
        } else if (kind == "mis") {
            MisInstance inst{n, {}};
            for (const auto &e : data.at("edges")) {
                inst.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            }
            p = inst;
        } else if (kind == "cflp") {
            p = CflpInstance{n,
                             j.at("k").get<int>(),
                             data.at("R").get<std::vector<std::int64_t>>(),
                             data.at("C").get<std::vector<std::int64_t>>(),
                             data.at("L").get<std::vector<std::vector<double>>>(),
                             data.at("F").get<std::vector<double>>()};
        } else {
            throw ValidationError("unknown instance kind '" + kind + "'");
        }
        validate(p);
        return p;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed instance JSON: ") + e.what());
    }
}

inline ProblemInstance load_instance_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open instance file '" + path + "'");
    }
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError("cannot parse '" + path + "': " + e.what());
    }
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// Run traces and parameters
// ---------------------------------------------------------------------------

inline Json params_to_json(const RunParams &rp) {
    Json j{{"gamma", rp.gamma}, {"t", rp.t},          {"beta", rp.beta},
           {"p", rp.p},         {"sigma", rp.sigma},  {"sense", to_string(rp.sense)}};
    if (rp.lambda_t) {
        j["lambda_t"] = rp.lambda_t->lambda;
    }
    return j;
}

/// Trace JSON with the `top` most probable solutions of the final state.
inline Json run_trace_to_json(const RunTrace &trace, const ObjectiveTable &table, std::size_t top = 10) {
    Json j;
    j["params"] = params_to_json(trace.params);
    j["params"]["cvar_alpha"] = trace.cvar_alpha;
    j["trace"] = Json::array();
    for (const auto &m : trace.per_iteration) {
        j["trace"].push_back({{"iter", m.iter},
                              {"optimal_probability", m.optimal_probability},
                              {"expectation", m.expectation},
                              {"cvar", m.cvar}});
    }
    Json final_top = Json::array();
    if (trace.final_state) {
        const auto &psi = *trace.final_state;
        std::vector<Index> order(psi.size());
        std::iota(order.begin(), order.end(), Index{0});
        const auto count = std::min<std::size_t>(top, order.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count),
                          order.end(), [&](Index a, Index b) {
                              const double pa = psi.probability(a);
                              const double pb = psi.probability(b);
                              return pa != pb ? pa > pb : a < b;
                          });
        const double n = static_cast<double>(psi.size());
        for (std::size_t i = 0; i < count; ++i) {
            final_top.push_back({{"index", order[i]},
                                 {"objective", table[order[i]]},
                                 {"amplification", n * psi.probability(order[i])}});
        }
    }
    j["final"] = {{"top", final_top}};
    return j;
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

inline Json circuit_to_json(const Circuit &c) {
    Json gates = Json::array();
    for (const auto &g : c.gates) {
        Json ctl = Json::array();
        for (const auto &k : g.controls) {
            ctl.push_back({{"qubit", k.qubit}, {"polarity", k.polarity ? 1 : 0}});
        }
        Json params = Json::array();
        if (g.kind == GateKind::Ry || g.kind == GateKind::P) {
            params.push_back(g.param);
        }
        gates.push_back({{"kind", to_string(g.kind)},
                         {"target", g.target},
                         {"params", params},
                         {"controls", ctl}});
    }
    return {{"qubits", c.qubits}, {"gates", gates}};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvRow {
    double x = 0.0;
    std::string series;
    double y = 0.0;
    double y_err = 0.0;
};

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

inline void write_csv(std::ostream &out, const std::vector<CsvRow> &rows) {
    out << "x,series,y,y_err\n";
    for (const auto &r : rows) {
        out << format_double(r.x) << ',' << r.series << ',' << format_double(r.y) << ','
            << format_double(r.y_err) << '\n';
    }
}

} // namespace qwoa
