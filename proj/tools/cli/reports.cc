// Copyright 2026 The braggwit Authors
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

#include "cli/reports.h"

#include <cmath>

#include "braggwit/state_io.h"

namespace braggwit::cli {

namespace {

constexpr const char* kAxisLabels[3] = {"x", "y", "z"};

Json header(const char* format, const RunConfig& config) {
    Json j;
    j["format"] = format;
    j["format_version"] = kFormatVersion;
    j["config_hash"] = config.hash;
    j["seed"] = config.seed;
    return j;
}

// Non-finite doubles have no JSON literal; emit them as strings.
Json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json complex_json(complex z) { return Json::array({num(z.real()), num(z.imag())}); }

Json correlators_json(const SymmetrizedCorrelators& t) {
    Json out = Json::object();
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            std::string key = std::string(kAxisLabels[a]) + kAxisLabels[b];
            out[key] = t.has(kSpatialAxes[a], kSpatialAxes[b]) ? complex_json(t.at(kSpatialAxes[a], kSpatialAxes[b]))
                                                               : Json(nullptr);
        }
    }
    return out;
}

Json singles_json(const SingleSpinSums& s) {
    Json out = Json::object();
    for (std::size_t a = 0; a < 3; ++a) {
        std::string key = std::string("sum_") + kAxisLabels[a];
        out[key] = s.available[a] ? Json{{"value", num(s.sums[a])}, {"variance", num(s.variance[a])}} : Json(nullptr);
    }
    return out;
}

Json covariance_json(const SymmetrizedSolution& s) {
    Json names = Json::array();
    for (Unknown u : s.columns) names.push_back(to_string(u));
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < s.covariance.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < s.covariance.cols(); ++j) row.push_back(num(s.covariance(i, j)));
        rows.push_back(row);
    }
    return Json{{"columns", names}, {"matrix", rows}};
}

Json solution_json(const SymmetrizedSolution& s, bool with_covariance) {
    Json j;
    j["phase_per_site"] = num(s.correlators.phase_per_site);
    j["records"] = s.n_records;
    j["condition_number"] = num(s.condition_number);
    j["residual_norm"] = num(s.residual_norm);
    j["chi2_per_dof"] = num(s.chi2_per_dof);
    j["weighted"] = s.weighted;
    j["residual_flag"] = s.residual_flag;
    j["T"] = correlators_json(s.correlators);
    j["singles"] = singles_json(s.singles);
    if (with_covariance) j["covariance"] = covariance_json(s);
    return j;
}

Json witness_json(const WitnessReconstruction& w) {
    return Json{{"value", num(w.value)}, {"std_error", num(std::sqrt(std::max(w.variance, 0.0)))},
                {"entangled", w.value < 0}};
}

}  // namespace

std::string table_preamble(const RunConfig& config) {
    return "# format_version=" + std::to_string(kFormatVersion) + "\n# config_hash=" + config.hash +
           "\n# seed=" + std::to_string(config.seed) + "\n";
}

std::string reconstruction_report_json(const ReconstructionReport& report, const RunConfig& config) {
    Json j = header("braggwit.reconstruction", config);
    j["n_sites"] = report.n_sites;
    j["note"] =
        "a uniform chain resolves correlations by separation only; G(m) and rho2(m) are averages over all pairs at "
        "separation m";
    Json sols = Json::array();
    for (const auto& s : report.solutions) sols.push_back(solution_json(s, true));
    j["symmetrized"] = sols;
    j["singles"] = singles_json(report.singles);
    if (report.separations) {
        const auto& g = *report.separations;
        Json seps;
        seps["cosine_condition"] = num(g.cosine_condition);
        seps["sine_condition"] = num(g.sine_condition);
        Json rows = Json::array();
        for (int m = 1; m < g.n_sites; ++m) {
            Json row;
            row["m"] = m;
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    std::string key = std::string(kAxisLabels[a]) + kAxisLabels[b];
                    row[key] = g.available[static_cast<std::size_t>(a * 3 + b)]
                                   ? num(g.at(m, kSpatialAxes[a], kSpatialAxes[b]))
                                   : Json(nullptr);
                }
            }
            rows.push_back(row);
        }
        seps["G"] = rows;
        j["separations"] = seps;
    } else {
        j["separations"] = nullptr;
        j["separation_error"] = report.separation_error;
    }
    Json rdms = Json::array();
    for (const auto& r : report.rdms) {
        Json rho = Json::array();
        for (int i = 0; i < 4; ++i) {
            Json row = Json::array();
            for (int k = 0; k < 4; ++k) row.push_back(complex_json(r.rho(i, k)));
            rho.push_back(row);
        }
        Json eig = Json::array();
        for (int i = 0; i < 4; ++i) eig.push_back(num(r.eigenvalues(i)));
        rdms.push_back(Json{{"separation", r.separation}, {"physical", r.physical}, {"eigenvalues", eig}, {"rho", rho}});
    }
    j["two_body_rdm"] = rdms;
    j["witness"] = report.witness ? witness_json(*report.witness) : Json(nullptr);
    j["witness_dicke"] = report.witness_dicke ? witness_json(*report.witness_dicke) : Json(nullptr);
    return j.dump(2) + "\n";
}

std::string symmetrized_table(const ReconstructionReport& report, const RunConfig& config) {
    std::string out = table_preamble(config) + "phase_per_site";
    for (const char* a : kAxisLabels) {
        for (const char* b : kAxisLabels) out += std::string(",T_") + a + b + "_re,T_" + a + b + "_im";
    }
    out += ",sum_x,sum_y,sum_z\n";
    auto cell = [](bool have, double v) { return have ? format_double(v) : std::string("nan"); };
    for (const auto& s : report.solutions) {
        out += format_double(s.correlators.phase_per_site);
        for (PauliAxis a : kSpatialAxes) {
            for (PauliAxis b : kSpatialAxes) {
                bool have = s.correlators.has(a, b);
                out += "," + cell(have, s.correlators.at(a, b).real()) + "," + cell(have, s.correlators.at(a, b).imag());
            }
        }
        for (std::size_t a = 0; a < 3; ++a) out += "," + cell(s.singles.available[a], s.singles.sums[a]);
        out += "\n";
    }
    return out;
}

std::string separation_table(const ReconstructionReport& report, const RunConfig& config) {
    std::string out = table_preamble(config) + "m";
    for (const char* a : kAxisLabels) {
        for (const char* b : kAxisLabels) out += std::string(",G_") + a + b;
    }
    out += "\n";
    if (!report.separations) return out;
    const auto& g = *report.separations;
    for (int m = 1; m < g.n_sites; ++m) {
        out += std::to_string(m);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                out += "," + (g.available[static_cast<std::size_t>(a * 3 + b)]
                                  ? format_double(g.at(m, kSpatialAxes[a], kSpatialAxes[b]))
                                  : std::string("nan"));
            }
        }
        out += "\n";
    }
    return out;
}

std::string noise_report_json(const NoiseReport& report, const RunConfig& config) {
    Json j = header("braggwit.noise", config);
    j["n_sites"] = report.n_sites;
    j["model"] = Json{{"efficiency", num(report.model.efficiency)},
                      {"window", num(report.model.window)},
                      {"shots_per_setting", report.model.shots},
                      {"mean_photons", num(report.model.mean_photons)},
                      {"overflow_guard", num(report.model.overflow_guard)},
                      {"bootstrap_resamples", report.model.bootstrap_resamples}};
    j["witness"] = Json{{"value", num(report.witness.value)},
                        {"std_error", num(report.witness.std_error)},
                        {"n_shots", report.witness.n_shots},
                        {"noiseless", num(report.noiseless_witness)},
                        {"bootstrap_std_error",
                         report.bootstrap_std_error ? num(*report.bootstrap_std_error) : Json(nullptr)}};
    Json settings = Json::array();
    for (const auto& s : report.settings) {
        settings.push_back(Json{{"channel", to_string(s.setting.channel)},
                                {"rotation", to_string(s.setting.rotation)},
                                {"rabi_0", num(s.setting.rabi_0)},
                                {"rabi_1", num(s.setting.rabi_1)},
                                {"phase", num(s.setting.phase)},
                                {"phase_per_site", num(s.setting.phase_per_site)},
                                {"lambda", num(s.lambda)},
                                {"count_mean", num(s.count_mean)},
                                {"count_variance", num(s.count_variance)},
                                {"true_intensity", num(s.true_intensity)},
                                {"intensity", num(s.intensity.value)},
                                {"intensity_std_error",
                                 s.intensity.std_error_defined ? num(s.intensity.std_error) : Json(nullptr)}});
    }
    j["settings"] = settings;
    Json sols = Json::array();
    for (const auto& s : report.solutions) sols.push_back(solution_json(s, true));
    j["symmetrized"] = sols;
    return j.dump(2) + "\n";
}

std::string regime_report_json(const RegimeReport& report, const RunConfig& config) {
    Json j = header("braggwit.regime", config);
    j["threshold"] = num(report.threshold);
    j["all_pass"] = report.all_pass();
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"name", c.name}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"ratio", num(c.ratio)},
                              {"pass", c.pass}});
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string verdict(double witness) {
    return format_fixed(witness, 6) + (witness < 0 ? ", entanglement detected" : ", not detected");
}

}  // namespace braggwit::cli
