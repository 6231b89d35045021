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

#include "cli/commands.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "braggwit/errors.h"
#include "braggwit/parallel.h"
#include "braggwit/records_io.h"
#include "braggwit/state_io.h"
#include "cli/config.h"
#include "cli/reports.h"

namespace braggwit::cli {

namespace {

struct Globals {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::vector<std::string> overrides;
};

std::string output_path(const RunConfig& rc, const std::string& name) {
    std::filesystem::create_directories(rc.out_dir);
    return (std::filesystem::path(rc.out_dir) / name).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path);
}

bool is_dicke_spec(const RunConfig& rc) {
    auto c = rc.raw["witness"]["coefficients"];
    auto p = rc.raw["witness"]["phase_per_site"];
    return c == Json::array({1.0, 1.0, -1.0}) && p == Json::array({0.0, 0.0, 0.0});
}

int cmd_state(const RunConfig& rc, std::ostream& out) {
    SpinState s = rc.pure_state();
    std::string path = output_path(rc, "state.json");
    save_state(s, path, Provenance{rc.hash, rc.seed});
    CorrelationTable t = CorrelationTable::from(s);
    std::string summary = table_preamble(rc) + "# norm=" + format_double(s.norm()) + "\nsite,sigma_z\n";
    for (int k = 0; k < s.n_sites(); ++k) summary += std::to_string(k) + "," + format_double(t.single(k, PauliAxis::Z)) + "\n";
    write_file(output_path(rc, "state_summary.csv"), summary);
    out << "wrote " << path << "\n" << summary;
    return kExitOk;
}

int cmd_witness(const RunConfig& rc, std::ostream& out) {
    MixedState m = rc.mixed_state();
    ChainGeometry g = rc.geometry(m.n_sites());
    CorrelationTable t = CorrelationTable::from(m);
    double wd = witness_dicke(t, g);
    std::string lines = "W_D: " + verdict(wd) + "\n";
    std::string table = table_preamble(rc) + "witness,value,entangled\nW_D," + format_double(wd) + "," +
                        (wd < 0 ? "true" : "false") + "\n";
    if (!is_dicke_spec(rc)) {
        double w = witness_general(t, g, rc.witness(g));
        lines += "W: " + verdict(w) + "\n";
        table += "W," + format_double(w) + "," + (w < 0 ? "true" : "false") + "\n";
    }
    write_file(output_path(rc, "witness.csv"), table);
    out << lines;
    return kExitOk;
}

int cmd_scan_q(const RunConfig& rc, std::ostream& out) {
    MixedState m = rc.mixed_state();
    ChainGeometry g = rc.geometry(m.n_sites());
    CorrelationTable t = CorrelationTable::from(m);
    WitnessSpec spec = rc.witness(g);
    std::string table = table_preamble(rc) + "phase_per_site";
    const char* labels[3] = {"x", "y", "z"};
    for (const char* a : labels) {
        for (const char* b : labels) table += std::string(",S_") + a + b + "_re,S_" + a + b + "_im";
    }
    table += ",C_x,C_y,C_z,W\n";
    auto phases = rc.scan_phases();
    for (double p : phases) {
        WaveVector q = WaveVector::along_chain(g, p);
        auto sf = structure_factor(t, g, q);
        table += format_double(p);
        for (const auto& e : sf.entries) table += "," + format_double(e.real()) + "," + format_double(e.imag());
        double w = 1;
        for (PauliAxis a : kSpatialAxes) {
            double c = c_alpha(t, g, a, q);
            w -= spec.coefficient(a) * c;
            table += "," + format_double(c);
        }
        table += "," + format_double(w) + "\n";
    }
    std::string path = output_path(rc, "scan_q.csv");
    write_file(path, table);
    out << "wrote " << path << " (" << phases.size() << " rows)\n";
    return kExitOk;
}

void require_regime(const RunConfig& rc, const LaserCavitySettings& settings, const PulseProfile& pulse) {
    RegimeOptions opts = rc.regime();
    RegimeReport report = check_regime(settings, pulse, opts.ratio_threshold);
    if (report.all_pass() || opts.allow_violation) return;
    std::string msg = "regime check failed:";
    for (const auto& f : report.failures()) msg += " [" + f + "]";
    throw RegimeError(msg + "; set regime.allow_violation=true to proceed anyway");
}

int cmd_simulate(const RunConfig& rc, std::ostream& out) {
    MixedState m = rc.mixed_state();
    ChainGeometry g = rc.geometry(m.n_sites());
    LaserCavitySettings settings = rc.laser();
    PulseProfile pulse = rc.pulse();
    require_regime(rc, settings, pulse);
    DesignOptions d = rc.design();
    std::vector<Design> designs;
    for (double p : rc.design_phases()) designs.push_back(design_settings(p, d.include_rotations, settings, d.condition_cap));
    double t = rc.pulse_time();
    RecordSet records = simulate_records(m, g, designs, settings, pulse_response(pulse, settings, t), t);
    records.seed = rc.seed;
    records.config_hash = rc.hash;
    std::string path = output_path(rc, "records.csv");
    save_records(records, path);
    out << "wrote " << path << " (" << records.records.size() << " records)\n";
    return kExitOk;
}

int cmd_reconstruct(const RunConfig& rc, const std::optional<std::string>& records_path, std::ostream& out) {
    std::string path = records_path ? *records_path : (std::filesystem::path(rc.out_dir) / "records.csv").string();
    RecordSet records = load_records(path);
    ChainGeometry g = rc.geometry(records.n_sites);
    SolveOptions opts;
    opts.condition_cap = rc.design().condition_cap;
    ReconstructionReport report = reconstruct(records, g, rc.witness(g), opts);
    write_file(output_path(rc, "reconstruction.json"), reconstruction_report_json(report, rc));
    write_file(output_path(rc, "symmetrized.csv"), symmetrized_table(report, rc));
    write_file(output_path(rc, "separations.csv"), separation_table(report, rc));
    if (report.witness_dicke) out << "W_D: " << verdict(report.witness_dicke->value) << "\n";
    if (report.witness && !is_dicke_spec(rc)) out << "W: " << verdict(report.witness->value) << "\n";
    if (!report.separations) out << "note: " << report.separation_error << "\n";
    for (const auto& r : report.rdms) {
        if (!r.physical) out << "warning: two-body RDM at separation " << r.separation << " has negative eigenvalues\n";
    }
    out << "wrote " << output_path(rc, "reconstruction.json") << "\n";
    return kExitOk;
}

int cmd_noise(const RunConfig& rc, std::ostream& out) {
    MixedState m = rc.mixed_state();
    ChainGeometry g = rc.geometry(m.n_sites());
    NoiseReport report = noisy_witness_pipeline(m, g, rc.design(), rc.detection(), rc.witness(g));
    std::string path = output_path(rc, "noise_report.json");
    write_file(path, noise_report_json(report, rc));
    out << "W: " << format_fixed(report.witness.value, 6) << " +- " << format_fixed(report.witness.std_error, 6)
        << " (noiseless " << format_fixed(report.noiseless_witness, 6) << ")\n";
    out << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_validate(const RunConfig& rc, std::ostream& out) {
    RegimeReport report = check_regime(rc.laser(), rc.pulse(), rc.regime().ratio_threshold);
    std::string path = output_path(rc, "regime_report.json");
    write_file(path, regime_report_json(report, rc));
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << " ratio=" << format_double(c.ratio) << "\n";
    }
    out << "wrote " << path << "\n";
    return report.all_pass() ? kExitOk : kExitRegime;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement witnesses from Bragg-scattered cavity light", "braggwit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "JSON run configuration");
    app.add_option("--seed", g.seed, "RNG seed (overrides config)");
    app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "output directory (overrides config)");
    app.add_option("--override", g.overrides, "KEY=VALUE with a dotted config key")->allow_extra_args(false);

    auto* state = app.add_subcommand("state", "build a state and write the state file");
    auto* witness = app.add_subcommand("witness", "evaluate the Dicke and configured witnesses");
    auto* scan = app.add_subcommand("scan-q", "tabulate S(q), C(q) and W(q) over a phase grid");
    auto* simulate = app.add_subcommand("simulate", "forward-model measurement records");
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "invert measurement records");
    std::optional<std::string> records_path;
    reconstruct_cmd->add_option("--records", records_path, "record file (default <out>/records.csv)");
    auto* noise = app.add_subcommand("noise", "shot-noise Monte Carlo of the witness estimate");
    auto* validate = app.add_subcommand("validate", "check the linear-response regime");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitFailure;
    }

    try {
        RunConfig rc = load_run_config(g.config, g.overrides, g.seed, g.threads, g.out);
        set_max_threads(static_cast<unsigned>(rc.threads));
        if (state->parsed()) return cmd_state(rc, out);
        if (witness->parsed()) return cmd_witness(rc, out);
        if (scan->parsed()) return cmd_scan_q(rc, out);
        if (simulate->parsed()) return cmd_simulate(rc, out);
        if (reconstruct_cmd->parsed()) return cmd_reconstruct(rc, records_path, out);
        if (noise->parsed()) return cmd_noise(rc, out);
        if (validate->parsed()) return cmd_validate(rc, out);
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitSchema;
    } catch (const DesignError& e) {
        err << "design error: " << e.what() << "\n";
        return kExitDesign;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace braggwit::cli
