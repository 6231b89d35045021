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

#include "braggwit/reconstruction.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "braggwit/errors.h"
#include "braggwit/state_io.h"

namespace braggwit {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double p) { return std::remainder(p, 2.0 * kPi); }

bool same_phase(double a, double b, double tol) { return std::abs(wrap_phase(a - b)) <= tol; }

// Phases p with p == -p (mod 2 pi): T^{ab}(p) is real there.
bool self_conjugate(double p, double tol) { return std::abs(wrap_phase(2.0 * p)) <= tol; }

int frame_index(RotationTag tag) { return static_cast<int>(tag); }

constexpr RotationTag kFrames[3] = {RotationTag::none, RotationTag::x_access, RotationTag::y_access};

// How the unknowns of one rotation frame map onto the x/y quantities the
// intensity measures in that frame.
struct FrameMap {
    Unknown xx, yy, re_xy, im_xy, single;
    double re_sign, im_sign;
};

FrameMap frame_map(RotationTag tag) {
    switch (tag) {
        case RotationTag::x_access:  // x <-> z, y -> -y: T'xy = -T^{zy} = -conj T^{yz}
            return {Unknown::Tzz, Unknown::Tyy, Unknown::ReTyz, Unknown::ImTyz, Unknown::Sx, -1.0, 1.0};
        case RotationTag::y_access:  // y <-> z, x -> -x: T'xy = -T^{xz}
            return {Unknown::Txx, Unknown::Tzz, Unknown::ReTxz, Unknown::ImTxz, Unknown::Sy, -1.0, -1.0};
        default:
            return {Unknown::Txx, Unknown::Tyy, Unknown::ReTxy, Unknown::ImTxy, Unknown::Sz, 1.0, 1.0};
    }
}

struct Row {
    std::array<double, kUnknownCount> coeff{};
    double rhs = 0;
    double variance = 0;
    int frame = 0;
    int record = -1;
};

// I~ - N(|ax|^2 + |ay|^2) = |ax|^2 T'xx + |ay|^2 T'yy + 2 Re(ax^* ay T'xy) + 2 Im(ax ay^*) S'z,
// where T'xy at the record's phase equals T'xy(p) or its conjugate (orientation -1).
Row make_row(const MeasurementSetting& s, double intensity, int n_sites, double orientation) {
    const FrameMap map = frame_map(s.rotation);
    const double wx = std::norm(s.coeffs.alpha_x);
    const double wy = std::norm(s.coeffs.alpha_y);
    const complex c = std::conj(s.coeffs.alpha_x) * s.coeffs.alpha_y;
    Row row;
    row.coeff[static_cast<int>(map.xx)] += wx;
    row.coeff[static_cast<int>(map.yy)] += wy;
    row.coeff[static_cast<int>(map.re_xy)] += map.re_sign * 2.0 * c.real();
    row.coeff[static_cast<int>(map.im_xy)] += map.im_sign * orientation * (-2.0 * c.imag());
    row.coeff[static_cast<int>(map.single)] += s.coeffs.polarization_weight();
    row.rhs = intensity - n_sites * (wx + wy);
    row.frame = frame_index(s.rotation);
    return row;
}

std::vector<Unknown> frame_columns(RotationTag tag, bool drop_imaginary) {
    FrameMap m = frame_map(tag);
    std::vector<Unknown> cols{m.xx, m.yy, m.re_xy};
    if (!drop_imaginary) cols.push_back(m.im_xy);
    cols.push_back(m.single);
    std::sort(cols.begin(), cols.end());
    return cols;
}

double condition_number(const Eigen::MatrixXd& a) {
    if (a.rows() == 0 || a.cols() == 0) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (a.rows() < a.cols() || sv(sv.size() - 1) == 0) return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

Eigen::MatrixXd restrict(const std::vector<Row>& rows, const std::vector<Unknown>& cols, int frame = -1) {
    std::vector<const Row*> picked;
    for (const auto& r : rows) {
        if (frame < 0 || r.frame == frame) picked.push_back(&r);
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(picked.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < picked.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = picked[i]->coeff[static_cast<int>(cols[j])];
        }
    }
    return a;
}

std::string describe_phase(double p) { return format_double(p); }

// Default-design settings absent from a frame's rows, for diagnostics.
std::vector<std::string> missing_default_settings(const std::vector<const MeasurementSetting*>& present,
                                                  const std::vector<double>& orientations, double phase,
                                                  bool drop_imaginary, double tol) {
    struct Want {
        std::string label;
        int kind;  // 0: equal amplitudes at phi, 1: Omega_1 = 0, 2: Omega_0 = 0
        double phi;
        double orientation;
    };
    std::vector<Want> wants;
    std::vector<double> orients = drop_imaginary ? std::vector<double>{1.0} : std::vector<double>{1.0, -1.0};
    for (double o : orients) {
        std::string ch = o > 0 ? "mode1 at phase " + describe_phase(phase) : "mode2 at phase " + describe_phase(-phase);
        for (double phi : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4}) {
            wants.push_back({"Omega_0=Omega_1, phi=" + format_double(phi) + " (" + ch + ")", 0, phi, o});
        }
        wants.push_back({"Omega_1=0 (" + ch + ")", 1, 0, o});
        wants.push_back({"Omega_0=0 (" + ch + ")", 2, 0, o});
    }
    std::vector<std::string> missing;
    for (const auto& w : wants) {
        bool found = false;
        for (std::size_t i = 0; i < present.size() && !found; ++i) {
            const auto& s = *present[i];
            if (orientations[i] != w.orientation && !drop_imaginary) continue;
            if (w.kind == 0) {
                found = s.rabi_0 > 0 && std::abs(s.rabi_0 - s.rabi_1) <= tol * std::max(1.0, s.rabi_0) &&
                        std::abs(wrap_phase(s.phase - w.phi)) <= 1e-9;
            } else if (w.kind == 1) {
                found = s.rabi_1 == 0 && s.rabi_0 > 0;
            } else {
                found = s.rabi_0 == 0 && s.rabi_1 > 0;
            }
        }
        if (!found) missing.push_back(w.label);
    }
    return missing;
}

// Unknown-aligned linear algebra shared by design_settings and solve_symmetrized.
struct Assembly {
    std::vector<Row> rows;
    std::vector<Unknown> columns;
    std::array<bool, 3> frames{};
    bool drop_imaginary = false;
};

Assembly assemble(std::span<const MeasurementSetting* const> settings, std::span<const double> intensities,
                  std::span<const double> variances, int n_sites, double phase, const SolveOptions& options) {
    Assembly as;
    as.drop_imaginary = self_conjugate(phase, options.phase_tolerance);
    std::vector<const MeasurementSetting*> by_frame_settings[3];
    std::vector<double> by_frame_orientation[3];
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const auto& s = *settings[i];
        double orientation = 0;
        if (same_phase(s.phase_per_site, phase, options.phase_tolerance)) {
            orientation = 1;
        } else if (same_phase(s.phase_per_site, -phase, options.phase_tolerance)) {
            orientation = -1;
        } else {
            continue;
        }
        Row row = make_row(s, intensities[i], n_sites, as.drop_imaginary ? 0.0 : orientation);
        row.variance = variances.empty() ? 0.0 : variances[i];
        row.record = static_cast<int>(i);
        as.rows.push_back(row);
        as.frames[static_cast<std::size_t>(row.frame)] = true;
        by_frame_settings[row.frame].push_back(&s);
        by_frame_orientation[row.frame].push_back(orientation);
    }
    if (as.rows.empty()) {
        throw DesignError("no records at phase_per_site " + describe_phase(phase) + " or its negative");
    }
    for (RotationTag tag : kFrames) {
        int f = frame_index(tag);
        if (!as.frames[static_cast<std::size_t>(f)]) continue;
        auto cols = frame_columns(tag, as.drop_imaginary);
        Eigen::MatrixXd sub = restrict(as.rows, cols, f);
        FrameMap map = frame_map(tag);
        auto single_col = std::find(cols.begin(), cols.end(), map.single) - cols.begin();
        if (sub.col(single_col).cwiseAbs().maxCoeff() == 0) {
            throw DesignError("frame " + to_string(tag) + " at phase " + describe_phase(phase) +
                              " has no setting with Im(alpha_x alpha_y^*) != 0; add Omega_1=0 or Omega_0=0 records");
        }
        double cond = condition_number(sub);
        if (!(cond <= options.condition_cap)) {
            std::string msg = "frame " + to_string(tag) + " at phase " + describe_phase(phase) +
                              " is rank deficient (condition number " + format_double(cond) + ")";
            auto missing = missing_default_settings(by_frame_settings[f], by_frame_orientation[f], phase,
                                                    as.drop_imaginary, 1e-12);
            if (!missing.empty()) {
                msg += "; missing settings:";
                for (const auto& m : missing) msg += " [" + m + "]";
            }
            throw DesignError(msg);
        }
        for (Unknown u : cols) {
            if (std::find(as.columns.begin(), as.columns.end(), u) == as.columns.end()) as.columns.push_back(u);
        }
    }
    std::sort(as.columns.begin(), as.columns.end());
    return as;
}

}  // namespace

std::string to_string(Unknown u) {
    static constexpr const char* names[kUnknownCount] = {"T_xx",    "T_yy",    "T_zz",    "Re T_xy",
                                                         "Im T_xy", "Re T_xz", "Im T_xz", "Re T_yz",
                                                         "Im T_yz", "sum_x",   "sum_y",   "sum_z"};
    return names[static_cast<int>(u)];
}

MeasurementSetting make_setting(const LaserCavitySettings& base, double rabi_0, double rabi_1, double phase,
                                RotationTag rotation, ScatteringChannel channel, double phase_per_site) {
    LaserCavitySettings s = base;
    s.rabi_0 = rabi_0;
    s.rabi_1 = rabi_1;
    s.phase = phase;
    MeasurementSetting m;
    m.rabi_0 = rabi_0;
    m.rabi_1 = rabi_1;
    m.phase = phase;
    m.rotation = rotation;
    m.channel = channel;
    m.phase_per_site = phase_per_site;
    m.coeffs = coupling_coefficients(s);
    return m;
}

Design design_settings(double phase_per_site, bool include_rotations, const LaserCavitySettings& base,
                       double condition_cap) {
    base.validate();
    if (!std::isfinite(phase_per_site)) throw DomainError("phase_per_site must be finite");
    const double omega = std::max(base.rabi_0, base.rabi_1) > 0 ? std::max(base.rabi_0, base.rabi_1) : 1.0;
    Design d;
    d.phase_per_site = phase_per_site;
    std::vector<RotationTag> frames{RotationTag::none};
    if (include_rotations) {
        frames.push_back(RotationTag::x_access);
        frames.push_back(RotationTag::y_access);
    }
    for (RotationTag frame : frames) {
        for (ScatteringChannel ch : {ScatteringChannel::mode1, ScatteringChannel::mode2}) {
            double p = ch == ScatteringChannel::mode1 ? phase_per_site : -phase_per_site;
            for (double phi : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4}) {
                d.settings.push_back(make_setting(base, omega, omega, phi, frame, ch, p));
            }
            d.settings.push_back(make_setting(base, omega, 0, 0, frame, ch, p));
            d.settings.push_back(make_setting(base, 0, omega, 0, frame, ch, p));
        }
    }
    std::vector<const MeasurementSetting*> ptrs;
    for (const auto& s : d.settings) ptrs.push_back(&s);
    std::vector<double> zeros(d.settings.size(), 0.0);
    SolveOptions options;
    options.condition_cap = condition_cap;
    Assembly as = assemble(ptrs, zeros, {}, 2, phase_per_site, options);
    d.columns = as.columns;
    d.matrix = restrict(as.rows, as.columns);
    d.condition_number = condition_number(d.matrix);
    return d;
}

SymmetrizedCorrelators symmetrized_correlators(const CorrelationTable& table, double phase_per_site) {
    SymmetrizedCorrelators t;
    t.phase_per_site = phase_per_site;
    const int n = table.n_sites();
    for (PauliAxis a : kSpatialAxes) {
        for (PauliAxis b : kSpatialAxes) {
            complex acc{0, 0};
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    if (k != l) acc += std::polar(1.0, -phase_per_site * (k - l)) * table.pair(k, a, l, b);
                }
            }
            t.at(a, b) = acc;
        }
    }
    t.available.fill(true);
    return t;
}

int SymmetrizedSolution::column_of(Unknown u) const {
    auto it = std::find(columns.begin(), columns.end(), u);
    return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

SymmetrizedSolution solve_symmetrized(const RecordSet& records, double phase_per_site, const SolveOptions& options) {
    if (records.n_sites < 2) throw DomainError("record set needs n_sites >= 2");
    std::vector<const MeasurementSetting*> settings;
    std::vector<double> intensities, variances;
    for (const auto& r : records.records) {
        settings.push_back(&r.setting);
        intensities.push_back(r.intensity);
        variances.push_back(r.variance);
    }
    Assembly as = assemble(settings, intensities, variances, records.n_sites, phase_per_site, options);

    SymmetrizedSolution sol;
    sol.columns = as.columns;
    sol.n_records = static_cast<int>(as.rows.size());
    Eigen::MatrixXd a = restrict(as.rows, as.columns);
    Eigen::VectorXd b(a.rows());
    Eigen::VectorXd w = Eigen::VectorXd::Ones(a.rows());
    sol.weighted = std::all_of(as.rows.begin(), as.rows.end(), [](const Row& r) { return r.variance > 0; });
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        b(i) = as.rows[static_cast<std::size_t>(i)].rhs;
        if (sol.weighted) w(i) = 1.0 / std::sqrt(as.rows[static_cast<std::size_t>(i)].variance);
    }
    Eigen::MatrixXd aw = w.asDiagonal() * a;
    Eigen::VectorXd bw = w.asDiagonal() * b;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(aw, Eigen::ComputeThinU | Eigen::ComputeThinV);
    sol.values = svd.solve(bw);
    sol.condition_number = condition_number(a);

    Eigen::VectorXd residual = bw - aw * sol.values;
    sol.residual_norm = residual.norm();
    const auto dof = a.rows() - a.cols();
    // (A^T W A)^{-1} = V S^{-2} V^T
    Eigen::VectorXd inv_s2 = svd.singularValues().array().square().inverse();
    Eigen::MatrixXd normal_inverse = svd.matrixV() * inv_s2.asDiagonal() * svd.matrixV().transpose();
    if (sol.weighted) {
        sol.covariance = normal_inverse;
        sol.chi2_per_dof = dof > 0 ? residual.squaredNorm() / static_cast<double>(dof) : 0.0;
        sol.residual_flag = dof > 0 && sol.chi2_per_dof > 1.0 + 5.0 * std::sqrt(2.0 / static_cast<double>(dof));
    } else {
        double s2 = dof > 0 ? residual.squaredNorm() / static_cast<double>(dof) : 0.0;
        sol.covariance = s2 * normal_inverse;
        sol.chi2_per_dof = s2;
        sol.residual_flag = sol.residual_norm > 1e-8 * std::max(b.norm(), std::numeric_limits<double>::min()) &&
                            sol.residual_norm > 1e-300;
    }

    auto value = [&](Unknown u) -> std::optional<double> {
        int c = sol.column_of(u);
        if (c < 0) return std::nullopt;
        return sol.values(c);
    };
    auto& t = sol.correlators;
    t.phase_per_site = phase_per_site;
    const std::pair<PauliAxis, Unknown> diagonal[3] = {
        {PauliAxis::X, Unknown::Txx}, {PauliAxis::Y, Unknown::Tyy}, {PauliAxis::Z, Unknown::Tzz}};
    for (auto [axis, u] : diagonal) {
        if (auto v = value(u)) {
            t.at(axis, axis) = *v;
            t.available[static_cast<std::size_t>(axis_index(axis) * 4)] = true;
        }
    }
    struct OffDiagonal {
        PauliAxis a, b;
        Unknown re, im;
    };
    const OffDiagonal off[3] = {{PauliAxis::X, PauliAxis::Y, Unknown::ReTxy, Unknown::ImTxy},
                                {PauliAxis::X, PauliAxis::Z, Unknown::ReTxz, Unknown::ImTxz},
                                {PauliAxis::Y, PauliAxis::Z, Unknown::ReTyz, Unknown::ImTyz}};
    for (const auto& o : off) {
        auto re = value(o.re);
        if (!re) continue;
        complex z(*re, value(o.im).value_or(0.0));
        t.at(o.a, o.b) = z;
        t.at(o.b, o.a) = std::conj(z);
        t.available[static_cast<std::size_t>(axis_index(o.a) * 3 + axis_index(o.b))] = true;
        t.available[static_cast<std::size_t>(axis_index(o.b) * 3 + axis_index(o.a))] = true;
    }
    const Unknown singles[3] = {Unknown::Sx, Unknown::Sy, Unknown::Sz};
    for (int i = 0; i < 3; ++i) {
        int c = sol.column_of(singles[i]);
        if (c < 0) continue;
        sol.singles.sums[static_cast<std::size_t>(i)] = sol.values(c);
        sol.singles.available[static_cast<std::size_t>(i)] = true;
        sol.singles.variance[static_cast<std::size_t>(i)] = sol.covariance(c, c);
    }
    return sol;
}

std::vector<double> record_phases(const RecordSet& records, double tolerance) {
    std::vector<double> phases;
    for (const auto& r : records.records) {
        double p = std::abs(wrap_phase(r.setting.phase_per_site));
        bool known = std::any_of(phases.begin(), phases.end(), [&](double q) { return std::abs(q - p) <= tolerance; });
        if (!known) phases.push_back(p);
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

namespace {

SingleSpinSums combine_singles(const std::vector<SymmetrizedSolution>& solutions) {
    SingleSpinSums out;
    for (std::size_t i = 0; i < 3; ++i) {
        double num = 0, den = 0, plain = 0;
        int count = 0;
        bool weighted = true;
        for (const auto& s : solutions) {
            if (!s.singles.available[i]) continue;
            ++count;
            plain += s.singles.sums[i];
            double v = s.singles.variance[i];
            if (s.weighted && v > 0) {
                num += s.singles.sums[i] / v;
                den += 1.0 / v;
            } else {
                weighted = false;
            }
        }
        if (count == 0) continue;
        out.available[i] = true;
        if (weighted && den > 0) {
            out.sums[i] = num / den;
            out.variance[i] = 1.0 / den;
        } else {
            out.sums[i] = plain / count;
        }
    }
    return out;
}

}  // namespace

SingleSpinSums single_spin_averages(const RecordSet& records, const SolveOptions& options) {
    std::array<bool, 3> present{}, sensitive{};
    for (const auto& r : records.records) {
        auto f = static_cast<std::size_t>(frame_index(r.setting.rotation));
        present[f] = true;
        if (r.setting.coeffs.polarization_weight() != 0) sensitive[f] = true;
    }
    for (RotationTag tag : kFrames) {
        auto f = static_cast<std::size_t>(frame_index(tag));
        if (present[f] && !sensitive[f]) {
            throw DesignError("frame " + to_string(tag) +
                              " has no setting with Im(alpha_x alpha_y^*) != 0; its single-spin sum is undetermined");
        }
    }
    if (!present[0]) throw DesignError("no unrotated records: sum_k <sigma_k^z> is undetermined");
    std::vector<SymmetrizedSolution> solutions;
    for (double p : record_phases(records, options.phase_tolerance)) {
        solutions.push_back(solve_symmetrized(records, p, options));
    }
    return combine_singles(solutions);
}

SeparationCorrelators separation_correlators(const CorrelationTable& table) {
    SeparationCorrelators g;
    g.n_sites = table.n_sites();
    g.values.resize(static_cast<std::size_t>(g.n_sites - 1));
    for (int m = 1; m < g.n_sites; ++m) {
        for (PauliAxis a : kSpatialAxes) {
            for (PauliAxis b : kSpatialAxes) {
                double s = 0;
                for (int k = 0; k + m < g.n_sites; ++k) s += table.pair(k, a, k + m, b);
                g.values[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(axis_index(a) * 3 + axis_index(b))] = s;
            }
        }
    }
    g.available.fill(true);
    return g;
}

SeparationCorrelators scan_to_separations(std::span<const SymmetrizedCorrelators> scan, int n_sites,
                                          double condition_cap) {
    if (n_sites < 2) throw DomainError("scan_to_separations needs n_sites >= 2");
    const int unknowns = n_sites - 1;
    // Fold every phase into [0, pi] using T^{ab}(-p) = T^{ba}(p).
    std::vector<SymmetrizedCorrelators> folded;
    for (const auto& t : scan) {
        double p = wrap_phase(t.phase_per_site);
        SymmetrizedCorrelators f = t;
        if (p < 0) {
            p = -p;
            for (PauliAxis a : kSpatialAxes) {
                for (PauliAxis b : kSpatialAxes) {
                    f.at(a, b) = t.at(b, a);
                    f.available[static_cast<std::size_t>(axis_index(a) * 3 + axis_index(b))] = t.has(b, a);
                }
            }
        }
        f.phase_per_site = p;
        folded.push_back(f);
    }
    std::vector<double> distinct;
    for (const auto& f : folded) {
        if (std::none_of(distinct.begin(), distinct.end(),
                         [&](double q) { return std::abs(q - f.phase_per_site) <= 1e-9; })) {
            distinct.push_back(f.phase_per_site);
        }
    }
    if (static_cast<int>(distinct.size()) < unknowns) {
        throw DesignError("separation scan needs at least " + std::to_string(unknowns) +
                          " distinct phases in [0, pi] for N = " + std::to_string(n_sites) + ", got " +
                          std::to_string(distinct.size()));
    }

    const auto rows = static_cast<Eigen::Index>(folded.size());
    Eigen::MatrixXd cosines(rows, unknowns), sines(rows, unknowns);
    for (Eigen::Index j = 0; j < rows; ++j) {
        for (int m = 1; m <= unknowns; ++m) {
            double p = folded[static_cast<std::size_t>(j)].phase_per_site;
            cosines(j, m - 1) = std::cos(p * m);
            sines(j, m - 1) = std::sin(p * m);
        }
    }
    SeparationCorrelators g;
    g.n_sites = n_sites;
    g.values.assign(static_cast<std::size_t>(unknowns), {});
    g.cosine_condition = condition_number(cosines);
    g.sine_condition = condition_number(sines);
    if (!(g.cosine_condition <= condition_cap)) {
        throw DesignError("cosine system of the separation scan is ill-conditioned (condition number " +
                          format_double(g.cosine_condition) + ")");
    }
    const bool sine_ok = g.sine_condition <= condition_cap;
    Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(cosines, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(sines, Eigen::ComputeThinU | Eigen::ComputeThinV);

    auto all_have = [&](PauliAxis a, PauliAxis b) {
        return std::all_of(folded.begin(), folded.end(), [&](const auto& f) { return f.has(a, b); });
    };
    auto set = [&](int m, PauliAxis a, PauliAxis b, double v) {
        g.values[static_cast<std::size_t>(m)][static_cast<std::size_t>(axis_index(a) * 3 + axis_index(b))] = v;
    };
    for (int ia = 0; ia < 3; ++ia) {
        for (int ib = ia; ib < 3; ++ib) {
            PauliAxis a = kSpatialAxes[ia], b = kSpatialAxes[ib];
            if (!all_have(a, b)) continue;
            Eigen::VectorXd re(rows), im(rows);
            for (Eigen::Index j = 0; j < rows; ++j) {
                re(j) = folded[static_cast<std::size_t>(j)].at(a, b).real();
                im(j) = folded[static_cast<std::size_t>(j)].at(a, b).imag();
            }
            Eigen::VectorXd sum = cos_svd.solve(re);  // G^{ab} + G^{ba}
            if (a == b) {
                for (int m = 0; m < unknowns; ++m) set(m, a, a, sum(m) / 2.0);
                g.available[static_cast<std::size_t>(ia * 4)] = true;
                continue;
            }
            if (!sine_ok) continue;
            Eigen::VectorXd diff = sin_svd.solve(im);  // G^{ab} - G^{ba}
            for (int m = 0; m < unknowns; ++m) {
                set(m, a, b, (sum(m) + diff(m)) / 2.0);
                set(m, b, a, (sum(m) - diff(m)) / 2.0);
            }
            g.available[static_cast<std::size_t>(ia * 3 + ib)] = true;
            g.available[static_cast<std::size_t>(ib * 3 + ia)] = true;
        }
    }
    return g;
}

TwoBodyRDM two_body_rdm(const SeparationCorrelators& separations, const SingleSpinSums& singles, int separation,
                        double tolerance) {
    const int n = separations.n_sites;
    if (separation < 1 || separation >= n) {
        throw DomainError("separation must be in [1, " + std::to_string(n - 1) + "]");
    }
    std::string missing;
    for (PauliAxis a : kSpatialAxes) {
        for (PauliAxis b : kSpatialAxes) {
            if (!separations.available[static_cast<std::size_t>(axis_index(a) * 3 + axis_index(b))]) {
                missing += std::string(" G^") + axis_name(a) + axis_name(b);
            }
        }
        if (!singles.available[static_cast<std::size_t>(axis_index(a))]) missing += std::string(" sum_") + axis_name(a);
    }
    if (!missing.empty()) throw DomainError("two-body RDM is missing components:" + missing);

    auto kron = [](const Mat2& l, const Mat2& r) {
        Eigen::Matrix4cd out;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = l(i, j) * r;
        }
        return out;
    };
    const double pairs = n - separation;
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
    for (PauliAxis a : kSpatialAxes) {
        double s = singles.sums[static_cast<std::size_t>(axis_index(a))] / n;
        rho += s * kron(pauli_matrix(a), Mat2::Identity());
        rho += s * kron(Mat2::Identity(), pauli_matrix(a));
        for (PauliAxis b : kSpatialAxes) {
            rho += separations.at(separation, a, b) / pairs * kron(pauli_matrix(a), pauli_matrix(b));
        }
    }
    rho /= 4.0;
    TwoBodyRDM out;
    out.separation = separation;
    out.rho = rho;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho, Eigen::EigenvaluesOnly);
    out.eigenvalues = eig.eigenvalues();
    out.physical = out.eigenvalues.minCoeff() >= -tolerance;
    return out;
}

WitnessReconstruction witness_estimate_from_records(const RecordSet& records, const ChainGeometry& geometry,
                                                    const WitnessSpec& spec, const SolveOptions& options) {
    WitnessReconstruction out;
    if (spec.is_trivial()) return out;
    if (records.n_sites != geometry.n_sites()) throw DomainError("records and geometry site counts differ");
    const double norm = static_cast<double>(records.n_sites) * (records.n_sites - 1);

    struct Group {
        double phase;
        SymmetrizedSolution solution;
        Eigen::VectorXd gradient;
    };
    std::vector<Group> groups;
    const Unknown diagonal[3] = {Unknown::Txx, Unknown::Tyy, Unknown::Tzz};
    for (PauliAxis a : kSpatialAxes) {
        double c = spec.coefficient(a);
        if (c == 0) continue;
        double p = spec.wave_vector(a).phase_per_site(geometry);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return same_phase(g.phase, p, options.phase_tolerance) || same_phase(g.phase, -p, options.phase_tolerance);
        });
        if (it == groups.end()) {
            SymmetrizedSolution sol = solve_symmetrized(records, p, options);
            Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sol.columns.size()));
            groups.push_back({p, std::move(sol), std::move(grad)});
            it = std::prev(groups.end());
        }
        int col = it->solution.column_of(diagonal[axis_index(a)]);
        if (col < 0) {
            throw DesignError(std::string("records do not determine T^") + axis_name(a) + axis_name(a) +
                              " at phase " + format_double(p) +
                              (a == PauliAxis::Z ? "; z access needs x_access or y_access records" : ""));
        }
        out.value -= c * it->solution.values(col) / norm;
        it->gradient(col) -= c / norm;
    }
    for (const auto& g : groups) out.variance += g.gradient.dot(g.solution.covariance * g.gradient);
    return out;
}

double witness_from_records(const RecordSet& records, const ChainGeometry& geometry, const WitnessSpec& spec,
                            const SolveOptions& options) {
    return witness_estimate_from_records(records, geometry, spec, options).value;
}

RecordSet simulate_records(const MixedState& state, const ChainGeometry& geometry, std::span<const Design> designs,
                           const LaserCavitySettings& base, complex pulse_value, double t) {
    base.validate();
    if (state.n_sites() != geometry.n_sites()) throw DomainError("state and geometry site counts differ");
    std::array<std::optional<CorrelationTable>, 3> tables;
    RecordSet out;
    out.n_sites = state.n_sites();
    out.vacuum_rabi = base.vacuum_rabi;
    out.detuning = base.detuning;
    const double calibration = 2.0 * base.cavity_linewidth * std::norm(pulse_value);
    for (const auto& d : designs) {
        for (const auto& s : d.settings) {
            auto f = static_cast<std::size_t>(frame_index(s.rotation));
            if (!tables[f]) {
                tables[f] = s.rotation == RotationTag::none
                                ? CorrelationTable::from(state)
                                : CorrelationTable::from(apply_single_qubit_unitary(state, hadamard_rotation(s.rotation)));
            }
            IntensityResult r =
                intensity_components(*tables[f], geometry, s.coeffs, WaveVector::along_chain(geometry, s.phase_per_site));
            MeasurementRecord rec;
            rec.setting = s;
            rec.intensity = r.normalized();
            rec.output_intensity = calibration * rec.intensity;
            rec.time = t;
            out.records.push_back(rec);
        }
    }
    return out;
}

RecordSet simulate_records(const SpinState& state, const ChainGeometry& geometry, std::span<const Design> designs,
                           const LaserCavitySettings& base, complex pulse_value, double t) {
    return simulate_records(MixedState(state), geometry, designs, base, pulse_value, t);
}

ReconstructionReport reconstruct(const RecordSet& records, const ChainGeometry& geometry,
                                 const std::optional<WitnessSpec>& spec, const SolveOptions& options) {
    if (records.n_sites != geometry.n_sites()) throw DomainError("records and geometry site counts differ");
    ReconstructionReport report;
    report.n_sites = records.n_sites;
    for (double p : record_phases(records, options.phase_tolerance)) {
        report.solutions.push_back(solve_symmetrized(records, p, options));
    }
    report.singles = combine_singles(report.solutions);
    std::vector<SymmetrizedCorrelators> scan;
    for (const auto& s : report.solutions) scan.push_back(s.correlators);
    try {
        report.separations = scan_to_separations(scan, records.n_sites, options.condition_cap);
    } catch (const DesignError& e) {
        report.separation_error = e.what();
    }
    if (report.separations) {
        bool complete = std::all_of(report.separations->available.begin(), report.separations->available.end(),
                                    [](bool b) { return b; }) &&
                        std::all_of(report.singles.available.begin(), report.singles.available.end(),
                                    [](bool b) { return b; });
        if (complete) {
            for (int m = 1; m < records.n_sites; ++m) {
                report.rdms.push_back(two_body_rdm(*report.separations, report.singles, m));
            }
        }
    }
    if (spec) report.witness = witness_estimate_from_records(records, geometry, *spec, options);
    auto zero = std::find_if(report.solutions.begin(), report.solutions.end(), [&](const SymmetrizedSolution& s) {
        return self_conjugate(s.correlators.phase_per_site, options.phase_tolerance) &&
               std::abs(wrap_phase(s.correlators.phase_per_site)) <= options.phase_tolerance;
    });
    if (zero != report.solutions.end() && zero->column_of(Unknown::Tzz) >= 0) {
        report.witness_dicke = witness_estimate_from_records(records, geometry, WitnessSpec::dicke(), options);
    }
    return report;
}

}  // namespace braggwit
