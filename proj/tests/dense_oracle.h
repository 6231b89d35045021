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

#pragma once

// Dense-operator reference used to check the fast paths. Everything here is
// built from Kronecker products of 2x2 matrices, so it shares no code with
// the bit-flip kernels under test. Site 0 is the rightmost factor.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "braggwit/spin_state.h"

namespace oracle {

using Dense = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Dense kron(const Dense& a, const Dense& b) {
    Dense out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

inline Dense pauli(char a) {
    Dense m(2, 2);
    using c = std::complex<double>;
    switch (a) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'y': m << 0, c(0, -1), c(0, 1), 0; break;
        case 'z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1;
    }
    return m;
}

// Operator acting as `ops[j]` on site j; sites not listed get the identity.
inline Dense site_operator(int n, const std::vector<std::pair<int, Dense>>& ops) {
    Dense out = Dense::Identity(1, 1);
    for (int site = n - 1; site >= 0; --site) {
        Dense factor = pauli('i');
        for (const auto& [s, m] : ops) {
            if (s == site) factor = m;
        }
        out = kron(out, factor);
    }
    return out;
}

inline Vec to_vec(const braggwit::SpinState& s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitude(i);
    return v;
}

inline std::complex<double> expect(const Vec& psi, const Dense& op) { return psi.dot(op * psi); }

inline std::complex<double> two_site(const braggwit::SpinState& s, int k, char a, int l, char b) {
    int n = s.n_sites();
    Dense op = k == l ? site_operator(n, {{k, pauli(a) * pauli(b)}})
                      : site_operator(n, {{k, pauli(a)}}) * site_operator(n, {{l, pauli(b)}});
    return expect(to_vec(s), op);
}

// <psi| sum_{i<j} e^{i p (i-j)} sigma_i^a sigma_j^b |psi> + the same with i > j.
inline std::complex<double> ordered_pair_sum(const braggwit::SpinState& s, char a, char b, double p) {
    int n = s.n_sites();
    Dense m = Dense::Zero(1 << n, 1 << n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            m += std::polar(1.0, p * (i - j)) * site_operator(n, {{i, pauli(a)}}) * site_operator(n, {{j, pauli(b)}});
        }
    }
    return expect(to_vec(s), m);
}

// Lowering operator |0><1| on one site in the +1/-1 z basis of this library.
inline Dense lowering() {
    Dense m = Dense::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

}  // namespace oracle
