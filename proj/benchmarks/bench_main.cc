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

#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "braggwit/noise.h"
#include "braggwit/reconstruction.h"
#include "braggwit/scattering.h"
#include "braggwit/structure_factor.h"

namespace bw = braggwit;

namespace {

void BM_CorrelationTable(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    bw::SpinState s = bw::build_random_pure(n, 1);
    for (auto _ : st) benchmark::DoNotOptimize(bw::CorrelationTable::from(s));
}
BENCHMARK(BM_CorrelationTable)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_WitnessDicke(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    bw::SpinState s = bw::build_dicke(n, n / 2);
    bw::ChainGeometry g(n);
    for (auto _ : st) benchmark::DoNotOptimize(bw::witness_dicke(s, g));
}
BENCHMARK(BM_WitnessDicke)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    bw::MixedState s(bw::build_dicke(n, n / 2));
    bw::ChainGeometry g(n);
    std::vector<bw::Design> designs;
    for (int j = 0; j < 2 * n; ++j) designs.push_back(bw::design_settings(j * std::numbers::pi / (2 * n - 1), true));
    bw::RecordSet rs = bw::simulate_records(s, g, designs, {}, bw::complex{1, 0}, 0);
    for (auto _ : st) benchmark::DoNotOptimize(bw::reconstruct(rs, g, std::nullopt));
}
BENCHMARK(BM_Reconstruct)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PulseResponse(benchmark::State& st) {
    bw::LaserCavitySettings set;
    set.cavity_detuning = 0.5;
    bw::PulseProfile pulse = bw::PulseProfile::square(10);
    double t = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(bw::pulse_response(pulse, set, t));
        t = t < 20 ? t + 0.37 : 0;
    }
}
BENCHMARK(BM_PulseResponse);

void BM_NoisyPipeline(benchmark::State& st) {
    bw::SpinState d = bw::build_dicke(4, 2);
    bw::ChainGeometry g(4);
    bw::DetectionModel m;
    m.shots = static_cast<std::uint64_t>(st.range(0));
    m.mean_photons = 10;
    for (auto _ : st) benchmark::DoNotOptimize(bw::noisy_witness_pipeline(d, g, {}, m, bw::WitnessSpec::dicke()));
}
BENCHMARK(BM_NoisyPipeline)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
