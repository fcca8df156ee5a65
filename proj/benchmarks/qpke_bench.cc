// Copyright 2026 The qpke Authors
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


// Microbenchmarks for the simulator, the primitives and the scheme layers.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "qpke/base.h"
#include "qpke/hash.h"
#include "qpke/pure.h"
#include "qpke/qsim.h"
#include "qpke/signature.h"
#include "qpke/tmac.h"
#include "qpke/transforms/cca.h"
#include "qpke/transforms/cva.h"
#include "qpke/transforms/onecca.h"

namespace {

using namespace qpke;

base::BaseParams profile(int i) {
  switch (i) {
    case 0: return base::BaseParams::micro();
    case 1: return base::BaseParams::toy();
    default: return base::BaseParams::demo();
  }
}

const char* profile_name(int i) { return i == 0 ? "micro" : i == 1 ? "toy" : "demo"; }

qsim::SparseState random_state(std::size_t width, std::size_t terms, Rng& rng) {
  const qsim::RegisterLayout layout{{"A", 1}, {"B", width - 1}};
  std::vector<std::pair<BitString, qsim::Amplitude>> amps;
  for (std::size_t i = 0; i < terms; ++i) {
    amps.emplace_back(rng.bits(width), qsim::Amplitude(rng.uniform(), rng.uniform()));
  }
  return qsim::superpose(layout, amps);
}

void BM_Hash(benchmark::State& state) {
  Rng rng(1);
  const BitString msg = rng.bits(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primitives::hash("bench", msg, 128));
  state.SetBytesProcessed(state.iterations() * state.range(0) / 8);
}
BENCHMARK(BM_Hash)->Arg(256)->Arg(4096)->Arg(65536);

void BM_CoherentEval(benchmark::State& state) {
  Rng rng(2);
  const auto s = random_state(64, state.range(0), rng);
  const std::vector<std::string> in{"B"};
  for (auto _ : state) {
    auto t = qsim::add_register(s, "D", 1);
    benchmark::DoNotOptimize(qsim::coherent_eval(
        t, [](const BitString& x) { return BitString::from_uint(x.popcount() % 2, 1); }, in, "D"));
  }
}
BENCHMARK(BM_CoherentEval)->Arg(2)->Arg(64)->Arg(1024);

void BM_MeasureHadamard(benchmark::State& state) {
  Rng rng(3);
  const auto s = random_state(512, state.range(0), rng);
  const std::vector<std::string> regs{"A", "B"};
  for (auto _ : state) benchmark::DoNotOptimize(qsim::measure_hadamard_all(s, regs, rng));
}
BENCHMARK(BM_MeasureHadamard)->Arg(2)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_SigSign(benchmark::State& state) {
  const auto params = profile(state.range(0)).sig;
  Rng rng(4);
  const auto kp = primitives::sig_gen(rng.bits(primitives::kSigKeyBits), params);
  for (auto _ : state) benchmark::DoNotOptimize(primitives::sig_sign(kp.sk, rng.bits(64)));
  state.SetLabel(profile_name(state.range(0)));
}
BENCHMARK(BM_SigSign)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_SigVerify(benchmark::State& state) {
  const auto params = profile(state.range(0)).sig;
  Rng rng(5);
  const auto kp = primitives::sig_gen(rng.bits(primitives::kSigKeyBits), params);
  const BitString msg = rng.bits(64);
  const BitString sig = primitives::sig_sign(kp.sk, msg);
  for (auto _ : state) benchmark::DoNotOptimize(primitives::sig_verify(kp.vk, msg, sig, params));
  state.SetLabel(profile_name(state.range(0)));
}
BENCHMARK(BM_SigVerify)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_TmacSign(benchmark::State& state) {
  const primitives::TmacParams params;
  Rng rng(6);
  const auto key = primitives::tmac_keygen(rng.bits(128), params);
  const BitString msg = rng.bits(64);
  for (auto _ : state) {
    auto token = primitives::tmac_token(key);
    benchmark::DoNotOptimize(primitives::tmac_sign(token, msg, rng));
  }
}
BENCHMARK(BM_TmacSign)->Unit(benchmark::kMicrosecond);

void BM_BasePkgen(benchmark::State& state) {
  const auto params = profile(state.range(0));
  Rng rng(7);
  const auto [sk, vk] = base::base_skgen(rng.bits(128), params);
  for (auto _ : state) benchmark::DoNotOptimize(base::base_pkgen(sk, params, rng));
  state.SetLabel(profile_name(state.range(0)));
}
BENCHMARK(BM_BasePkgen)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_BaseEnc(benchmark::State& state) {
  const auto params = profile(state.range(0));
  Rng rng(8);
  const auto [sk, vk] = base::base_skgen(rng.bits(128), params);
  const auto pk = base::base_pkgen(sk, params, rng);
  for (auto _ : state) benchmark::DoNotOptimize(base::base_enc(vk, params, pk, true, rng));
  state.SetLabel(profile_name(state.range(0)));
}
BENCHMARK(BM_BaseEnc)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_BaseDec(benchmark::State& state) {
  const auto params = profile(state.range(0));
  Rng rng(9);
  const auto [sk, vk] = base::base_skgen(rng.bits(128), params);
  const auto ct = base::base_enc(vk, params, base::base_pkgen(sk, params, rng), true, rng);
  for (auto _ : state) benchmark::DoNotOptimize(base::base_dec(sk, params, ct));
  state.SetLabel(profile_name(state.range(0)));
}
BENCHMARK(BM_BaseDec)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_PureRoundTrip(benchmark::State& state) {
  pure::PureParams params;
  params.u = state.range(0);
  const pure::PureScheme scheme(params, 1);
  Rng rng(10);
  const auto [sk, vk] = scheme.skgen(rng.bits(128));
  const BitString msg = rng.bits(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme.dec(sk, scheme.enc(vk, scheme.pkgen(sk, rng), msg, rng)));
  }
}
BENCHMARK(BM_PureRoundTrip)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CcaRoundTrip(benchmark::State& state) {
  using Cva = transforms::Cva<base::BaseScheme>;
  using OneCca = transforms::OneCca<Cva>;
  const auto bind = primitives::SigParams::micro();
  const transforms::Cca<OneCca> scheme(
      OneCca(Cva(base::BaseScheme(base::BaseParams::micro(), 1 + bind.vk_len()), 1),
             transforms::OneCcaParams{bind, static_cast<std::size_t>(state.range(0))}),
      transforms::CcaParams{bind, {}});
  Rng rng(11);
  const auto [sk, vk] = scheme.skgen(rng.bits(128));
  const BitString msg = rng.bits(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme.dec(sk, scheme.enc(vk, scheme.pkgen(sk, rng), msg, rng)));
  }
  state.SetLabel("index bits " + std::to_string(state.range(0)));
}
BENCHMARK(BM_CcaRoundTrip)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
