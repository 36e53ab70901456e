#include <benchmark/benchmark.h>

#include "qnet/cluster/emission.hpp"
#include "qnet/interface/emitter.hpp"
#include "qnet/qsim/gates.hpp"
#include "qnet/qsim/ops.hpp"
#include "qnet/repeater/repeater.hpp"

namespace {

using namespace qnet;

qsim::MixedState random_mixed(int n_qubits, uint64_t seed) {
  qsim::Register reg;
  for (int i = 0; i < n_qubits; ++i) reg.push_back({i, qsim::QubitKind::Spin});
  const int d = 1 << n_qubits;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(d, d);
  a.noalias() = (a * a.adjoint()).eval();
  a /= a.trace();
  (void)seed;
  return qsim::MixedState{reg, a};
}

void BM_ApplyChannelCz(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = random_mixed(n, 7);
  s.reg[1].kind = qsim::QubitKind::PhotonPolarization;
  auto p = interface::EmitterParams::ideal_cavity(100.0);
  auto ch = interface::spin_photon_cz_channel(p, s.reg[1], s.reg[0]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsim::apply_channel(s, ch));
  }
}
BENCHMARK(BM_ApplyChannelCz)->Arg(4)->Arg(6)->Arg(8);

void BM_EmitGhz(benchmark::State& state) {
  cluster::EmissionConfig cfg;
  cfg.n_photons = static_cast<int>(state.range(0));
  cfg.emitter = interface::EmitterParams::ideal_waveguide();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster::emit_ghz(cfg));
  }
}
BENCHMARK(BM_EmitGhz)->Arg(2)->Arg(4)->Arg(6);

void BM_Emit1dCluster(benchmark::State& state) {
  cluster::EmissionConfig cfg;
  cfg.n_photons = static_cast<int>(state.range(0));
  cfg.emitter = interface::EmitterParams::ideal_waveguide();
  cfg.emitter.gamma_dp = 0.05;
  cfg.cycle_time = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster::emit_1d_cluster(cfg));
  }
}
BENCHMARK(BM_Emit1dCluster)->Arg(2)->Arg(4)->Arg(6);

void BM_ParityLossSuccess(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  repeater::ParityCode code{n, n};
  double eps = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(repeater::parity_loss_success(code, eps));
  }
}
BENCHMARK(BM_ParityLossSuccess)->Arg(2)->Arg(8)->Arg(32);

void BM_ParityEncode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  repeater::ParityCode code{n, n};
  const std::complex<double> a(0.6, 0.0), b(0.8, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(repeater::parity_encode(a, b, code));
  }
}
BENCHMARK(BM_ParityEncode)->Arg(2)->Arg(3);

void BM_EntanglementSwap(benchmark::State& state) {
  qsim::QubitLabel a{0}, b1{1}, b2{2}, c{3};
  auto ab = qsim::werner_state(0.9, a, b1);
  auto bc = qsim::werner_state(0.9, b2, c);
  analyzers::BsaModel m;
  m.kind = analyzers::BsaKind::ActiveTwoSpin;
  m.emitter = interface::EmitterParams::ideal_waveguide();
  qsim::Rng rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(repeater::entanglement_swap(ab, bc, m, rng));
  }
}
BENCHMARK(BM_EntanglementSwap);

void BM_SimulateTwoWay(benchmark::State& state) {
  repeater::RepeaterConfig cfg;
  cfg.total_distance_km = 40.0;
  cfg.n_links = 2;
  cfg.link.length_km = 20.0;
  cfg.link.attenuation_db_per_km = 0.2;
  cfg.emitter = interface::EmitterParams::ideal_waveguide();
  cfg.bsa.kind = analyzers::BsaKind::LinearOptics;
  cfg.bsa.emitter = cfg.emitter;
  const auto trials = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(repeater::simulate_two_way(cfg, 5, trials));
  }
}
BENCHMARK(BM_SimulateTwoWay)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
