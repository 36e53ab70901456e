#include "qnet/repeater/repeater.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qnet/qsim/gates.hpp"

namespace qnet::repeater {

using analyzers::BellOutcome;
using analyzers::BsaModel;
using qsim::Matrix;
using qsim::MixedState;
using qsim::PureState;
using qsim::QubitKind;
using qsim::QubitLabel;
using qsim::Rng;

void ParityCode::validate() const {
  if (n_blocks < 1 || block_size < 1)
    throw std::invalid_argument("parity code requires n, m >= 1");
}

void RepeaterConfig::validate() const {
  link.validate();
  emitter.validate();
  bsa.validate();
  if (n_links < 1) throw std::invalid_argument("n_links must be >= 1");
  if (mode == Mode::TwoWay && (n_links & (n_links - 1)) != 0)
    throw std::invalid_argument("two-way mode requires n_links to be a power of 2");
  if (std::abs(n_links * link.length_km - total_distance_km) > 1e-9 * std::max(1.0, total_distance_km))
    throw std::invalid_argument("n_links * link length must equal total distance");
  if (attempt_rate <= 0.0) throw std::invalid_argument("attempt_rate must be > 0");
  if (purification_rounds < 0) throw std::invalid_argument("purification_rounds must be >= 0");
}

double link_attempt_success(const RepeaterConfig& cfg) {
  interface::LinkParams half = cfg.link;
  half.length_km = cfg.link.length_km / 2.0;
  const double eta_half = interface::fiber_transmissivity(half) * cfg.emitter.eta_out;
  return eta_half * eta_half * analyzers::bsa_success_prob(cfg.bsa);
}

namespace {

MixedState dephase_pair(const MixedState& pair, double t, const interface::EmitterParams& p) {
  if (t <= 0.0) return pair;
  MixedState s = pair;
  for (const auto& q : pair.reg)
    s = qsim::apply_channel(s, interface::memory_dephasing_channel(t, p, q));
  return s;
}

void apply_random_pauli(MixedState& s, const QubitLabel& q, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0: s = qsim::apply_unitary(s, qsim::pauli_x(), {q}); break;
    case 1: s = qsim::apply_unitary(s, qsim::pauli_z(), {q}); break;
    default: s = qsim::apply_unitary(s, Matrix(qsim::pauli_z() * qsim::pauli_x()), {q}); break;
  }
}

}  // namespace

LinkResult generate_link_entanglement(const RepeaterConfig& cfg, Rng& rng) {
  cfg.validate();
  const double p = link_attempt_success(cfg);
  const double t_attempt = cfg.link.length_km / cfg.link.signal_speed_km_per_s;

  uint64_t attempts = cfg.max_attempts + 1;
  if (p > 0.0) {
    std::geometric_distribution<uint64_t> failures(p);
    attempts = failures(rng) + 1;
  }
  if (attempts > cfg.max_attempts)
    throw std::runtime_error("link generation exceeded the attempt guard");

  LinkResult out;
  out.wait_s = static_cast<double>(attempts) * t_attempt;
  const QubitLabel a{0, QubitKind::Spin}, b{1, QubitKind::Spin};
  out.pair = MixedState::from_pure(qsim::bell_pure(0, a, b));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) < analyzers::bsa_error_prob(cfg.bsa)) apply_random_pauli(out.pair, b, rng);
  // Both memories dephase from photon emission until the herald returns.
  out.pair = dephase_pair(out.pair, t_attempt, cfg.emitter);
  return out;
}

std::optional<MixedState> entanglement_swap(const MixedState& ab, const MixedState& bc,
                                            const BsaModel& m, Rng& rng) {
  if (ab.reg.size() != 2 || bc.reg.size() != 2)
    throw std::invalid_argument("entanglement_swap expects two 2-qubit states");
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) >= analyzers::bsa_success_prob(m)) return std::nullopt;

  const QubitLabel b1 = ab.reg[1], b2 = bc.reg[0], c = bc.reg[1];
  MixedState joint = qsim::tensor(ab, bc);
  auto meas = qsim::measure_projective(joint, qsim::bell_projectors(), {b1, b2}, &rng);
  MixedState s = qsim::partial_trace(meas.post, {b1, b2});
  switch (meas.outcome) {
    case 1: s = qsim::apply_unitary(s, qsim::pauli_z(), {c}); break;
    case 2: s = qsim::apply_unitary(s, qsim::pauli_x(), {c}); break;
    case 3: s = qsim::apply_unitary(s, Matrix(qsim::pauli_z() * qsim::pauli_x()), {c}); break;
    default: break;
  }
  if (u01(rng) < analyzers::bsa_error_prob(m)) apply_random_pauli(s, c, rng);
  return s;
}

std::optional<MixedState> purify(const MixedState& pair1, const MixedState& pair2, Rng& rng) {
  if (pair1.reg.size() != 2 || pair2.reg.size() != 2)
    throw std::invalid_argument("purify expects two 2-qubit states");
  const QubitLabel a1 = pair1.reg[0], b1 = pair1.reg[1];
  const QubitLabel a2 = pair2.reg[0], b2 = pair2.reg[1];

  MixedState joint = qsim::tensor(pair1, pair2);
  joint = qsim::apply_unitary(joint, qsim::cnot(), {a1, a2});
  joint = qsim::apply_unitary(joint, qsim::cnot(), {b1, b2});
  auto ma = qsim::measure_projective(joint, qsim::z_projectors(), {a2}, &rng);
  auto mb = qsim::measure_projective(ma.post, qsim::z_projectors(), {b2}, &rng);
  if (ma.outcome != mb.outcome) return std::nullopt;
  return qsim::partial_trace(mb.post, {a2, b2});
}

namespace {

struct Segment {
  double t = 0.0;       // completion time relative to trial start
  MixedState pair;      // [left end, right end]
};

struct TwoWayTrial {
  const RepeaterConfig& cfg;
  Rng& rng;
  int next_id = 0;

  double signal_time(double span_km) const { return span_km / cfg.link.signal_speed_km_per_s; }

  Segment make_link(double start_time) {
    auto link = generate_link_entanglement(cfg, rng);
    // Relabel so concurrently living pairs stay disjoint.
    link.pair.reg[0].id = next_id++;
    link.pair.reg[1].id = next_id++;
    Segment s;
    s.t = start_time + link.wait_s;
    s.pair = std::move(link.pair);
    return s;
  }

  Segment make_purified_link(double start_time) {
    for (;;) {
      Segment main = make_link(start_time);
      bool ok = true;
      for (int round = 0; round < cfg.purification_rounds; ++round) {
        Segment aux = make_link(main.t);
        const double signal = signal_time(cfg.link.length_km);
        const double elapsed = (aux.t - main.t) + signal;
        main.pair = dephase_pair(main.pair, elapsed, cfg.emitter);
        aux.pair = dephase_pair(aux.pair, signal, cfg.emitter);
        main.t = aux.t + signal;
        auto res = purify(main.pair, aux.pair, rng);
        if (!res) {
          ok = false;
          start_time = main.t;
          break;
        }
        main.pair = std::move(*res);
      }
      if (ok) return main;
    }
  }

  Segment make_segment(int level, double start_time) {
    if (level == 0)
      return cfg.purification_rounds > 0 ? make_purified_link(start_time) : make_link(start_time);
    const double span_km = cfg.link.length_km * static_cast<double>(1 << level);
    for (;;) {
      Segment left = make_segment(level - 1, start_time);
      Segment right = make_segment(level - 1, start_time);
      const double ready = std::max(left.t, right.t);
      // The earlier segment idles in memory until its partner completes, and
      // both wait for the swap herald to reach the segment ends.
      const double signal = signal_time(span_km / 2.0);
      left.pair = dephase_pair(left.pair, ready - left.t + signal, cfg.emitter);
      right.pair = dephase_pair(right.pair, ready - right.t + signal, cfg.emitter);
      const double done = ready + signal;
      auto swapped = entanglement_swap(left.pair, right.pair, cfg.bsa, rng);
      if (swapped) {
        Segment s;
        s.t = done;
        s.pair = std::move(*swapped);
        return s;
      }
      start_time = done;
    }
  }
};

}  // namespace

SimResult simulate_two_way(const RepeaterConfig& cfg, uint64_t seed, uint64_t trials, int workers) {
  cfg.validate();
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const int levels = static_cast<int>(std::round(std::log2(cfg.n_links)));

  std::vector<double> wait(trials), fid(trials);
  auto run_range = [&](uint64_t begin, uint64_t end) {
    for (uint64_t i = begin; i < end; ++i) {
      Rng rng(qsim::trial_seed(seed, i));
      TwoWayTrial trial{cfg, rng};
      Segment s = trial.make_segment(levels, 0.0);
      wait[i] = s.t;
      fid[i] = qsim::fidelity(s.pair, qsim::bell_pure(0, s.pair.reg[0], s.pair.reg[1]));
    }
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const uint64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const uint64_t b = std::min<uint64_t>(w * chunk, trials);
      const uint64_t e = std::min<uint64_t>(b + chunk, trials);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& t : pool) t.join();
  }

  SimResult r;
  r.trials = trials;
  double wsum = 0.0, w2sum = 0.0, fsum = 0.0;
  double wmin = wait[0], wmax = wait[0];
  for (uint64_t i = 0; i < trials; ++i) {
    wsum += wait[i];
    w2sum += wait[i] * wait[i];
    fsum += fid[i];
    wmin = std::min(wmin, wait[i]);
    wmax = std::max(wmax, wait[i]);
  }
  r.mean_wait_s = wsum / static_cast<double>(trials);
  r.rate_hz = r.mean_wait_s > 0.0 ? 1.0 / r.mean_wait_s : 0.0;
  r.fidelity = fsum / static_cast<double>(trials);
  r.wait_distribution.mean = r.mean_wait_s;
  r.wait_distribution.stddev =
      std::sqrt(std::max(0.0, w2sum / static_cast<double>(trials) - r.mean_wait_s * r.mean_wait_s));
  r.wait_distribution.min = wmin;
  r.wait_distribution.max = wmax;
  r.wait_distribution.count = trials;
  return r;
}

PureState parity_encode(std::complex<double> alpha, std::complex<double> beta,
                        const ParityCode& code) {
  code.validate();
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > qsim::tolerances().unit_norm)
    throw std::invalid_argument("logical amplitudes must be normalized");
  const int n = code.n_blocks, m = code.block_size;
  if (n * m > qsim::max_qubits())
    throw std::invalid_argument("parity code exceeds the dense-register qubit cap");

  qsim::Register reg;
  for (int i = 0; i < n * m; ++i) reg.push_back(QubitLabel{i, QubitKind::PhotonPolarization});
  qsim::Vector amp = qsim::Vector::Zero(Eigen::Index{1} << (n * m));
  // Support: each block all-0 or all-1. Even-parity block patterns carry
  // alpha, odd-parity patterns beta, uniformly with weight 2^((1-n)/2).
  const double w = std::pow(2.0, 0.5 * (1.0 - n));
  for (uint64_t pattern = 0; pattern < (uint64_t{1} << n); ++pattern) {
    uint64_t idx = 0;
    int ones = 0;
    for (int blk = 0; blk < n; ++blk) {
      const uint64_t bit = (pattern >> (n - 1 - blk)) & 1;
      ones += static_cast<int>(bit);
      for (int j = 0; j < m; ++j) idx = (idx << 1) | bit;
    }
    amp(static_cast<Eigen::Index>(idx)) = w * (ones % 2 == 0 ? alpha : beta);
  }
  return PureState{reg, amp};
}

double parity_loss_success(const ParityCode& code, double epsilon) {
  code.validate();
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon must be in [0,1]");
  const int n = code.n_blocks, m = code.block_size;
  const double block_alive = 1.0 - std::pow(epsilon, m);       // keeps >= 1 photon
  const double block_full = std::pow(1.0 - epsilon, m);        // keeps all m
  const double alive_not_full = std::max(0.0, block_alive - block_full);
  const double p = std::pow(block_alive, n) - std::pow(alive_not_full, n);
  return std::min(1.0, std::max(0.0, p));
}

SimResult simulate_one_way(const RepeaterConfig& cfg, const ParityCode& code) {
  cfg.validate();
  code.validate();
  if (cfg.mode != Mode::OneWay) throw std::invalid_argument("config is not in one-way mode");

  const double hop_transmission =
      interface::fiber_transmissivity(cfg.link) * cfg.emitter.eta_out * cfg.emitter.eta_in;
  const double epsilon = 1.0 - hop_transmission;
  const double p_bsa = analyzers::bsa_success_prob(cfg.bsa);
  const double e_bsa = analyzers::bsa_error_prob(cfg.bsa);

  // Per station: the loss pattern must decode, and the teleportation-based
  // re-encoding performs n*m Bell measurements.
  const double p_station =
      parity_loss_success(code, epsilon) * std::pow(p_bsa, code.size());
  const double p_end = std::pow(p_station, cfg.n_links);

  SimResult r;
  r.trials = 1;
  r.rate_hz = cfg.attempt_rate * p_end;
  r.fidelity = std::pow(1.0 - e_bsa, static_cast<double>(code.size()) * cfg.n_links);
  r.mean_wait_s = cfg.total_distance_km / cfg.link.signal_speed_km_per_s;  // pure latency
  r.wait_distribution.mean = r.mean_wait_s;
  r.wait_distribution.min = r.wait_distribution.max = r.mean_wait_s;
  r.wait_distribution.count = 1;
  return r;
}

double qkd_key_fraction(double qber) {
  if (qber < 0.0 || qber > 0.5) throw std::invalid_argument("qber must be in [0, 0.5]");
  auto h = [](double q) {
    if (q <= 0.0 || q >= 1.0) return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
  };
  return std::max(0.0, 1.0 - 2.0 * h(qber));
}

}  // namespace qnet::repeater
