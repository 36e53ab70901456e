#pragma once

#include <complex>
#include <optional>

#include "qnet/analyzers/bsa.hpp"

namespace qnet::repeater {

enum class Mode { TwoWay, OneWay };

/// (n, m) quantum parity code: n blocks of m photons.
struct ParityCode {
  int n_blocks = 1;
  int block_size = 1;

  int size() const { return n_blocks * block_size; }
  void validate() const;
};

struct RepeaterConfig {
  double total_distance_km = 100.0;
  int n_links = 1;  // power of 2 for two-way nesting
  interface::LinkParams link;
  interface::EmitterParams emitter;
  analyzers::BsaModel bsa;
  double attempt_rate = 1.0e6;  // local repetition rate, 1/s (one-way)
  int purification_rounds = 0;
  Mode mode = Mode::TwoWay;
  uint64_t max_attempts = 100000000;

  void validate() const;
};

struct DistributionSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  uint64_t count = 0;
};

struct SimResult {
  double rate_hz = 0.0;
  double fidelity = 0.0;
  double mean_wait_s = 0.0;
  DistributionSummary wait_distribution;
  uint64_t trials = 0;
};

struct LinkResult {
  double wait_s = 0.0;
  qsim::MixedState pair;  // two spins [A, B]
};

/// Heralded elementary-link generation: repeated middle-station attempts with
/// per-attempt success eta_half^2 * p_bsa and duration length/signal_speed.
LinkResult generate_link_entanglement(const RepeaterConfig& cfg, qsim::Rng& rng);

/// Per-attempt success probability of one elementary-link attempt.
double link_attempt_success(const RepeaterConfig& cfg);

/// Bell measurement of the middle spins of [A,B1] and [B2,C]; nullopt is a
/// heralded failure. On success the A-C pair is Pauli-corrected toward phi+.
std::optional<qsim::MixedState> entanglement_swap(const qsim::MixedState& ab,
                                                  const qsim::MixedState& bc,
                                                  const analyzers::BsaModel& m, qsim::Rng& rng);

/// One recurrence round: bilateral CNOT, Z measurement of the second pair,
/// herald on coincident outcomes. Pairs must share register ordering [A,B].
std::optional<qsim::MixedState> purify(const qsim::MixedState& pair1,
                                       const qsim::MixedState& pair2, qsim::Rng& rng);

SimResult simulate_two_way(const RepeaterConfig& cfg, uint64_t seed, uint64_t trials,
                           int workers = 1);

qsim::PureState parity_encode(std::complex<double> alpha, std::complex<double> beta,
                              const ParityCode& code);

/// Probability that an i.i.d. loss pattern with per-photon loss epsilon is
/// correctable: every block keeps at least one photon and at least one block
/// keeps all of them.
double parity_loss_success(const ParityCode& code, double epsilon);

SimResult simulate_one_way(const RepeaterConfig& cfg, const ParityCode& code);

/// Asymptotic BB84 secret-key fraction max(0, 1 - 2 h(qber)).
double qkd_key_fraction(double qber);

}  // namespace qnet::repeater
