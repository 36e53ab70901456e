#pragma once

#include <optional>
#include <random>

#include "qnet/qsim/types.hpp"

namespace qnet::qsim {

using Rng = std::mt19937_64;

/// Embed a 2^k x 2^k operator acting on register positions `positions`
/// (most significant sub-qubit first) into the full 2^n space.
Matrix embed_operator(const Matrix& op, const std::vector<int>& positions, int n_qubits);

MixedState tensor(const MixedState& a, const MixedState& b);
PureState tensor(const PureState& a, const PureState& b);

MixedState apply_channel(const MixedState& s, const QuantumChannel& ch);
MixedState apply_unitary(const MixedState& s, const Matrix& u, const Register& acts_on);
PureState apply_unitary(const PureState& s, const Matrix& u, const Register& acts_on);

/// Split a channel at a labelled loss operator: returns the probability that
/// a heralded-loss branch fires on `s`, and the renormalized state after the
/// non-loss sub-channel. Used by analyzers that announce failures.
struct SampledChannelResult {
  bool lost = false;
  MixedState post;
};
SampledChannelResult apply_channel_sampled(const MixedState& s, const QuantumChannel& ch, Rng& rng);

struct MeasurementResult {
  int outcome = -1;
  MixedState post;
  double probability = 0.0;
};

/// Projective measurement with projectors over a sublist of the register.
/// Completeness is checked. `forced` selects the outcome deterministically
/// (an error if its probability is ~0); otherwise Born sampling via `rng`.
MeasurementResult measure_projective(const MixedState& s,
                                     const std::vector<Matrix>& projectors,
                                     const Register& acts_on, Rng* rng,
                                     std::optional<int> forced = std::nullopt);

MixedState partial_trace(const MixedState& s, const Register& discard);

double fidelity(const MixedState& rho, const PureState& psi);
double stabilizer_expectation(const MixedState& s, const PauliString& g);

/// SplitMix64 of (root, counter): reproducible per-trial seeds independent of
/// execution order.
uint64_t trial_seed(uint64_t root, uint64_t counter);

}  // namespace qnet::qsim
